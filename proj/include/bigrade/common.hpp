#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace bigrade {

using Int = boost::multiprecision::cpp_int;

// All domain errors derive from one base so callers can catch uniformly.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
    using Error::Error;
};
struct InvalidIndex : Error {
    using Error::Error;
};
struct InvalidLetter : Error {
    using Error::Error;
};
struct EmptyBracket : Error {
    using Error::Error;
};
struct BoundError : Error {
    using Error::Error;
};
struct GradeMismatch : Error {
    using Error::Error;
};
struct NotAnAutomorphism : Error {
    using Error::Error;
};
struct NotALieElement : Error {
    using Error::Error;
};
struct NotInImage : Error {
    using Error::Error;
};
struct InvalidDegree : Error {
    using Error::Error;
};
struct NotInLevel : Error {
    using Error::Error;
};
struct CatalogError : Error {
    using Error::Error;
};

inline long checked_long(const Int& v, const char* ctx) {
    if (v > Int(std::numeric_limits<long>::max()) || v < Int(std::numeric_limits<long>::min()))
        throw BoundError(std::string(ctx) + ": value out of range");
    return static_cast<long>(v);
}

}  // namespace bigrade
