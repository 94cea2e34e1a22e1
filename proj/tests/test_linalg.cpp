#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bigrade/linalg.hpp"

#include <random>

using namespace bigrade;

namespace {

Mat from_rows(const std::vector<std::vector<long long>>& rows, int cols = -1) {
    int r = static_cast<int>(rows.size());
    int c = cols >= 0 ? cols : (r ? static_cast<int>(rows[0].size()) : 0);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    return m;
}

// Independent rank oracle: fraction-free elimination over long long.
int oracle_rank(std::vector<std::vector<long long>> m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    long long prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

std::vector<std::vector<long long>> random_rows(std::mt19937& rng, int r, int c) {
    std::uniform_int_distribution<int> entry(-9, 9);
    std::vector<std::vector<long long>> rows(r, std::vector<long long>(c));
    for (auto& row : rows)
        for (auto& v : row) v = entry(rng);
    return rows;
}

bool is_diagonal(const Mat& d) {
    for (int i = 0; i < d.rows; ++i)
        for (int j = 0; j < d.cols; ++j)
            if (i != j && d.at(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith normal form on pinned matrices") {
    SmithForm id = smith_normal_form(Mat::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.divisors == std::vector<Int>{1, 1, 1});
    CHECK(id.D == Mat::identity(3));

    SmithForm z = smith_normal_form(Mat(2, 3));
    CHECK(z.rank == 0);
    CHECK(z.divisors.empty());
    CHECK(kernel_basis(Mat(2, 3)).size() == 3);

    CHECK(smith_normal_form(from_rows({{5}})).divisors == std::vector<Int>{5});
    CHECK(smith_normal_form(from_rows({{4, 0}, {0, 6}})).divisors == std::vector<Int>{2, 12});
    CHECK(smith_normal_form(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).divisors ==
          std::vector<Int>{2, 6, 12});

    Mat row = from_rows({{1, 2, 3}});
    SmithForm sr = smith_normal_form(row);
    CHECK(sr.rank == 1);
    CHECK(sr.divisors == std::vector<Int>{1});
    std::vector<Vec> ker = kernel_basis(row);
    REQUIRE(ker.size() == 2);
    for (const Vec& v : ker) {
        Int dot = v[0] + 2 * v[1] + 3 * v[2];
        CHECK(dot == 0);
    }
}

TEST_CASE("smith decomposition properties on random matrices") {
    std::mt19937 rng(811);
    std::uniform_int_distribution<int> dim(0, 6);
    for (int trial = 0; trial < 150; ++trial) {
        int r = dim(rng), c = dim(rng);
        auto rows = random_rows(rng, r, c);
        Mat A = from_rows(rows, c);
        SmithForm s = smith_normal_form(A);
        CHECK(mat_mul(mat_mul(s.U, A), s.V) == s.D);
        CHECK(is_diagonal(s.D));
        Int udet = det(s.U), vdet = det(s.V);
        CHECK((udet == 1 || udet == -1));
        CHECK((vdet == 1 || vdet == -1));
        for (size_t i = 0; i < s.divisors.size(); ++i) {
            CHECK(s.divisors[i] > 0);
            if (i > 0) CHECK(s.divisors[i] % s.divisors[i - 1] == 0);
        }
        CHECK(s.rank == oracle_rank(rows));
        CHECK(s.rank == rank_of(mat_transpose(A)));
    }
}

TEST_CASE("kernel bases are exact and saturated") {
    std::mt19937 rng(822);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        int r = dim(rng), c = dim(rng);
        Mat A = from_rows(random_rows(rng, r, c), c);
        int rank = rank_of(A);
        std::vector<Vec> ker = kernel_basis(A);
        CHECK(static_cast<int>(ker.size()) == A.cols - rank);
        for (const Vec& v : ker) {
            Vec img = mat_apply(A, v);
            for (const Int& x : img) CHECK(x == 0);
        }
        if (!ker.empty()) {
            Mat K = mat_from_columns(A.cols, ker);
            SmithForm ks = smith_normal_form(K);
            CHECK(ks.rank == static_cast<int>(ker.size()));
            for (const Int& d : ks.divisors) CHECK(d == 1);
        }
    }
}

TEST_CASE("integer linear solve") {
    std::mt19937 rng(833);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        int r = dim(rng), c = dim(rng);
        Mat A = from_rows(random_rows(rng, r, c), c);
        Vec x(c);
        for (Int& v : x) v = entry(rng);
        Vec b = mat_apply(A, x);
        std::optional<Vec> got = solve_integer(A, b);
        REQUIRE(got.has_value());
        CHECK(mat_apply(A, *got) == b);
    }
    CHECK(!solve_integer(from_rows({{2}}), Vec{1}).has_value());
    CHECK(!solve_integer(from_rows({{1}, {1}}), Vec{1, 2}).has_value());
    CHECK(solve_integer(from_rows({{2}}), Vec{6}) == Vec{3});

    // degenerate shapes
    std::optional<Vec> empty_rows = solve_integer(Mat(0, 3), Vec{});
    REQUIRE(empty_rows.has_value());
    CHECK(empty_rows->size() == 3);
    CHECK(solve_integer(Mat(3, 0), Vec{0, 0, 0}).has_value());
    CHECK(!solve_integer(Mat(3, 0), Vec{0, 1, 0}).has_value());
    CHECK_THROWS_AS(solve_integer(Mat(2, 2), Vec{1}), GradeMismatch);
}

TEST_CASE("determinants") {
    CHECK(det(Mat::identity(4)) == 1);
    CHECK(det(Mat(0, 0)) == 1);
    CHECK(det(from_rows({{2, 0}, {0, 3}})) == 6);
    CHECK(det(from_rows({{0, 1}, {1, 0}})) == -1);
    CHECK_THROWS_AS(det(Mat(2, 3)), GradeMismatch);

    std::mt19937 rng(844);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        int n = dim(rng);
        Mat A = from_rows(random_rows(rng, n, n), n);
        SmithForm s = smith_normal_form(A);
        Int d = det(A);
        if (s.rank < n) {
            CHECK(d == 0);
        } else {
            Int prod = 1;
            for (const Int& e : s.divisors) prod *= e;
            CHECK((d == prod || d == -prod));
        }
    }
}
