#pragma once

#include "bigrade/common.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace bigrade {

// Exact integer linear algebra: dense matrices over arbitrary-precision
// integers, Smith normal form with unimodular transforms, saturated kernel
// bases, and integral solving.  Sizes stay modest (a few thousand rows at
// most), so dense storage and the classical pivoting algorithm suffice.

using Vec = std::vector<Int>;

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c) {
        if (r < 0 || c < 0) throw InvalidIndex("matrix dimensions must be >= 0");
        a.resize(static_cast<size_t>(r) * c);
    }

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Mat&) const = default;
};

inline Mat mat_transpose(const Mat& m) {
    Mat out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

inline Mat mat_from_columns(int rows, const std::vector<Vec>& cols) {
    Mat out(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < out.cols; ++j) {
        if (static_cast<int>(cols[j].size()) != rows)
            throw GradeMismatch("column length mismatch");
        for (int i = 0; i < rows; ++i) out.at(i, j) = cols[j][i];
    }
    return out;
}

inline Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw GradeMismatch("matrix product shape mismatch");
    Mat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y.at(k, j) != 0) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

inline Vec mat_apply(const Mat& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw GradeMismatch("matrix-vector shape mismatch");
    Vec out(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0 && v[j] != 0) out[i] += m.at(i, j) * v[j];
    return out;
}

// Bareiss fraction-free elimination; exact divisions throughout.
inline Int det(Mat m) {
    if (m.rows != m.cols) throw GradeMismatch("determinant needs a square matrix");
    int n = m.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    Int d = m.at(n - 1, n - 1);
    return sign < 0 ? Int(-d) : d;
}

struct SmithForm {
    Mat U, D, V;  // U * A * V == D with U, V unimodular
    std::vector<Int> divisors;
    int rank = 0;
};

inline SmithForm smith_normal_form(const Mat& input) {
    SmithForm s;
    s.D = input;
    s.U = Mat::identity(input.rows);
    s.V = Mat::identity(input.cols);
    Mat& D = s.D;
    Mat& U = s.U;
    Mat& V = s.V;

    auto row_sub = [](Mat& M, int i, int j, const Int& q) {  // row_i -= q * row_j
        for (int c = 0; c < M.cols; ++c)
            if (M.at(j, c) != 0) M.at(i, c) -= q * M.at(j, c);
    };
    auto col_sub = [](Mat& M, int j, int k, const Int& q) {  // col_j -= q * col_k
        for (int r = 0; r < M.rows; ++r)
            if (M.at(r, k) != 0) M.at(r, j) -= q * M.at(r, k);
    };
    auto row_swap = [](Mat& M, int i, int j) {
        for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
    };
    auto col_swap = [](Mat& M, int i, int j) {
        for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
    };
    auto row_neg = [](Mat& M, int i) {
        for (int c = 0; c < M.cols; ++c) M.at(i, c) = -M.at(i, c);
    };

    int t = 0;
    const int tmax = std::min(D.rows, D.cols);
    while (t < tmax) {
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < D.rows; ++i)
            for (int j = t; j < D.cols; ++j) {
                if (D.at(i, j) == 0) continue;
                Int mag = abs(D.at(i, j));
                if (pi < 0 || mag < best) {
                    pi = i;
                    pj = j;
                    best = mag;
                }
            }
        if (pi < 0) break;
        if (pi != t) {
            row_swap(D, t, pi);
            row_swap(U, t, pi);
        }
        if (pj != t) {
            col_swap(D, t, pj);
            col_swap(V, t, pj);
        }

        bool dirty = false;
        for (int i = t + 1; i < D.rows; ++i) {
            if (D.at(i, t) == 0) continue;
            Int q = D.at(i, t) / D.at(t, t);
            if (q != 0) {
                row_sub(D, i, t, q);
                row_sub(U, i, t, q);
            }
            if (D.at(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < D.cols; ++j) {
            if (D.at(t, j) == 0) continue;
            Int q = D.at(t, j) / D.at(t, t);
            if (q != 0) {
                col_sub(D, j, t, q);
                col_sub(V, j, t, q);
            }
            if (D.at(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // remainders left a smaller pivot behind

        // the pivot must divide the trailing block; if not, merge the
        // offending row into row t and restart this step
        bool fixed = true;
        for (int i = t + 1; i < D.rows && fixed; ++i)
            for (int j = t + 1; j < D.cols && fixed; ++j)
                if (D.at(i, j) % D.at(t, t) != 0) {
                    row_sub(D, t, i, Int(-1));
                    row_sub(U, t, i, Int(-1));
                    fixed = false;
                }
        if (!fixed) continue;

        if (D.at(t, t) < 0) {
            row_neg(D, t);
            row_neg(U, t);
        }
        ++t;
    }
    s.rank = t;
    for (int i = 0; i < t; ++i) s.divisors.push_back(D.at(i, i));
    return s;
}

inline int rank_of(const Mat& m) { return smith_normal_form(m).rank; }

// Basis of the integer kernel; the basis spans a direct summand (saturated),
// namely the columns of V past the rank.
inline std::vector<Vec> kernel_basis(const Mat& m) {
    SmithForm s = smith_normal_form(m);
    std::vector<Vec> out;
    for (int j = s.rank; j < m.cols; ++j) {
        Vec v(m.cols);
        for (int i = 0; i < m.cols; ++i) v[i] = s.V.at(i, j);
        out.push_back(std::move(v));
    }
    return out;
}

inline std::optional<Vec> solve_integer(const Mat& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows) throw GradeMismatch("right-hand side length mismatch");
    SmithForm s = smith_normal_form(m);
    Vec c = mat_apply(s.U, b);
    Vec y(m.cols);
    for (int i = 0; i < m.rows; ++i) {
        if (i < s.rank) {
            if (c[i] % s.divisors[i] != 0) return std::nullopt;
            y[i] = c[i] / s.divisors[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_apply(s.V, y);
}

}  // namespace bigrade
