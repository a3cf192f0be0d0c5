#pragma once

#include <cstdint>
#include <vector>

#include "algcensus/rational.hpp"

namespace algcensus {

/// Dense matrix over the rationals, row-major.
class RationalMatrix {
  public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {
        if (rows == 0 || cols == 0) throw validation_error("matrix dimensions must be >= 1");
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

inline RationalMatrix transpose(const RationalMatrix& m) {
    RationalMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t.at(c, r) = m.at(r, c);
    return t;
}

/// Exact determinant. Denominators are cleared per row, the integer matrix
/// goes through fraction-free Bareiss elimination, and the row scales are
/// divided back at the end.
inline Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw validation_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Integer scale(1);
    for (std::size_t r = 0; r < n; ++r) {
        Integer d(1);
        for (std::size_t c = 0; c < n; ++c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), denominator(m.at(r, c)).get_mpz_t());
        for (std::size_t c = 0; c < n; ++c) {
            Rational v = m.at(r, c) * Rational(d);
            a[r][c] = numerator(v);
        }
        scale *= d;
    }
    // Bareiss: a[i][j] <- (a[k][k]*a[i][j] - a[i][k]*a[k][j]) / prev, exact.
    Integer prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return Rational(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rational det{a[n - 1][n - 1], scale};
    det.canonicalize();
    return sign < 0 ? -det : det;
}

namespace detail {

/// Sum over injections of rows {0..m-1} into columns, skipping zero entries.
inline Rational permanent_rows_into_cols(const RationalMatrix& m, std::size_t row, std::uint32_t used) {
    if (row == m.rows()) return Rational(1);
    Rational acc(0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (used & (1u << c)) continue;
        const Rational& e = m.at(row, c);
        if (e == 0) continue;
        acc += e * permanent_rows_into_cols(m, row + 1, used | (1u << c));
    }
    return acc;
}

/// Ryser's inclusion-exclusion formula for square matrices, Gray-code order.
inline Rational permanent_ryser(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<Rational> rowsum(n, Rational(0));
    Rational total(0);
    std::uint32_t subset = 0;
    const std::uint32_t full = (n >= 32) ? 0 : (1u << n);
    for (std::uint32_t g = 1; g < full; ++g) {
        std::uint32_t gray = g ^ (g >> 1);
        std::uint32_t changed = gray ^ subset;
        int bit = __builtin_ctz(changed);
        bool added = gray & changed;
        for (std::size_t r = 0; r < n; ++r) {
            if (added)
                rowsum[r] += m.at(r, static_cast<std::size_t>(bit));
            else
                rowsum[r] -= m.at(r, static_cast<std::size_t>(bit));
        }
        subset = gray;
        Rational prod(1);
        for (std::size_t r = 0; r < n && prod != 0; ++r) prod *= rowsum[r];
        int popc = __builtin_popcount(gray);
        if ((static_cast<int>(n) - popc) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

}  // namespace detail

/// Permanent of an m x n matrix: the sum over all m-permutations of
/// {1..n} of the row-entry products when m <= n, and the permanent of the
/// transpose when m > n. Square matrices go through Ryser's method.
inline Rational permanent(const RationalMatrix& m) {
    if (m.rows() > m.cols()) return permanent(transpose(m));
    if (m.cols() > 31) throw validation_error("permanent: more than 31 columns unsupported");
    if (m.rows() == m.cols()) return detail::permanent_ryser(m);
    return detail::permanent_rows_into_cols(m, 0, 0);
}

/// Definition-following oracle: explicit enumeration of m-permutations.
/// Exponential; intended for cross-checking small matrices.
inline Rational permanent_naive(const RationalMatrix& m) {
    if (m.rows() > m.cols()) return permanent_naive(transpose(m));
    if (m.cols() > 31) throw validation_error("permanent_naive: matrix too large");
    // The recursion enumerates exactly the m-permutations, without the
    // zero-entry skip, so it is an independent route.
    struct Rec {
        const RationalMatrix& m;
        Rational run(std::size_t row, std::uint32_t used) {
            if (row == m.rows()) return Rational(1);
            Rational acc(0);
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (used & (1u << c)) continue;
                acc += m.at(row, c) * run(row + 1, used | (1u << c));
            }
            return acc;
        }
    } rec{m};
    return rec.run(0, 0);
}

}  // namespace algcensus
