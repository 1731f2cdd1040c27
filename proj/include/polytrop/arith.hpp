#pragma once

// Exact integer/rational arithmetic and the small dense linear algebra the
// polyhedral code is built on. Everything here is exact; there is no
// floating point anywhere in this header.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polytrop/errors.hpp"

namespace polytrop {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;
using IntMatrix = std::vector<IntVec>;
using RatMatrix = std::vector<RatVec>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(abs_int(a), abs_int(b));
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

inline int sign(const Integer& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
inline int sign(const Rational& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

/// Floor of a rational, exact.
inline Integer floor_rat(const Rational& q) {
    Integer n = numerator_of(q), d = denominator_of(q);
    Integer f = n / d; // truncates toward zero
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

// ---------------------------------------------------------------------------
// Parsing and formatting. Rationals travel as "p/q" or "p" strings.

inline Integer parse_integer(std::string_view s) {
    std::string t(s);
    auto start = t.find_first_not_of(" \t");
    auto stop = t.find_last_not_of(" \t");
    require(start != std::string::npos, ErrorKind::ParseError, "empty integer literal");
    t = t.substr(start, stop - start + 1);
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    require(i < t.size(), ErrorKind::ParseError, "malformed integer '" + t + "'");
    for (std::size_t j = i; j < t.size(); ++j)
        require(t[j] >= '0' && t[j] <= '9', ErrorKind::ParseError, "malformed integer '" + t + "'");
    Integer v(t[0] == '+' ? t.substr(1) : t);
    return v;
}

inline Rational parse_rational(std::string_view s) {
    auto dot_pos = s.find('.');
    if (dot_pos != std::string_view::npos) {
        // exact decimal: "1.414213" -> 1414213/1000000
        std::string digits(s.substr(0, dot_pos));
        std::string frac(s.substr(dot_pos + 1));
        require(!frac.empty() && frac.find_first_not_of("0123456789") == std::string::npos, ErrorKind::ParseError,
                "malformed decimal '" + std::string(s) + "'");
        bool negative = digits.find('-') != std::string::npos;
        Integer whole = parse_integer(digits.empty() || digits == "-" || digits == "+" ? digits + "0" : digits);
        Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Rational q(abs_int(whole) * scale + Integer(frac), scale);
        return negative ? Rational(-q) : q;
    }
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    require(den != 0, ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

template <class T>
std::string to_string(const std::vector<T>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += to_string(v[i]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Vector helpers

template <class A, class B>
auto dot(const std::vector<A>& a, const std::vector<B>& b) {
    using R = std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>, Rational, Integer>;
    R s = 0;
    if constexpr (std::is_same_v<A, B>) {
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) s += R(a[i]) * R(b[i]);
    }
    return s;
}

inline bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}
inline bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Integer content(const IntVec& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd_int(g, x);
    return g;
}

/// Divides by the gcd of absolute values. The zero vector is returned as is.
inline IntVec make_primitive(IntVec v) {
    Integer g = content(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

/// Positive integer multiple of a rational vector, primitive.
inline IntVec clear_denominators(const RatVec& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm_int(l, denominator_of(x));
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator_of(v[i]) * (l / denominator_of(v[i]));
    return make_primitive(std::move(out));
}

inline RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

inline IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec negate(IntVec v) {
    for (auto& x : v) x = -x;
    return v;
}

// ---------------------------------------------------------------------------
// Row echelon form over Q

struct Echelon {
    RatMatrix rows;              // reduced rows, one per pivot
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

template <class T>
Echelon rref(const std::vector<std::vector<T>>& input, std::size_t ncols) {
    RatMatrix m;
    m.reserve(input.size());
    for (const auto& r : input) m.emplace_back(r.begin(), r.end());
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rational inv = Rational(1) / m[row][col];
        for (std::size_t j = col; j < ncols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < ncols; ++j) m[i][j] -= f * m[row][j];
        }
        e.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    e.rows = std::move(m);
    return e;
}

namespace detail {

inline IntVec integral_row(const IntVec& r) { return r; }
inline IntVec integral_row(const RatVec& r) { return clear_denominators(r); }

struct IntEchelon {
    IntMatrix rows; // primitive, positive pivot, zero in every other pivot column
    std::vector<std::size_t> pivots;
};

/// Fraction-free Gauss-Jordan elimination; rows are proportional to the reduced echelon rows.
template <class T>
IntEchelon int_rref(const std::vector<std::vector<T>>& input, std::size_t ncols) {
    IntMatrix m;
    m.reserve(input.size());
    for (const auto& r : input) m.push_back(integral_row(r));
    IntEchelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        if (m[row][col] < 0) m[row] = negate(std::move(m[row]));
        const Integer p = m[row][col];
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Integer f = m[i][col];
            for (std::size_t j = 0; j < ncols; ++j) m[i][j] = p * m[i][j] - f * m[row][j];
            m[i] = make_primitive(std::move(m[i]));
        }
        e.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    for (auto& r : m) r = make_primitive(std::move(r));
    e.rows = std::move(m);
    return e;
}

} // namespace detail

template <class T>
std::size_t rank_of(const std::vector<std::vector<T>>& rows, std::size_t ncols) {
    if (rows.empty()) return 0;
    return detail::int_rref(rows, ncols).pivots.size();
}

/// Basis of {x : row . x = 0 for every row}, as primitive integer vectors.
template <class T>
IntMatrix nullspace(const std::vector<std::vector<T>>& rows, std::size_t ncols) {
    auto e = detail::int_rref(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Integer l = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) l = lcm_int(l, e.rows[r][e.pivots[r]]);
    IntMatrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        IntVec v(ncols, Integer(0));
        v[free] = l;
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            v[e.pivots[r]] = -e.rows[r][free] * (l / e.rows[r][e.pivots[r]]);
        basis.push_back(make_primitive(std::move(v)));
    }
    return basis;
}

/// Canonical integer basis of a row space: reduced echelon rows scaled to
/// primitive integer vectors with positive pivots.
template <class T>
IntMatrix canonical_basis(const std::vector<std::vector<T>>& rows, std::size_t ncols) {
    if (rows.empty()) return {};
    return detail::int_rref(rows, ncols).rows;
}

/// Representative of v modulo the span of a canonical basis: the pivot
/// coordinates are eliminated, so congruent vectors map to the same result.
inline RatVec reduce_modulo(RatVec v, const IntMatrix& canonical) {
    for (const auto& b : canonical) {
        std::size_t p = 0;
        while (b[p] == 0) ++p;
        if (v[p] == 0) continue;
        Rational f = v[p] / Rational(b[p]);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * Rational(b[j]);
    }
    return v;
}

/// Primitive positive multiple of v reduced modulo a canonical basis.
inline IntVec reduce_modulo_primitive(IntVec v, const IntMatrix& canonical) {
    for (const auto& b : canonical) {
        std::size_t p = 0;
        while (b[p] == 0) ++p;
        if (v[p] == 0) continue;
        Integer f = v[p];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = b[p] * v[j] - f * b[j];
        v = make_primitive(std::move(v));
    }
    return make_primitive(std::move(v));
}

template <class T>
Rational determinant(const std::vector<std::vector<T>>& input) {
    std::size_t n = input.size();
    RatMatrix m;
    for (const auto& r : input) m.emplace_back(r.begin(), r.end());
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// Solves A x = b for square invertible A (rows of A given). Empty result if singular.
inline RatVec solve(const RatMatrix& a, const RatVec& b) {
    std::size_t n = a.size();
    RatMatrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    Echelon e = rref(aug, n + 1);
    if (e.rank() != n || e.pivots.back() >= n) return {};
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[e.pivots[i]] = e.rows[i][n];
    return x;
}

/// Unimodular row reduction: returns U in GL(m, Z) with U * a in row echelon
/// form, zero rows last. `a` has m rows.
inline IntMatrix unimodular_row_reduce(IntMatrix a, std::size_t ncols) {
    std::size_t m = a.size();
    IntMatrix u(m, IntVec(m, Integer(0)));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
    auto combine_rows = [&](std::size_t i, std::size_t j, const Integer& p, const Integer& q, const Integer& r,
                            const Integer& s) {
        // (row_i, row_j) <- (p row_i + q row_j, r row_i + s row_j), with p s - q r = +-1
        for (IntMatrix* mat : {&a, &u}) {
            auto& x = *mat;
            for (std::size_t c = 0; c < x[i].size(); ++c) {
                Integer ni = p * x[i][c] + q * x[j][c];
                Integer nj = r * x[i][c] + s * x[j][c];
                x[i][c] = std::move(ni);
                x[j][c] = std::move(nj);
            }
        }
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m; ++col) {
        for (std::size_t j = row + 1; j < m; ++j) {
            if (a[j][col] == 0) continue;
            if (a[row][col] == 0) {
                std::swap(a[row], a[j]);
                std::swap(u[row], u[j]);
                continue;
            }
            // extended gcd on (a[row][col], a[j][col])
            Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a[row][col], r1 = a[j][col];
            while (r1 != 0) {
                Integer qt = r0 / r1;
                Integer t = r0 - qt * r1;
                r0 = r1;
                r1 = t;
                t = x0 - qt * x1;
                x0 = x1;
                x1 = t;
                t = y0 - qt * y1;
                y0 = y1;
                y1 = t;
            }
            // x0 a + y0 b = r0 ; x1 a + y1 b = 0 ; x0 y1 - y0 x1 = +-1
            combine_rows(row, j, x0, y0, x1, y1);
        }
        if (a[row][col] != 0) ++row;
    }
    return u;
}

/// Gcd of all k x k minors of a k x n integer matrix (k <= n). Used for
/// unimodularity: rows extend to a lattice basis iff this is 1.
inline Integer maximal_minor_gcd(const IntMatrix& rows) {
    std::size_t k = rows.size();
    if (k == 0) return 1;
    std::size_t n = rows[0].size();
    Integer g = 0;
    std::vector<std::size_t> cols(k);
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    while (true) {
        IntMatrix sub(k, IntVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = rows[i][cols[j]];
        g = gcd_int(g, numerator_of(determinant(sub)));
        std::size_t i = k;
        while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return g;
}

} // namespace polytrop
