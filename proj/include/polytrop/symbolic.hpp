#pragma once

// Vectors whose coordinates are Q-linear combinations of 1 and declared
// symbols alpha_1..alpha_k. The caller asserts that {1, alpha_1, .., alpha_k}
// is Q-linearly independent; each symbol also carries a rational enclosure
// [lo, hi] that decides signs of nonzero combinations.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/arith.hpp"

namespace polytrop {

struct Symbol {
    std::string name;
    Rational lo;
    Rational hi;
};

/// Enclosure of sqrt(k) of width 10^-digits.
inline Symbol sqrt_symbol(const Integer& k, unsigned digits, std::string name = "") {
    require(k > 0, ErrorKind::PreconditionViolation, "sqrt_symbol needs k > 0");
    Integer scale = boost::multiprecision::pow(Integer(10), digits);
    Integer s = boost::multiprecision::sqrt(Integer(k * scale * scale));
    require(s * s != k * scale * scale, ErrorKind::PreconditionViolation, "sqrt of a perfect square is rational");
    if (name.empty()) name = "sqrt" + k.str();
    return {name, Rational(s, scale), Rational(s + 1, scale)};
}

class SymbolicVector {
public:
    SymbolicVector() = default;

    /// coords[i] = (c0, c1, .., ck) meaning c0 + sum c_j alpha_j.
    SymbolicVector(std::vector<Symbol> symbols, std::vector<RatVec> coords)
        : symbols_(std::move(symbols)), coords_(std::move(coords)) {
        for (const auto& s : symbols_)
            require(s.lo <= s.hi, ErrorKind::PreconditionViolation, "empty enclosure for symbol " + s.name);
        for (const auto& c : coords_)
            require(c.size() == symbols_.size() + 1, ErrorKind::DimensionMismatch,
                    "coordinate has " + std::to_string(c.size()) + " coefficients, expected " +
                        std::to_string(symbols_.size() + 1));
    }

    static SymbolicVector rational(const RatVec& v) {
        std::vector<RatVec> coords;
        for (const auto& x : v) coords.push_back({x});
        return SymbolicVector({}, std::move(coords));
    }
    static SymbolicVector rational(const IntVec& v) { return rational(to_rational(v)); }

    std::size_t size() const { return coords_.size(); }
    std::size_t symbol_count() const { return symbols_.size(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const std::vector<RatVec>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!polytrop::is_zero(c)) return false;
        return true;
    }

    /// Whether every coordinate is rational (no symbol occurs).
    bool is_rational() const {
        for (const auto& c : coords_)
            for (std::size_t j = 1; j < c.size(); ++j)
                if (c[j] != 0) return false;
        return true;
    }

    RatVec rational_value() const {
        require(is_rational(), ErrorKind::PreconditionViolation, "vector has symbolic coordinates");
        RatVec v;
        for (const auto& c : coords_) v.push_back(c[0]);
        return v;
    }

    /// Coefficients over {1, alpha} of a . x.
    template <class T>
    RatVec pair(const std::vector<T>& a) const {
        require(a.size() == size(), ErrorKind::DimensionMismatch, "pairing length mismatch");
        RatVec out(symbols_.size() + 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += Rational(a[i]) * coords_[i][j];
        }
        return out;
    }

    /// Rational enclosure of the value c0 + sum c_j alpha_j.
    std::pair<Rational, Rational> enclose(const RatVec& c) const {
        Rational lo = c[0], hi = c[0];
        for (std::size_t j = 1; j < c.size(); ++j) {
            const auto& s = symbols_[j - 1];
            if (c[j] >= 0) {
                lo += c[j] * s.lo;
                hi += c[j] * s.hi;
            } else {
                lo += c[j] * s.hi;
                hi += c[j] * s.lo;
            }
        }
        return {lo, hi};
    }

    /// Exact sign of c0 + sum c_j alpha_j. Zero only for the zero combination
    /// (independence); otherwise decided by the enclosures.
    int sign_of(const RatVec& c) const {
        bool symbolic = false;
        for (std::size_t j = 1; j < c.size(); ++j)
            if (c[j] != 0) symbolic = true;
        if (!symbolic) return sign(c[0]);
        auto [lo, hi] = enclose(c);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        fail(ErrorKind::UndecidableSign, "enclosure [" + to_string(lo) + ", " + to_string(hi) +
                                             "] straddles 0; refine the symbol enclosures");
    }

    template <class T>
    int sign_of_pairing(const std::vector<T>& a) const {
        return sign_of(pair(a));
    }

    /// Replace a symbol's enclosure by a narrower one.
    SymbolicVector refined(const std::string& name, const Rational& lo, const Rational& hi) const {
        SymbolicVector out = *this;
        for (auto& s : out.symbols_)
            if (s.name == name) {
                require(lo >= s.lo && hi <= s.hi && lo <= hi, ErrorKind::PreconditionViolation,
                        "refinement must narrow the enclosure of " + name);
                s.lo = lo;
                s.hi = hi;
                return out;
            }
        fail(ErrorKind::IndexOutOfRange, "unknown symbol " + name);
    }

    friend bool operator==(const SymbolicVector& a, const SymbolicVector& b) { return a.coords_ == b.coords_; }

private:
    std::vector<Symbol> symbols_;
    std::vector<RatVec> coords_;
};

inline std::string to_string(const SymbolicVector& x) {
    std::string out = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ",";
        std::string term;
        const auto& c = x.coords()[i];
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == 0) continue;
            std::string coef = to_string(c[j]);
            std::string piece = j == 0 ? coef : (c[j] == 1 ? "" : (c[j] == -1 ? "-" : coef + "*")) + x.symbols()[j - 1].name;
            if (!term.empty() && piece[0] != '-') term += "+";
            term += piece;
        }
        out += term.empty() ? "0" : term;
    }
    return out + ")";
}

} // namespace polytrop
