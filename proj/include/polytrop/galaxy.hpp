#pragma once

// Skeletons of elliptic I_m degenerations under base change, classification
// of points of R/Z along a tower, carrier cells, and the open/closed
// decomposition ledger on an arbitrary skeleton.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/delta_complex.hpp"
#include "polytrop/symbolic.hpp"

namespace polytrop {

/// Fractional part in [0, 1).
inline Rational frac(const Rational& x) {
    Integer f = numerator_of(x) / denominator_of(x);
    if (Rational(f) > x) f -= 1;
    return x - Rational(f);
}

class PolygonDegeneration {
public:
    /// The m-gon: m components meeting cyclically.
    static PolygonDegeneration elliptic(std::size_t m) {
        require(m >= 1, ErrorKind::PreconditionViolation, "I_m needs m >= 1");
        return PolygonDegeneration(m, m, cycle_complex(m));
    }

    std::size_t m() const { return m_; }
    std::size_t root_m() const { return root_m_; }
    const DeltaComplex& complex() const { return cx_; }

    /// Position in [0, 1] of a root point, unreduced on edges.
    Rational angle(const RootPoint& p) const {
        if (p.dim == 0) return Rational(Integer(p.id), Integer(root_m_));
        return (Rational(Integer(p.id)) + p.coords[1]) / Rational(Integer(root_m_));
    }

    /// Label j/m of vertex v, in Q/Z.
    Rational vertex_label(std::size_t v) const { return frac(angle(cx_.vertex_point(v))); }

    std::vector<Rational> vertex_labels() const {
        std::vector<Rational> out;
        for (std::size_t v = 0; v < cx_.count(0); ++v) out.push_back(vertex_label(v));
        return out;
    }

    /// Interval [lo, lo + 1/m] covered by edge e.
    std::pair<Rational, Rational> edge_interval(std::size_t e) const {
        const Cell& c = cx_.cell(1, e);
        Rational a = angle({c.root_dim, c.root_id, c.root_coords[0]});
        Rational b = angle({c.root_dim, c.root_id, c.root_coords[1]});
        if (b < a) std::swap(a, b);
        return {a, b};
    }

    std::optional<std::size_t> vertex_at(const Rational& label) const {
        for (std::size_t v = 0; v < cx_.count(0); ++v)
            if (vertex_label(v) == frac(label)) return v;
        return std::nullopt;
    }

    std::optional<std::size_t> edge_from(const Rational& lo) const {
        for (std::size_t e = 0; e < cx_.count(1); ++e)
            if (edge_interval(e).first == frac(lo)) return e;
        return std::nullopt;
    }

private:
    PolygonDegeneration(std::size_t m, std::size_t root_m, DeltaComplex cx)
        : m_(m), root_m_(root_m), cx_(std::move(cx)) {}

    friend PolygonDegeneration base_change(const PolygonDegeneration& p, std::size_t d);

    std::size_t m_;
    std::size_t root_m_;
    DeltaComplex cx_;
};

/// Degree-d base change: the I_{dm} cycle.
inline PolygonDegeneration base_change(const PolygonDegeneration& p, std::size_t d) {
    require(d >= 1, ErrorKind::PreconditionViolation, "base change degree must be positive");
    return PolygonDegeneration(p.m() * d, p.root_m(), scale_subdivide(p.complex(), Integer(d)));
}

// ---------------------------------------------------------------------------
// Points of R/Z

class GalaxyPoint {
public:
    static GalaxyPoint rational(const Rational& q) {
        GalaxyPoint g;
        g.q_ = frac(q);
        return g;
    }

    /// A one-coordinate symbolic value, reduced mod 1 using its enclosure.
    static GalaxyPoint symbolic(const SymbolicVector& x) {
        require(x.size() == 1, ErrorKind::DimensionMismatch, "a point of R/Z has one coordinate");
        if (x.is_rational()) return rational(x.rational_value()[0]);
        auto [lo, hi] = x.enclose(x.coords()[0]);
        Rational flo = lo - frac(lo);
        require(hi < flo + 1, ErrorKind::UndecidableSign, "enclosure straddles an integer; refine it");
        auto coords = x.coords();
        coords[0][0] -= flo;
        GalaxyPoint g;
        g.x_ = SymbolicVector(x.symbols(), coords);
        return g;
    }

    bool is_rational() const { return q_.has_value(); }
    const Rational& value() const {
        require(q_.has_value(), ErrorKind::PreconditionViolation, "point is irrational");
        return *q_;
    }
    const SymbolicVector& symbolic_value() const {
        require(x_.has_value(), ErrorKind::PreconditionViolation, "point is rational");
        return *x_;
    }

    /// floor(theta * M), decided by the enclosure for irrational theta.
    Integer floor_times(const Integer& big_m) const {
        if (q_) {
            Rational t = *q_ * Rational(big_m);
            return numerator_of(t - frac(t)) / denominator_of(t - frac(t));
        }
        RatVec c = x_->coords()[0];
        for (auto& v : c) v *= Rational(big_m);
        auto [lo, hi] = x_->enclose(c);
        Rational flo = lo - frac(lo);
        require(hi < flo + 1, ErrorKind::UndecidableSign,
                "enclosure of theta is too wide at level " + big_m.str() + "; refine it");
        return numerator_of(flo);
    }

    std::string to_string() const {
        return q_ ? polytrop::to_string(*q_) : polytrop::to_string(*x_);
    }

private:
    std::optional<Rational> q_;
    std::optional<SymbolicVector> x_;
};

// ---------------------------------------------------------------------------
// Towers

/// Levels are base changes of the base by degrees[i]; level 0 has degree 1.
struct EllipticTower {
    std::size_t m;
    std::vector<std::size_t> degrees; // degree of level i >= 1, each dividing the next

    static EllipticTower doubling(std::size_t m, std::size_t depth) {
        EllipticTower t{m, {}};
        std::size_t d = 1;
        for (std::size_t i = 0; i < depth; ++i) t.degrees.push_back(d *= 2);
        return t;
    }

    std::size_t levels() const { return degrees.size() + 1; }
    std::size_t degree(std::size_t i) const {
        require(i < levels(), ErrorKind::IndexOutOfRange, "tower has no level " + std::to_string(i));
        return i == 0 ? 1 : degrees[i - 1];
    }
    std::size_t cycle_size(std::size_t i) const { return m * degree(i); }

    void check() const {
        require(m >= 1, ErrorKind::PreconditionViolation, "tower base needs m >= 1");
        for (std::size_t i = 1; i < levels(); ++i)
            require(degree(i) % degree(i - 1) == 0, ErrorKind::PreconditionViolation,
                    "tower degrees must divide each other");
    }

    PolygonDegeneration level(std::size_t i) const {
        return base_change(PolygonDegeneration::elliptic(m), degree(i));
    }
};

struct CarrierCell {
    std::size_t level;
    std::size_t dim; // 0: component, 1: double point
    Rational lo;
    Rational hi;
    Rational length() const { return hi - lo; }
};

struct Classification {
    enum class Kind { Open, Closed } kind;
    std::size_t level;             // Open: first level where theta is a vertex; Closed: depth checked
    std::optional<Rational> label; // Open: theta in Q/Z
    std::vector<CarrierCell> chain;
};

/// Carrier cell of theta at one level, computed on the lattice (1/M)Z.
inline CarrierCell carrier_at(const EllipticTower& t, std::size_t i, const GalaxyPoint& theta) {
    Integer big_m(t.cycle_size(i));
    if (theta.is_rational()) {
        Rational x = theta.value() * Rational(big_m);
        if (denominator_of(x) == 1) return {i, 0, theta.value(), theta.value()};
    }
    Integer k = theta.floor_times(big_m);
    return {i, 1, Rational(k, big_m), Rational(k + 1, big_m)};
}

inline std::vector<CarrierCell> carrier_chain(const EllipticTower& t, const GalaxyPoint& theta) {
    t.check();
    std::vector<CarrierCell> chain;
    for (std::size_t i = 0; i < t.levels(); ++i) chain.push_back(carrier_at(t, i, theta));
    return chain;
}

inline Classification classify_point(const EllipticTower& t, const GalaxyPoint& theta) {
    t.check();
    if (theta.is_rational()) {
        Integer q = denominator_of(theta.value());
        std::vector<CarrierCell> chain;
        for (std::size_t i = 0; i < t.levels(); ++i) {
            chain.push_back(carrier_at(t, i, theta));
            if (Integer(t.cycle_size(i)) % q == 0)
                return {Classification::Kind::Open, i, theta.value(), std::move(chain)};
        }
        fail(ErrorKind::IncompleteTower, "denominator " + q.str() + " divides no level of the tower");
    }
    // irrational: never a vertex; the chain must nest with shrinking edges
    auto chain = carrier_chain(t, theta);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        require(chain[i].dim == 1 && chain[i].lo >= chain[i - 1].lo && chain[i].hi <= chain[i - 1].hi,
                ErrorKind::PreconditionViolation, "carrier chain is not nested");
    }
    return {Classification::Kind::Closed, t.levels() - 1, std::nullopt, std::move(chain)};
}

// ---------------------------------------------------------------------------
// Carrier cells of strata

struct PolygonStratum {
    enum class Kind { Component, DoublePoint } kind;
    std::size_t j; // component j, or the point where j meets j+1
};

struct SkeletonCell {
    std::size_t dim;
    std::size_t id;
    Rational lo; // angle interval, for polygon skeletons
    Rational hi;
};

inline SkeletonCell f_tr_cell(const PolygonDegeneration& p, const PolygonStratum& s) {
    require(s.j < p.m(), ErrorKind::UnknownStratum,
            "I_" + std::to_string(p.m()) + " has no stratum with index " + std::to_string(s.j));
    Rational a(Integer(s.j), Integer(p.m()));
    if (s.kind == PolygonStratum::Kind::Component) return {0, *p.vertex_at(a), a, a};
    auto e = *p.edge_from(a);
    auto [lo, hi] = p.edge_interval(e);
    return {1, e, lo, hi};
}

/// Carrier cell of a labelled stratum in any skeleton.
inline std::pair<std::size_t, std::size_t> f_tr_cell(const DeltaComplex& skeleton, const std::string& stratum) {
    auto c = skeleton.find_label(stratum);
    require(c.has_value(), ErrorKind::UnknownStratum, "skeleton has no stratum " + stratum);
    return *c;
}

// ---------------------------------------------------------------------------
// Decomposition ledger

struct DecompositionSlot {
    RootPoint where;
    std::size_t cell_dim;
    std::size_t cell_id;
    std::string tag;
};

struct DecompositionRecord {
    Integer level;
    std::vector<DecompositionSlot> slots;
    std::size_t non_klt_cells = 0; // positive-dimensional cells of the level-N subdivision
};

inline DecompositionRecord decomposition(const DeltaComplex& b, const Integer& n) {
    require(b.pure(), ErrorKind::PreconditionViolation, "skeleton must be pure-dimensional");
    DecompositionRecord r{n, {}, 0};
    for (const auto& p : rational_points(b, n)) {
        std::string tag = "open:" + b.root().labels[p.where.dim][p.where.id];
        if (p.where.dim > 0) tag += "@" + to_string(p.where.coords);
        r.slots.push_back({p.where, p.cell_dim, p.cell_id, std::move(tag)});
    }
    auto sub = scale_subdivide(b, n);
    for (std::size_t d = 1; d <= sub.dim() && !sub.empty(); ++d) r.non_klt_cells += sub.count(d);
    return r;
}

} // namespace polytrop
