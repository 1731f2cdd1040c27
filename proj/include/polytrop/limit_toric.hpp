#pragma once

// Fan towers, cone chains and the tropical projection of boundary points.
//
// A boundary point of the limit toric space is recorded by the cone of each
// level that contains it; the projection to directions is the intersection of
// those cones. Directions may be irrational, in which case they are given as
// SymbolicVector values and every sign is decided exactly.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/fan.hpp"
#include "polytrop/symbolic.hpp"

namespace polytrop {

inline constexpr std::size_t kDefaultDepthCap = 64;

// ---------------------------------------------------------------------------
// Symbolic containment

/// Whether x lies in c, deciding facet signs exactly.
inline bool contains_symbolic(const Cone& c, const SymbolicVector& x) {
    for (const auto& e : c.equations())
        if (x.sign_of_pairing(e) != 0) return false;
    for (const auto& f : c.facets())
        if (x.sign_of_pairing(f) < 0) return false;
    return true;
}

/// Smallest cone of f containing x. Cones whose facet signs cannot be
/// decided are skipped as long as another cone settles the question.
inline Cone minimal_cone_containing(const Fan& f, const SymbolicVector& x) {
    check_same_rank(f.rank(), x.size());
    std::optional<Error> undecided;
    for (const auto& c : f.maximal_cones()) {
        try {
            if (!contains_symbolic(c, x)) continue;
            std::vector<std::size_t> tight;
            for (std::size_t i = 0; i < c.facets().size(); ++i)
                if (x.sign_of_pairing(c.facets()[i]) == 0) tight.push_back(i);
            return c.face(tight);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UndecidableSign) throw;
            undecided = e;
        }
    }
    if (undecided) throw *undecided;
    fail(ErrorKind::PreconditionViolation, "no cone of the fan contains " + to_string(x));
}

/// Min over ray pairs of the signed squared cosine (u.v)|u.v| / (|u|^2 |v|^2).
/// Larger means narrower; a ray has width 1.
inline Rational angular_width(const Cone& c) {
    Rational best = 1;
    const auto& r = c.rays();
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            Integer uv = dot(r[i], r[j]);
            Rational s(uv * abs_int(uv), dot(r[i], r[i]) * dot(r[j], r[j]));
            if (s < best) best = s;
        }
    if (!c.pointed()) best = -1;
    return best;
}

/// Coefficients of x in the rays of a simplicial cone, each over {1, alpha}.
inline std::vector<RatVec> simplicial_coordinates(const Cone& c, const SymbolicVector& x) {
    const auto& u = c.rays();
    std::size_t n = c.rank(), k = u.size();
    std::size_t width = x.symbol_count() + 1;
    std::vector<RatVec> lambda(k, RatVec(width, Rational(0)));
    for (std::size_t s = 0; s < width; ++s) {
        RatMatrix aug(n, RatVec(k + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) aug[i][j] = u[j][i];
            aug[i][k] = x.coords()[i][s];
        }
        Echelon e = rref(aug, k + 1);
        require(e.rank() == k && e.pivots.back() < k, ErrorKind::PreconditionViolation,
                "point is not in the span of the cone");
        for (std::size_t r = 0; r < k; ++r) lambda[e.pivots[r]][s] = e.rows[r][k];
    }
    return lambda;
}

// ---------------------------------------------------------------------------
// Towers

struct TowerStrategy {
    enum class Kind { StellarAtBarycenters, TowardDirection, CommonRefineWith };
    Kind kind = Kind::StellarAtBarycenters;
    std::optional<SymbolicVector> target;
    std::optional<Fan> other;

    static TowerStrategy stellar_at_barycenters() { return {}; }
    static TowerStrategy toward(SymbolicVector x) { return {Kind::TowardDirection, std::move(x), std::nullopt}; }
    static TowerStrategy refine_with(Fan f) { return {Kind::CommonRefineWith, std::nullopt, std::move(f)}; }

    std::string tag() const {
        switch (kind) {
        case Kind::StellarAtBarycenters: return "StellarAtBarycenters";
        case Kind::TowardDirection: return "TowardDirection" + to_string(*target);
        case Kind::CommonRefineWith: return "CommonRefineWith";
        }
        return "";
    }
};

/// One refinement step toward x: stellar subdivision of the minimal cone
/// containing x at the sum of the two rays carrying the largest coefficients
/// (subtractive continued-fraction step). Non-simplicial cones are first
/// split at their barycenter. A fan in which x already spans a ray is returned unchanged.
inline Fan step_toward(const Fan& f, const SymbolicVector& x) {
    Cone s = minimal_cone_containing(f, x);
    if (s.dim() <= 1) return f;
    if (!s.simplicial()) return stellar_subdivision(f, primitive(s.interior_point()));
    auto lambda = simplicial_coordinates(s, x);
    auto greater = [&](std::size_t a, std::size_t b) {
        RatVec d(lambda[a].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = lambda[a][j] - lambda[b][j];
        return x.sign_of(d) > 0;
    };
    std::size_t first = 0;
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (greater(i, first)) first = i;
    std::size_t second = first == 0 ? 1 : 0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (i != first && greater(i, second)) second = i;
    return stellar_subdivision(f, primitive(add(s.rays()[first], s.rays()[second])));
}

inline Fan stellar_at_barycenters(const Fan& f) {
    Fan out = f;
    for (const auto& c : f.maximal_cones())
        if (c.dim() >= 2) out = stellar_subdivision(out, primitive(c.interior_point()));
    return out;
}

/// Append-only sequence of fans, each a subdivision of its predecessor.
/// Extension shares the existing prefix.
class FanTower {
public:
    explicit FanTower(Fan base, std::size_t depth_cap = kDefaultDepthCap) : depth_cap_(depth_cap) {
        check_rank(base.rank());
        require(depth_cap >= 1 && depth_cap <= kDefaultDepthCap, ErrorKind::ResourceCap,
                "tower depth cap must lie in 1.." + std::to_string(kDefaultDepthCap));
        fans_.push_back(std::make_shared<const Fan>(std::move(base)));
        tags_.push_back("base");
    }

    std::size_t size() const { return fans_.size(); }
    std::size_t rank() const { return fans_.front()->rank(); }
    std::size_t depth_cap() const { return depth_cap_; }

    const Fan& level(std::size_t i) const {
        require(i < fans_.size(), ErrorKind::IndexOutOfRange,
                "level " + std::to_string(i) + " of a tower with " + std::to_string(fans_.size()) + " levels");
        return *fans_[i];
    }
    const Fan& last() const { return *fans_.back(); }

    /// Witness that level i subdivides level i-1 (i >= 1).
    const SubdivisionWitness& witness(std::size_t i) const {
        require(i >= 1 && i < fans_.size(), ErrorKind::IndexOutOfRange, "no witness at level " + std::to_string(i));
        return *witnesses_[i - 1];
    }
    const std::string& strategy_tag(std::size_t i) const { return tags_.at(i); }

    FanTower pushed(Fan next, std::string tag) const {
        require(fans_.size() < depth_cap_, ErrorKind::ResourceCap,
                "tower depth cap " + std::to_string(depth_cap_) + " reached");
        auto check = is_subdivision(next, last());
        require(static_cast<bool>(check), ErrorKind::ValidationError, "tower step is not a subdivision: " + check.failure);
        FanTower out = *this;
        out.fans_.push_back(std::make_shared<const Fan>(std::move(next)));
        out.witnesses_.push_back(std::make_shared<const SubdivisionWitness>(std::move(*check.witness)));
        out.tags_.push_back(std::move(tag));
        return out;
    }

private:
    std::size_t depth_cap_;
    std::vector<std::shared_ptr<const Fan>> fans_;
    std::vector<std::shared_ptr<const SubdivisionWitness>> witnesses_;
    std::vector<std::string> tags_;
};

inline FanTower extend_tower(const FanTower& t, const TowerStrategy& s, std::size_t steps) {
    check_rank(t.rank());
    FanTower out = t;
    for (std::size_t i = 0; i < steps; ++i) {
        const Fan& cur = out.last();
        switch (s.kind) {
        case TowerStrategy::Kind::StellarAtBarycenters: out = out.pushed(stellar_at_barycenters(cur), s.tag()); break;
        case TowerStrategy::Kind::TowardDirection:
            require(!s.target->is_zero(), ErrorKind::PreconditionViolation, "target direction is zero");
            out = out.pushed(step_toward(cur, *s.target), s.tag());
            break;
        case TowerStrategy::Kind::CommonRefineWith: out = out.pushed(common_refinement(cur, *s.other), s.tag()); break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chains and the projection to directions

class ConeChain {
public:
    using Entry = std::pair<std::size_t, Cone>;

    explicit ConeChain(std::vector<Entry> entries) : entries_(std::move(entries)) {
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            require(entries_[i].first > entries_[i - 1].first, ErrorKind::PreconditionViolation,
                    "chain levels must increase");
            require(entries_[i - 1].second.contains(entries_[i].second), ErrorKind::PreconditionViolation,
                    "chain is not nested at level " + std::to_string(entries_[i].first));
        }
    }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<Entry> entries_;
};

struct LimitPoint {
    enum class Kind { ResolvedRay, UnresolvedCone };
    Kind kind;
    Cone cone;               // the exact intersection: a ray when resolved
    std::size_t depth;       // level at which the intersection was certified
    std::optional<Ray> ray;  // set when resolved

    bool resolved() const { return kind == Kind::ResolvedRay; }
};

inline LimitPoint resolve_direction(const ConeChain& c) {
    require(!c.empty(), ErrorKind::EmptyChain, "resolve_direction on an empty chain");
    Cone meet = c.entries().front().second;
    for (const auto& [level, cone] : c.entries()) meet = cone_intersect(meet, cone);
    std::size_t depth = c.entries().back().first;
    if (meet.dim() == 1 && meet.pointed())
        return {LimitPoint::Kind::ResolvedRay, meet, depth, primitive(meet.rays().front())};
    return {LimitPoint::Kind::UnresolvedCone, meet, depth, std::nullopt};
}

inline ConeChain chain_toward(const FanTower& t, const SymbolicVector& x) {
    require(!x.is_zero(), ErrorKind::PreconditionViolation, "chain_toward needs a nonzero direction");
    check_same_rank(t.rank(), x.size());
    std::vector<ConeChain::Entry> entries;
    for (std::size_t i = 0; i < t.size(); ++i) entries.emplace_back(i, minimal_cone_containing(t.level(i), x));
    return ConeChain(std::move(entries));
}

// ---------------------------------------------------------------------------
// Fibers of the projection

/// Rank over Q of the span of the coordinates of x.
inline std::size_t fiber_rank(const SymbolicVector& x) {
    require(!x.is_zero(), ErrorKind::PreconditionViolation, "fiber_rank of the zero vector");
    return rank_of(x.coords(), x.symbol_count() + 1);
}

struct FiberModel {
    std::string kind = "LimitToricSpace";
    std::size_t dim;           // n - r
    std::size_t r;
    IntMatrix normalizer;      // U in GL(n, Z)
    SymbolicVector normalized; // U x: first r coordinates Q-independent, the rest zero
};

inline FiberModel fiber_model(std::size_t n, const SymbolicVector& x) {
    check_rank(n);
    check_same_rank(n, x.size());
    std::size_t r = fiber_rank(x);
    std::size_t width = x.symbol_count() + 1;

    // integer relations among coordinates are the left kernel of the
    // (scaled) coefficient matrix; unimodular row reduction exposes them
    Integer l = 1;
    for (const auto& c : x.coords())
        for (const auto& q : c) l = lcm_int(l, denominator_of(q));
    IntMatrix a;
    for (const auto& c : x.coords()) {
        IntVec row;
        for (const auto& q : c) row.push_back(numerator_of(q) * (l / denominator_of(q)));
        a.push_back(std::move(row));
    }
    IntMatrix u = unimodular_row_reduce(a, width);

    std::vector<RatVec> coords;
    for (const auto& row : u) {
        RatVec c = x.pair(row);
        coords.push_back(std::move(c));
    }
    return {"LimitToricSpace", n - r, r, u, SymbolicVector(x.symbols(), std::move(coords))};
}

struct BoundaryStrata {
    IntMatrix rays;
    bool stable; // every ray of the previous level is still a ray
};

inline BoundaryStrata boundary_strata_at_level(const FanTower& t, std::size_t i) {
    const Fan& f = t.level(i);
    BoundaryStrata out{f.rays(), true};
    if (i > 0) {
        for (const auto& r : t.level(i - 1).rays())
            if (std::find(out.rays.begin(), out.rays.end(), r) == out.rays.end()) out.stable = false;
    }
    return out;
}

} // namespace polytrop
