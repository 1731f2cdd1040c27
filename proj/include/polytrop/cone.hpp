#pragma once

// Rational polyhedral cones with both descriptions computed eagerly.
//
// A Cone is span(lineality) + cone(rays) = { x : equations . x = 0,
// facets . x >= 0 }. Both sides are canonical (reduced modulo the relevant
// subspace and made primitive), so two cones are equal as sets exactly when
// their representations compare equal.

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/arith.hpp"
#include "polytrop/detail/double_description.hpp"
#include "polytrop/lattice.hpp"

namespace polytrop {

class Cone {
public:
    /// cone(gens) + span(lineality). No rank cap and no convexity check.
    static Cone hull(std::size_t rank, const IntMatrix& gens, const IntMatrix& lineality = {}) {
        IntMatrix gens_nz;
        for (const auto& g : gens) {
            check_same_rank(g.size(), rank);
            if (!is_zero(g)) gens_nz.push_back(g);
        }
        for (const auto& l : lineality) check_same_rank(l.size(), rank);
        // facets of C are the extreme rays of C* = { a : a.g >= 0, a.l = 0 }
        auto dual = detail::double_description(gens_nz, lineality, rank);
        return Cone(rank, std::move(dual.rays), std::move(dual.lineality));
    }

    /// { x : eq . x = 0, ineq . x >= 0 }. No rank cap.
    static Cone from_inequalities(std::size_t rank, const IntMatrix& ineq, const IntMatrix& eq = {}) {
        for (const auto& a : ineq) check_same_rank(a.size(), rank);
        for (const auto& e : eq) check_same_rank(e.size(), rank);
        auto primal = detail::double_description(ineq, eq, rank);
        return hull(rank, primal.rays, primal.lineality);
    }

    static Cone zero(std::size_t rank) { return hull(rank, {}); }

    static Cone whole(std::size_t rank) { return from_inequalities(rank, {}); }

    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return rank_ - equations_.size(); }
    const IntMatrix& rays() const { return rays_; }
    const IntMatrix& lineality() const { return lineality_; }
    const IntMatrix& facets() const { return facets_; }
    const IntMatrix& equations() const { return equations_; }

    bool pointed() const { return lineality_.empty(); }
    bool is_zero_cone() const { return dim() == 0; }
    bool full_dimensional() const { return equations_.empty(); }
    bool simplicial() const { return pointed() && rays_.size() == dim(); }

    /// Simplicial and the ray generators extend to a lattice basis.
    bool unimodular() const {
        if (!simplicial()) return false;
        return maximal_minor_gcd(rays_) == 1;
    }

    /// Sum of the extreme rays: a point of the relative interior (modulo lineality).
    IntVec interior_point() const {
        IntVec s(rank_, Integer(0));
        for (const auto& r : rays_) s = add(s, r);
        return s;
    }

    bool contains(const RatVec& v) const {
        for (const auto& e : equations_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) < 0) return false;
        return true;
    }
    bool contains(const IntVec& v) const {
        for (const auto& e : equations_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) < 0) return false;
        return true;
    }

    /// Whether `other` is a subset of this cone.
    bool contains(const Cone& other) const {
        for (const auto& r : other.rays_)
            if (!contains(r)) return false;
        for (const auto& l : other.lineality_)
            if (!contains(l) || !contains(negate(l))) return false;
        return true;
    }

    /// Indices of facets vanishing at v.
    std::vector<std::size_t> tight_facets(const RatVec& v) const {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (dot(facets_[i], v) == 0) t.push_back(i);
        return t;
    }
    std::vector<std::size_t> tight_facets(const IntVec& v) const {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (dot(facets_[i], v) == 0) t.push_back(i);
        return t;
    }

    /// The face cut out by the listed facets.
    Cone face(const std::vector<std::size_t>& facet_ids) const {
        IntMatrix gens;
        for (const auto& r : rays_) {
            bool tight = std::all_of(facet_ids.begin(), facet_ids.end(),
                                     [&](std::size_t i) { return dot(facets_[i], r) == 0; });
            if (tight) gens.push_back(r);
        }
        return hull(rank_, gens, lineality_);
    }

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.rank_ == b.rank_ && a.equations_ == b.equations_ && a.lineality_ == b.lineality_ &&
               a.rays_ == b.rays_;
    }
    friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }

    /// Lexicographic on sorted rays, then lineality: the deterministic tie-break order.
    friend bool operator<(const Cone& a, const Cone& b) {
        if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
        if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
        return a.equations_ < b.equations_;
    }

private:
    Cone(std::size_t rank, IntMatrix facet_rays, IntMatrix dual_lineality) : rank_(rank) {
        equations_ = canonical_basis(dual_lineality, rank_);

        // lineality of C = { x : E x = 0, F x = 0 }
        IntMatrix constraints = equations_;
        for (const auto& f : facet_rays) constraints.push_back(f);
        IntMatrix lin = nullspace(constraints, rank_);
        lineality_ = canonical_basis(lin, rank_);

        for (auto& f : facet_rays) facets_.push_back(reduce_modulo_primitive(std::move(f), equations_));
        std::sort(facets_.begin(), facets_.end());
        facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());

        auto primal = detail::double_description(facets_, equations_, rank_);
        for (auto& r : primal.rays) rays_.push_back(reduce_modulo_primitive(std::move(r), lineality_));
        std::sort(rays_.begin(), rays_.end());
        rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
    }

    std::size_t rank_ = 0;
    IntMatrix rays_;
    IntMatrix lineality_;
    IntMatrix facets_;
    IntMatrix equations_;
};

inline std::string to_string(const Cone& c) {
    std::string s = "cone{";
    for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? "," : "") + to_string(c.rays()[i]);
    if (!c.pointed()) {
        s += " | lin ";
        for (std::size_t i = 0; i < c.lineality().size(); ++i) s += (i ? "," : "") + to_string(c.lineality()[i]);
    }
    return s + "}";
}

inline std::ostream& operator<<(std::ostream& os, const Cone& c) { return os << to_string(c); }

// ---------------------------------------------------------------------------
// Public operations

/// Strongly convex cone generated by nonzero lattice vectors, rank <= 4.
inline Cone cone_from_generators(const std::vector<LatticeVector>& gens) {
    require(!gens.empty(), ErrorKind::PreconditionViolation, "cone_from_generators needs at least one generator");
    std::size_t n = gens.front().size();
    check_rank(n);
    for (const auto& g : gens) {
        check_same_rank(g.size(), n);
        require(!is_zero(g), ErrorKind::ZeroVector, "zero generator");
    }
    Cone c = Cone::hull(n, gens);
    require(c.pointed(), ErrorKind::NotStronglyConvex, "generators span a cone containing a line: " + to_string(c));
    return c;
}

/// H-described cone; may carry a lineality space.
inline Cone cone_from_inequalities(std::size_t n, const IntMatrix& ineq, const IntMatrix& eq = {}) {
    check_rank(n);
    return Cone::from_inequalities(n, ineq, eq);
}

enum class Location { Interior, Boundary, Outside };

struct Containment {
    Location where;
    std::optional<Cone> face; // smallest face containing the point; set unless Outside
};

inline Containment cone_contains(const Cone& c, const RationalVector& v) {
    check_same_rank(c.rank(), v.size());
    if (!c.contains(v)) return {Location::Outside, std::nullopt};
    auto tight = c.tight_facets(v);
    if (tight.empty()) return {Location::Interior, c};
    return {Location::Boundary, c.face(tight)};
}

inline Cone cone_intersect(const Cone& a, const Cone& b) {
    check_same_rank(a.rank(), b.rank());
    IntMatrix ineq = a.facets(), eq = a.equations();
    ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
    eq.insert(eq.end(), b.equations().begin(), b.equations().end());
    return Cone::from_inequalities(a.rank(), ineq, eq);
}

/// Smallest face of c containing the subset s (s must lie in c).
inline Cone minimal_face_containing(const Cone& c, const Cone& s) {
    RatVec p = to_rational(s.interior_point());
    return c.face(c.tight_facets(p));
}

/// Whether f is a face of c.
inline bool is_face(const Cone& f, const Cone& c) {
    if (f.rank() != c.rank() || !c.contains(f)) return false;
    // the minimal face containing f is inside f iff f is that face
    auto tight = c.tight_facets(f.interior_point());
    for (const auto& r : c.rays()) {
        bool on_face = std::all_of(tight.begin(), tight.end(), [&](std::size_t i) { return dot(c.facets()[i], r) == 0; });
        if (on_face && !f.contains(r)) return false;
    }
    for (const auto& l : c.lineality())
        if (!f.contains(l) || !f.contains(negate(l))) return false;
    return true;
}

/// All faces, from the minimal one (lineality space, the zero cone when pointed) up to c.
inline std::vector<Cone> cone_faces(const Cone& c) {
    std::set<Cone> seen;
    std::vector<Cone> stack{c};
    seen.insert(c);
    while (!stack.empty()) {
        Cone cur = std::move(stack.back());
        stack.pop_back();
        for (std::size_t i = 0; i < cur.facets().size(); ++i) {
            Cone f = cur.face({i});
            if (seen.insert(f).second) stack.push_back(std::move(f));
        }
    }
    std::vector<Cone> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.dim() < b.dim(); });
    return out;
}

/// Minkowski cone generated by c and the ray r.
inline Cone join(const Cone& c, const IntVec& r) {
    IntMatrix gens = c.rays();
    gens.push_back(r);
    return Cone::hull(c.rank(), gens, c.lineality());
}

} // namespace polytrop
