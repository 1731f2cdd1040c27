#pragma once

// Fans stored by their maximal cones. A Fan value only comes out of a passing
// validation, so holders can rely on the face-compatibility invariant.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/cone.hpp"

namespace polytrop {

class Fan {
public:
    std::size_t rank() const { return rank_; }
    const std::vector<Cone>& maximal_cones() const { return cones_; }
    bool complete() const { return complete_; }

    bool pointed() const {
        return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.pointed(); });
    }

    /// Every cone of the fan, faces included, sorted by dimension then lexicographically.
    std::vector<Cone> all_cones() const {
        std::set<Cone> s;
        for (const auto& c : cones_)
            for (auto& f : cone_faces(c)) s.insert(std::move(f));
        std::vector<Cone> out(s.begin(), s.end());
        std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.dim() < b.dim(); });
        return out;
    }

    /// Primitive generators of the rays (one-dimensional cones modulo lineality).
    IntMatrix rays() const {
        std::set<IntVec> s;
        for (const auto& c : cones_)
            for (const auto& r : c.rays()) s.insert(r);
        return IntMatrix(s.begin(), s.end());
    }

    friend bool operator==(const Fan& a, const Fan& b) { return a.rank_ == b.rank_ && a.cones_ == b.cones_; }
    friend bool operator!=(const Fan& a, const Fan& b) { return !(a == b); }

private:
    friend struct FanValidation;
    Fan(std::size_t rank, std::vector<Cone> cones, bool complete)
        : rank_(rank), cones_(std::move(cones)), complete_(complete) {}

    std::size_t rank_;
    std::vector<Cone> cones_;
    bool complete_;
};

struct FanValidation {
    bool valid = true;
    bool complete = false;
    std::vector<std::string> violations;
    std::optional<Fan> fan;

    static FanValidation run(std::size_t rank, std::vector<Cone> input);
};

namespace detail {

/// Facets of c, as cones.
inline std::vector<Cone> facet_cones(const Cone& c) {
    std::vector<Cone> out;
    for (std::size_t i = 0; i < c.facets().size(); ++i) out.push_back(c.face({i}));
    return out;
}

/// Whether the full-dimensional pieces cover the full-dimensional region exactly,
/// by facet pairing: each facet of a piece lies on the region's boundary or is
/// shared with exactly one other piece.
inline bool pieces_cover(const Cone& region, const std::vector<Cone>& pieces) {
    if (pieces.empty()) return false;
    for (const auto& p : pieces)
        if (p.dim() != region.dim() || !region.contains(p)) return false;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (const auto& f : facet_cones(pieces[i])) {
            if (!region.tight_facets(f.interior_point()).empty()) continue;
            int shared = 0;
            for (std::size_t j = 0; j < pieces.size(); ++j)
                if (j != i && is_face(f, pieces[j])) ++shared;
            if (shared != 1) return false;
        }
    }
    return true;
}

} // namespace detail

inline FanValidation FanValidation::run(std::size_t rank, std::vector<Cone> input) {
    FanValidation out;
    for (const auto& c : input)
        if (c.rank() != rank) {
            out.valid = false;
            out.violations.push_back("cone " + to_string(c) + " has rank " + std::to_string(c.rank()));
        }
    if (!out.valid) return out;

    std::sort(input.begin(), input.end());
    input.erase(std::unique(input.begin(), input.end()), input.end());

    // a listed cone that is a face of another listed cone is not maximal
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < input.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < input.size() && !dominated; ++j)
            if (i != j && is_face(input[i], input[j])) dominated = true;
        if (!dominated) cones.push_back(input[i]);
    }

    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            Cone s = cone_intersect(cones[i], cones[j]);
            if (!is_face(s, cones[i]) || !is_face(s, cones[j])) {
                out.valid = false;
                out.violations.push_back("overlap " + to_string(s) + " of " + to_string(cones[i]) + " and " +
                                         to_string(cones[j]) + " is not a common face");
            }
        }

    if (out.valid && !cones.empty()) {
        bool pure = std::all_of(cones.begin(), cones.end(), [](const Cone& c) { return c.full_dimensional(); });
        out.complete = pure && detail::pieces_cover(Cone::whole(rank), cones);
    }
    if (out.valid) out.fan = Fan(rank, std::move(cones), out.complete);
    return out;
}

/// Report form: never throws on geometric problems.
inline FanValidation validate_fan(std::size_t rank, std::vector<Cone> cones) {
    return FanValidation::run(rank, std::move(cones));
}

/// Throwing form for callers that expect a valid fan.
inline Fan make_fan(std::size_t rank, std::vector<Cone> cones) {
    auto v = FanValidation::run(rank, std::move(cones));
    if (!v.valid) fail(ErrorKind::ValidationError, v.violations.front());
    return std::move(*v.fan);
}

// ---------------------------------------------------------------------------
// Subdivision

struct SubdivisionWitness {
    /// (fine cone, minimal coarse cone containing it), over every cone of the fine fan.
    std::vector<std::pair<Cone, Cone>> assignment;

    const Cone& image(const Cone& fine) const {
        for (const auto& [f, c] : assignment)
            if (f == fine) return c;
        fail(ErrorKind::IndexOutOfRange, "cone " + to_string(fine) + " is not in the fine fan");
    }
};

struct SubdivisionCheck {
    std::optional<SubdivisionWitness> witness;
    std::string failure;          // set when witness is empty
    std::optional<Cone> crossing; // fine cone meeting a coarse wall, if that was the cause
    explicit operator bool() const { return witness.has_value(); }
};

/// Minimal cone of `coarse` containing `c`, if any cone contains it.
inline std::optional<Cone> minimal_containing_cone(const Fan& coarse, const Cone& c) {
    for (const auto& m : coarse.maximal_cones())
        if (m.contains(c)) return minimal_face_containing(m, c);
    return std::nullopt;
}

inline SubdivisionCheck is_subdivision(const Fan& fine, const Fan& coarse) {
    SubdivisionCheck out;
    if (fine.rank() != coarse.rank()) {
        out.failure = "rank mismatch";
        return out;
    }
    SubdivisionWitness w;
    for (const auto& c : fine.maximal_cones()) {
        if (!minimal_containing_cone(coarse, c)) {
            out.failure = "fine cone " + to_string(c) + " crosses a wall of the coarse fan";
            out.crossing = c;
            return out;
        }
    }
    // supports must agree: each coarse cone is tiled by the fine cones inside it
    for (const auto& m : coarse.maximal_cones()) {
        std::vector<Cone> inside;
        for (const auto& c : fine.maximal_cones())
            if (m.contains(c) && c.dim() == m.dim()) inside.push_back(c);
        if (!detail::pieces_cover(m, inside)) {
            out.failure = "coarse cone " + to_string(m) + " is not covered by the fine fan";
            return out;
        }
    }
    for (const auto& c : fine.all_cones()) w.assignment.emplace_back(c, *minimal_containing_cone(coarse, c));
    out.witness = std::move(w);
    return out;
}

/// Coarsest common refinement of two complete fans.
inline Fan common_refinement(const Fan& a, const Fan& b) {
    check_same_rank(a.rank(), b.rank());
    check_rank(a.rank());
    require(a.complete() && b.complete(), ErrorKind::PreconditionViolation, "common_refinement needs complete fans");
    std::vector<Cone> cones;
    for (const auto& x : a.maximal_cones())
        for (const auto& y : b.maximal_cones()) {
            Cone s = cone_intersect(x, y);
            if (s.full_dimensional()) cones.push_back(std::move(s));
        }
    return make_fan(a.rank(), std::move(cones));
}

/// Star subdivision at a ray. Returns f itself when r is already a ray.
inline Fan stellar_subdivision(const Fan& f, const Ray& r) {
    check_same_rank(f.rank(), r.rank());
    require(f.pointed(), ErrorKind::PreconditionViolation, "stellar subdivision needs strongly convex cones");
    const IntVec& v = r.direction();
    auto rays = f.rays();
    if (std::find(rays.begin(), rays.end(), v) != rays.end()) return f;
    std::vector<Cone> cones;
    for (const auto& c : f.maximal_cones()) {
        if (!c.contains(v)) {
            cones.push_back(c);
            continue;
        }
        for (const auto& facet : detail::facet_cones(c))
            if (!facet.contains(v)) cones.push_back(join(facet, v));
    }
    return make_fan(f.rank(), std::move(cones));
}

inline std::string to_string(const Fan& f) {
    std::string s = "fan[";
    for (std::size_t i = 0; i < f.maximal_cones().size(); ++i) s += (i ? ", " : "") + to_string(f.maximal_cones()[i]);
    return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Fan& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Standard fans

/// The fan of coordinate orthants of Z^n.
inline Fan orthant_fan(std::size_t n) {
    check_rank(n);
    std::vector<Cone> cones;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        IntMatrix gens;
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, Integer(0));
            e[i] = (mask >> i) & 1 ? -1 : 1;
            gens.push_back(std::move(e));
        }
        cones.push_back(cone_from_generators(gens));
    }
    return make_fan(n, std::move(cones));
}

/// Two half-spaces { normal . x >= 0 } and { normal . x <= 0 }.
inline Fan halfspace_fan(const IntVec& normal) {
    std::size_t n = normal.size();
    check_rank(n);
    require(!is_zero(normal), ErrorKind::ZeroVector, "halfspace_fan normal");
    return make_fan(n, {cone_from_inequalities(n, {normal}), cone_from_inequalities(n, {negate(normal)})});
}

} // namespace polytrop
