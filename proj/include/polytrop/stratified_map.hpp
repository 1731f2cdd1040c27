#pragma once

// Maps of Delta-complexes induced by vertex assignments, their fibers, and the
// fiber complexes of toric morphisms.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/cone.hpp"
#include "polytrop/delta_complex.hpp"
#include "polytrop/fan.hpp"

namespace polytrop {

/// Cell (dim, id) of a complex.
struct CellRef {
    std::size_t dim;
    std::size_t id;
    friend bool operator==(const CellRef& a, const CellRef& b) { return a.dim == b.dim && a.id == b.id; }
    friend bool operator<(const CellRef& a, const CellRef& b) { return std::tie(a.dim, a.id) < std::tie(b.dim, b.id); }
};

/// Affine-simplicial map: vertex k of each source cell goes to a vertex of its
/// image cell, barycentric coordinates add up along the map.
struct StratifiedMap {
    DeltaComplex source;
    DeltaComplex target;
    std::vector<std::size_t> vertex_map;        // source vertex -> target vertex
    std::vector<std::vector<CellRef>> image;    // [dim][id] -> target cell
    std::vector<std::vector<std::vector<std::size_t>>> slot; // [dim][id][k] -> vertex index in the image cell

    bool surjective_on_cells() const {
        std::set<CellRef> hit;
        for (const auto& level : image) hit.insert(level.begin(), level.end());
        std::size_t total = 0;
        for (std::size_t d = 0; d <= target.dim() && !target.empty(); ++d) total += target.count(d);
        return hit.size() == total;
    }
};

namespace detail {

/// Target cells indexed by vertex set; cells with repeated vertices are left out.
inline std::map<std::set<std::size_t>, std::vector<CellRef>> cells_by_vertex_set(const DeltaComplex& c) {
    std::map<std::set<std::size_t>, std::vector<CellRef>> out;
    for (std::size_t d = 0; d <= c.dim() && !c.empty(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            auto vs = c.vertex_set(d, i);
            if (vs.size() == d + 1) out[vs].push_back({d, i});
        }
    return out;
}

} // namespace detail

/// With match_labels, several target cells on the same vertex set are told
/// apart by carrying the source cell's label.
inline StratifiedMap induced_map_ids(const DeltaComplex& source, const DeltaComplex& target,
                                     const std::vector<std::size_t>& vertex_map, bool match_labels = false) {
    require(vertex_map.size() == source.count(0), ErrorKind::DimensionMismatch, "vertex map must cover every source vertex");
    for (auto v : vertex_map) require(v < target.count(0), ErrorKind::IndexOutOfRange, "vertex map names a missing target vertex");
    auto by_set = detail::cells_by_vertex_set(target);
    StratifiedMap m{source, target, vertex_map, {}, {}};
    for (std::size_t d = 0; d <= source.dim() && !source.empty(); ++d) {
        m.image.emplace_back();
        m.slot.emplace_back();
        for (std::size_t i = 0; i < source.count(d); ++i) {
            const Cell& c = source.cell(d, i);
            std::set<std::size_t> img;
            for (auto v : c.vertices) img.insert(vertex_map[v]);
            auto it = by_set.find(img);
            require(it != by_set.end(), ErrorKind::NotSimplicial,
                    "image of cell " + c.label + " spans no target cell");
            std::vector<CellRef> candidates = it->second;
            if (candidates.size() > 1 && match_labels)
                std::erase_if(candidates, [&](CellRef r) { return target.cell(r.dim, r.id).label != c.label; });
            require(candidates.size() == 1, ErrorKind::NotSimplicial,
                    "image of cell " + c.label + " is ambiguous: several target cells share its vertices");
            CellRef t = candidates.front();
            const auto& tv = target.cell(t.dim, t.id).vertices;
            std::vector<std::size_t> slots;
            for (auto v : c.vertices)
                slots.push_back(static_cast<std::size_t>(std::find(tv.begin(), tv.end(), vertex_map[v]) - tv.begin()));
            if (d > 0)
                for (auto f : c.faces) {
                    CellRef fi = m.image[d - 1][f];
                    auto fv = target.vertex_set(fi.dim, fi.id);
                    require(std::includes(img.begin(), img.end(), fv.begin(), fv.end()), ErrorKind::NotSimplicial,
                            "face images of " + c.label + " are incompatible");
                }
            m.image[d].push_back(t);
            m.slot[d].push_back(std::move(slots));
        }
    }
    return m;
}

/// Map induced by a vertex assignment given by labels.
inline StratifiedMap induced_map(const std::map<std::string, std::string>& assignment, const DeltaComplex& source,
                                 const DeltaComplex& target) {
    std::map<std::string, std::size_t> tix;
    for (std::size_t v = 0; v < target.count(0); ++v) tix[target.cell(0, v).label] = v;
    std::vector<std::size_t> vm;
    for (std::size_t v = 0; v < source.count(0); ++v) {
        const auto& name = source.cell(0, v).label;
        auto a = assignment.find(name);
        require(a != assignment.end(), ErrorKind::NotSimplicial, "vertex " + name + " has no image");
        auto t = tix.find(a->second);
        require(t != tix.end(), ErrorKind::NotSimplicial, "target has no vertex " + a->second);
        vm.push_back(t->second);
    }
    return induced_map_ids(source, target, vm);
}

/// Quotient of a complex built from incidence data onto its algebraic form.
inline StratifiedMap collapse_to_algebraic(const DeltaComplex& c) {
    require(c.provenance().has_value(), ErrorKind::MissingProvenance, "complex carries no incidence data");
    DeltaComplex alg = c.mode() == ComplexMode::Algebraic ? c : from_incidence(*c.provenance(), ComplexMode::Algebraic);
    std::map<std::string, std::size_t> tix;
    for (std::size_t v = 0; v < alg.count(0); ++v) tix[alg.cell(0, v).label] = v;
    std::vector<std::size_t> vm;
    for (std::size_t v = 0; v < c.count(0); ++v) vm.push_back(tix.at(c.cell(0, v).label));
    return induced_map_ids(c, alg, vm, true);
}

// ---------------------------------------------------------------------------
// Polyhedral complexes (fibers)

struct PolyCell {
    std::size_t dim;
    std::string label;
};

/// Relatively open cells partitioning a compact space; chi = sum (-1)^dim.
struct PolyhedralComplex {
    std::vector<PolyCell> cells;

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (const auto& c : cells) {
            if (f.size() <= c.dim) f.resize(c.dim + 1, 0);
            ++f[c.dim];
        }
        return f;
    }
    Integer euler_characteristic() const {
        Integer chi = 0;
        for (const auto& c : cells) chi += c.dim % 2 == 0 ? 1 : -1;
        return chi;
    }
    std::size_t dim() const {
        std::size_t d = 0;
        for (const auto& c : cells) d = std::max(d, c.dim);
        return d;
    }
    bool empty() const { return cells.empty(); }
};

/// Point of the target: a weight per target vertex, nonnegative, summing to 1.
struct TargetPoint {
    std::map<std::size_t, Rational> weights;
};

inline TargetPoint target_vertex(const DeltaComplex& target, const std::string& label) {
    for (std::size_t v = 0; v < target.count(0); ++v)
        if (target.cell(0, v).label == label) return {{{v, Rational(1)}}};
    fail(ErrorKind::PointOutsideTarget, "target has no vertex " + label);
}

/// Point with barycentric coordinates in a target cell.
inline TargetPoint target_point(const DeltaComplex& target, CellRef cell, const RatVec& coords) {
    require(cell.dim < target.dim() + 1 && cell.id < target.count(cell.dim), ErrorKind::PointOutsideTarget,
            "no such target cell");
    const auto& vs = target.cell(cell.dim, cell.id).vertices;
    require(coords.size() == vs.size(), ErrorKind::PointOutsideTarget, "coordinate count does not match the cell");
    Rational total = 0;
    TargetPoint p;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        require(coords[k] >= 0, ErrorKind::PointOutsideTarget, "negative barycentric coordinate");
        total += coords[k];
        if (coords[k] != 0) p.weights[vs[k]] += coords[k];
    }
    require(total == 1, ErrorKind::PointOutsideTarget, "barycentric coordinates must sum to 1");
    return p;
}

struct FiberReport {
    PolyhedralComplex fiber;
    Integer chi;
    std::size_t dim = 0;
    std::optional<Integer> supplied_chi;
    std::optional<std::size_t> supplied_dim;
    bool matches_supplied = true;
};

/// Preimage of p. Each source cell whose relative interior meets the preimage
/// contributes one open cell (the preimage polytope there).
inline FiberReport map_fiber(const StratifiedMap& m, const TargetPoint& p,
                             const std::optional<DeltaComplex>& supplied = std::nullopt) {
    require(!p.weights.empty(), ErrorKind::PointOutsideTarget, "point has no support");
    for (const auto& [v, w] : p.weights)
        require(v < m.target.count(0) && w > 0, ErrorKind::PointOutsideTarget, "point is not in the target");
    // the support must span a target cell
    std::set<std::size_t> support;
    for (const auto& [v, w] : p.weights) support.insert(v);
    auto by_set = detail::cells_by_vertex_set(m.target);
    require(by_set.count(support), ErrorKind::PointOutsideTarget, "point support spans no target cell");

    FiberReport r;
    for (std::size_t d = 0; d <= m.source.dim() && !m.source.empty(); ++d)
        for (std::size_t i = 0; i < m.source.count(d); ++i) {
            const Cell& c = m.source.cell(d, i);
            std::set<std::size_t> img;
            for (auto v : c.vertices) img.insert(m.vertex_map[v]);
            if (!std::includes(img.begin(), img.end(), support.begin(), support.end())) continue;
            // cone over (lambda_0..lambda_d, t): lambda >= 0, t >= 0, per target vertex sum = w t
            std::size_t n = d + 2;
            IntMatrix ineq, eq;
            for (std::size_t k = 0; k <= d; ++k) {
                IntVec row(n, Integer(0));
                row[k] = 1;
                ineq.push_back(row);
            }
            for (auto tv : img) {
                Rational w = p.weights.count(tv) ? p.weights.at(tv) : Rational(0);
                Integer den = denominator_of(w);
                IntVec row(n, Integer(0));
                for (std::size_t k = 0; k <= d; ++k)
                    if (m.vertex_map[c.vertices[k]] == tv) row[k] = den;
                row[d + 1] = -numerator_of(w);
                eq.push_back(row);
            }
            Cone cone = Cone::from_inequalities(n, ineq, eq);
            if (cone.is_zero_cone()) continue;
            // meets the relative interior iff every lambda_k is positive somewhere
            RatVec x = to_rational(cone.interior_point());
            bool interior = true;
            for (std::size_t k = 0; k <= d; ++k)
                if (x[k] <= 0) interior = false;
            if (!interior) continue;
            r.fiber.cells.push_back({cone.dim() - 1, c.label});
        }
    r.chi = r.fiber.euler_characteristic();
    r.dim = r.fiber.dim();
    if (supplied) {
        r.supplied_chi = supplied->euler_characteristic();
        r.supplied_dim = supplied->dim();
        r.matches_supplied = *r.supplied_chi == r.chi && *r.supplied_dim == r.dim;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Toric morphisms

inline RatVec apply_lattice_map(const IntMatrix& m, const RatVec& x) {
    RatVec y(m.size(), Rational(0));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) y[r] += Rational(m[r][c]) * x[c];
    return y;
}

/// Relative star of the base cone: source cones whose relative interior maps
/// into the relative interior of `base`; each gives an open cell of dimension
/// dim(sigma) - dim(base).
inline PolyhedralComplex toric_fiber_complex(const IntMatrix& lattice_map, const Fan& source, const Fan& target,
                                             const Cone& base) {
    require(lattice_map.size() == target.rank(), ErrorKind::DimensionMismatch, "lattice map has the wrong row count");
    for (const auto& row : lattice_map)
        require(row.size() == source.rank(), ErrorKind::DimensionMismatch, "lattice map has the wrong column count");
    require(base.rank() == target.rank(), ErrorKind::DimensionMismatch, "base cone rank mismatch");
    auto target_cones = target.all_cones();
    require(std::find(target_cones.begin(), target_cones.end(), base) != target_cones.end(), ErrorKind::NotCompatible,
            "base cone is not a cone of the target fan");

    PolyhedralComplex out;
    for (const auto& sigma : source.all_cones()) {
        std::vector<RatVec> imgs;
        for (const auto& r : sigma.rays()) imgs.push_back(apply_lattice_map(lattice_map, to_rational(r)));
        bool inside = false;
        for (const auto& tau : target.maximal_cones()) {
            bool all = true;
            for (const auto& y : imgs)
                if (!tau.contains(y)) all = false;
            if (all) inside = true;
        }
        require(inside, ErrorKind::NotCompatible, "cone " + to_string(sigma) + " maps into no target cone");
        RatVec y = apply_lattice_map(lattice_map, to_rational(sigma.interior_point()));
        if (cone_contains(base, y).where != Location::Interior) continue;
        if (sigma.dim() < base.dim()) continue;
        out.cells.push_back({sigma.dim() - base.dim(), to_string(sigma)});
    }
    return out;
}

} // namespace polytrop
