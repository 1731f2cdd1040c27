#pragma once

// Generalized Delta-complexes: ordered cells with explicit face maps, self
// gluings allowed. Cells carry a lattice-simplex chart of some edge length
// (default 1) and remember their carrier in the complex they were first built
// as, which keeps vertex identities canonical across repeated subdivision.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polytrop/arith.hpp"

namespace polytrop {

// ---------------------------------------------------------------------------
// Incidence data

struct Stratum {
    std::string name;
    std::size_t codim = 1;
    std::size_t branches = 1;
    std::vector<std::string> branch_of; // local sheets, by divisor name; optional
};

struct StrataIncidence {
    std::vector<Stratum> strata;
    std::vector<std::pair<std::string, std::string>> closures; // (lower, upper): lower lies in the closure of upper
};

enum class ComplexMode { Plain, Algebraic, Analytic };

inline std::string to_string(ComplexMode m) {
    switch (m) {
    case ComplexMode::Plain: return "plain";
    case ComplexMode::Algebraic: return "algebraic";
    case ComplexMode::Analytic: return "analytic";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Complex

struct Cell {
    std::vector<std::size_t> vertices; // 0-cell ids, dim + 1 of them, repeats allowed
    std::vector<std::size_t> faces;    // (dim-1)-cell ids; face i omits vertex i
    std::string label;
    Integer scale = 1;                 // edge length of the lattice-simplex chart

    // carrier in the root complex and barycentric coordinates of each vertex there
    std::size_t root_dim = 0;
    std::size_t root_id = 0;
    std::vector<RatVec> root_coords;

    std::size_t dim() const { return vertices.size() - 1; }
};

/// Face table and labels of the complex a family of subdivisions started from.
struct RootData {
    std::vector<std::vector<std::vector<std::size_t>>> faces; // [dim][id] -> face ids
    std::vector<std::vector<std::string>> labels;
};

/// A point of a root cell, pushed down to its minimal carrier.
struct RootPoint {
    std::size_t dim;
    std::size_t id;
    RatVec coords; // all positive, summing to 1

    friend bool operator<(const RootPoint& a, const RootPoint& b) {
        return std::tie(a.dim, a.id, a.coords) < std::tie(b.dim, b.id, b.coords);
    }
    friend bool operator==(const RootPoint& a, const RootPoint& b) {
        return a.dim == b.dim && a.id == b.id && a.coords == b.coords;
    }
};

class DeltaComplex {
public:
    DeltaComplex() = default;

    /// Validates face maps and simplicial identities. Cells without root data
    /// become their own roots.
    DeltaComplex(std::vector<std::vector<Cell>> cells, ComplexMode mode = ComplexMode::Plain,
                 std::shared_ptr<const RootData> root = nullptr)
        : cells_(std::move(cells)), mode_(mode), root_(std::move(root)) {
        while (!cells_.empty() && cells_.back().empty()) cells_.pop_back();
        validate();
        if (!root_) {
            auto r = std::make_shared<RootData>();
            for (std::size_t d = 0; d < cells_.size(); ++d) {
                r->faces.emplace_back();
                r->labels.emplace_back();
                for (std::size_t i = 0; i < cells_[d].size(); ++i) {
                    auto& c = cells_[d][i];
                    r->faces[d].push_back(c.faces);
                    r->labels[d].push_back(c.label);
                    c.root_dim = d;
                    c.root_id = i;
                    c.root_coords.assign(d + 1, RatVec(d + 1, Rational(0)));
                    for (std::size_t k = 0; k <= d; ++k) c.root_coords[k][k] = 1;
                }
            }
            root_ = std::move(r);
        }
    }

    std::size_t dim() const { return cells_.empty() ? 0 : cells_.size() - 1; }
    bool empty() const { return cells_.empty(); }
    std::size_t count(std::size_t d) const { return d < cells_.size() ? cells_[d].size() : 0; }
    const std::vector<Cell>& cells(std::size_t d) const {
        static const std::vector<Cell> none;
        return d < cells_.size() ? cells_[d] : none;
    }
    const Cell& cell(std::size_t d, std::size_t i) const {
        require(d < cells_.size() && i < cells_[d].size(), ErrorKind::IndexOutOfRange,
                "no cell " + std::to_string(i) + " in dimension " + std::to_string(d));
        return cells_[d][i];
    }
    ComplexMode mode() const { return mode_; }
    const RootData& root() const { return *root_; }
    std::shared_ptr<const RootData> root_ptr() const { return root_; }

    bool affine() const { return affine_; }
    DeltaComplex without_affine_structure() const {
        DeltaComplex c = *this;
        c.affine_ = false;
        return c;
    }

    const std::optional<StrataIncidence>& provenance() const { return provenance_; }
    DeltaComplex with_provenance(StrataIncidence s) const {
        DeltaComplex c = *this;
        c.provenance_ = std::move(s);
        return c;
    }

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (const auto& level : cells_) f.push_back(level.size());
        return f;
    }

    Integer euler_characteristic() const {
        Integer chi = 0;
        for (std::size_t d = 0; d < cells_.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * Integer(cells_[d].size());
        return chi;
    }

    /// Every cell is a face of some top-dimensional cell.
    bool pure() const {
        if (cells_.empty()) return true;
        std::vector<std::set<std::size_t>> reached(cells_.size());
        for (std::size_t i = 0; i < cells_.back().size(); ++i) reached.back().insert(i);
        for (std::size_t d = cells_.size() - 1; d > 0; --d)
            for (auto i : reached[d])
                for (auto f : cells_[d][i].faces) reached[d - 1].insert(f);
        for (std::size_t d = 0; d < cells_.size(); ++d)
            if (reached[d].size() != cells_[d].size()) return false;
        return true;
    }

    std::optional<std::pair<std::size_t, std::size_t>> find_label(const std::string& label) const {
        for (std::size_t d = 0; d < cells_.size(); ++d)
            for (std::size_t i = 0; i < cells_[d].size(); ++i)
                if (cells_[d][i].label == label) return std::make_pair(d, i);
        return std::nullopt;
    }

    /// Vertex ids of a cell as a set.
    std::set<std::size_t> vertex_set(std::size_t d, std::size_t i) const {
        const auto& v = cell(d, i).vertices;
        return {v.begin(), v.end()};
    }

    /// Root point of vertex v.
    RootPoint vertex_point(std::size_t v) const {
        const auto& c = cell(0, v);
        return {c.root_dim, c.root_id, c.root_coords.front()};
    }

private:
    void validate() const {
        for (std::size_t d = 0; d < cells_.size(); ++d)
            for (std::size_t i = 0; i < cells_[d].size(); ++i) {
                const auto& c = cells_[d][i];
                std::string where = "cell " + std::to_string(i) + " of dimension " + std::to_string(d);
                require(c.vertices.size() == d + 1, ErrorKind::ValidationError, where + " has the wrong vertex count");
                require(c.scale >= 1, ErrorKind::ValidationError, where + " has a nonpositive scale");
                for (auto v : c.vertices)
                    require(v < count(0), ErrorKind::ValidationError, where + " names a missing vertex");
                if (d == 0) {
                    require(c.vertices[0] == i, ErrorKind::ValidationError, "vertex " + std::to_string(i) + " must list itself");
                    continue;
                }
                require(c.faces.size() == d + 1, ErrorKind::ValidationError, where + " has the wrong face count");
                for (std::size_t k = 0; k <= d; ++k) {
                    require(c.faces[k] < count(d - 1), ErrorKind::ValidationError, where + " names a missing face");
                    std::vector<std::size_t> expect = c.vertices;
                    expect.erase(expect.begin() + static_cast<long>(k));
                    require(cells_[d - 1][c.faces[k]].vertices == expect, ErrorKind::ValidationError,
                            where + ": face " + std::to_string(k) + " has incompatible vertices");
                }
                if (d >= 2)
                    for (std::size_t a = 0; a <= d; ++a)
                        for (std::size_t b = a + 1; b <= d; ++b) {
                            // d_a d_b = d_{b-1} d_a
                            std::size_t lhs = cells_[d - 1][c.faces[b]].faces[a];
                            std::size_t rhs = cells_[d - 1][c.faces[a]].faces[b - 1];
                            require(lhs == rhs, ErrorKind::ValidationError, where + " violates a simplicial identity");
                        }
            }
    }

    std::vector<std::vector<Cell>> cells_;
    ComplexMode mode_ = ComplexMode::Plain;
    std::shared_ptr<const RootData> root_;
    bool affine_ = true;
    std::optional<StrataIncidence> provenance_;
};

// ---------------------------------------------------------------------------
// Builders

/// Simplicial complex from maximal simplices over named vertices. Cell vertex
/// order follows the order of `names`.
inline DeltaComplex from_facets(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& facets) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) {
        require(index.emplace(names[i], i).second, ErrorKind::ValidationError, "duplicate vertex " + names[i]);
    }
    std::set<std::vector<std::size_t>> simplices;
    for (const auto& f : facets) {
        std::vector<std::size_t> ids;
        for (const auto& n : f) {
            auto it = index.find(n);
            require(it != index.end(), ErrorKind::ValidationError, "unknown vertex " + n);
            ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        require(std::adjacent_find(ids.begin(), ids.end()) == ids.end() && !ids.empty(), ErrorKind::ValidationError,
                "facet with repeated vertices");
        // all nonempty subsets
        for (std::size_t mask = 1; mask < (std::size_t(1) << ids.size()); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t k = 0; k < ids.size(); ++k)
                if (mask >> k & 1) s.push_back(ids[k]);
            simplices.insert(s);
        }
    }
    for (std::size_t i = 0; i < names.size(); ++i) simplices.insert({i});
    std::size_t top = 0;
    for (const auto& s : simplices) top = std::max(top, s.size() - 1);
    std::vector<std::vector<Cell>> cells(top + 1);
    std::map<std::vector<std::size_t>, std::size_t> id;
    for (std::size_t d = 0; d <= top; ++d)
        for (const auto& s : simplices) {
            if (s.size() != d + 1) continue;
            Cell c;
            c.vertices = s;
            if (d == 0) {
                c.label = names[s[0]];
            } else {
                for (std::size_t k = 0; k <= d; ++k) {
                    auto f = s;
                    f.erase(f.begin() + static_cast<long>(k));
                    c.faces.push_back(id.at(f));
                }
                for (std::size_t k = 0; k < s.size(); ++k) c.label += (k ? "," : "") + names[s[k]];
            }
            id[s] = cells[d].size();
            cells[d].push_back(std::move(c));
        }
    return DeltaComplex(std::move(cells));
}

inline DeltaComplex standard_simplex(std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i <= m; ++i) names.push_back("v" + std::to_string(i));
    return from_facets(names, {names});
}

/// The cycle of m vertices and m edges; m = 1 is a loop at one vertex.
inline DeltaComplex cycle_complex(std::size_t m) {
    require(m >= 1, ErrorKind::PreconditionViolation, "cycle needs m >= 1");
    std::vector<std::vector<Cell>> cells(2);
    for (std::size_t j = 0; j < m; ++j) {
        Cell v;
        v.vertices = {j};
        v.label = "C" + std::to_string(j);
        cells[0].push_back(std::move(v));
    }
    for (std::size_t j = 0; j < m; ++j) {
        Cell e;
        std::size_t k = (j + 1) % m;
        e.vertices = {j, k};
        e.faces = {k, j};
        e.label = "C" + std::to_string(j) + "^C" + std::to_string(k);
        cells[1].push_back(std::move(e));
    }
    return DeltaComplex(std::move(cells));
}

// ---------------------------------------------------------------------------
// From incidence data

namespace detail {

struct IncidenceIndex {
    std::map<std::string, std::size_t> index;
    std::vector<std::set<std::size_t>> above; // transitive closure: strata whose closure contains this one
    std::vector<std::size_t> divisors;        // codim-1 strata in input order
};

inline IncidenceIndex index_incidence(const StrataIncidence& data) {
    IncidenceIndex ix;
    const auto& s = data.strata;
    for (std::size_t i = 0; i < s.size(); ++i) {
        require(!s[i].name.empty(), ErrorKind::IncoherentIncidence, "stratum " + std::to_string(i) + " has no name");
        require(ix.index.emplace(s[i].name, i).second, ErrorKind::IncoherentIncidence, "duplicate stratum " + s[i].name);
        require(s[i].codim >= 1, ErrorKind::IncoherentIncidence, "stratum " + s[i].name + " has codim 0");
        require(s[i].branches == s[i].codim, ErrorKind::IncoherentIncidence,
                "stratum " + s[i].name + " has " + std::to_string(s[i].branches) + " local branches but codim " +
                    std::to_string(s[i].codim));
        if (s[i].codim == 1) ix.divisors.push_back(i);
    }
    ix.above.resize(s.size());
    for (const auto& [lo, up] : data.closures) {
        auto a = ix.index.find(lo), b = ix.index.find(up);
        require(a != ix.index.end() && b != ix.index.end(), ErrorKind::IncoherentIncidence,
                "closure relation (" + lo + ", " + up + ") names an unknown stratum");
        require(s[a->second].codim > s[b->second].codim, ErrorKind::IncoherentIncidence,
                "closure relation (" + lo + ", " + up + ") does not increase codim");
        ix.above[a->second].insert(b->second);
    }
    // transitive closure, processing by decreasing codim so parents are final
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a].codim < s[b].codim; });
    for (auto i : order) {
        std::set<std::size_t> all = ix.above[i];
        for (auto j : ix.above[i]) all.insert(ix.above[j].begin(), ix.above[j].end());
        ix.above[i] = std::move(all);
    }
    return ix;
}

/// Divisor positions (into ix.divisors) containing stratum i.
inline std::vector<std::size_t> divisors_over(const StrataIncidence& data, const IncidenceIndex& ix, std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < ix.divisors.size(); ++k)
        if (ix.divisors[k] == i || ix.above[i].count(ix.divisors[k])) out.push_back(k);
    (void)data;
    return out;
}

} // namespace detail

inline DeltaComplex from_incidence(const StrataIncidence& data, ComplexMode mode) {
    require(mode != ComplexMode::Plain, ErrorKind::PreconditionViolation, "incidence mode must be algebraic or analytic");
    auto ix = detail::index_incidence(data);
    const auto& s = data.strata;

    // vertex list of each stratum's cell (divisor positions, sorted), or empty if skipped
    std::vector<std::optional<std::vector<std::size_t>>> verts(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto over = detail::divisors_over(data, ix, i);
        std::size_t k = s[i].codim;
        require(over.size() <= k, ErrorKind::IncoherentIncidence,
                "stratum " + s[i].name + " lies on " + std::to_string(over.size()) + " divisors but has codim " +
                    std::to_string(k));
        if (mode == ComplexMode::Algebraic) {
            if (over.size() == k) verts[i] = over; // self-intersection strata carry no algebraic cell
            continue;
        }
        std::vector<std::size_t> br;
        if (!s[i].branch_of.empty()) {
            require(s[i].branch_of.size() == k, ErrorKind::IncoherentIncidence,
                    "stratum " + s[i].name + " lists the wrong number of branches");
            for (const auto& name : s[i].branch_of) {
                auto it = ix.index.find(name);
                require(it != ix.index.end() && s[it->second].codim == 1, ErrorKind::IncoherentIncidence,
                        "branch of " + s[i].name + " is not a divisor: " + name);
                auto pos = std::find(ix.divisors.begin(), ix.divisors.end(), it->second) - ix.divisors.begin();
                require(std::find(over.begin(), over.end(), std::size_t(pos)) != over.end(), ErrorKind::IncoherentIncidence,
                        "stratum " + s[i].name + " is not in the closure of " + name);
                br.push_back(static_cast<std::size_t>(pos));
            }
        } else if (over.size() == k) {
            br = over;
        } else if (over.size() == 1) {
            br.assign(k, over.front());
        } else {
            fail(ErrorKind::IncoherentIncidence, "local branches of " + s[i].name + " are ambiguous; list them in branch_of");
        }
        std::sort(br.begin(), br.end());
        verts[i] = br;
    }

    std::size_t top = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (verts[i]) top = std::max(top, s[i].codim - 1);
    std::vector<std::vector<Cell>> cells(ix.divisors.empty() ? 0 : top + 1);
    std::vector<std::size_t> cell_id(s.size(), 0);
    for (std::size_t d = 0; d <= top && !ix.divisors.empty(); ++d)
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!verts[i] || s[i].codim != d + 1) continue;
            Cell c;
            c.vertices = *verts[i];
            c.label = s[i].name;
            for (std::size_t k = 0; d > 0 && k <= d; ++k) {
                auto want = *verts[i];
                want.erase(want.begin() + static_cast<long>(k));
                std::optional<std::size_t> found;
                for (auto j : ix.above[i]) {
                    if (s[j].codim != d || !verts[j] || *verts[j] != want) continue;
                    require(!found || *found == j, ErrorKind::IncoherentIncidence,
                            "face " + std::to_string(k) + " of " + s[i].name + " is ambiguous");
                    found = j;
                }
                require(found.has_value(), ErrorKind::IncoherentIncidence,
                        "face " + std::to_string(k) + " of " + s[i].name + " has no stratum");
                c.faces.push_back(cell_id[*found]);
            }
            cell_id[i] = cells[d].size();
            cells[d].push_back(std::move(c));
        }
    try {
        return DeltaComplex(std::move(cells), mode).with_provenance(data);
    } catch (const Error& e) {
        fail(ErrorKind::IncoherentIncidence, e.what());
    }
}

// ---------------------------------------------------------------------------
// Affine structure

/// Integral affine map from the chart of face k of cell (d, i) into the cell's
/// chart: columns 0..d-2 are the linear part, column d-1 the translation.
/// Charts place vertex 0 at the origin and vertex j at scale * e_j.
inline RatMatrix face_transition(const DeltaComplex& c, std::size_t d, std::size_t i, std::size_t k) {
    const Cell& cell = c.cell(d, i);
    const Cell& face = c.cell(d - 1, cell.faces.at(k));
    auto pos = [&](std::size_t vertex_index) {
        RatVec p(d, Rational(0));
        if (vertex_index > 0) p[vertex_index - 1] = Rational(cell.scale);
        return p;
    };
    std::vector<std::size_t> image; // face vertex j -> cell vertex index
    for (std::size_t j = 0; j <= d; ++j)
        if (j != k) image.push_back(j);
    RatMatrix m(d, RatVec(d, Rational(0)));
    RatVec origin = pos(image[0]);
    for (std::size_t j = 1; j < image.size(); ++j) {
        RatVec p = pos(image[j]);
        for (std::size_t r = 0; r < d; ++r) m[r][j - 1] = (p[r] - origin[r]) / Rational(face.scale);
    }
    for (std::size_t r = 0; r < d; ++r) m[r][d - 1] = origin[r];
    return m;
}

/// Whether every face transition lies in GL(Z) x Z^n with saturated image.
inline bool verify_affine_structure(const DeltaComplex& c) {
    if (!c.affine()) return false;
    for (std::size_t d = 1; d <= c.dim(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i)
            for (std::size_t k = 0; k <= d; ++k) {
                RatMatrix m = face_transition(c, d, i, k);
                IntMatrix lin_t(d - 1, IntVec(d));
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t j = 0; j < d; ++j) {
                        if (denominator_of(m[r][j]) != 1) return false;
                        if (j + 1 < d) lin_t[j][r] = numerator_of(m[r][j]);
                    }
                if (d >= 2 && maximal_minor_gcd(lin_t) != 1) return false;
            }
    return true;
}

// ---------------------------------------------------------------------------
// Standard N-subdivision

namespace detail {

/// Barycentric vertex coordinates of the N^m cells of the edgewise
/// (Freudenthal) subdivision of the m-simplex, built in cumulative coordinates
/// N >= x_1 >= .. >= x_m >= 0.
inline std::vector<std::vector<RatVec>> edgewise_cells(std::size_t m, const Integer& n) {
    std::vector<std::vector<RatVec>> out;
    if (m == 0) {
        out.push_back({RatVec{Rational(1)}});
        return out;
    }
    long nn = static_cast<long>(n);
    auto valid = [&](const std::vector<long>& x) {
        if (x[0] > nn || x[m - 1] < 0) return false;
        for (std::size_t k = 0; k + 1 < m; ++k)
            if (x[k] < x[k + 1]) return false;
        return true;
    };
    auto bary = [&](const std::vector<long>& x) {
        RatVec mu(m + 1);
        mu[0] = Rational(nn - x[0], nn);
        for (std::size_t k = 1; k < m; ++k) mu[k] = Rational(x[k - 1] - x[k], nn);
        mu[m] = Rational(x[m - 1], nn);
        return mu;
    };
    std::vector<long> base(m, 0);
    std::vector<std::size_t> perm(m);
    while (true) {
        if (valid(base)) {
            for (std::size_t k = 0; k < m; ++k) perm[k] = k;
            do {
                std::vector<long> x = base;
                std::vector<RatVec> verts{bary(x)};
                bool ok = true;
                for (std::size_t k = 0; k < m && ok; ++k) {
                    x[perm[k]] += 1;
                    ok = valid(x);
                    verts.push_back(bary(x));
                }
                if (ok) out.push_back(std::move(verts));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        std::size_t k = 0;
        while (k < m && base[k] == nn) base[k++] = 0;
        if (k == m) break;
        ++base[k];
    }
    return out;
}

/// Push a point of root cell (d, id) down to the face spanned by its support.
inline RootPoint push_down(const RootData& root, std::size_t d, std::size_t id, RatVec coords) {
    for (std::size_t k = coords.size(); k-- > 0;) {
        if (coords[k] != 0 || d == 0) continue;
        id = root.faces[d][id][k];
        --d;
        coords.erase(coords.begin() + static_cast<long>(k));
    }
    return {d, id, std::move(coords)};
}

struct CellKey {
    std::size_t dim;
    std::size_t id;
    std::vector<RatVec> coords; // vertex coordinates in the carrier, in cell vertex order
    friend bool operator<(const CellKey& a, const CellKey& b) {
        return std::tie(a.dim, a.id, a.coords) < std::tie(b.dim, b.id, b.coords);
    }
};

/// Interns subdivided cells by their position in the root complex.
class SubdivisionBuilder {
public:
    explicit SubdivisionBuilder(std::shared_ptr<const RootData> root) : root_(std::move(root)) {}

    /// pts: vertex coordinates in root cell (d, id), any order.
    std::size_t intern(std::size_t d, std::size_t id, std::vector<RatVec> pts, const Integer& scale) {
        // minimal carrier: drop coordinates vanishing on every vertex
        std::size_t w = pts.front().size();
        for (std::size_t k = w; k-- > 0;) {
            bool vanishes = std::all_of(pts.begin(), pts.end(), [&](const RatVec& p) { return p[k] == 0; });
            if (!vanishes || d == 0) continue;
            id = root_->faces[d][id][k];
            --d;
            for (auto& p : pts) p.erase(p.begin() + static_cast<long>(k));
        }
        std::sort(pts.begin(), pts.end(), std::greater<RatVec>());
        std::size_t cd = pts.size() - 1;
        CellKey key{d, id, pts};
        if (cells_.size() <= cd) {
            cells_.resize(cd + 1);
            keys_.resize(cd + 1);
        }
        auto it = keys_[cd].find(key);
        if (it != keys_[cd].end()) return it->second;

        Cell c;
        c.scale = scale;
        c.root_dim = d;
        c.root_id = id;
        c.root_coords = pts;
        if (cd == 0) {
            c.vertices = {cells_[0].size()};
            c.label = point_label(d, id, pts[0]);
        } else {
            for (std::size_t k = 0; k <= cd; ++k) c.vertices.push_back(intern(d, id, {pts[k]}, scale));
            for (std::size_t k = 0; k <= cd; ++k) {
                auto f = pts;
                f.erase(f.begin() + static_cast<long>(k));
                c.faces.push_back(intern(d, id, f, scale));
            }
            for (std::size_t k = 0; k <= cd; ++k) c.label += (k ? "," : "") + cells_[0][c.vertices[k]].label;
            c.label = "[" + c.label + "]";
        }
        std::size_t new_id = cells_[cd].size();
        keys_[cd].emplace(std::move(key), new_id);
        cells_[cd].push_back(std::move(c));
        return new_id;
    }

    DeltaComplex finish(ComplexMode mode) { return DeltaComplex(std::move(cells_), mode, root_); }

private:
    std::string point_label(std::size_t d, std::size_t id, const RatVec& coords) const {
        const std::string& base = root_->labels[d][id];
        if (d == 0) return base;
        std::string s = base + "@(";
        for (std::size_t k = 0; k < coords.size(); ++k) s += (k ? "," : "") + to_string(coords[k]);
        return s + ")";
    }

    std::shared_ptr<const RootData> root_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::map<CellKey, std::size_t>> keys_;
};

/// Root coordinates of the point with local barycentric mu in cell c.
inline RatVec to_root(const Cell& c, const RatVec& mu) {
    RatVec out(c.root_coords.front().size(), Rational(0));
    for (std::size_t k = 0; k < mu.size(); ++k)
        if (mu[k] != 0)
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += mu[k] * c.root_coords[k][j];
    return out;
}

} // namespace detail

/// Each m-cell is replaced by its N^m cells of the standard subdivision; the
/// new vertices are the (1/N)-lattice points.
inline DeltaComplex scale_subdivide(const DeltaComplex& c, const Integer& n) {
    require(c.affine(), ErrorKind::NoAffineStructure, "scale_subdivide needs lattice-simplex charts");
    require(n >= 1, ErrorKind::PreconditionViolation, "subdivision level must be positive");
    detail::SubdivisionBuilder b(c.root_ptr());
    for (std::size_t d = 0; d <= c.dim() && !c.empty(); ++d) {
        auto pattern = detail::edgewise_cells(d, n);
        for (const auto& cell : c.cells(d))
            for (const auto& small : pattern) {
                std::vector<RatVec> pts;
                for (const auto& mu : small) pts.push_back(detail::to_root(cell, mu));
                b.intern(cell.root_dim, cell.root_id, std::move(pts), cell.scale);
            }
    }
    DeltaComplex out = b.finish(c.mode());
    if (c.provenance()) out = out.with_provenance(*c.provenance());
    return out;
}

struct ComponentRatio {
    Rational ratio;    // top cells after / before
    Integer expected;  // N^m
    bool equal;
};

inline ComponentRatio component_ratio(const DeltaComplex& c, const Integer& n) {
    DeltaComplex s = scale_subdivide(c, n);
    std::size_t m = c.dim();
    Rational ratio(Integer(s.count(m)), Integer(std::max<std::size_t>(c.count(m), 1)));
    Integer expected = boost::multiprecision::pow(n, static_cast<unsigned>(m));
    return {ratio, expected, ratio == Rational(expected)};
}

struct RationalPoint {
    RootPoint where;        // canonical position in the root complex
    std::size_t cell_dim;   // carrier cell of the queried complex
    std::size_t cell_id;
};

/// All points with (1/N)-integral chart coordinates, each once, tagged by the
/// cell whose relative interior contains it.
inline std::vector<RationalPoint> rational_points(const DeltaComplex& c, const Integer& n) {
    require(c.affine(), ErrorKind::NoAffineStructure, "rational_points needs lattice-simplex charts");
    require(n >= 1, ErrorKind::PreconditionViolation, "level must be positive");
    std::map<RootPoint, RationalPoint> seen;
    for (std::size_t d = 0; d <= c.dim() && !c.empty(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const Cell& cell = c.cell(d, i);
            Integer total = n * cell.scale;
            if (total < Integer(d + 1)) continue;
            // positive integer vectors of length d+1 summing to total
            std::vector<Integer> a(d + 1);
            auto visit = [&](auto&& self, std::size_t k, Integer left) -> void {
                if (k == d) {
                    a[d] = left;
                    RatVec mu(d + 1);
                    for (std::size_t j = 0; j <= d; ++j) mu[j] = Rational(a[j], total);
                    RootPoint p = detail::push_down(c.root(), cell.root_dim, cell.root_id, detail::to_root(cell, mu));
                    seen.emplace(p, RationalPoint{p, d, i});
                    return;
                }
                for (Integer x = 1; x <= left - Integer(d - k); ++x) {
                    a[k] = x;
                    self(self, k + 1, left - x);
                }
            };
            visit(visit, 0, total);
        }
    std::vector<RationalPoint> out;
    for (auto& [k, v] : seen) out.push_back(std::move(v));
    return out;
}

/// Cell counts by dimension after subdividing: the composition law compares these.
inline std::vector<std::size_t> subdivided_counts(const DeltaComplex& c, const Integer& n) {
    return scale_subdivide(c, n).f_vector();
}

/// Root positions of all vertices.
inline std::set<RootPoint> vertex_points(const DeltaComplex& c) {
    std::set<RootPoint> out;
    for (std::size_t v = 0; v < c.count(0); ++v) out.insert(c.vertex_point(v));
    return out;
}

} // namespace polytrop
