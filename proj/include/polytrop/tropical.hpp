#pragma once

// Min-plus tropical polynomials, Newton polytopes, tropical hypersurfaces and
// the projective tropicalization of a germ at the origin.
//
// Convention: trop(f)(x) = min_e (val_e + <e, x>), coordinates -log|z_i|.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polytrop/fan.hpp"

namespace polytrop {

struct Term {
    IntVec exp;
    Rational val = 0;                // tropical coefficient (valuation)
    std::complex<double> coef{1, 0}; // complex coefficient, used by the sampling oracle
};

class TropicalPolynomial {
public:
    TropicalPolynomial(std::size_t n, std::vector<Term> terms) : n_(n) {
        require(!terms.empty(), ErrorKind::PreconditionViolation, "polynomial needs at least one term");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            require(terms[i].exp.size() == n, ErrorKind::DimensionMismatch,
                    "term " + std::to_string(i) + " has " + std::to_string(terms[i].exp.size()) + " exponents, expected " +
                        std::to_string(n));
            for (const auto& e : terms[i].exp)
                require(e >= 0, ErrorKind::PreconditionViolation, "term " + std::to_string(i) + " has a negative exponent");
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
        for (std::size_t i = 1; i < terms.size(); ++i)
            require(terms[i].exp != terms[i - 1].exp, ErrorKind::PreconditionViolation,
                    "repeated exponent " + to_string(terms[i].exp));
        terms_ = std::move(terms);
    }

    /// Unit coefficients, valuation 0.
    static TropicalPolynomial from_exponents(std::size_t n, const IntMatrix& exps) {
        std::vector<Term> t;
        for (const auto& e : exps) t.push_back({e});
        return TropicalPolynomial(n, std::move(t));
    }

    std::size_t vars() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    static constexpr const char* convention() { return "min-plus"; }

    std::size_t degree() const {
        Integer d = 0;
        for (const auto& t : terms_) {
            Integer s = 0;
            for (const auto& e : t.exp) s += e;
            d = std::max(d, s);
        }
        return static_cast<std::size_t>(d);
    }

    bool has_constant_term() const {
        return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return is_zero(t.exp); });
    }

    bool homogeneous() const {
        std::set<Integer> degs;
        for (const auto& t : terms_) {
            Integer s = 0;
            for (const auto& e : t.exp) s += e;
            degs.insert(s);
        }
        return degs.size() == 1;
    }

private:
    std::size_t n_;
    std::vector<Term> terms_;
};

struct TropValue {
    Rational value;
    IntMatrix achievers; // exponents attaining the minimum, sorted
};

inline TropValue trop_eval(const TropicalPolynomial& f, const RatVec& x) {
    check_same_rank(f.vars(), x.size());
    std::optional<Rational> best;
    IntMatrix who;
    for (const auto& t : f.terms()) {
        Rational v = t.val + dot(t.exp, x);
        if (!best || v < *best) {
            best = v;
            who.assign(1, t.exp);
        } else if (v == *best) {
            who.push_back(t.exp);
        }
    }
    return {*best, who};
}

// ---------------------------------------------------------------------------
// Newton polytope and normal fan

struct NewtonPolytope {
    std::size_t n;
    IntMatrix vertices;  // extreme exponents, sorted
    IntMatrix lifted;    // (exponent, valuation) on the lower hull, scaled to integers per row's denominator
    std::vector<Rational> lifted_heights;
};

inline NewtonPolytope newton_polytope(const TropicalPolynomial& f) {
    std::size_t n = f.vars();
    check_rank(n);
    IntMatrix pts;
    for (const auto& t : f.terms()) {
        IntVec p{1};
        p.insert(p.end(), t.exp.begin(), t.exp.end());
        pts.push_back(std::move(p));
    }
    // extreme points are the rays of the cone over {1} x exponents
    Cone hull = Cone::hull(n + 1, pts);
    NewtonPolytope out{n, {}, {}, {}};
    for (const auto& r : hull.rays()) {
        require(r[0] > 0, ErrorKind::ValidationError, "unexpected ray in exponent hull");
        out.vertices.emplace_back(r.begin() + 1, r.end());
    }
    std::sort(out.vertices.begin(), out.vertices.end());

    // lower hull of the lifted points (e, val): rays of cone{(1,e,val)} + up direction
    Integer l = 1;
    for (const auto& t : f.terms()) l = lcm_int(l, denominator_of(t.val));
    IntMatrix lifted;
    for (const auto& t : f.terms()) {
        IntVec p{1};
        p.insert(p.end(), t.exp.begin(), t.exp.end());
        p.push_back(numerator_of(t.val) * (l / denominator_of(t.val)));
        lifted.push_back(std::move(p));
    }
    IntVec up(n + 2, Integer(0));
    up[n + 1] = 1;
    lifted.push_back(up);
    Cone lower = Cone::hull(n + 2, lifted);
    for (const auto& t : f.terms()) {
        IntVec p{1};
        p.insert(p.end(), t.exp.begin(), t.exp.end());
        p.push_back(numerator_of(t.val) * (l / denominator_of(t.val)));
        if (std::find(lower.rays().begin(), lower.rays().end(), make_primitive(p)) != lower.rays().end()) {
            out.lifted.push_back(t.exp);
            out.lifted_heights.push_back(t.val);
        }
    }
    return out;
}

/// Normal fan in the min convention: the cone of vertex v is { w : <w, u - v> >= 0 for all vertices u }.
inline Fan normal_fan(const NewtonPolytope& p) {
    check_rank(p.n);
    std::vector<Cone> cones;
    for (const auto& v : p.vertices) {
        IntMatrix ineq;
        for (const auto& u : p.vertices)
            if (u != v) {
                IntVec d(p.n);
                for (std::size_t i = 0; i < p.n; ++i) d[i] = u[i] - v[i];
                ineq.push_back(std::move(d));
            }
        cones.push_back(Cone::from_inequalities(p.n, ineq));
    }
    return make_fan(p.n, std::move(cones));
}

// ---------------------------------------------------------------------------
// Tropical hypersurface

struct TropicalCell {
    IntMatrix achievers;   // terms tied on the cell (exponents, sorted)
    // exact H-description in x: rows (a, b) read as a . x + b
    std::vector<std::pair<RatVec, Rational>> equalities;
    std::vector<std::pair<RatVec, Rational>> inequalities; // >= 0
    Cone homogenized;      // cone over the cell in (x, t), t >= 0
    Cone recession;        // recession cone in R^n
    std::size_t dim() const { return homogenized.dim() - 1; }

    bool contains(const RatVec& x) const {
        for (const auto& [a, b] : equalities)
            if (dot(a, x) + b != 0) return false;
        for (const auto& [a, b] : inequalities)
            if (dot(a, x) + b < 0) return false;
        return true;
    }
};

struct TropicalHypersurface {
    std::size_t n;
    std::vector<TropicalCell> cells;
    bool empty() const { return cells.empty(); }
};

namespace detail {

/// Integer row for (val_k - val_j) t + <e_k - e_j, x> >= 0 in (x, t) coordinates.
inline IntVec region_row(const Term& j, const Term& k, std::size_t n) {
    RatVec r(n + 1);
    for (std::size_t i = 0; i < n; ++i) r[i] = Rational(k.exp[i] - j.exp[i]);
    r[n] = k.val - j.val;
    return clear_denominators(r);
}

} // namespace detail

inline TropicalHypersurface trop_hypersurface(const TropicalPolynomial& f) {
    std::size_t n = f.vars();
    TropicalHypersurface out{n, {}};
    const auto& terms = f.terms();
    if (terms.size() < 2) return out;

    std::set<IntMatrix> seen;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        IntMatrix rows;
        for (std::size_t k = 0; k < terms.size(); ++k)
            if (k != j) rows.push_back(detail::region_row(terms[j], terms[k], n));
        IntVec t_pos(n + 1, Integer(0));
        t_pos[n] = 1;
        rows.push_back(t_pos);
        Cone region = Cone::from_inequalities(n + 1, rows);

        for (const auto& face : cone_faces(region)) {
            IntVec p = face.interior_point();
            if (p[n] <= 0) continue; // at infinity
            RatVec x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = Rational(p[i], p[n]);
            auto tv = trop_eval(f, x);
            if (tv.achievers.size() < 2) continue;
            if (!seen.insert(tv.achievers).second) continue;

            const IntVec& e0 = tv.achievers.front();
            Rational v0 = std::find_if(terms.begin(), terms.end(), [&](const Term& t) { return t.exp == e0; })->val;
            std::vector<std::pair<RatVec, Rational>> eqs, ineqs;
            IntMatrix rec_eq, rec_ineq;
            for (const auto& t : terms) {
                if (t.exp == e0) continue;
                RatVec a(n);
                for (std::size_t i = 0; i < n; ++i) a[i] = Rational(t.exp[i] - e0[i]);
                Rational b = t.val - v0;
                bool tied = std::binary_search(tv.achievers.begin(), tv.achievers.end(), t.exp);
                (tied ? rec_eq : rec_ineq).push_back(clear_denominators(a));
                (tied ? eqs : ineqs).emplace_back(std::move(a), std::move(b));
            }
            out.cells.push_back(TropicalCell{tv.achievers, std::move(eqs), std::move(ineqs), face,
                                             Cone::from_inequalities(n, rec_ineq, rec_eq)});
        }
    }
    std::sort(out.cells.begin(), out.cells.end(),
              [](const TropicalCell& a, const TropicalCell& b) { return a.achievers < b.achievers; });
    return out;
}

// ---------------------------------------------------------------------------
// Projective tropicalization

/// Finite union of cones in the closed positive orthant, each meeting the open
/// orthant; stored inclusion-maximal and sorted. Projectivization is implicit.
struct PTropSet {
    std::size_t n = 0;
    std::vector<Cone> cones;
    bool upper_bound = false;

    friend bool operator==(const PTropSet& a, const PTropSet& b) { return a.n == b.n && a.cones == b.cones; }

    /// Isolated projective points: the one-dimensional cones.
    IntMatrix points() const {
        IntMatrix out;
        for (const auto& c : cones)
            if (c.dim() == 1) out.push_back(c.rays().front());
        return out;
    }
};

namespace detail {

inline Cone positive_orthant(std::size_t n) {
    IntMatrix ineq;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Integer(0));
        e[i] = 1;
        ineq.push_back(std::move(e));
    }
    return Cone::from_inequalities(n, ineq);
}

inline bool meets_open_orthant(const Cone& c) {
    IntVec p = c.interior_point();
    return std::all_of(p.begin(), p.end(), [](const Integer& x) { return x > 0; });
}

/// Clip to the closed orthant, keep the cones meeting the open orthant, and
/// reduce to the inclusion-maximal ones.
inline PTropSet canonical_ptrop(std::size_t n, const std::vector<Cone>& raw) {
    Cone orth = positive_orthant(n);
    std::set<Cone> clipped;
    for (const auto& c : raw) {
        Cone k = cone_intersect(c, orth);
        if (!k.is_zero_cone() && meets_open_orthant(k)) clipped.insert(k);
    }
    PTropSet out{n, {}, false};
    for (const auto& k : clipped) {
        bool dominated = false;
        for (const auto& o : clipped)
            if (o != k && o.contains(k)) dominated = true;
        if (!dominated) out.cones.push_back(k);
    }
    return out;
}

} // namespace detail

inline std::string to_string(const PTropSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.cones.size(); ++i) {
        if (i) out += ", ";
        const auto& c = s.cones[i];
        if (c.dim() == 1) {
            out += "[";
            for (std::size_t j = 0; j < s.n; ++j) out += (j ? ":" : "") + c.rays().front()[j].str();
            out += "]";
        } else {
            out += to_string(c);
        }
    }
    return out + "}" + (s.upper_bound ? " (upper bound)" : "");
}

inline void require_germ(const TropicalPolynomial& f) {
    require(!f.has_constant_term(), ErrorKind::OriginNotOnGerm, "polynomial has a constant term");
}

/// Codimension >= 1 skeleton of the normal fan, clipped to the positive orthant.
inline PTropSet ptrop_normal_fan(const TropicalPolynomial& f) {
    require_germ(f);
    Fan nf = normal_fan(newton_polytope(f));
    std::vector<Cone> skeleton;
    const auto& m = nf.maximal_cones();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) skeleton.push_back(cone_intersect(m[i], m[j]));
    return detail::canonical_ptrop(f.vars(), skeleton);
}

/// Positive recession directions of the hypersurface cells.
inline PTropSet ptrop_recession(const TropicalHypersurface& h) {
    std::vector<Cone> rec;
    for (const auto& c : h.cells) rec.push_back(c.recession);
    return detail::canonical_ptrop(h.n, rec);
}

/// Intersection over generators. An upper bound for the true set unless the
/// generators are asserted to form a tropical basis.
inline PTropSet ptrop_ideal(const std::vector<TropicalPolynomial>& gens, bool tropical_basis_asserted) {
    require(!gens.empty(), ErrorKind::PreconditionViolation, "ptrop_ideal needs at least one generator");
    std::size_t n = gens.front().vars();
    PTropSet acc = ptrop_normal_fan(gens.front());
    for (std::size_t g = 1; g < gens.size(); ++g) {
        check_same_rank(n, gens[g].vars());
        PTropSet next = ptrop_normal_fan(gens[g]);
        std::vector<Cone> meet;
        for (const auto& a : acc.cones)
            for (const auto& b : next.cones) meet.push_back(cone_intersect(a, b));
        acc = detail::canonical_ptrop(n, meet);
    }
    acc.upper_bound = gens.size() > 1 && !tropical_basis_asserted;
    return acc;
}

/// The table g(1..7); 0 means no bound is recorded.
inline std::size_t g_bound(std::size_t d) {
    static constexpr std::size_t table[] = {0, 1, 1, 2, 2, 3, 3, 3};
    return d >= 1 && d <= 7 ? table[d] : 0;
}

/// Number of projective points of a plane germ, checked against g(deg f).
inline std::size_t count_ptrop_points(const TropicalPolynomial& f) {
    require(f.vars() == 2, ErrorKind::PreconditionViolation, "count_ptrop_points needs two variables");
    PTropSet s = ptrop_normal_fan(f);
    std::size_t count = s.cones.size();
    std::size_t g = g_bound(f.degree());
    if (g != 0 && count > g)
        fail(ErrorKind::BoundViolation, std::to_string(count) + " points exceed g(" + std::to_string(f.degree()) +
                                            ") = " + std::to_string(g) + " for " + to_string(s));
    return count;
}

} // namespace polytrop
