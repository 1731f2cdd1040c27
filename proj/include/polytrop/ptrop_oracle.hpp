#pragma once

// Numerical sampling oracle for projective tropicalization.
//
// Points of V(f) near the origin are found by fixing all but one coordinate on
// a small circle (radius 2^-depth) and solving for the remaining one with a
// companion matrix. Each sample is mapped to the direction of
// (-log|z_1|, .., -log|z_n|); rather than the raw logarithms, which converge
// only like 1/log(1/r), the oracle uses the logarithmic derivative of the
// solved coordinate along the path, which converges like a power of r.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "polytrop/tropical.hpp"

namespace polytrop {

using cplx = std::complex<double>;

struct DirectionCluster {
    std::vector<double> direction; // unit vector, nonnegative
    double radius = 0;             // max angle (radians) from a member to the direction
    std::size_t size = 0;
};

struct OracleResult {
    std::vector<DirectionCluster> clusters;
    std::size_t samples = 0;
};

struct OracleOptions {
    std::size_t paths = 200;
    std::size_t depth = 12;
    unsigned seed = 1;
    double cluster_threshold = 3e-3;
    double dominance = 1e-2;
};

inline double angle_between(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    double c = std::clamp(d / std::sqrt(na * nb), -1.0, 1.0);
    return std::acos(c);
}

inline std::vector<double> unit(std::vector<double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
    return v;
}

namespace detail {

/// Roots of sum c_k t^k (c given low to high), trailing zeros trimmed.
inline std::vector<cplx> poly_roots(std::vector<cplx> c) {
    while (!c.empty() && c.back() == cplx(0)) c.pop_back();
    std::vector<cplx> roots;
    std::size_t lead_zeros = 0;
    while (lead_zeros < c.size() && c[lead_zeros] == cplx(0)) ++lead_zeros;
    for (std::size_t i = 0; i < lead_zeros; ++i) roots.emplace_back(0);
    c.erase(c.begin(), c.begin() + static_cast<long>(lead_zeros));
    if (c.size() < 2) return roots;
    std::size_t d = c.size() - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<long>(d), static_cast<long>(d));
    for (std::size_t i = 1; i < d; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1;
    for (std::size_t i = 0; i < d; ++i) comp(static_cast<long>(i), static_cast<long>(d - 1)) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    for (long i = 0; i < static_cast<long>(d); ++i) {
        cplx t = es.eigenvalues()(i);
        // Newton polish
        for (int it = 0; it < 8; ++it) {
            cplx p = 0, dp = 0;
            for (std::size_t k = c.size(); k-- > 0;) {
                dp = dp * t + p;
                p = p * t + c[k];
            }
            if (dp == cplx(0)) break;
            cplx step = p / dp;
            t -= step;
            if (std::abs(step) <= 1e-15 * std::abs(t)) break;
        }
        roots.push_back(t);
    }
    return roots;
}

/// Roots of sum c_k t^k found one magnitude class at a time: for each edge of
/// the upper hull of (k, log|c_k|) the variable is rescaled so that the edge's
/// roots have modulus near 1, which keeps tiny roots accurate.
inline std::vector<cplx> scaled_roots(const std::vector<cplx>& c) {
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != cplx(0)) support.push_back(k);
    std::vector<cplx> roots;
    if (support.size() < 2) return roots;
    for (std::size_t k = 0; k < support.front(); ++k) roots.emplace_back(0);
    auto lg = [&](std::size_t k) { return std::log(std::abs(c[k])); };
    std::vector<std::size_t> hull;
    for (std::size_t k : support) {
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2], b = hull.back();
            double cross = (static_cast<double>(b) - static_cast<double>(a)) * (lg(k) - lg(a)) -
                           (lg(b) - lg(a)) * (static_cast<double>(k) - static_cast<double>(a));
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        std::size_t j1 = hull[e], j2 = hull[e + 1];
        double log_rho = (lg(j1) - lg(j2)) / static_cast<double>(j2 - j1);
        std::vector<cplx> scaled(c.size());
        double top = -HUGE_VAL;
        for (std::size_t k : support) top = std::max(top, lg(k) + static_cast<double>(k) * log_rho);
        for (std::size_t k : support)
            scaled[k] = std::polar(std::exp(lg(k) + static_cast<double>(k) * log_rho - top), std::arg(c[k]));
        auto w = poly_roots(scaled);
        std::sort(w.begin(), w.end(), [](cplx x, cplx y) {
            auto key = [](cplx v) { return v == cplx(0) ? HUGE_VAL : std::abs(std::log(std::abs(v))); };
            return key(x) < key(y);
        });
        for (std::size_t i = 0; i < j2 - j1 && i < w.size(); ++i) roots.push_back(w[i] * std::exp(log_rho));
    }
    return roots;
}

/// Whether the sample looks converged: the monomials within a factor
/// `dominance` of the largest (the leading ones) must span a face orthogonal to
/// the sampled direction, up to 1e-3 in <dir, e>.
inline bool leading_terms_balanced(const TropicalPolynomial& f, const std::vector<cplx>& z,
                                   const std::vector<double>& dir, double dominance) {
    if (dominance >= 1) return true;
    std::vector<double> logs;
    for (const auto& t : f.terms()) {
        double m = std::log(std::abs(t.coef));
        for (std::size_t i = 0; i < z.size(); ++i) m += t.exp[i].convert_to<double>() * std::log(std::abs(z[i]));
        logs.push_back(m);
    }
    double top = *std::max_element(logs.begin(), logs.end());
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (std::size_t k = 0; k < logs.size(); ++k) {
        if (logs[k] < top + std::log(dominance)) continue;
        double w = 0;
        for (std::size_t i = 0; i < dir.size(); ++i) w += dir[i] * f.terms()[k].exp[i].convert_to<double>();
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    return hi - lo <= 1e-3;
}

inline cplx cpow_int(cplx z, const Integer& e) {
    cplx r = 1;
    for (Integer i = 0; i < e; ++i) r *= z;
    return r;
}

/// Coefficients of f as a polynomial in z_k, other coordinates fixed.
inline std::vector<cplx> univariate(const TropicalPolynomial& f, const std::vector<cplx>& z, std::size_t k) {
    std::vector<cplx> c(f.degree() + 1, cplx(0));
    for (const auto& t : f.terms()) {
        cplx m = t.coef;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (i != k) m *= cpow_int(z[i], t.exp[i]);
        c[static_cast<std::size_t>(t.exp[k])] += m;
    }
    return c;
}

/// z_i * df/dz_i at z.
inline cplx log_partial(const TropicalPolynomial& f, const std::vector<cplx>& z, std::size_t i) {
    cplx s = 0;
    for (const auto& t : f.terms()) {
        if (t.exp[i] == 0) continue;
        cplx m = t.coef * double(t.exp[i]);
        for (std::size_t j = 0; j < z.size(); ++j) m *= cpow_int(z[j], t.exp[j]);
        s += m;
    }
    return s;
}

inline std::vector<DirectionCluster> cluster(const std::vector<std::vector<double>>& dirs, double threshold) {
    std::size_t m = dirs.size();
    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (angle_between(dirs[i], dirs[j]) <= threshold) parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> groups(m);
    for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(i);
    std::vector<DirectionCluster> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        std::vector<double> c(dirs[g[0]].size(), 0.0);
        for (auto i : g)
            for (std::size_t k = 0; k < c.size(); ++k) c[k] += dirs[i][k];
        DirectionCluster cl{unit(c), 0.0, g.size()};
        for (auto i : g) cl.radius = std::max(cl.radius, angle_between(cl.direction, dirs[i]));
        out.push_back(std::move(cl));
    }
    std::sort(out.begin(), out.end(), [](const DirectionCluster& a, const DirectionCluster& b) {
        return a.direction < b.direction;
    });
    return out;
}

} // namespace detail

/// Samples limit directions of the germ V(f) at 0 for n in {2, 3}.
/// Requires trivial valuations; complex coefficients come from the terms.
inline OracleResult ptrop_sample_oracle(const TropicalPolynomial& f, const OracleOptions& opt = {}) {
    std::size_t n = f.vars();
    require(n == 2 || n == 3, ErrorKind::PreconditionViolation, "sampling oracle supports 2 or 3 variables");
    for (const auto& t : f.terms())
        require(t.val == 0, ErrorKind::PreconditionViolation, "sampling oracle needs valuation-0 coefficients");
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    const double r = std::ldexp(1.0, -static_cast<int>(opt.depth));
    const double d = static_cast<double>(std::max<std::size_t>(f.degree(), 1));

    std::vector<std::vector<double>> dirs;
    for (std::size_t p = 0; p < opt.paths; ++p) {
        std::size_t k = p % n; // solved coordinate
        std::vector<double> a(n, 0.0);
        std::vector<cplx> z(n);
        double amin = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            a[i] = n == 2 ? 1.0 : weight(rng);
            amin = std::min(amin, a[i]);
            z[i] = std::polar(std::pow(r, a[i]), angle(rng));
        }
        for (const auto& root : detail::scaled_roots(detail::univariate(f, z, k))) {
            if (!(std::abs(root) < 1.0) || root == cplx(0)) continue;
            z[k] = root;
            cplx fk = detail::log_partial(f, z, k);
            if (fk == cplx(0)) continue;
            cplx s = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != k) s += a[i] * detail::log_partial(f, z, i);
            double slope = -(s / fk).real();
            if (!(slope > amin / (2 * d))) continue; // branch not through the origin
            std::vector<double> dir = a;
            dir[k] = slope;
            dir = unit(dir);
            if (!detail::leading_terms_balanced(f, z, dir, opt.dominance)) continue;
            dirs.push_back(std::move(dir));
        }
    }
    require(!dirs.empty(), ErrorKind::NoBranchFound,
            "no solution branch through the origin within depth " + std::to_string(opt.depth));
    return {detail::cluster(dirs, opt.cluster_threshold), dirs.size()};
}

/// Curve variant for generators in graph form z_i - p_i(z_0), i >= 1.
inline OracleResult ptrop_sample_curve(const std::vector<TropicalPolynomial>& gens, const OracleOptions& opt = {}) {
    require(!gens.empty(), ErrorKind::PreconditionViolation, "curve oracle needs generators");
    std::size_t n = gens.front().vars();
    require(gens.size() == n - 1, ErrorKind::PreconditionViolation, "curve oracle needs n - 1 graph generators");
    // split z_i - p_i(z_0)
    std::vector<std::vector<Term>> p(n);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        std::size_t i = g + 1;
        bool has_lead = false;
        for (const auto& t : gens[g].terms()) {
            IntVec lead(n, Integer(0));
            lead[i] = 1;
            if (t.exp == lead) {
                require(t.coef == cplx(1) && t.val == 0, ErrorKind::PreconditionViolation,
                        "graph generator needs leading coefficient 1");
                has_lead = true;
                continue;
            }
            for (std::size_t j = 1; j < n; ++j)
                require(t.exp[j] == 0, ErrorKind::PreconditionViolation, "generator is not in graph form");
            require(t.val == 0, ErrorKind::PreconditionViolation, "sampling oracle needs valuation-0 coefficients");
            p[i].push_back({t.exp, 0, -t.coef});
        }
        require(has_lead && !p[i].empty(), ErrorKind::PreconditionViolation, "generator is not in graph form");
    }
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
    const double r = std::ldexp(1.0, -static_cast<int>(opt.depth));
    std::vector<std::vector<double>> dirs;
    for (std::size_t s = 0; s < opt.paths; ++s) {
        cplx x = std::polar(r, angle(rng));
        std::vector<double> dir{1.0};
        bool ok = true;
        for (std::size_t i = 1; i < n; ++i) {
            cplx v = 0, xv = 0;
            for (const auto& t : p[i]) {
                cplx m = t.coef * detail::cpow_int(x, t.exp[0]);
                v += m;
                xv += m * double(t.exp[0]);
            }
            if (v == cplx(0)) {
                ok = false;
                break;
            }
            dir.push_back((xv / v).real()); // d log z_i / d log z_0
        }
        if (!ok) continue;
        if (std::any_of(dir.begin(), dir.end(), [](double w) { return !(w > 0); })) continue;
        dirs.push_back(unit(dir));
    }
    require(!dirs.empty(), ErrorKind::NoBranchFound, "curve has no branch through the origin");
    return {detail::cluster(dirs, opt.cluster_threshold), dirs.size()};
}

/// Angle (radians) from a unit direction to the nearest cone of s.
inline double angular_distance(const std::vector<double>& u, const PTropSet& s) {
    double best = M_PI;
    for (const auto& c : s.cones) {
        for (const auto& face : cone_faces(c)) {
            if (face.is_zero_cone()) continue;
            // least squares projection of u onto span(face rays) via normal equations
            const auto& r = face.rays();
            std::size_t k = r.size(), n = u.size();
            Eigen::MatrixXd a(static_cast<long>(n), static_cast<long>(k));
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t i = 0; i < n; ++i) a(static_cast<long>(i), static_cast<long>(j)) = r[j][i].convert_to<double>();
            Eigen::VectorXd b(static_cast<long>(n));
            for (std::size_t i = 0; i < n; ++i) b(static_cast<long>(i)) = u[i];
            Eigen::VectorXd proj = a * a.colPivHouseholderQr().solve(b);
            if (proj.norm() == 0) continue;
            std::vector<double> pv(proj.data(), proj.data() + n);
            bool inside = true;
            for (const auto& fct : face.facets()) {
                double v = 0;
                for (std::size_t i = 0; i < n; ++i) v += fct[i].convert_to<double>() * pv[i];
                if (v < -1e-12 * proj.norm()) inside = false;
            }
            if (!inside) continue; // the nearest point lies on a smaller face
            best = std::min(best, angle_between(u, pv));
        }
    }
    return best;
}

} // namespace polytrop
