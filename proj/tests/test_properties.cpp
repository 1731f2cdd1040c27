#include <gtest/gtest.h>

#include <random>

#include "polytrop/limit_toric.hpp"

using namespace polytrop;

namespace {

constexpr int kCases = 200;

IntVec random_vector(std::mt19937& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntVec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

IntVec nonzero_vector(std::mt19937& rng, std::size_t n, int lo, int hi) {
    for (;;) {
        auto v = random_vector(rng, n, lo, hi);
        if (!is_zero(v)) return v;
    }
}

/// A strongly convex cone from 1..5 random generators, rank 2..4.
Cone random_cone(std::mt19937& rng, std::size_t n) {
    for (;;) {
        IntMatrix gens;
        std::size_t k = 1 + rng() % 5;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(nonzero_vector(rng, n, -3, 3));
        if (Cone::hull(n, gens).pointed()) return cone_from_generators(gens);
    }
}

/// Complete rank-2 fan from random rays in cyclic order with gaps below pi.
Fan random_fan2(std::mt19937& rng) {
    const double pi = std::acos(-1.0);
    for (;;) {
        std::vector<std::pair<double, IntVec>> rays;
        std::size_t want = 3 + rng() % 4;
        while (rays.size() < want) {
            IntVec r = make_primitive(nonzero_vector(rng, 2, -4, 4));
            bool dup = false;
            for (const auto& q : rays) dup = dup || q.second == r;
            if (!dup) rays.emplace_back(std::atan2(static_cast<double>(r[1]), static_cast<double>(r[0])), r);
        }
        std::sort(rays.begin(), rays.end());
        bool ok = true;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            double gap = rays[(i + 1) % rays.size()].first - rays[i].first;
            if (gap <= 0) gap += 2 * pi;
            ok = ok && gap < pi - 1e-9;
        }
        if (!ok) continue;
        std::vector<Cone> cones;
        for (std::size_t i = 0; i < rays.size(); ++i)
            cones.push_back(cone_from_generators({rays[i].second, rays[(i + 1) % rays.size()].second}));
        return make_fan(2, cones);
    }
}

/// Complete fan of rank 2 or 3: the orthant fan after a few random stellar subdivisions.
Fan random_fan(std::mt19937& rng, std::size_t n) {
    if (n == 2 && rng() % 2) return random_fan2(rng);
    Fan f = orthant_fan(n);
    std::size_t steps = rng() % 3;
    for (std::size_t i = 0; i < steps; ++i) f = stellar_subdivision(f, primitive(nonzero_vector(rng, n, -2, 2)));
    return f;
}

/// Symbolic vector over one square-root symbol with coordinate rows (a_i, b_i) = a_i + b_i sqrt(k).
SymbolicVector symbolic(const std::vector<std::pair<int, int>>& rows, int k = 2) {
    std::vector<RatVec> coords;
    for (auto [a, b] : rows) coords.push_back({Rational(a), Rational(b)});
    return SymbolicVector({sqrt_symbol(k, 40)}, coords);
}

} // namespace

// ---------------------------------------------------------------------------
// Cones

TEST(ConeProperty, GeneratorsLieInTheirCone) {
    std::mt19937 rng(1);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 3;
        IntMatrix gens;
        for (std::size_t k = 0; k < 1 + rng() % 5; ++k) gens.push_back(nonzero_vector(rng, n, -3, 3));
        if (!Cone::hull(n, gens).pointed()) continue;
        Cone c = cone_from_generators(gens);
        for (const auto& g : gens) EXPECT_NE(cone_contains(c, to_rational(g)).where, Location::Outside);
    }
}

TEST(ConeProperty, FacetAndGeneratorDescriptionsAgree) {
    std::mt19937 rng(2);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 3;
        Cone c = random_cone(rng, n);
        // points of the hull satisfy the facet description
        std::uniform_int_distribution<int> coef(0, 4);
        IntVec p(n, Integer(0));
        for (const auto& r : c.rays()) {
            int k = coef(rng);
            for (std::size_t j = 0; j < n; ++j) p[j] += k * r[j];
        }
        EXPECT_TRUE(c.contains(p));
        // and conversely: a lattice point passes the facet test iff adding it leaves the hull unchanged
        for (int k = 0; k < 5; ++k) {
            IntVec q = random_vector(rng, n, -4, 4);
            IntMatrix gens = c.rays();
            gens.push_back(q);
            EXPECT_EQ(c.contains(q), Cone::hull(n, gens) == c);
        }
        // rebuilding from the facet description gives the same cone
        EXPECT_EQ(Cone::from_inequalities(n, c.facets(), c.equations()), c);
    }
}

TEST(ConeProperty, IntersectionIsCommutativeAssociativeIdempotent) {
    std::mt19937 rng(3);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 3;
        Cone a = random_cone(rng, n), b = random_cone(rng, n), c = random_cone(rng, n);
        EXPECT_EQ(cone_intersect(a, b), cone_intersect(b, a));
        EXPECT_EQ(cone_intersect(cone_intersect(a, b), c), cone_intersect(a, cone_intersect(b, c)));
        EXPECT_EQ(cone_intersect(a, a), a);
        Cone ab = cone_intersect(a, b);
        EXPECT_TRUE(a.contains(ab));
        EXPECT_TRUE(b.contains(ab));
    }
}

TEST(ConeProperty, PrimitiveIsIdempotent) {
    std::mt19937 rng(4);
    for (int i = 0; i < kCases; ++i) {
        IntVec v = nonzero_vector(rng, 2 + i % 3, -30, 30);
        Ray r = primitive(v);
        EXPECT_EQ(primitive(r.direction()), r);
        EXPECT_EQ(content(r.direction()), 1);
    }
}

TEST(ConeProperty, StrongConvexityIffFacetNormalsSpanTheDual) {
    std::mt19937 rng(5);
    int pointed = 0, not_pointed = 0;
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 3;
        IntMatrix gens;
        for (std::size_t k = 0; k < 1 + rng() % 6; ++k) gens.push_back(nonzero_vector(rng, n, -2, 2));
        Cone c = Cone::hull(n, gens);
        // facet normals together with the equations of the span reach every linear form
        IntMatrix forms = c.facets();
        for (const auto& e : c.equations()) forms.push_back(e);
        bool spans = rank_of(forms, n) == n;
        EXPECT_EQ(c.pointed(), spans) << to_string(c);
        bool rejected = false;
        try {
            cone_from_generators(gens);
        } catch (const Error& e) {
            rejected = e.kind() == ErrorKind::NotStronglyConvex;
        }
        EXPECT_EQ(rejected, !c.pointed());
        (c.pointed() ? pointed : not_pointed)++;
    }
    EXPECT_GT(pointed, 20);
    EXPECT_GT(not_pointed, 20);
}

// ---------------------------------------------------------------------------
// Fans

TEST(FanProperty, CommonRefinementIsCommutativeAndIdempotent) {
    std::mt19937 rng(6);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 2;
        Fan a = random_fan(rng, n), b = random_fan(rng, n);
        Fan ab = common_refinement(a, b);
        EXPECT_EQ(ab, common_refinement(b, a));
        EXPECT_EQ(common_refinement(a, a), a);
        EXPECT_EQ(common_refinement(ab, a), ab);
        EXPECT_TRUE(static_cast<bool>(is_subdivision(ab, a)));
        EXPECT_TRUE(static_cast<bool>(is_subdivision(ab, b)));
    }
}

TEST(FanProperty, SubdivisionIsAPartialOrder) {
    std::mt19937 rng(7);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 2;
        Fan f = random_fan(rng, n);
        Fan g = stellar_subdivision(f, primitive(nonzero_vector(rng, n, -3, 3)));
        Fan h = stellar_subdivision(g, primitive(nonzero_vector(rng, n, -3, 3)));
        Fan other = random_fan(rng, n);
        std::vector<Fan> fans{f, g, h, other};
        bool rel[4][4];
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y) rel[x][y] = static_cast<bool>(is_subdivision(fans[x], fans[y]));
        for (std::size_t x = 0; x < 4; ++x) EXPECT_TRUE(rel[x][x]);
        EXPECT_TRUE(rel[1][0]);
        EXPECT_TRUE(rel[2][1]);
        EXPECT_TRUE(rel[2][0]);
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y) {
                if (rel[x][y] && rel[y][x]) EXPECT_EQ(fans[x], fans[y]);
                for (std::size_t z = 0; z < 4; ++z)
                    if (rel[x][y] && rel[y][z]) EXPECT_TRUE(rel[x][z]);
            }
    }
}

TEST(FanProperty, StellarSubdivisionIsAValidRefinement) {
    std::mt19937 rng(8);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 3;
        Fan f = n == 4 ? orthant_fan(4) : random_fan(rng, n);
        Fan s = stellar_subdivision(f, primitive(nonzero_vector(rng, n, -3, 3)));
        auto v = validate_fan(n, s.maximal_cones());
        EXPECT_TRUE(v.valid);
        EXPECT_EQ(v.complete, f.complete());
        EXPECT_TRUE(static_cast<bool>(is_subdivision(s, f)));
    }
}

TEST(FanProperty, CompleteRankTwoFansAreCycles) {
    std::mt19937 rng(9);
    for (int i = 0; i < kCases; ++i) {
        Fan f = random_fan(rng, 2);
        if (i % 2) f = stellar_subdivision(f, primitive(nonzero_vector(rng, 2, -5, 5)));
        ASSERT_TRUE(f.complete());
        EXPECT_EQ(f.maximal_cones().size(), f.rays().size());
    }
}

// ---------------------------------------------------------------------------
// Towers and chains

TEST(TowerProperty, RationalRaysRoundTrip) {
    std::mt19937 rng(10);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 2;
        IntVec x = nonzero_vector(rng, n, -4, 4);
        auto sx = SymbolicVector::rational(x);
        FanTower t(orthant_fan(n));
        while (minimal_cone_containing(t.last(), sx).dim() > 1) t = extend_tower(t, TowerStrategy::toward(sx), 1);
        auto lp = resolve_direction(chain_toward(t, sx));
        ASSERT_TRUE(lp.resolved()) << to_string(x);
        EXPECT_EQ(*lp.ray, primitive(x));
        EXPECT_EQ(lp.depth, t.size() - 1);
    }
}

TEST(TowerProperty, ChainIntersectionsDecrease) {
    std::mt19937 rng(11);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 2;
        SymbolicVector x = i % 2 ? SymbolicVector::rational(nonzero_vector(rng, n, -5, 5))
                                 : symbolic(n == 2 ? std::vector<std::pair<int, int>>{{1, 0}, {0, 1}}
                                                   : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, -1}});
        bool toward = i % 4 < 2;
        auto strategy = toward ? TowerStrategy::toward(x) : TowerStrategy::stellar_at_barycenters();
        // barycentric steps multiply the cone count by n!
        std::size_t steps = toward ? (n == 2 ? 6 : 3) : (n == 2 ? 4 : 1);
        auto t = extend_tower(FanTower(orthant_fan(n)), strategy, steps);
        auto chain = chain_toward(t, x);
        Cone meet = chain.entries().front().second;
        for (const auto& [level, cone] : chain.entries()) {
            Cone next = cone_intersect(meet, cone);
            EXPECT_TRUE(meet.contains(next));
            EXPECT_LE(next.dim(), meet.dim());
            meet = next;
        }
        EXPECT_EQ(resolve_direction(chain).cone, meet);
    }
}

TEST(TowerProperty, ResolvesExactlyForRationalDirections) {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 2;
        std::vector<std::pair<int, int>> rows(n);
        bool proportional = i % 2 == 0;
        int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 2);
        for (auto& r : rows) {
            if (proportional) {
                int c = d(rng);
                r = {c * a, c * b};
            } else {
                r = {d(rng), d(rng)};
            }
        }
        SymbolicVector x = symbolic(rows);
        if (x.is_zero()) continue;
        bool rational_line = fiber_rank(x) == 1;
        FanTower t(orthant_fan(n));
        int cap = n == 2 ? 24 : 16;
        for (int s = 0; s < cap && minimal_cone_containing(t.last(), x).dim() > 1; ++s)
            t = extend_tower(t, TowerStrategy::toward(x), 1);
        EXPECT_EQ(resolve_direction(chain_toward(t, x)).resolved(), rational_line) << to_string(x);
    }
}

TEST(TowerProperty, FiberModelNormalizerIsUnimodular) {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int i = 0; i < kCases; ++i) {
        std::size_t n = 2 + i % 3;
        std::size_t symbols = 1 + i % 2;
        std::vector<Symbol> syms{sqrt_symbol(2, 20, "s2")};
        if (symbols == 2) syms.push_back(sqrt_symbol(3, 20, "s3"));
        std::vector<RatVec> coords(n, RatVec(symbols + 1));
        // build from a few random rows so rank drops happen often
        std::size_t basis = 1 + rng() % (symbols + 1);
        std::vector<RatVec> seeds(basis, RatVec(symbols + 1));
        for (auto& s : seeds)
            for (auto& c : s) c = Rational(d(rng), 1 + static_cast<int>(rng() % 3));
        for (auto& row : coords)
            for (const auto& s : seeds) {
                int k = d(rng);
                for (std::size_t j = 0; j < row.size(); ++j) row[j] += k * s[j];
            }
        SymbolicVector x(syms, coords);
        if (x.is_zero()) continue;
        auto m = fiber_model(n, x);
        Rational det = determinant(m.normalizer);
        EXPECT_TRUE(det == 1 || det == -1);
        EXPECT_EQ(m.r, fiber_rank(x));
        EXPECT_EQ(m.dim, n - m.r);
        const auto& y = m.normalized.coords();
        std::vector<RatVec> head(y.begin(), y.begin() + static_cast<long>(m.r));
        EXPECT_EQ(rank_of(head, symbols + 1), m.r);
        for (std::size_t k = m.r; k < n; ++k) EXPECT_TRUE(is_zero(y[k]));
        // U applied to x reproduces the normalized coordinates
        for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(x.pair(m.normalizer[k]), y[k]);
    }
}
