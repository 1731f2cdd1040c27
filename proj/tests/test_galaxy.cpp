#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "polytrop/galaxy.hpp"

using namespace polytrop;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ValidationError;
}

std::set<Rational> labels(const PolygonDegeneration& p) {
    auto v = p.vertex_labels();
    return {v.begin(), v.end()};
}

std::set<Rational> expected_labels(std::size_t m) {
    std::set<Rational> s;
    for (std::size_t j = 0; j < m; ++j) s.insert(Rational(Integer(j), Integer(m)));
    return s;
}

GalaxyPoint sqrt2_minus_one() {
    Symbol s{"sqrt2", parse_rational("1.414213"), parse_rational("1.414214")};
    return GalaxyPoint::symbolic(SymbolicVector({s}, {{Rational(-1), Rational(1)}}));
}

GalaxyPoint golden_fraction() {
    Symbol s = sqrt_symbol(5, 15, "sqrt5");
    return GalaxyPoint::symbolic(SymbolicVector({s}, {{Rational(-1, 2), Rational(1, 2)}}));
}

} // namespace

TEST(BaseChange, I3ByTwoIsI6) {
    auto p = base_change(PolygonDegeneration::elliptic(3), 2);
    EXPECT_EQ(p.m(), 6u);
    EXPECT_EQ(p.complex().f_vector(), (std::vector<std::size_t>{6, 6}));
    EXPECT_EQ(labels(p), expected_labels(6));
}

TEST(BaseChange, DegreeOneAndLoop) {
    auto p = PolygonDegeneration::elliptic(4);
    EXPECT_EQ(labels(base_change(p, 1)), labels(p));
    auto q = base_change(PolygonDegeneration::elliptic(1), 5);
    EXPECT_EQ(q.complex().f_vector(), (std::vector<std::size_t>{5, 5}));
    EXPECT_EQ(labels(q), expected_labels(5));
    EXPECT_EQ(kind_of([&] { base_change(p, 0); }), ErrorKind::PreconditionViolation);
}

TEST(BaseChange, ComposesAndCountsComponents) {
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t a = 1; a <= 3; ++a)
            for (std::size_t b = 1; b <= 3; ++b) {
                auto base = PolygonDegeneration::elliptic(m);
                auto twice = base_change(base_change(base, a), b);
                auto once = base_change(base, a * b);
                EXPECT_EQ(twice.m(), once.m());
                EXPECT_EQ(labels(twice), labels(once));
                EXPECT_EQ(once.complex().count(1), a * b * m);
                EXPECT_EQ(labels(once), expected_labels(a * b * m));
            }
}

TEST(GalaxyPoint, RationalIsReduced) {
    auto g = GalaxyPoint::rational(Rational(13, 6));
    EXPECT_EQ(g.value(), Rational(1, 6));
    EXPECT_EQ(GalaxyPoint::rational(Rational(-1, 4)).value(), Rational(3, 4));
    EXPECT_EQ(golden_fraction().floor_times(1000), 618);
}

TEST(Classify, RationalPointsOpenWhenDenominatorDivides) {
    auto t = EllipticTower::doubling(3, 10);
    auto c = classify_point(t, GalaxyPoint::rational(Rational(1, 6)));
    EXPECT_EQ(c.kind, Classification::Kind::Open);
    EXPECT_EQ(c.level, 1u);
    EXPECT_EQ(*c.label, Rational(1, 6));
    EXPECT_EQ(classify_point(t, GalaxyPoint::rational(0)).level, 0u);
    EXPECT_EQ(classify_point(t, GalaxyPoint::rational(Rational(5, 12))).level, 2u);
    EXPECT_EQ(classify_point(t, GalaxyPoint::rational(Rational(7, 48))).level, 4u);
    EXPECT_EQ(classify_point(t, GalaxyPoint::rational(Rational(1, 3))).level, 0u);
    EXPECT_EQ(kind_of([&] { classify_point(t, GalaxyPoint::rational(Rational(1, 5))); }), ErrorKind::IncompleteTower);
}

TEST(Classify, OpenExactlyWhenDenominatorDividesSomeLevel) {
    auto t = EllipticTower::doubling(3, 6);
    for (long q = 1; q <= 40; ++q)
        for (long p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            bool divides = false;
            for (std::size_t i = 0; i < t.levels(); ++i) divides = divides || t.cycle_size(i) % q == 0;
            auto g = GalaxyPoint::rational(Rational(p, q));
            if (divides) {
                auto c = classify_point(t, g);
                EXPECT_EQ(c.kind, Classification::Kind::Open);
                EXPECT_EQ(c.chain.back().dim, 0u);
                // the vertex exists in the level complex
                EXPECT_TRUE(t.level(c.level).vertex_at(g.value()).has_value());
            } else {
                EXPECT_EQ(kind_of([&] { classify_point(t, g); }), ErrorKind::IncompleteTower);
            }
        }
}

TEST(Classify, IrrationalPointsAreClosed) {
    auto t = EllipticTower::doubling(3, 10);
    for (const auto& g : {sqrt2_minus_one(), golden_fraction()}) {
        auto c = classify_point(t, g);
        EXPECT_EQ(c.kind, Classification::Kind::Closed);
        ASSERT_EQ(c.chain.size(), 11u);
        for (std::size_t i = 0; i < c.chain.size(); ++i) {
            EXPECT_EQ(c.chain[i].dim, 1u);
            EXPECT_EQ(c.chain[i].length(), Rational(Integer(1), Integer(3) << i));
            if (i) EXPECT_LT(c.chain[i].length(), c.chain[i - 1].length());
        }
    }
    // sqrt2 - 1 lies in [1272/3072, 1273/3072]
    auto c = classify_point(t, sqrt2_minus_one());
    EXPECT_EQ(c.chain.back().lo, Rational(1272, 3072));
}

TEST(Classify, ChainMatchesLevelComplexes) {
    auto t = EllipticTower::doubling(3, 4);
    auto chain = carrier_chain(t, sqrt2_minus_one());
    for (const auto& cell : chain) {
        auto level = t.level(cell.level);
        auto e = level.edge_from(cell.lo);
        ASSERT_TRUE(e.has_value());
        EXPECT_EQ(level.edge_interval(*e).second, cell.hi);
    }
}

TEST(Classify, CoarseEnclosureIsReported) {
    auto t = EllipticTower::doubling(3, 30);
    EXPECT_EQ(kind_of([&] { classify_point(t, sqrt2_minus_one()); }), ErrorKind::UndecidableSign);
}

TEST(FTrCell, PolygonStrata) {
    auto p = base_change(PolygonDegeneration::elliptic(3), 2);
    auto v = f_tr_cell(p, {PolygonStratum::Kind::Component, 2});
    EXPECT_EQ(v.dim, 0u);
    EXPECT_EQ(v.lo, Rational(2, 6));
    auto e = f_tr_cell(p, {PolygonStratum::Kind::DoublePoint, 2});
    EXPECT_EQ(e.dim, 1u);
    EXPECT_EQ(e.lo, Rational(2, 6));
    EXPECT_EQ(e.hi, Rational(3, 6));
    auto wrap = f_tr_cell(p, {PolygonStratum::Kind::DoublePoint, 5});
    EXPECT_EQ(wrap.hi, Rational(1));
    EXPECT_EQ(kind_of([&] { f_tr_cell(p, {PolygonStratum::Kind::Component, 6}); }), ErrorKind::UnknownStratum);
    EXPECT_EQ(kind_of([&] { f_tr_cell(standard_simplex(2), "nope"); }), ErrorKind::UnknownStratum);
    EXPECT_EQ(f_tr_cell(standard_simplex(2), "v0,v1").first, 1u);
}

TEST(Decomposition, SlotCounts) {
    EXPECT_EQ(decomposition(cycle_complex(3), 2).slots.size(), 6u);
    EXPECT_EQ(decomposition(standard_simplex(0), 7).slots.size(), 1u);
    EXPECT_EQ(decomposition(standard_simplex(2), 2).slots.size(), 6u);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = 1 + trial % 5;
        Integer n = 1 + trial % 4;
        auto b = trial % 2 ? cycle_complex(m) : standard_simplex(m % 3);
        auto r = decomposition(b, n);
        EXPECT_EQ(r.slots.size(), rational_points(b, n).size());
        EXPECT_EQ(r.slots.size() + 0, scale_subdivide(b, n).count(0));
    }
    auto impure = from_facets({"a", "b", "c"}, {{"a", "b"}, {"c"}});
    EXPECT_EQ(kind_of([&] { decomposition(impure, 2); }), ErrorKind::PreconditionViolation);
}

namespace {

EllipticTower random_tower(std::mt19937& rng, std::size_t min_factor) {
    EllipticTower t{1 + rng() % 4, {}};
    std::size_t d = 1, levels = 1 + rng() % 4;
    for (std::size_t i = 0; i < levels; ++i) t.degrees.push_back(d *= min_factor + rng() % 2);
    return t;
}

} // namespace

TEST(GalaxyProperty, BaseChangeComposes) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = 1 + rng() % 5, a = 1 + rng() % 4, b = 1 + rng() % 4;
        auto base = PolygonDegeneration::elliptic(m);
        auto twice = base_change(base_change(base, a), b);
        auto once = base_change(base, a * b);
        EXPECT_EQ(twice.m(), once.m());
        EXPECT_EQ(labels(twice), labels(once));
        EXPECT_EQ(twice.complex().f_vector(), once.complex().f_vector());
    }
}

TEST(GalaxyProperty, TopCellsAlongATowerAreDegreeTimesM) {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        auto t = random_tower(rng, 1);
        for (std::size_t i = 0; i < t.levels(); ++i) {
            auto level = t.level(i);
            EXPECT_EQ(level.complex().count(1), t.degree(i) * t.m);
            EXPECT_EQ(level.complex().count(0), t.degree(i) * t.m);
        }
    }
}

TEST(GalaxyProperty, StratumChainsNestAndShrink) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        auto t = random_tower(rng, 2);
        auto level0 = t.level(0);
        auto kind = rng() % 2 ? PolygonStratum::Kind::Component : PolygonStratum::Kind::DoublePoint;
        SkeletonCell cur = f_tr_cell(level0, {kind, rng() % t.m});
        for (std::size_t i = 1; i < t.levels(); ++i) {
            auto level = t.level(i);
            std::vector<SkeletonCell> inside;
            for (std::size_t j = 0; j < level.m(); ++j)
                for (auto k : {PolygonStratum::Kind::Component, PolygonStratum::Kind::DoublePoint}) {
                    auto c = f_tr_cell(level, {k, j});
                    if (c.lo >= cur.lo && c.hi <= cur.hi) inside.push_back(c);
                }
            ASSERT_FALSE(inside.empty()) << "trial " << trial << " level " << i;
            SkeletonCell next = inside[rng() % inside.size()];
            if (next.dim == 1) {
                EXPECT_EQ(next.hi - next.lo, Rational(Integer(1), Integer(t.cycle_size(i))));
                EXPECT_LE(2 * (next.hi - next.lo), Rational(Integer(1), Integer(t.cycle_size(i - 1))));
            }
            cur = next;
        }
    }
}
