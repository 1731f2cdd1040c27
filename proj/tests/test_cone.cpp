#include <gtest/gtest.h>

#include "polytrop/cone.hpp"

using namespace polytrop;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ValidationError;
}

} // namespace

TEST(Primitive, DividesByGcd) {
    EXPECT_EQ(primitive(iv({2, 4})).direction(), iv({1, 2}));
    EXPECT_EQ(primitive(iv({1, 0, 0})).direction(), iv({1, 0, 0}));
    EXPECT_EQ(primitive(iv({-6, 9, -3})).direction(), iv({-2, 3, -1}));
}

TEST(Primitive, ZeroVectorRejected) {
    EXPECT_EQ(kind_of([] { primitive(iv({0, 0})); }), ErrorKind::ZeroVector);
}

TEST(ConeFromGenerators, Quadrant) {
    Cone q = cone_from_generators({iv({1, 0}), iv({0, 1})});
    EXPECT_EQ(q.dim(), 2u);
    EXPECT_TRUE(q.unimodular());
    EXPECT_EQ(q.facets(), (IntMatrix{iv({0, 1}), iv({1, 0})}));
}

TEST(ConeFromGenerators, IndexTwoCone) {
    Cone c = cone_from_generators({iv({1, 0}), iv({1, 2})});
    EXPECT_EQ(c.dim(), 2u);
    EXPECT_TRUE(c.simplicial());
    EXPECT_FALSE(c.unimodular());
    EXPECT_EQ(maximal_minor_gcd(c.rays()), 2);
}

TEST(ConeFromGenerators, LineRejected) {
    EXPECT_EQ(kind_of([] { cone_from_generators({iv({1, 0}), iv({-1, 0})}); }), ErrorKind::NotStronglyConvex);
    EXPECT_EQ(kind_of([] { cone_from_generators({iv({1, 0}), iv({0, 0})}); }), ErrorKind::ZeroVector);
    EXPECT_EQ(kind_of([] { cone_from_generators({iv({1, 0, 0, 0, 0})}); }), ErrorKind::RankCap);
}

TEST(ConeFromGenerators, RedundantGeneratorsDropped) {
    Cone c = cone_from_generators({iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({2, 4})});
    EXPECT_EQ(c.rays(), (IntMatrix{iv({0, 1}), iv({1, 0})}));
}

TEST(ConeContains, Quadrant) {
    Cone q = cone_from_generators({iv({1, 0}), iv({0, 1})});
    EXPECT_EQ(cone_contains(q, rv({1, 1})).where, Location::Interior);
    auto b = cone_contains(q, rv({1, 0}));
    EXPECT_EQ(b.where, Location::Boundary);
    ASSERT_TRUE(b.face);
    EXPECT_EQ(*b.face, cone_from_generators({iv({1, 0})}));
    EXPECT_EQ(cone_contains(q, rv({-1, 1})).where, Location::Outside);
    EXPECT_EQ(kind_of([&] { cone_contains(q, rv({1, 1, 1})); }), ErrorKind::DimensionMismatch);
}

TEST(ConeIntersect, Examples) {
    Cone q = cone_from_generators({iv({1, 0}), iv({0, 1})});
    Cone v = cone_from_generators({iv({1, 1}), iv({-1, 1})});
    EXPECT_EQ(cone_intersect(q, v), cone_from_generators({iv({0, 1}), iv({1, 1})}));
    Cone right = cone_from_generators({iv({1, 1}), iv({1, -1})});
    EXPECT_EQ(cone_intersect(right, v), cone_from_generators({iv({1, 1})}));
    EXPECT_EQ(cone_intersect(q, q), q);
    Cone third = cone_from_generators({iv({-1, 0}), iv({0, -1})});
    EXPECT_TRUE(cone_intersect(q, third).is_zero_cone());
}

TEST(ConeFaces, Counts) {
    Cone q = cone_from_generators({iv({1, 0}), iv({0, 1})});
    EXPECT_EQ(cone_faces(q).size(), 4u);
    EXPECT_EQ(cone_faces(cone_from_generators({iv({1, 2})})).size(), 2u);
    Cone u3 = cone_from_generators({iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 1, 1})});
    ASSERT_TRUE(u3.unimodular());
    EXPECT_EQ(cone_faces(u3).size(), 8u);
    for (const auto& f : cone_faces(u3)) EXPECT_TRUE(is_face(f, u3));
}

TEST(ConeFaces, SquarePyramidHasNonSimplicialBase) {
    Cone c = cone_from_generators({iv({1, 0, 1}), iv({0, 1, 1}), iv({-1, 0, 1}), iv({0, -1, 1})});
    EXPECT_FALSE(c.simplicial());
    // 0, 4 rays, 4 walls, itself
    EXPECT_EQ(cone_faces(c).size(), 10u);
}

TEST(Cone, LinealityHandled) {
    Cone half = cone_from_inequalities(2, {iv({0, 1})});
    EXPECT_FALSE(half.pointed());
    EXPECT_EQ(half.lineality(), (IntMatrix{iv({1, 0})}));
    EXPECT_EQ(half.rays(), (IntMatrix{iv({0, 1})}));
    EXPECT_EQ(cone_faces(half).size(), 2u);
    Cone whole = Cone::whole(3);
    EXPECT_EQ(whole.dim(), 3u);
    EXPECT_TRUE(whole.facets().empty());
}
