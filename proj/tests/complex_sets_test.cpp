#include "cohsp/complex_sets.hpp"

#include <random>
#include <unordered_set>

#include <gtest/gtest.h>

using namespace cohsp;

namespace {

const Label a1(0, 0);
const Label a2(1, 0);
const Label a3(0, 1);

TEST(Label, ExactEqualityAndHash) {
    EXPECT_EQ(Label(0.5, -0.25), Label(0.5, -0.25));
    EXPECT_NE(Label(0.5, -0.25), Label(0.5, -0.25 + 1e-16));
    LabelHash h;
    EXPECT_EQ(h(Label(0.5, -0.25)), h(Label(0.5, -0.25)));
}

TEST(CSet, NormalizesOrderAndDuplicates) {
    const CSet s({a2, a1, a2});
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0], a1);
    EXPECT_EQ(s[1], a2);
}

TEST(CSet, RejectsNearCoincidentLabels) {
    EXPECT_THROW(CSet({a1, Label(1e-13, 0)}), DuplicateLabelError);
}

TEST(CSet, UnionIntersectionSymmetricDifference) {
    const CSet s1{a1}, s2{a2}, s12{a1, a2};
    EXPECT_EQ(unite(s1, s2), s12);
    EXPECT_EQ(unite(CSet{}, s12), s12);
    EXPECT_EQ(unite(s12, s2), s12);

    EXPECT_EQ(intersect(s12, s1), s1);
    EXPECT_EQ(intersect(s12, s12), s12);
    EXPECT_EQ(intersect(s1, s2), CSet{});

    EXPECT_EQ(s1 + s1, CSet{});
    EXPECT_EQ(s1 + s2, s12);
    EXPECT_EQ((CSet{a1, a2}) + (CSet{a2, a3}), (CSet{a1, a3}));
}

TEST(CSet, RelativeComplement) {
    const CSet r{a1, a2};
    EXPECT_EQ(rel_complement(CSet{}, r), r);
    EXPECT_EQ(rel_complement(CSet{a1}, CSet{a1}), CSet{});
    EXPECT_EQ(rel_complement(CSet{a2}, r), CSet{a1});
    EXPECT_THROW(rel_complement(CSet{a3}, r), NotASubsetError);
    // R \ S = R + S
    EXPECT_EQ(rel_complement(CSet{a2}, r), r + CSet{a2});
}

TEST(CSet, SubsetPredicate) {
    EXPECT_TRUE(is_subset(CSet{}, CSet{a1}));
    EXPECT_FALSE(is_subset(CSet{a1}, CSet{a2}));
    EXPECT_TRUE(is_subset(CSet{a1, a2}, CSet{a1, a2}));
}

TEST(Powerset, CodesAscend) {
    EXPECT_EQ(powerset(CSet{}).size(), 1u);
    EXPECT_EQ(powerset(CSet{a1}).size(), 2u);

    const CSet r{a1, a2};
    const auto subsets = powerset(r);
    ASSERT_EQ(subsets.size(), 4u);
    EXPECT_EQ(subsets[0], CSet{});
    EXPECT_EQ(subsets[1], CSet{a1});
    EXPECT_EQ(subsets[2], CSet{a2});
    EXPECT_EQ(subsets[3], r);
    for (std::uint32_t code = 0; code < 4; ++code)
        EXPECT_EQ(encode(r, subsets[code]), code);
}

TEST(Powerset, GuardsLargeBases) {
    std::vector<Label> many;
    for (int i = 0; i < 21; ++i) many.push_back(Label(i, 0));
    EXPECT_THROW(powerset(CSet(many)), TooLargeError);
}

TEST(IdealIndex, EncodeDecodeRoundTrip) {
    const CSet r{a1, a2};
    EXPECT_EQ(encode(r, CSet{a2}), 2u);
    EXPECT_EQ(decode(r, 0), CSet{});
    for (std::uint32_t code = 0; code < 4; ++code)
        EXPECT_EQ(encode(r, decode(r, code)), code);
    EXPECT_THROW(decode(r, 4), CodeOutOfRangeError);
    EXPECT_THROW(encode(r, CSet{a3}), NotASubsetError);
}

// Ring axioms over random subsets of a small pool; everything is exact.
TEST(BooleanRing, AxiomsOnRandomSets) {
    std::mt19937_64 rng(7);
    const std::vector<Label> pool = {Label(0, 0), Label(1, 0), Label(0, 1), Label(1, 1),
                                     Label(2, 0), Label(0, 2), Label(-1, 0), Label(0, -1)};
    auto draw = [&] {
        std::vector<Label> out;
        for (const auto& l : pool)
            if (rng() & 1u) out.push_back(l);
        return CSet(std::move(out));
    };
    const CSet empty;
    for (int t = 0; t < 2000; ++t) {
        const CSet s0 = draw(), s1 = draw(), s2 = draw(), s3 = draw();
        EXPECT_EQ(s1 + s2, s2 + s1);
        EXPECT_EQ((s1 + s2) + s3, s1 + (s2 + s3));
        EXPECT_EQ(s1 * (s2 + s3), (s1 * s2) + (s1 * s3));
        EXPECT_EQ(s1 + empty, s1);
        EXPECT_EQ(s1 + s1, empty);
        EXPECT_EQ(s1 * s1, s1);
        EXPECT_EQ((s1 * s2) * (s1 + s2), empty);
        EXPECT_EQ(unite(s1, s2), s1 + s2 + (s1 * s2));
        EXPECT_EQ(s1 + s2, rel_complement(s1 * s2, unite(s1, s2)));
        EXPECT_TRUE(is_subset((s1 * s2) * s0, s2 * s0));
    }
}

TEST(BooleanRing, AdditiveMonotonicityFails) {
    const CSet empty, x{a1};
    ASSERT_TRUE(is_subset(empty, x));
    EXPECT_FALSE(is_subset(empty + x, x + x));
}

TEST(BooleanRing, IdealClosure) {
    const CSet r{a1, a2, a3};
    const auto subsets = powerset(r);
    for (const auto& s1 : subsets) {
        EXPECT_EQ(r * s1, s1);  // R is the unit inside I(R)
        EXPECT_TRUE(is_subset(r + s1, r));
        for (const auto& s2 : subsets) {
            EXPECT_TRUE(is_subset(s1 + s2, r));
            EXPECT_TRUE(is_subset(s1 * s2, r));
        }
    }
}

}  // namespace
