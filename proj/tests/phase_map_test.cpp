#include <catgate/phase_map.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace catgate;

TEST(ResourceCircle, Examples)
{
    EXPECT_DOUBLE_EQ(resource_circle(4, 0.0).radius, 3.0);
    const auto c = resource_circle(0, 2.0);
    EXPECT_EQ(c.center, (PhasePoint{0.0, 2.0}));
    EXPECT_DOUBLE_EQ(c.radius, 1.0);
    EXPECT_DOUBLE_EQ(resource_circle(12, -7.5).radius, 5.0);
}

TEST(MapPoint, TwoBranchesOnTheDiameter)
{
    const auto img = map_point({4, 3.0}, {3.0, 3.0});
    ASSERT_EQ(img.branch_count, 2);
    ASSERT_EQ(img.images.size(), 2u);
    EXPECT_EQ(img.images[0], (PhasePoint{3.0, 6.0}));
    EXPECT_EQ(img.images[1], (PhasePoint{3.0, 0.0}));
}

TEST(MapPoint, OutsideTheCircleHasNoImage)
{
    const auto img = map_point({4, 0.0}, {4.0, 0.0});
    EXPECT_EQ(img.branch_count, 0);
    EXPECT_TRUE(img.images.empty());
}

TEST(MapPoint, TangencyGivesOneBranch)
{
    const auto img = map_point({0, 1.0}, {0.0, 5.0});
    ASSERT_EQ(img.branch_count, 1);
    ASSERT_EQ(img.images.size(), 1u);
    EXPECT_EQ(img.images[0], (PhasePoint{0.0, 5.0}));
}

TEST(MapPoint, RandomizedProperties)
{
    std::mt19937_64 rng(20261018);
    std::uniform_int_distribution<unsigned> photons(0, 30);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int trial = 0; trial < 20000; ++trial) {
        const GateParams g{photons(rng), coord(rng)};
        const PhasePoint pt{coord(rng), coord(rng)};
        const auto img = map_point(g, pt);
        ASSERT_EQ(img.images.size(), static_cast<std::size_t>(img.branch_count));
        for (const auto& im : img.images)
            EXPECT_EQ(im.q, pt.q);
        const double r = std::sqrt(2.0 * g.n + 1.0);
        const double gap = std::abs(g.y_m - pt.q);
        if (std::abs(gap - r) > 1e-9) {
            EXPECT_EQ(img.branch_count == 2, gap < r);
        }
        if (img.branch_count == 2) {
            EXPECT_NEAR(img.images[0].p + img.images[1].p, 2.0 * pt.p, 1e-12);
            EXPECT_GT(img.images[0].p, img.images[1].p);
        }
    }
}

TEST(MapPoint, DiameterKickIsRadius)
{
    for (unsigned n = 0; n <= 40; ++n) {
        const double ym = 0.37 * n - 4.0;
        const auto img = map_point({n, ym}, {ym, 0.0});
        ASSERT_EQ(img.branch_count, 2);
        EXPECT_EQ(img.images[0].p, std::sqrt(2.0 * n + 1.0));
        EXPECT_EQ(img.images[1].p, -std::sqrt(2.0 * n + 1.0));
    }
}

TEST(SampleDisk, StaysInsideAndRejectsBadInput)
{
    const PhasePoint c{1.0, -2.0};
    const auto pts = sample_disk(c, 0.5, 64);
    EXPECT_GT(pts.size(), 64u);
    for (const auto& p : pts)
        EXPECT_LE(std::hypot(p.q - c.q, p.p - c.p), 0.5 + 1e-12);
    EXPECT_THROW(sample_disk(c, 0.5, 7), contract_error);
    EXPECT_THROW(sample_disk(c, 0.0, 64), contract_error);
    EXPECT_THROW(map_disk({4, 3.0}, c, 1.0, 4), contract_error);
}

TEST(MapDisk, LensesAroundTheKickedCenter)
{
    const auto img = map_disk({4, 3.0}, {3.0, 3.0}, 1.0, 64);
    EXPECT_EQ(img.dropped, 0u);
    ASSERT_EQ(img.upper.size(), img.lower.size());
    double qu = 0, pu = 0, ql = 0, pl = 0;
    for (std::size_t i = 0; i < img.upper.size(); ++i) {
        qu += img.upper[i].q;
        pu += img.upper[i].p;
        ql += img.lower[i].q;
        pl += img.lower[i].p;
    }
    const double m = static_cast<double>(img.upper.size());
    EXPECT_NEAR(qu / m, 3.0, 1e-9);
    EXPECT_NEAR(ql / m, 3.0, 1e-9);
    EXPECT_NEAR(pu / m, 6.0, 0.1);
    EXPECT_NEAR(pl / m, 0.0, 0.1);
    // The kick is largest at q = y_m, so no image rises above 3 + 1 + 3.
    for (const auto& p : img.upper)
        EXPECT_LE(p.p, 7.0 + 1e-12);
}

TEST(MapDisk, FarOutcomeDropsEverything)
{
    const auto img = map_disk({4, 10.0}, {3.0, 3.0}, 1.0, 32);
    EXPECT_TRUE(img.upper.empty());
    EXPECT_TRUE(img.lower.empty());
    EXPECT_EQ(img.dropped, sample_disk({3.0, 3.0}, 1.0, 32).size());
}

TEST(MapDisk, MirrorSymmetricAboutCenterMomentum)
{
    const PhasePoint c{0.5, -1.0};
    const auto img = map_disk({6, 1.2}, c, 0.8, 48);
    ASSERT_EQ(img.upper.size(), img.lower.size());
    for (std::size_t i = 0; i < img.upper.size(); ++i)
        EXPECT_EQ(img.upper[i].q, img.lower[i].q);
    const auto pts = sample_disk(c, 0.8, 48);
    double su = 0, sl = 0;
    for (std::size_t i = 0; i < img.upper.size(); ++i) {
        su += img.upper[i].p - c.p;
        sl += img.lower[i].p - c.p;
    }
    EXPECT_NEAR(su, -sl, 1e-9);
    EXPECT_EQ(img.upper.size() + img.dropped, pts.size());
}
