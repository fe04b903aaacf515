#include <gtest/gtest.h>

#include <cstdlib>

#include "nokequal/error.hpp"
#include "nokequal/oracle.hpp"
#include "support.hpp"

using namespace nokequal;
using namespace nokequal::testing;

TEST(Oracle, DegreeOneAtFourPoints)
{
    const auto o = oracle_normal_form(3, 4, 1);
    EXPECT_EQ(o.basis().size(), 7u);
    EXPECT_TRUE(o.basis_matches_basic());
    EXPECT_EQ(o.image(parse_preorder("(1,2)[3,4]", 4)).to_string(), "(1)[2,3](4)+(2)[1,3](4)");
}

TEST(Oracle, DegreeTwoVanishesAtFivePoints)
{
    const auto o = oracle_normal_form(3, 5, 2);
    EXPECT_TRUE(o.basis().empty());
    EXPECT_EQ(o.rank(), o.admissible_count());
}

TEST(Oracle, DegreeOneAtFivePoints)
{
    EXPECT_EQ(oracle_normal_form(3, 5, 1).basis().size(), 31u);
}

TEST(Oracle, BasicPreordersMapToThemselves)
{
    const auto o = oracle_normal_form(3, 6, 2);
    ASSERT_TRUE(o.basis_matches_basic());
    for (const auto& b : enumerate_basic(3, 6, 2)) {
        const auto img = o.image(b);
        ASSERT_EQ(img.terms().size(), 1u);
        EXPECT_EQ(*img.terms().begin(), b);
    }
}

TEST(Oracle, AdmissibleCountMatchesEnumeration)
{
    for (int k = 3; k <= 4; ++k)
        for (int n = k; n <= 8; ++n)
            for (int d = 0; d * (k - 1) <= n && d <= 2; ++d) {
                std::size_t count = 0;
                for_each_admissible(k, n, d, [&](const BlockForm&) { ++count; });
                EXPECT_EQ(admissible_count(k, n, d), static_cast<double>(count)) << k << "," << n << "," << d;
            }
}

TEST(OracleProperty, AgreesWithRewritingOnSmallParameters)
{
    for (int n = 3; n <= 7; ++n)
        for (int d = 1; d <= 2 && 2 * d <= n; ++d) {
            const auto o = oracle_normal_form(3, n, d);
            ASSERT_TRUE(o.basis_matches_basic());
            const Ring ring(3, n);
            for (const auto& p : o.admissibles())
                ASSERT_EQ(ring.normalize(p), o.image(p)) << p;
        }
}

TEST(Oracle, DimensionGuard)
{
    ::setenv("NOKEQUAL_MAX_ORACLE_DIM", "10", 1);
    EXPECT_EQ(oracle_dimension_limit(), 10u);
    EXPECT_EQ(thrown_code([] { oracle_normal_form(3, 5, 1); }), ErrorCode::TooLarge);
    ::unsetenv("NOKEQUAL_MAX_ORACLE_DIM");
    EXPECT_EQ(oracle_dimension_limit(), 60000u);
}
