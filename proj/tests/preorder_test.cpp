#include <gtest/gtest.h>

#include <set>

#include "nokequal/error.hpp"
#include "nokequal/preorder.hpp"
#include "support.hpp"

using namespace nokequal;
using namespace nokequal::testing;

namespace {

StringPreorder P(const char* text, std::optional<int> n = std::nullopt) { return parse_preorder(text, n); }

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::MalformedSyntax;
}

bool matches(const RelationMatrix& r, const BoolMatrix& m)
{
    for (int i = 1; i <= r.size(); ++i)
        for (int j = 1; j <= r.size(); ++j)
            if (r(i, j) != m[i - 1][j - 1])
                return false;
    return true;
}

}  // namespace

TEST(Parse, BracketNotation)
{
    const auto p = P("(1)[2,3](4,5)", 5);
    ASSERT_EQ(p.levels().size(), 3u);
    EXPECT_EQ(p.levels()[0], (LevelSet{0b1, LevelKind::Empty}));
    EXPECT_EQ(p.levels()[1], (LevelSet{0b110, LevelKind::Full}));
    EXPECT_EQ(p.levels()[2], (LevelSet{0b11000, LevelKind::Empty}));
    EXPECT_EQ(p.to_string(), "(1)[2,3](4,5)");
}

TEST(Parse, WhitespaceAndSingletonBrackets)
{
    EXPECT_EQ(P(" ( 1 ) [ 2 , 3 ]\t( 4 ) ").to_string(), "(1)[2,3](4)");
    EXPECT_EQ(P("[1][2,3]").to_string(), "(1)[2,3]");
}

TEST(Parse, SingletonLevelsAreATotalOrder)
{
    // each bracket group is its own level, so (1)(2)(3) is the chain 1 < 2 < 3
    const auto chain = P("(1)(2)(3)", 3);
    EXPECT_EQ(chain.levels().size(), 3u);
    EXPECT_NE(chain, StringPreorder::discrete(3));
    EXPECT_EQ(P("(1,2,3)", 3), StringPreorder::discrete(3));
}

TEST(Parse, Errors)
{
    EXPECT_EQ(code_of([] { P("(1)[2,3](3)", 3); }), ErrorCode::NotAPartition);
    EXPECT_EQ(code_of([] { P("(1)[2](4)", 4); }), ErrorCode::NotAPartition);
    EXPECT_EQ(code_of([] { P("(1)[2,3", 3); }), ErrorCode::MalformedSyntax);
    EXPECT_EQ(code_of([] { P("()[1,2]", 2); }), ErrorCode::MalformedSyntax);
    EXPECT_EQ(code_of([] { P("(1,a)", 2); }), ErrorCode::MalformedSyntax);
    EXPECT_EQ(code_of([] { P("", 0); }), ErrorCode::MalformedSyntax);
    EXPECT_EQ(code_of([] { P("(1)(3)"); }), ErrorCode::NotAPartition);
}

TEST(Matrix, Examples)
{
    const auto r = to_matrix(P("(1)[2,3](4)"));
    EXPECT_TRUE(r(1, 2) && r(1, 3) && r(1, 4) && r(2, 3) && r(3, 2) && r(2, 4) && r(3, 4));
    EXPECT_FALSE(r(2, 1) || r(4, 3) || r(4, 1));
    EXPECT_EQ(to_matrix(StringPreorder::discrete(3)), RelationMatrix(3));
    const auto all = to_matrix(P("[1,2]"));
    EXPECT_TRUE(all(1, 2) && all(2, 1));
}

TEST(Matrix, StringFormExamples)
{
    EXPECT_EQ(to_string_form(to_matrix(P("(1)[2,3](4)")))->to_string(), "(1)[2,3](4)");
    RelationMatrix full(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            full.set(i, j);
    EXPECT_EQ(to_string_form(full)->to_string(), "[1,2,3]");
    // the identity relation is the discrete preorder, a single empty level
    EXPECT_EQ(to_string_form(RelationMatrix(2)), StringPreorder::discrete(2));
}

TEST(Matrix, NonStringRelations)
{
    // 1 < 2 only, 3 unrelated: not a chain of levels
    RelationMatrix r(3);
    r.set(1, 2);
    EXPECT_FALSE(to_string_form(r).has_value());
    // 1 ~ 2 with 3 unrelated: one level that is neither full nor empty
    RelationMatrix s(3);
    s.set(1, 2);
    s.set(2, 1);
    EXPECT_FALSE(to_string_form(s).has_value());
}

TEST(MatrixProperty, RoundTripAndReferenceRelation)
{
    auto rng = make_rng(1);
    for (int iter = 0; iter < 2000; ++iter) {
        const int n = uniform_int(rng, 1, 9);
        const auto p = random_string_preorder(rng, n);
        const auto r = to_matrix(p);
        ASSERT_TRUE(r.is_preorder());
        ASSERT_TRUE(matches(r, relation_of(p))) << p;
        ASSERT_EQ(to_string_form(r), p) << p;
        ASSERT_EQ(parse_preorder(p.to_string(), n), p);
    }
}

TEST(Compose, Examples)
{
    EXPECT_EQ(compose(P("(1)[2,3](4)"), P("(2)[1,3](4)")).to_string(), "[1,2,3](4)");
    EXPECT_EQ(compose(P("(1)[2,3](4,5)"), P("(1,2,3)[4,5]")).to_string(), "(1)[2,3][4,5]");
    EXPECT_THROW(compose(P("(1)[2,3]"), P("(1)[2,3](4)")), Error);
}

TEST(ComposeProperty, AgreesWithReferenceClosure)
{
    auto rng = make_rng(2);
    int string_cases = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        const int n = uniform_int(rng, 1, 8);
        const auto p = random_string_preorder(rng, n);
        const auto q = random_string_preorder(rng, n);
        const auto ref = closure_of_union(relation_of(p), relation_of(q));
        try {
            const auto c = compose(p, q);
            ++string_cases;
            ASSERT_EQ(relation_of(c), ref) << p << " o " << q;
        } catch (const Error& e) {
            ASSERT_EQ(e.code(), ErrorCode::NotString);
        }
    }
    EXPECT_GT(string_cases, 100);
}

TEST(ComposeProperty, NeutralIdempotentCommutativeAssociative)
{
    auto rng = make_rng(3);
    for (int iter = 0; iter < 1500; ++iter) {
        const int n = uniform_int(rng, 1, 8);
        const auto p = random_string_preorder(rng, n);
        const auto q = random_string_preorder(rng, n);
        const auto r = random_string_preorder(rng, n);
        ASSERT_EQ(compose(p, StringPreorder::discrete(n)), p);
        ASSERT_EQ(compose(StringPreorder::discrete(n), p), p);
        ASSERT_EQ(compose(p, p), p);
        try {
            const auto pq = compose(p, q);
            ASSERT_EQ(compose(q, p), pq);
            const auto left = compose(pq, r);
            const auto qr = compose(q, r);
            ASSERT_EQ(compose(p, qr), left);
        } catch (const Error& e) {
            ASSERT_EQ(e.code(), ErrorCode::NotString);
        }
    }
}

TEST(ComposeProperty, SingleBlockClosedForms)
{
    auto rng = make_rng(4);
    for (int iter = 0; iter < 3000; ++iter) {
        const int k = uniform_int(rng, 3, 5);
        const int n = uniform_int(rng, k - 1, 9);
        const auto a = random_elementary_form(rng, k, n);
        auto b = random_elementary_form(rng, k, n);
        if (iter % 3 == 0) {
            // force the nested case: b's block sits above all of a's I and J
            const Mask lower = a.prefix_regions[0] | a.blocks[0];
            const auto rest = elements_of(full_mask(n) & ~lower);
            if (static_cast<int>(rest.size()) < k - 1)
                continue;
            std::vector<int> pick(rest);
            std::shuffle(pick.begin(), pick.end(), rng);
            Mask block = 0;
            Mask below = lower;
            for (std::size_t i = 0; i < pick.size(); ++i) {
                if (static_cast<int>(i) < k - 1)
                    block |= element_bit(pick[i]);
                else if (uniform_int(rng, 0, 1))
                    below |= element_bit(pick[i]);
            }
            b = BlockForm{n, {below, full_mask(n) & ~below & ~block}, {block}};
        }
        const auto p = a.to_preorder();
        const auto q = b.to_preorder();
        // the closure of two single-block preorders is always string
        const auto c = compose(p, q);
        ASSERT_EQ(c, closed_form_product(a, b)) << p << " o " << q;
    }
}

TEST(ComposeProperty, NonNestedElementaryProductsMerge)
{
    auto rng = make_rng(5);
    for (int iter = 0; iter < 2000; ++iter) {
        const int k = uniform_int(rng, 3, 5);
        const int n = uniform_int(rng, k, 9);
        const auto a = random_elementary_form(rng, k, n);
        const auto b = random_elementary_form(rng, k, n);
        const bool nested = ((a.prefix_regions[0] | a.blocks[0]) & ~b.prefix_regions[0]) == 0 ||
                            ((b.prefix_regions[0] | b.blocks[0]) & ~a.prefix_regions[0]) == 0;
        if (nested)
            continue;
        const auto c = compose(a.to_preorder(), b.to_preorder());
        const auto f = block_form(c);
        ASSERT_TRUE(f.has_value());
        ASSERT_EQ(f->block_count(), 1);
        ASSERT_GE(cardinality(f->blocks[0]), k - 1);
        ASSERT_EQ(classify(c, k).elementary(), a == b);
    }
}

TEST(Classify, Examples)
{
    const auto c1 = classify(P("(1)[2,3](4)"), 3);
    EXPECT_TRUE(c1.basic && c1.admissible && c1.elementary());
    EXPECT_EQ(c1.dimension(3), 1);
    const auto c2 = classify(P("(1,2)[3,4]"), 3);
    EXPECT_TRUE(c2.admissible && !c2.basic);
    const auto c3 = classify(P("(1)[2,3][4,5]"), 3);
    EXPECT_TRUE(c3.admissible && !c3.basic);
    EXPECT_EQ(c3.blocks, 2);
    EXPECT_FALSE(classify(P("[1,2,3](4)"), 3).admissible);
    EXPECT_FALSE(classify(P("(1)(2)[3,4]"), 3).admissible);
    const auto c4 = classify(StringPreorder::discrete(4), 3);
    EXPECT_TRUE(c4.admissible && c4.basic);
    EXPECT_EQ(c4.blocks, 0);
}

TEST(Factor, Examples)
{
    const auto f = factor_admissible(P("(1)[2,3](4)[5,6](7)"), 3);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].to_string(), "(1)[2,3](4,5,6,7)");
    EXPECT_EQ(f[1].to_string(), "(1,2,3,4)[5,6](7)");
    const auto g = factor_admissible(P("(1)[2,3][4,5]"), 3);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].to_string(), "(1)[2,3](4,5)");
    EXPECT_EQ(g[1].to_string(), "(1,2,3)[4,5]");
    EXPECT_EQ(factor_admissible(P("(1)[2,3](4)"), 3), std::vector{P("(1)[2,3](4)")});
    EXPECT_THROW(factor_admissible(P("[1,2,3]"), 3), Error);
}

TEST(FactorProperty, RecomposesToInput)
{
    auto rng = make_rng(6);
    for (int iter = 0; iter < 1000; ++iter) {
        const int k = uniform_int(rng, 3, 5);
        const int d = uniform_int(rng, 1, 3);
        const int n = uniform_int(rng, d * (k - 1), std::max(10, d * (k - 1)));
        const auto p = random_admissible_form(rng, k, n, d).to_preorder();
        const auto fs = factor_admissible(p, k);
        ASSERT_EQ(static_cast<int>(fs.size()), d);
        auto acc = StringPreorder::discrete(n);
        for (const auto& e : fs) {
            ASSERT_TRUE(classify(e, k).elementary());
            acc = compose(acc, e);
        }
        ASSERT_EQ(acc, p);
    }
}

TEST(Enumerate, Examples)
{
    const auto b = enumerate_basic(3, 4, 1);
    EXPECT_EQ(b.size(), 7u);
    EXPECT_NE(std::find(b.begin(), b.end(), P("(1)[2,3](4)")), b.end());
    EXPECT_NE(std::find(b.begin(), b.end(), P("(2)[1,3](4)")), b.end());
    EXPECT_TRUE(enumerate_basic(3, 5, 2).empty());
    EXPECT_EQ(enumerate_basic(4, 6, 0), std::vector{StringPreorder::discrete(6)});
}

TEST(EnumerateProperty, BasicEqualsFilteredBruteForce)
{
    for (int k = 3; k <= 5; ++k) {
        for (int n = k; n <= 8; ++n) {
            for (int d = 0; d * (k - 1) <= n; ++d) {
                std::set<StringPreorder> brute;
                std::size_t admissible = 0;
                for_each_admissible(k, n, d, [&](const BlockForm& f) {
                    ++admissible;
                    const auto p = f.to_preorder();
                    const auto c = classify(p, k);
                    ASSERT_TRUE(c.admissible);
                    ASSERT_EQ(c.blocks, d);
                    if (c.basic)
                        brute.insert(p);
                });
                const auto fast = enumerate_basic(k, n, d);
                const std::set<StringPreorder> fast_set(fast.begin(), fast.end());
                ASSERT_EQ(fast_set.size(), fast.size()) << "duplicates at " << k << "," << n << "," << d;
                ASSERT_EQ(fast_set, brute) << k << "," << n << "," << d;
            }
        }
    }
}

TEST(EnumerateProperty, DeterministicLexicographicOrder)
{
    std::vector<std::vector<Mask>> keys;
    for_each_basic(3, 7, 2, [&](const BlockForm& f) {
        keys.push_back({f.blocks[0], f.prefix_regions[1], f.blocks[1], f.prefix_regions[2]});
    });
    EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
    EXPECT_EQ(enumerate_basic(3, 7, 2), enumerate_basic(3, 7, 2));
}

TEST(MakeX, Examples)
{
    EXPECT_EQ(make_x(2, 3, 5).to_string(), "(1)[2,3](4,5)");
    EXPECT_EQ(make_x(4, 3, 6, true).to_string(), "(1,2,4)[3,5](6)");
    EXPECT_EQ(make_x(1, 3, 4).to_string(), "[1,2](3,4)");
    EXPECT_EQ(make_x(3, 3, 4).to_string(), "(1,2)[3,4]");
    EXPECT_EQ(code_of([] { make_x(4, 3, 4); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(code_of([] { make_x(1, 3, 4, true); }), ErrorCode::IndexOutOfRange);
    for (int m = 1; m + 3 <= 7; ++m) {
        EXPECT_TRUE(classify(make_x(m, 3, 6), 3).basic) << m;
        if (m >= 2)
            EXPECT_TRUE(classify(make_x(m, 3, 6, true), 3).basic) << m;
    }
}
