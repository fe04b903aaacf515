#pragma once

// Random generators and slow reference implementations shared by the tests.

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <random>
#include <vector>

#include "nokequal/error.hpp"
#include "nokequal/preorder.hpp"

namespace nokequal::testing {

using Rng = std::mt19937_64;

/// The code of the Error thrown by f, or nullopt when nothing is thrown.
inline std::optional<ErrorCode> thrown_code(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline Rng make_rng(std::uint64_t salt = 0) { return Rng(0x5eed1234abcdULL ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<int> shuffled(Rng& rng, int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    return v;
}

inline Mask mask_of(const std::vector<int>& v, std::size_t from, std::size_t to)
{
    Mask m = 0;
    for (std::size_t i = from; i < to; ++i)
        m |= element_bit(v[i]);
    return m;
}

/// Any string preorder: a random ordered set partition with random kinds.
inline StringPreorder random_string_preorder(Rng& rng, int n)
{
    const auto perm = shuffled(rng, n);
    std::vector<LevelSet> levels;
    std::size_t start = 0;
    while (start < perm.size()) {
        const auto len = static_cast<std::size_t>(uniform_int(rng, 1, std::min<int>(3, n - static_cast<int>(start))));
        levels.push_back({mask_of(perm, start, start + len), uniform_int(rng, 0, 1) ? LevelKind::Full : LevelKind::Empty});
        start += len;
    }
    return StringPreorder(n, std::move(levels));
}

/// (I)[J](K) with |J| = k-1 and a random split of the rest.
inline BlockForm random_elementary_form(Rng& rng, int k, int n)
{
    const auto perm = shuffled(rng, n);
    const Mask block = mask_of(perm, 0, k - 1);
    Mask below = 0;
    for (std::size_t i = k - 1; i < perm.size(); ++i)
        if (uniform_int(rng, 0, 1))
            below |= element_bit(perm[i]);
    return BlockForm{n, {below, full_mask(n) & ~below & ~block}, {block}};
}

/// Admissible preorder with d blocks (d*(k-1) <= n).
inline BlockForm random_admissible_form(Rng& rng, int k, int n, int d)
{
    const auto perm = shuffled(rng, n);
    BlockForm f;
    f.n = n;
    f.prefix_regions.assign(d + 1, 0);
    for (int i = 0; i < d; ++i)
        f.blocks.push_back(mask_of(perm, i * (k - 1), (i + 1) * (k - 1)));
    for (std::size_t i = d * (k - 1); i < perm.size(); ++i)
        f.prefix_regions[uniform_int(rng, 0, d)] |= element_bit(perm[i]);
    return f;
}

// ---------------------------------------------------------------------------
// Reference relations on plain bool matrices.

using BoolMatrix = std::vector<std::vector<bool>>;

/// i <= j read directly off the levels.
inline BoolMatrix relation_of(const StringPreorder& p)
{
    const int n = p.size();
    std::vector<int> height(n + 1, 0);
    std::vector<bool> full(n + 1, false);
    int h = 0;
    for (const auto& level : p.levels()) {
        for (int e : elements_of(level.elements)) {
            height[e] = h;
            full[e] = level.kind == LevelKind::Full;
        }
        ++h;
    }
    BoolMatrix m(n, std::vector<bool>(n, false));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m[i - 1][j - 1] = i == j || height[i] < height[j] || (height[i] == height[j] && full[i]);
    return m;
}

inline BoolMatrix closure_of_union(const BoolMatrix& a, const BoolMatrix& b)
{
    const auto n = a.size();
    BoolMatrix m(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a[i][j] || b[i][j];
    for (std::size_t mid = 0; mid < n; ++mid)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][mid])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[mid][j])
                        m[i][j] = true;
    return m;
}

// ---------------------------------------------------------------------------
// Closed forms for products of single-block preorders.

/// (I)[J](K) o (I')[J'](K') from the inclusion cases; blocks given as
/// (below, block) with the rest above.
inline StringPreorder closed_form_product(const BlockForm& p, const BlockForm& q)
{
    const int n = p.n;
    const Mask i1 = p.prefix_regions[0], j1 = p.blocks[0], k1 = p.prefix_regions[1];
    const Mask i2 = q.prefix_regions[0], j2 = q.blocks[0], k2 = q.prefix_regions[1];
    if (((i1 | j1) & ~i2) == 0)
        return BlockForm{n, {i1, k1 & i2, k2}, {j1, j2}}.to_preorder();
    if (((i2 | j2) & ~i1) == 0)
        return BlockForm{n, {i2, k2 & i1, k1}, {j2, j1}}.to_preorder();
    return BlockForm{n, {i1 & i2, k1 & k2}, {j1 | j2 | (i1 & k2) | (i2 & k1)}}.to_preorder();
}

}  // namespace nokequal::testing
