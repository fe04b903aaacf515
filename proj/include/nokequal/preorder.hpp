#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace nokequal {

/// Subset of {1..n}; element e lives in bit e-1.
using Mask = std::uint64_t;

inline constexpr int kMaxElements = 64;

constexpr Mask element_bit(int e) { return Mask{1} << (e - 1); }

/// Elements lo..hi inclusive; empty when lo > hi.
constexpr Mask range_mask(int lo, int hi)
{
    if (lo > hi)
        return 0;
    const Mask upto_hi = hi >= 64 ? ~Mask{0} : (element_bit(hi + 1) - 1);
    return upto_hi & ~(element_bit(lo) - 1);
}

constexpr Mask full_mask(int n) { return range_mask(1, n); }

/// Largest element of a nonempty mask.
constexpr int max_element(Mask m) { return 64 - std::countl_zero(m); }

constexpr int cardinality(Mask m) { return std::popcount(m); }

std::vector<int> elements_of(Mask m);

enum class LevelKind : std::uint8_t { Empty, Full };

struct LevelSet {
    Mask elements = 0;
    LevelKind kind = LevelKind::Empty;

    friend auto operator<=>(const LevelSet&, const LevelSet&) = default;
};

/// Reflexive-transitive relation on {1..n}; row(i) holds every j with i <= j.
class RelationMatrix {
public:
    explicit RelationMatrix(int n);

    int size() const { return n_; }
    bool operator()(int i, int j) const { return (rows_[i - 1] >> (j - 1)) & 1u; }
    void set(int i, int j) { rows_[i - 1] |= element_bit(j); }
    Mask row(int i) const { return rows_[i - 1]; }

    /// Warshall closure in place.
    RelationMatrix& close();

    bool is_preorder() const;

    friend RelationMatrix operator|(const RelationMatrix& a, const RelationMatrix& b);
    friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;

private:
    int n_;
    std::vector<Mask> rows_;
};

/// A preorder given by an increasing list of level sets, each full or empty.
class StringPreorder {
public:
    StringPreorder() = default;

    /// Validates that the levels partition {1..n}; singleton levels become Empty.
    StringPreorder(int n, std::vector<LevelSet> levels);

    /// The empty preorder (only x <= x), written (1,...,n).
    static StringPreorder discrete(int n);

    int size() const { return n_; }
    const std::vector<LevelSet>& levels() const { return levels_; }

    std::string to_string() const;

    friend auto operator<=>(const StringPreorder&, const StringPreorder&) = default;

private:
    int n_ = 0;
    std::vector<LevelSet> levels_;
};

std::ostream& operator<<(std::ostream& os, const StringPreorder& p);

/// Parses the bracket notation, e.g. "(1)[2,3](4,5)". When n is absent it is
/// inferred as the largest element and the partition check is strict.
StringPreorder parse_preorder(std::string_view text, std::optional<int> n = std::nullopt);

RelationMatrix to_matrix(const StringPreorder& p);

/// The unique string form of r, or nullopt when r is not a string preorder.
std::optional<StringPreorder> to_string_form(const RelationMatrix& r);

/// Transitive closure of the union. Throws NotString when the closure has no
/// string form and AmbientMismatch on differing n.
StringPreorder compose(const StringPreorder& p, const StringPreorder& q);

/// (I_0)[J_1](I_1)...[J_d](I_d) with every I_i possibly empty.
struct BlockForm {
    int n = 0;
    std::vector<Mask> prefix_regions;  // I_0..I_d, size d+1
    std::vector<Mask> blocks;          // J_1..J_d

    int block_count() const { return static_cast<int>(blocks.size()); }
    StringPreorder to_preorder() const;

    friend auto operator<=>(const BlockForm&, const BlockForm&) = default;
};

/// Block decomposition, available iff no two Empty levels are adjacent.
std::optional<BlockForm> block_form(const StringPreorder& p);

struct PreorderClass {
    bool admissible = false;
    bool basic = false;
    int blocks = 0;  // d, meaningful when admissible

    bool elementary() const { return admissible && blocks == 1; }
    int dimension(int k) const { return (k - 2) * blocks; }
};

PreorderClass classify(const StringPreorder& p, int k);

bool is_basic(const BlockForm& f);

/// The d elementary factors of an admissible preorder, in block order.
std::vector<StringPreorder> factor_admissible(const StringPreorder& p, int k);

/// Basic preorders with d full blocks, ordered lexicographically on the
/// bitmask sequence (J_1, I_1, ..., J_d, I_d).
void for_each_basic(int k, int n, int d, const std::function<void(const BlockForm&)>& visit);
std::vector<StringPreorder> enumerate_basic(int k, int n, int d);

/// Every admissible preorder with d blocks (blocks of size k-1, any regions).
void for_each_admissible(int k, int n, int d, const std::function<void(const BlockForm&)>& visit);

/// x_m = (1..m-1)[m..m+k-2](m+k-1..n); the primed variant swaps m-1 and m.
StringPreorder make_x(int m, int k, int n, bool primed = false);

}  // namespace nokequal

template <>
struct std::hash<nokequal::StringPreorder> {
    std::size_t operator()(const nokequal::StringPreorder& p) const noexcept;
};
