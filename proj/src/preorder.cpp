#include "nokequal/preorder.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "nokequal/error.hpp"

namespace nokequal {

std::vector<int> elements_of(Mask m)
{
    std::vector<int> out;
    out.reserve(cardinality(m));
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

namespace {

void check_size(int n)
{
    if (n < 0 || n > kMaxElements)
        throw Error(ErrorCode::ParameterOutOfRange, "ambient size must lie in 0.." + std::to_string(kMaxElements));
}

}  // namespace

// ---------------------------------------------------------------------------
// RelationMatrix

RelationMatrix::RelationMatrix(int n) : n_(n), rows_(n)
{
    check_size(n);
    for (int i = 1; i <= n; ++i)
        rows_[i - 1] = element_bit(i);
}

RelationMatrix& RelationMatrix::close()
{
    for (int mid = 0; mid < n_; ++mid) {
        const Mask via = Mask{1} << mid;
        for (auto& row : rows_)
            if (row & via)
                row |= rows_[mid];
    }
    return *this;
}

bool RelationMatrix::is_preorder() const
{
    for (int i = 1; i <= n_; ++i) {
        const Mask r = rows_[i - 1];
        if (!(r & element_bit(i)))
            return false;
        for (Mask rest = r; rest; rest &= rest - 1)
            if ((rows_[std::countr_zero(rest)] & ~r) != 0)
                return false;
    }
    return true;
}

RelationMatrix operator|(const RelationMatrix& a, const RelationMatrix& b)
{
    if (a.n_ != b.n_)
        throw Error(ErrorCode::AmbientMismatch, "relation sizes differ");
    RelationMatrix out = a;
    for (int i = 0; i < a.n_; ++i)
        out.rows_[i] |= b.rows_[i];
    return out;
}

// ---------------------------------------------------------------------------
// StringPreorder

StringPreorder::StringPreorder(int n, std::vector<LevelSet> levels) : n_(n), levels_(std::move(levels))
{
    check_size(n);
    Mask seen = 0;
    for (auto& level : levels_) {
        if (level.elements == 0)
            throw Error(ErrorCode::MalformedSyntax, "empty level set");
        if (level.elements & ~full_mask(n))
            throw Error(ErrorCode::NotAPartition, "element outside 1.." + std::to_string(n));
        if (level.elements & seen)
            throw Error(ErrorCode::NotAPartition, "repeated element");
        seen |= level.elements;
        if (cardinality(level.elements) == 1)
            level.kind = LevelKind::Empty;
    }
    if (seen != full_mask(n))
        throw Error(ErrorCode::NotAPartition, "missing element");
}

StringPreorder StringPreorder::discrete(int n)
{
    if (n == 0)
        return StringPreorder(0, {});
    return StringPreorder(n, {{full_mask(n), LevelKind::Empty}});
}

std::string StringPreorder::to_string() const
{
    std::string out;
    for (const auto& level : levels_) {
        const bool full = level.kind == LevelKind::Full;
        out += full ? '[' : '(';
        bool first = true;
        for (int e : elements_of(level.elements)) {
            if (!first)
                out += ',';
            out += std::to_string(e);
            first = false;
        }
        out += full ? ']' : ')';
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const StringPreorder& p) { return os << p.to_string(); }

StringPreorder parse_preorder(std::string_view text, std::optional<int> n)
{
    std::vector<LevelSet> levels;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto fail = [&](const std::string& why) -> Error {
        return Error(ErrorCode::MalformedSyntax, why + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + "\"");
    };

    int largest = 0;
    Mask seen = 0;
    skip_ws();
    while (pos < text.size()) {
        const char open = text[pos];
        if (open != '(' && open != '[')
            throw fail("expected '(' or '['");
        const char close = open == '(' ? ')' : ']';
        ++pos;
        LevelSet level{0, open == '[' ? LevelKind::Full : LevelKind::Empty};
        for (;;) {
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                throw fail("expected element");
            long value = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                value = value * 10 + (text[pos] - '0');
                if (value > kMaxElements)
                    throw Error(ErrorCode::NotAPartition, "element exceeds " + std::to_string(kMaxElements));
                ++pos;
            }
            if (value < 1)
                throw Error(ErrorCode::NotAPartition, "elements start at 1");
            const Mask bit = element_bit(static_cast<int>(value));
            if ((seen | level.elements) & bit)
                throw Error(ErrorCode::NotAPartition, "element " + std::to_string(value) + " repeated");
            level.elements |= bit;
            largest = std::max(largest, static_cast<int>(value));
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == close) {
                ++pos;
                break;
            }
            throw fail(std::string("expected ',' or '") + close + "'");
        }
        seen |= level.elements;
        levels.push_back(level);
        skip_ws();
    }
    if (levels.empty())
        throw fail("no level sets");
    return StringPreorder(n.value_or(largest), std::move(levels));
}

RelationMatrix to_matrix(const StringPreorder& p)
{
    RelationMatrix r(p.size());
    Mask above = full_mask(p.size());
    for (const auto& level : p.levels()) {
        above &= ~level.elements;
        for (int e : elements_of(level.elements)) {
            for (int j : elements_of(above))
                r.set(e, j);
            if (level.kind == LevelKind::Full)
                for (int j : elements_of(level.elements))
                    r.set(e, j);
        }
    }
    return r;
}

std::optional<StringPreorder> to_string_form(const RelationMatrix& r)
{
    const int n = r.size();
    if (!r.is_preorder())
        return std::nullopt;
    if (n == 0)
        return StringPreorder::discrete(0);

    // Elements of one level share the set of strictly lower elements.
    std::vector<Mask> below(n, 0);
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x)
            if (r(y, x) && !r(x, y))
                below[x - 1] |= element_bit(y);

    std::map<Mask, Mask> groups;
    for (int x = 1; x <= n; ++x)
        groups[below[x - 1]] |= element_bit(x);

    std::vector<std::pair<Mask, Mask>> ordered(groups.begin(), groups.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return cardinality(a.first) < cardinality(b.first);
    });

    std::vector<LevelSet> levels;
    Mask lower = 0;
    for (const auto& [down, members] : ordered) {
        if (down != lower)
            return std::nullopt;
        const auto elems = elements_of(members);
        LevelKind kind = LevelKind::Empty;
        if (elems.size() > 1) {
            const bool related = r(elems[0], elems[1]);
            kind = related ? LevelKind::Full : LevelKind::Empty;
            for (int a : elems)
                if (((r.row(a) & members) | element_bit(a)) != (related ? members : element_bit(a)))
                    return std::nullopt;
        }
        levels.push_back({members, kind});
        lower |= members;
    }
    StringPreorder candidate(n, std::move(levels));
    if (!(to_matrix(candidate) == r))
        return std::nullopt;
    return candidate;
}

StringPreorder compose(const StringPreorder& p, const StringPreorder& q)
{
    if (p.size() != q.size())
        throw Error(ErrorCode::AmbientMismatch, "compose of preorders on different ground sets");
    auto closure = to_matrix(p) | to_matrix(q);
    closure.close();
    auto form = to_string_form(closure);
    if (!form)
        throw Error(ErrorCode::NotString, p.to_string() + " o " + q.to_string());
    return *form;
}

// ---------------------------------------------------------------------------
// Block forms and classification

StringPreorder BlockForm::to_preorder() const
{
    std::vector<LevelSet> levels;
    for (std::size_t i = 0; i < prefix_regions.size(); ++i) {
        if (i > 0)
            levels.push_back({blocks[i - 1], LevelKind::Full});
        if (prefix_regions[i])
            levels.push_back({prefix_regions[i], LevelKind::Empty});
    }
    return StringPreorder(n, std::move(levels));
}

std::optional<BlockForm> block_form(const StringPreorder& p)
{
    BlockForm f;
    f.n = p.size();
    f.prefix_regions.push_back(0);
    bool region_open = true;
    for (const auto& level : p.levels()) {
        if (level.kind == LevelKind::Full) {
            f.blocks.push_back(level.elements);
            f.prefix_regions.push_back(0);
            region_open = true;
        } else {
            if (!region_open)
                return std::nullopt;
            f.prefix_regions.back() = level.elements;
            region_open = false;
        }
    }
    return f;
}

bool is_basic(const BlockForm& f)
{
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const Mask region = f.prefix_regions[i + 1];
        if (!region || max_element(region) < max_element(f.blocks[i]))
            return false;
    }
    return true;
}

PreorderClass classify(const StringPreorder& p, int k)
{
    PreorderClass c;
    const auto f = block_form(p);
    if (!f)
        return c;
    for (Mask block : f->blocks)
        if (cardinality(block) != k - 1)
            return c;
    c.admissible = true;
    c.blocks = f->block_count();
    c.basic = is_basic(*f);
    return c;
}

std::vector<StringPreorder> factor_admissible(const StringPreorder& p, int k)
{
    if (!classify(p, k).admissible)
        throw Error(ErrorCode::NotAdmissible, p.to_string() + " for k=" + std::to_string(k));
    const auto f = *block_form(p);
    std::vector<StringPreorder> factors;
    Mask below = f.prefix_regions[0];
    for (int i = 0; i < f.block_count(); ++i) {
        const Mask above = full_mask(p.size()) & ~below & ~f.blocks[i];
        BlockForm e{p.size(), {below, above}, {f.blocks[i]}};
        factors.push_back(e.to_preorder());
        below |= f.blocks[i] | f.prefix_regions[i + 1];
    }
    return factors;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

/// Calls visit on every size-r subset of avail, in increasing numeric order.
template <typename Visit>
void for_each_subset_of_size(Mask avail, int r, Visit&& visit)
{
    const auto positions = elements_of(avail);
    const int m = static_cast<int>(positions.size());
    if (r > m || r < 0)
        return;
    // Gosper's hack on compressed indices; depositing is order preserving.
    if (r == 0) {
        visit(Mask{0});
        return;
    }
    std::uint64_t c = (r == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << r) - 1);
    const std::uint64_t limit = m == 64 ? 0 : (std::uint64_t{1} << m);
    for (;;) {
        Mask s = 0;
        for (std::uint64_t rest = c; rest; rest &= rest - 1)
            s |= element_bit(positions[std::countr_zero(rest)]);
        visit(s);
        const std::uint64_t low = c & -c;
        const std::uint64_t ripple = c + low;
        if (ripple == 0)
            return;
        c = (((ripple ^ c) >> 2) / low) | ripple;
        if (limit && c >= limit)
            return;
    }
}

struct BasicEnumerator {
    int k;
    int d;
    const std::function<void(const BlockForm&)>& visit;
    BlockForm current;

    void run(Mask avail, int depth)
    {
        if (depth == d) {
            current.prefix_regions[0] = avail;
            visit(current);
            return;
        }
        if (cardinality(avail) < (d - depth) * k)
            return;
        for_each_subset_of_size(avail, k - 1, [&](Mask block) {
            const Mask rest = avail & ~block;
            const int top = max_element(block);
            // I must contain an element above max(J), and be nonempty.
            for (Mask region = (Mask{0} - rest) & rest; region; region = (region - rest) & rest) {
                if (max_element(region) < top)
                    continue;
                current.blocks[depth] = block;
                current.prefix_regions[depth + 1] = region;
                run(rest & ~region, depth + 1);
            }
        });
    }
};

}  // namespace

void for_each_basic(int k, int n, int d, const std::function<void(const BlockForm&)>& visit)
{
    if (k < 3 || n < 0 || n > kMaxElements || d < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "enumerate_basic needs k >= 3, 0 <= n <= 64, d >= 0");
    BasicEnumerator e{k, d, visit, {}};
    e.current.n = n;
    e.current.blocks.assign(d, 0);
    e.current.prefix_regions.assign(d + 1, 0);
    e.run(full_mask(n), 0);
}

std::vector<StringPreorder> enumerate_basic(int k, int n, int d)
{
    std::vector<StringPreorder> out;
    for_each_basic(k, n, d, [&](const BlockForm& f) { out.push_back(f.to_preorder()); });
    return out;
}

void for_each_admissible(int k, int n, int d, const std::function<void(const BlockForm&)>& visit)
{
    if (k < 3 || n < 0 || n > kMaxElements || d < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "for_each_admissible needs k >= 3, 0 <= n <= 64, d >= 0");
    BlockForm f;
    f.n = n;
    f.blocks.assign(d, 0);
    f.prefix_regions.assign(d + 1, 0);

    std::function<void(Mask, int)> pick_blocks = [&](Mask avail, int depth) {
        if (depth == d) {
            const auto rest = elements_of(avail);
            std::vector<int> slot(rest.size(), 0);
            for (;;) {
                std::fill(f.prefix_regions.begin(), f.prefix_regions.end(), Mask{0});
                for (std::size_t i = 0; i < rest.size(); ++i)
                    f.prefix_regions[slot[i]] |= element_bit(rest[i]);
                visit(f);
                std::size_t i = 0;
                while (i < slot.size() && ++slot[i] == d + 1)
                    slot[i++] = 0;
                if (i == slot.size())
                    return;
            }
        }
        if (cardinality(avail) < (d - depth) * (k - 1))
            return;
        for_each_subset_of_size(avail, k - 1, [&](Mask block) {
            f.blocks[depth] = block;
            pick_blocks(avail & ~block, depth + 1);
        });
    };
    pick_blocks(full_mask(n), 0);
}

StringPreorder make_x(int m, int k, int n, bool primed)
{
    if (m < 1 || m + k > n + 2 || (primed && m < 2) || k < 2 || n > kMaxElements)
        throw Error(ErrorCode::IndexOutOfRange,
                    std::string(primed ? "x'_" : "x_") + std::to_string(m) + " with k=" + std::to_string(k) + ", n=" + std::to_string(n));
    Mask prefix = range_mask(1, m - 1);
    Mask block = range_mask(m, m + k - 2);
    if (primed) {
        prefix ^= element_bit(m - 1) | element_bit(m);
        block ^= element_bit(m - 1) | element_bit(m);
    }
    return BlockForm{n, {prefix, range_mask(m + k - 1, n)}, {block}}.to_preorder();
}

}  // namespace nokequal

std::size_t std::hash<nokequal::StringPreorder>::operator()(const nokequal::StringPreorder& p) const noexcept
{
    std::size_t h = static_cast<std::size_t>(p.size()) * 0x9e3779b97f4a7c15ULL;
    for (const auto& level : p.levels()) {
        h ^= std::hash<std::uint64_t>{}(level.elements * 2 + static_cast<unsigned>(level.kind)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}
