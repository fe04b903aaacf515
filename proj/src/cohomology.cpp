#include "nokequal/cohomology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nokequal/error.hpp"

namespace nokequal {

// ---------------------------------------------------------------------------
// CohClass

CohClass CohClass::unit(int k, int n)
{
    CohClass c(k, n);
    c.terms_.insert(StringPreorder::discrete(n));
    return c;
}

void CohClass::toggle(const StringPreorder& basic)
{
    const auto cls = classify(basic, k_);
    if (basic.size() != n_)
        throw Error(ErrorCode::AmbientMismatch, basic.to_string() + " is not on {1.." + std::to_string(n_) + "}");
    if (!cls.basic)
        throw Error(ErrorCode::NotAdmissible, basic.to_string() + " is not a basic preorder for k=" + std::to_string(k_));
    if (auto [it, inserted] = terms_.insert(basic); !inserted)
        terms_.erase(it);
}

CohClass& CohClass::operator+=(const CohClass& other)
{
    if (other.k_ != k_ || other.n_ != n_)
        throw Error(ErrorCode::AmbientMismatch, "classes from different rings");
    for (const auto& t : other.terms_)
        if (auto [it, inserted] = terms_.insert(t); !inserted)
            terms_.erase(it);
    return *this;
}

std::string CohClass::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty())
            out += '+';
        out += t.to_string();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const CohClass& c) { return os << c.to_string(); }

CohClass parse_class(std::string_view text, int k, int n)
{
    Ring ring(k, n);
    CohClass out(k, n);
    std::string compact;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            compact += ch;
    if (compact == "0")
        return out;
    std::size_t start = 0;
    while (start <= compact.size()) {
        const auto plus = compact.find('+', start);
        const auto piece = compact.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        const auto p = parse_preorder(piece, n);
        if (!classify(p, k).admissible)
            throw Error(ErrorCode::NotAdmissible, p.to_string() + " for k=" + std::to_string(k));
        out += ring.normalize(p);
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Relations

std::vector<StringPreorder> RelationInstance::terms(int n) const
{
    std::vector<StringPreorder> out;
    for (int e : elements_of(a))
        out.push_back(BlockForm{n, {a & ~element_bit(e), c}, {b | element_bit(e)}}.to_preorder());
    for (int e : elements_of(c))
        out.push_back(BlockForm{n, {a, c & ~element_bit(e)}, {b | element_bit(e)}}.to_preorder());
    return out;
}

void for_each_relation_instance(int k, int n, const std::function<void(const RelationInstance&)>& visit)
{
    if (k < 3 || n < k - 2 || n > kMaxElements)
        throw Error(ErrorCode::ParameterOutOfRange, "relation instances need k >= 3 and n >= k-2");
    const Mask all = full_mask(n);
    const auto pick = [&](Mask b) {
        const Mask rest = all & ~b;
        Mask a = 0;
        do {
            visit({a, b, rest & ~a});
            a = (a - rest) & rest;
        } while (a != 0);
    };
    // (k-2)-subsets of {1..n} by brute force over a compressed index
    const auto positions = elements_of(all);
    std::vector<int> idx(k - 2);
    for (int i = 0; i < k - 2; ++i)
        idx[i] = i;
    for (;;) {
        Mask b = 0;
        for (int i : idx)
            b |= element_bit(positions[i]);
        pick(b);
        int i = k - 3;
        while (i >= 0 && idx[i] == n - (k - 2) + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k - 2; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// ---------------------------------------------------------------------------
// Monomials

namespace {

struct Factor {
    Mask below = 0;
    Mask block = 0;
};

/// Chain of pairwise nested distinct elementary factors; nullopt when any pair
/// fails to nest (their closure then has an oversized block or is a square).
std::optional<BlockForm> chain_of(std::vector<Factor> factors, int n)
{
    std::sort(factors.begin(), factors.end(), [](const Factor& x, const Factor& y) {
        return cardinality(x.below) < cardinality(y.below);
    });
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        const Mask lower = factors[i].below | factors[i].block;
        if ((lower & ~factors[i + 1].below) != 0)
            return std::nullopt;
    }
    BlockForm f;
    f.n = n;
    Mask covered = 0;
    for (const auto& x : factors) {
        f.prefix_regions.push_back(x.below & ~covered);
        f.blocks.push_back(x.block);
        covered = x.below | x.block;
    }
    f.prefix_regions.push_back(full_mask(n) & ~covered);
    return f;
}

void append_factors(const BlockForm& f, std::vector<Factor>& out)
{
    Mask below = f.prefix_regions[0];
    for (int i = 0; i < f.block_count(); ++i) {
        out.push_back({below, f.blocks[i]});
        below |= f.blocks[i] | f.prefix_regions[i + 1];
    }
}

template <typename Key>
void toggle(std::set<Key>& s, const Key& key)
{
    if (auto [it, inserted] = s.insert(key); !inserted)
        s.erase(it);
}

}  // namespace

std::optional<StringPreorder> monomial_closure(std::span<const StringPreorder> factors, int k)
{
    if (factors.empty())
        throw Error(ErrorCode::NotElementary, "empty monomial");
    const int n = factors.front().size();
    std::vector<Factor> fs;
    for (const auto& e : factors) {
        if (e.size() != n)
            throw Error(ErrorCode::AmbientMismatch, "factors on different ground sets");
        if (!classify(e, k).elementary())
            throw Error(ErrorCode::NotElementary, e.to_string() + " for k=" + std::to_string(k));
        append_factors(*block_form(e), fs);
    }
    auto chain = chain_of(std::move(fs), n);
    if (!chain)
        return std::nullopt;
    return chain->to_preorder();
}

// ---------------------------------------------------------------------------
// Ring
//
// An admissible preorder with d blocks is encoded by the slot of each element
// in the sequence I_0, J_1, I_1, ..., J_d, I_d (slot 2i is I_i, slot 2i-1 is
// J_i). Keys list the slots of n, n-1, ..., 1, so string comparison orders
// preorders by how high their largest elements sit.
//
// A block [J_i](I_i) is violating when m = max(J_i u I_i) lies in J_i.
// Writing the i-th factor via the relation with A = prefix, B = J_i - m,
// C = suffix + m, and discarding the terms that fail to nest with the other
// factors, gives
//
//   p = sum_{a in I_{i-1}} p[a: I_{i-1} -> J_i, m: J_i -> I_i]
//     + sum_{c in I_i}     p[c: I_i -> J_i,     m: J_i -> I_i].
//
// Every term has a strictly larger key than p (m moves up and is larger than
// any c moving down), so the rewriting terminates on the basic preorders.

Ring::Ring(int k, int n) : k_(k), n_(n)
{
    if (k < 3 || n < 0 || n > kMaxElements)
        throw Error(ErrorCode::ParameterOutOfRange, "ring needs k >= 3 and 0 <= n <= 64");
}

Ring::SlotKey Ring::key_of(const BlockForm& f) const
{
    SlotKey key(n_, '\0');
    for (std::size_t i = 0; i < f.prefix_regions.size(); ++i)
        for (int e : elements_of(f.prefix_regions[i]))
            key[n_ - e] = static_cast<char>(2 * i);
    for (std::size_t i = 0; i < f.blocks.size(); ++i)
        for (int e : elements_of(f.blocks[i]))
            key[n_ - e] = static_cast<char>(2 * i + 1);
    return key;
}

BlockForm Ring::form_of(const SlotKey& key) const
{
    int top = 0;
    for (char s : key)
        top = std::max(top, static_cast<int>(s));
    const int d = (top + 1) / 2;
    BlockForm f;
    f.n = n_;
    f.blocks.assign(d, 0);
    f.prefix_regions.assign(d + 1, 0);
    for (int idx = 0; idx < n_; ++idx) {
        const int s = key[idx];
        const Mask bit = element_bit(n_ - idx);
        if (s % 2 == 0)
            f.prefix_regions[s / 2] |= bit;
        else
            f.blocks[s / 2] |= bit;
    }
    return f;
}

CohClass Ring::to_class(const std::vector<SlotKey>& keys) const
{
    CohClass out(k_, n_);
    for (const auto& key : keys)
        out.toggle(form_of(key).to_preorder());
    return out;
}

const std::vector<Ring::SlotKey>& Ring::normal_form(const SlotKey& key) const
{
    if (auto it = cache_.find(key); it != cache_.end())
        return it->second;

    int top = 0;
    for (char s : key)
        top = std::max(top, static_cast<int>(s));
    const int d = (top + 1) / 2;

    std::set<SlotKey> pending{key};
    std::set<SlotKey> result;
    while (!pending.empty()) {
        SlotKey cur = std::move(pending.extract(pending.begin()).value());

        int block = 0;
        int top_idx = -1;
        for (int i = d; i >= 1 && block == 0; --i) {
            for (int idx = 0; idx < n_; ++idx) {
                const int s = cur[idx];
                if (s == 2 * i || s == 2 * i - 1) {
                    if (s == 2 * i - 1) {
                        block = i;
                        top_idx = idx;
                    }
                    break;
                }
            }
        }
        if (block == 0) {
            toggle(result, cur);
            continue;
        }
        if (cur != key) {
            if (auto it = cache_.find(cur); it != cache_.end()) {
                for (const auto& t : it->second)
                    toggle(result, t);
                continue;
            }
        }
        const char below = static_cast<char>(2 * block - 2);
        const char inside = static_cast<char>(2 * block - 1);
        const char above = static_cast<char>(2 * block);
        for (int idx = 0; idx < n_; ++idx) {
            if (cur[idx] != below && cur[idx] != above)
                continue;
            SlotKey term = cur;
            term[idx] = inside;
            term[top_idx] = above;
            toggle(pending, term);
        }
    }
    return cache_.emplace(key, std::vector<SlotKey>(result.begin(), result.end())).first->second;
}

CohClass Ring::normalize(const StringPreorder& admissible) const
{
    if (admissible.size() != n_)
        throw Error(ErrorCode::AmbientMismatch, admissible.to_string() + " is not on {1.." + std::to_string(n_) + "}");
    if (!classify(admissible, k_).admissible)
        throw Error(ErrorCode::NotAdmissible, admissible.to_string() + " for k=" + std::to_string(k_));
    return to_class(normal_form(key_of(*block_form(admissible))));
}

CohClass Ring::cup(const CohClass& a, const CohClass& b) const
{
    if (a.k() != k_ || b.k() != k_ || a.n() != n_ || b.n() != n_)
        throw Error(ErrorCode::AmbientMismatch, "cup of classes from different rings");
    std::set<SlotKey> acc;
    std::vector<Factor> fs;
    for (const auto& p : a.terms()) {
        const auto fp = *block_form(p);
        for (const auto& q : b.terms()) {
            fs.clear();
            append_factors(fp, fs);
            append_factors(*block_form(q), fs);
            if (auto chain = chain_of(fs, n_))
                for (const auto& t : normal_form(key_of(*chain)))
                    toggle(acc, t);
        }
    }
    return to_class(std::vector<SlotKey>(acc.begin(), acc.end()));
}

CohClass Ring::product(std::span<const CohClass> factors) const
{
    CohClass out = unit();
    for (const auto& f : factors) {
        out = cup(out, f);
        if (out.is_zero())
            break;
    }
    return out;
}

CohClass Ring::x(int m, bool primed) const { return normalize(make_x(m, k_, n_, primed)); }

CohClass normalize(const StringPreorder& admissible, int k, int n) { return Ring(k, n).normalize(admissible); }

CohClass cup(const CohClass& a, const CohClass& b)
{
    if (a.k() != b.k() || a.n() != b.n())
        throw Error(ErrorCode::AmbientMismatch, "cup of classes from different rings");
    return Ring(a.k(), a.n()).cup(a, b);
}

// ---------------------------------------------------------------------------
// Counts

std::size_t betti(int k, int n, int d)
{
    std::size_t count = 0;
    for_each_basic(k, n, d, [&](const BlockForm&) { ++count; });
    return count;
}

CupLengthCertificate cup_length_certificate(int k, int n)
{
    if (k < 3 || n < 0 || n > kMaxElements)
        throw Error(ErrorCode::ParameterOutOfRange, "cup_length needs k >= 3 and 0 <= n <= 64");
    const Ring ring(k, n);
    CupLengthCertificate cert;
    for (int q = n / k; q > 0 && !cert.witness; --q) {
        std::vector<CohClass> xs;
        for (int j = 1; j <= q; ++j)
            xs.push_back(ring.x((j - 1) * k + 1));
        const auto prod = ring.product(xs);
        if (prod.is_zero())
            continue;
        cert.value = q;
        cert.witness = *prod.terms().begin();
    }
    cert.upper_bound_confirmed = betti(k, n, cert.value + 1) == 0;
    return cert;
}

int cup_length(int k, int n) { return cup_length_certificate(k, n).value; }

}  // namespace nokequal
