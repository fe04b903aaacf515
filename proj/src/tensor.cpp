#include "nokequal/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nokequal/error.hpp"

namespace nokequal {

namespace {

constexpr std::string_view kTensorSign = "⊗";
constexpr int kMaxTensorElements = 16;

void check_params(int k, int n, int s)
{
    if (k < 3 || n < 0 || n > kMaxElements)
        throw Error(ErrorCode::ParameterOutOfRange, "tensor classes need k >= 3 and 0 <= n <= 64");
    if (s < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "tensor power s must be at least 2");
}

CohClass single(const StringPreorder& p, int k, int n)
{
    CohClass c(k, n);
    c.toggle(p);
    return c;
}

/// Expands a tuple of slot classes into basis tuples and toggles them into acc.
void expand_into(std::set<TensorTerm>& acc, const std::vector<CohClass>& slots)
{
    std::vector<std::vector<StringPreorder>> choices;
    for (const auto& c : slots) {
        if (c.is_zero())
            return;
        choices.emplace_back(c.terms().begin(), c.terms().end());
    }
    std::vector<std::size_t> pos(slots.size(), 0);
    TensorTerm t(slots.size());
    for (;;) {
        for (std::size_t q = 0; q < slots.size(); ++q)
            t[q] = choices[q][pos[q]];
        if (auto [it, inserted] = acc.insert(t); !inserted)
            acc.erase(it);
        std::size_t q = 0;
        while (q < slots.size() && ++pos[q] == choices[q].size())
            pos[q++] = 0;
        if (q == slots.size())
            return;
    }
}

std::vector<std::string> split(std::string_view text, std::string_view sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto at = text.find(sep, start);
        out.emplace_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos)
            return out;
        start = at + sep.size();
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// TensorClass

TensorClass::TensorClass(int k, int n, int s) : k_(k), n_(n), s_(s) { check_params(k, n, s); }

TensorClass TensorClass::unit(int k, int n, int s)
{
    TensorClass t(k, n, s);
    t.terms_.insert(TensorTerm(s, StringPreorder::discrete(n)));
    return t;
}

TensorClass TensorClass::in_slot(const CohClass& c, int q, int s)
{
    if (q < 1 || q > s)
        throw Error(ErrorCode::IndexOutOfRange, "slot " + std::to_string(q) + " outside 1.." + std::to_string(s));
    std::vector<CohClass> slots(s, CohClass::unit(c.k(), c.n()));
    slots[q - 1] = c;
    return tensor(slots);
}

TensorClass TensorClass::tensor(std::span<const CohClass> slots)
{
    if (slots.size() < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "tensor needs at least two slots");
    const int k = slots.front().k();
    const int n = slots.front().n();
    for (const auto& c : slots)
        if (c.k() != k || c.n() != n)
            throw Error(ErrorCode::AmbientMismatch, "tensor slots from different rings");
    TensorClass out(k, n, static_cast<int>(slots.size()));
    expand_into(out.terms_, std::vector<CohClass>(slots.begin(), slots.end()));
    return out;
}

void TensorClass::toggle(const TensorTerm& t)
{
    if (static_cast<int>(t.size()) != s_)
        throw Error(ErrorCode::DimensionMismatch, "tuple of length " + std::to_string(t.size()) +
                                                      " in a tensor power of " + std::to_string(s_));
    for (const auto& p : t) {
        if (p.size() != n_)
            throw Error(ErrorCode::AmbientMismatch, p.to_string() + " is not on {1.." + std::to_string(n_) + "}");
        if (!classify(p, k_).basic)
            throw Error(ErrorCode::NotAdmissible, p.to_string() + " is not a basic preorder for k=" + std::to_string(k_));
    }
    if (auto [it, inserted] = terms_.insert(t); !inserted)
        terms_.erase(it);
}

TensorClass& TensorClass::operator+=(const TensorClass& other)
{
    if (other.k_ != k_ || other.n_ != n_ || other.s_ != s_)
        throw Error(ErrorCode::AmbientMismatch, "tensor classes from different powers");
    for (const auto& t : other.terms_)
        if (auto [it, inserted] = terms_.insert(t); !inserted)
            terms_.erase(it);
    return *this;
}

std::string TensorClass::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty())
            out += '+';
        for (std::size_t q = 0; q < t.size(); ++q) {
            if (q > 0)
                out += kTensorSign;
            out += t[q].to_string();
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const TensorClass& t) { return os << t.to_string(); }

TensorClass parse_tensor(std::string_view text, int k, int n, int s)
{
    std::string compact;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            compact += ch;
    // the ASCII alias
    for (std::size_t at; (at = compact.find("(x)")) != std::string::npos;)
        compact.replace(at, 3, kTensorSign);
    TensorClass out(k, n, s);
    if (compact == "0")
        return out;
    for (const auto& summand : split(compact, "+")) {
        const auto pieces = split(summand, kTensorSign);
        if (static_cast<int>(pieces.size()) != s)
            throw Error(ErrorCode::DimensionMismatch,
                        "\"" + summand + "\" has " + std::to_string(pieces.size()) + " slots, expected " + std::to_string(s));
        std::vector<CohClass> slots;
        for (const auto& piece : pieces)
            slots.push_back(piece == "1" ? CohClass::unit(k, n) : parse_class(piece, k, n));
        out += TensorClass::tensor(slots);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Products

TensorClass zero_divisor(const Ring& ring, const ZeroDivisorSpec& spec)
{
    const int k = ring.k();
    const int n = ring.n();
    if (spec.s < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "tensor power s must be at least 2");
    if (spec.m < 1 || spec.m + k > n + 2)
        throw Error(ErrorCode::IndexOutOfRange, "x_" + std::to_string(spec.m) + " needs 1 <= m <= n-k+2");
    if (spec.q < 1 || spec.q > spec.s - 1)
        throw Error(ErrorCode::IndexOutOfRange, "zero-divisor slot q must lie in 1..s-1");
    const auto x = ring.x(spec.m);
    auto z = TensorClass::in_slot(x, spec.q, spec.s) + TensorClass::in_slot(x, spec.s, spec.s);
    if (!multiply_slots(ring, z).is_zero())
        throw Error(ErrorCode::NotAdmissible, "zero-divisor does not multiply to zero");
    return z;
}

TensorClass tensor_cup(const Ring& ring, const TensorClass& a, const TensorClass& b)
{
    if (a.k() != ring.k() || b.k() != ring.k() || a.n() != ring.n() || b.n() != ring.n() || a.s() != b.s())
        throw Error(ErrorCode::AmbientMismatch, "tensor cup of classes from different powers");
    const int k = ring.k();
    const int n = ring.n();
    std::set<TensorTerm> acc;
    std::vector<CohClass> slots;
    for (const auto& t : a.terms()) {
        for (const auto& u : b.terms()) {
            slots.clear();
            bool zero = false;
            for (std::size_t q = 0; q < t.size() && !zero; ++q) {
                slots.push_back(ring.cup(single(t[q], k, n), single(u[q], k, n)));
                zero = slots.back().is_zero();
            }
            if (!zero)
                expand_into(acc, slots);
        }
    }
    TensorClass out(k, n, a.s());
    for (const auto& t : acc)
        out.toggle(t);
    return out;
}

TensorClass tensor_cup(const TensorClass& a, const TensorClass& b)
{
    if (a.k() != b.k() || a.n() != b.n())
        throw Error(ErrorCode::AmbientMismatch, "tensor cup of classes from different powers");
    return tensor_cup(Ring(a.k(), a.n()), a, b);
}

CohClass multiply_slots(const Ring& ring, const TensorClass& t)
{
    CohClass out(ring.k(), ring.n());
    for (const auto& term : t.terms()) {
        CohClass prod = ring.unit();
        for (const auto& p : term) {
            prod = ring.cup(prod, single(p, ring.k(), ring.n()));
            if (prod.is_zero())
                break;
        }
        out += prod;
    }
    return out;
}

TensorClass swap_slots(const TensorClass& t)
{
    TensorClass out(t.k(), t.n(), t.s());
    for (auto term : t.terms()) {
        std::reverse(term.begin(), term.end());
        out.toggle(term);
    }
    return out;
}

int witness_factor_count(int i, int s) { return s * i; }

TensorClass witness_product(const Ring& ring, int i, int s)
{
    const int k = ring.k();
    const int n = ring.n();
    if (s < 2 || i < 1 || i * k > n)
        throw Error(ErrorCode::ParameterOutOfRange, "witness product needs s >= 2, i >= 1 and i*k <= n");
    if (n > kMaxTensorElements)
        throw Error(ErrorCode::TooLarge, "witness products are limited to n <= " + std::to_string(kMaxTensorElements));
    std::vector<ZeroDivisorSpec> factors;
    for (int q = 1; q <= s - 2; ++q)
        for (int j = 1; j <= i; ++j)
            factors.push_back({(j - 1) * k + 1, q, s});
    for (int j = 1; j <= i; ++j) {
        factors.push_back({(j - 1) * k + 1, s - 1, s});
        factors.push_back({(j - 1) * k + 2, s - 1, s});
    }
    auto prod = TensorClass::unit(k, n, s);
    for (const auto& z : factors) {
        prod = tensor_cup(ring, prod, zero_divisor(ring, z));
        if (prod.is_zero())
            break;
    }
    return prod;
}

TensorClass witness_product(int k, int n, int i, int s) { return witness_product(Ring(k, n), i, s); }

StringPreorder x_monomial(int k, int n, int i, int offset)
{
    std::vector<StringPreorder> xs;
    for (int j = 1; j <= i; ++j)
        xs.push_back(make_x((j - 1) * k + offset, k, n));
    const auto closure = monomial_closure(xs, k);
    if (!closure || !classify(*closure, k).basic)
        throw Error(ErrorCode::ParameterOutOfRange, "the monomial is not a basic preorder for these parameters");
    return *closure;
}

CohClass p_witness(const Ring& ring, int i, int variant)
{
    const int k = ring.k();
    const int n = ring.n();
    if (i < 2 || i * k != n)
        throw Error(ErrorCode::ParameterOutOfRange, "p_{i,v} needs i >= 2 and n = i*k");
    if (variant != 1 && variant != 2)
        throw Error(ErrorCode::ParameterOutOfRange, "p_{i,v} variant must be 1 or 2");
    // factor j (0-based) is x_{jk+1}; for j >= 1 it is primed on alternate
    // factors, starting with the second factor for variant 2 and the third
    // for variant 1
    std::vector<StringPreorder> xs{make_x(1, k, n)};
    for (int j = 1; j < i; ++j) {
        const bool primed = variant == 1 ? (j % 2 == 0) : (j % 2 == 1);
        xs.push_back(make_x(j * k + 1, k, n, primed));
    }
    const auto closure = monomial_closure(xs, k);
    if (!closure || !classify(*closure, k).basic)
        throw Error(ErrorCode::NotAdmissible, "p_{i,v} is not a basic monomial");
    return single(*closure, k, n);
}

CohClass p_witness(int i, int variant, int k, int n) { return p_witness(Ring(k, n), i, variant); }

// ---------------------------------------------------------------------------
// zcl

ZclCertificate zcl_certificate(int k, int n, int s)
{
    check_params(k, n, s);
    if (n > kMaxTensorElements)
        throw Error(ErrorCode::TooLarge, "zcl certificates are limited to n <= " + std::to_string(kMaxTensorElements));
    ZclCertificate cert;
    if (n < k) {
        cert.witness = "contractible";
        return cert;
    }
    const Ring ring(k, n);
    if (n == k) {
        // prod_{q=1}^{s-1} z_{1,q}
        auto prod = TensorClass::unit(k, n, s);
        for (int q = 1; q <= s - 1; ++q)
            prod = tensor_cup(ring, prod, zero_divisor(ring, {1, q, s}));
        if (!prod.is_zero()) {
            cert.value = s - 1;
            cert.witness = s == 2 ? "y_1" : "prod_q z_{1,q}";
        }
        return cert;
    }
    for (int i = n / k; i >= 1 && cert.value == 0; --i) {
        if (!witness_product(ring, i, s).is_zero()) {
            cert.value = witness_factor_count(i, s);
            cert.witness = "witness_product(i=" + std::to_string(i) + ")";
        }
    }
    if (s == 2 && n <= 2 * k) {
        std::vector<TensorClass> ys;
        for (int m = 1; m + k <= n + 2; ++m)
            ys.push_back(zero_divisor(ring, {m, 1, 2}));
        const int g = static_cast<int>(ys.size());
        for (unsigned subset = 1; subset < (1u << g); ++subset) {
            const int size = std::popcount(subset);
            if (size <= cert.value)
                continue;
            auto prod = TensorClass::unit(k, n, 2);
            std::string name;
            for (int m = 0; m < g && !prod.is_zero(); ++m) {
                if ((subset >> m) & 1u) {
                    prod = tensor_cup(ring, prod, ys[m]);
                    name += "y_" + std::to_string(m + 1);
                }
            }
            if (!prod.is_zero()) {
                cert.value = size;
                cert.witness = name;
            }
        }
    }
    return cert;
}

int zcl_lower(int k, int n, int s) { return zcl_certificate(k, n, s).value; }

}  // namespace nokequal
