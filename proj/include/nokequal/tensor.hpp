#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "nokequal/cohomology.hpp"

namespace nokequal {

/// One basis tuple of H^{(x)s}; slot q holds a basic preorder or the unit.
using TensorTerm = std::vector<StringPreorder>;

/// GF(2) combination of basis tuples in the s-fold tensor power.
class TensorClass {
public:
    TensorClass(int k, int n, int s);

    static TensorClass unit(int k, int n, int s);

    /// c placed in slot q (1-based), units elsewhere.
    static TensorClass in_slot(const CohClass& c, int q, int s);

    /// c_1 (x) c_2 (x) ... (x) c_s, expanded.
    static TensorClass tensor(std::span<const CohClass> slots);

    int k() const { return k_; }
    int n() const { return n_; }
    int s() const { return s_; }
    const std::set<TensorTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// GF(2) coefficient of a basis tuple.
    int coefficient(const TensorTerm& t) const { return terms_.count(t) != 0 ? 1 : 0; }

    void toggle(const TensorTerm& t);

    TensorClass& operator+=(const TensorClass& other);
    friend TensorClass operator+(TensorClass a, const TensorClass& b) { return a += b; }
    friend bool operator==(const TensorClass& a, const TensorClass& b)
    {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.s_ == b.s_ && a.terms_ == b.terms_;
    }

    /// Terms joined by "+", slots by the tensor sign; zero prints as "0".
    std::string to_string() const;

private:
    int k_;
    int n_;
    int s_;
    std::set<TensorTerm> terms_;
};

std::ostream& operator<<(std::ostream& os, const TensorClass& t);

/// Parses "p(x)q+..." (or with the tensor sign); slots are normalized.
TensorClass parse_tensor(std::string_view text, int k, int n, int s);

struct ZeroDivisorSpec {
    int m = 1;
    int q = 1;
    int s = 2;
};

/// z_{m,q}: x_m in slot q plus x_m in slot s. For s = 2 this is y_m.
TensorClass zero_divisor(const Ring& ring, const ZeroDivisorSpec& spec);

TensorClass tensor_cup(const Ring& ring, const TensorClass& a, const TensorClass& b);
TensorClass tensor_cup(const TensorClass& a, const TensorClass& b);

/// Image under the iterated cup H^{(x)s} -> H.
CohClass multiply_slots(const Ring& ring, const TensorClass& t);

/// Reverses the slot order (the coordinate switch when s = 2).
TensorClass swap_slots(const TensorClass& t);

/// The structured product of s*i zero-divisors:
///   s = 2: prod_j y_{(j-1)k+1} y_{(j-1)k+2};
///   s > 2: prod_{q <= s-2} prod_j z_{(j-1)k+1,q} times prod_j z_{(j-1)k+1,s-1} z_{(j-1)k+2,s-1}.
TensorClass witness_product(const Ring& ring, int i, int s);
TensorClass witness_product(int k, int n, int i, int s);

/// Number of zero-divisor factors in witness_product(.., i, s).
int witness_factor_count(int i, int s);

/// Alternating products p_{i,1}, p_{i,2}, for n = i*k and i >= 2.
CohClass p_witness(const Ring& ring, int i, int variant);
CohClass p_witness(int i, int variant, int k, int n);

/// The basic monomial prod_{j=1}^{i} x_{(j-1)k+offset}.
StringPreorder x_monomial(int k, int n, int i, int offset);

struct ZclCertificate {
    int value = 0;
    std::string witness;  // description of the certified product
};

/// Largest certified-nonzero product of s-th zero-divisors: the structured
/// witnesses, plus an exhaustive search over the y_m when s = 2 and n <= 2k.
ZclCertificate zcl_certificate(int k, int n, int s);
int zcl_lower(int k, int n, int s);

}  // namespace nokequal
