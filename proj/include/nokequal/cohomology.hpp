#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nokequal/preorder.hpp"

namespace nokequal {

/// A GF(2) combination of basic preorders: an element of H*(Conf_k(R,n); Z/2).
class CohClass {
public:
    CohClass(int k, int n) : k_(k), n_(n) {}

    static CohClass unit(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }
    const std::set<StringPreorder>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool contains(const StringPreorder& p) const { return terms_.count(p) != 0; }

    /// Adds a basic preorder with coefficient 1 (mod 2).
    void toggle(const StringPreorder& basic);

    CohClass& operator+=(const CohClass& other);
    friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
    friend bool operator==(const CohClass& a, const CohClass& b)
    {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// "+"-joined bracket strings; the zero class prints as "0".
    std::string to_string() const;

private:
    int k_;
    int n_;
    std::set<StringPreorder> terms_;
};

std::ostream& operator<<(std::ostream& os, const CohClass& c);

/// Parses "p+q+..." or "0"; every term must be admissible and is normalized.
CohClass parse_class(std::string_view text, int k, int n);

/// One instance of the linear relation: A, B, C partition {1..n}, |B| = k-2.
struct RelationInstance {
    Mask a = 0;
    Mask b = 0;
    Mask c = 0;

    /// The elementary preorders whose GF(2) sum vanishes.
    std::vector<StringPreorder> terms(int n) const;
};

void for_each_relation_instance(int k, int n, const std::function<void(const RelationInstance&)>& visit);

/// Product of elementary generators stored as its admissible closure, or
/// nullopt when the product vanishes (repeated factor or an oversized block).
std::optional<StringPreorder> monomial_closure(std::span<const StringPreorder> factors, int k);

/// Cached arithmetic in H*(Conf_k(R,n)). Instances are not thread-safe;
/// give each worker its own.
class Ring {
public:
    Ring(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }

    /// Rewrites an admissible preorder into the basic basis.
    CohClass normalize(const StringPreorder& admissible) const;

    CohClass cup(const CohClass& a, const CohClass& b) const;

    /// Product of a list of classes, left to right.
    CohClass product(std::span<const CohClass> factors) const;

    /// The class of x_m (or x'_m) expressed in the basic basis.
    CohClass x(int m, bool primed = false) const;

    CohClass unit() const { return CohClass::unit(k_, n_); }

    std::size_t cache_size() const { return cache_.size(); }

private:
    using SlotKey = std::string;

    const std::vector<SlotKey>& normal_form(const SlotKey& key) const;
    CohClass to_class(const std::vector<SlotKey>& keys) const;
    SlotKey key_of(const BlockForm& f) const;
    BlockForm form_of(const SlotKey& key) const;

    int k_;
    int n_;
    mutable std::unordered_map<SlotKey, std::vector<SlotKey>> cache_;
};

CohClass normalize(const StringPreorder& admissible, int k, int n);
CohClass cup(const CohClass& a, const CohClass& b);

/// Rank of H^{(k-2)d}: the number of basic preorders with d blocks.
std::size_t betti(int k, int n, int d);

struct CupLengthCertificate {
    int value = 0;
    std::optional<StringPreorder> witness;  // nonzero product of `value` degree-one classes
    bool upper_bound_confirmed = false;     // no basic preorder with value+1 blocks
};

CupLengthCertificate cup_length_certificate(int k, int n);
int cup_length(int k, int n);

}  // namespace nokequal
