#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nokequal/cohomology.hpp"

namespace nokequal {

/// Degree-d quotient of the span of admissible preorders by every linear
/// relation multiplied into degree d, computed by sparse GF(2) elimination.
/// Shares nothing with Ring's rewriting; it exists to audit it.
class OracleNormalForm {
public:
    int k() const { return k_; }
    int n() const { return n_; }
    int d() const { return d_; }

    std::size_t admissible_count() const { return columns_.size(); }
    std::size_t relation_rows() const { return relation_rows_; }
    std::size_t rank() const { return rank_; }

    /// Columns left without a pivot; a basis of the quotient.
    const std::vector<StringPreorder>& basis() const { return basis_; }

    /// True when the quotient basis is exactly the set of basic preorders.
    bool basis_matches_basic() const { return basis_matches_basic_; }

    const std::vector<StringPreorder>& admissibles() const { return columns_; }

    /// Image of an admissible preorder in the quotient, as a class.
    /// Requires basis_matches_basic().
    CohClass image(const StringPreorder& admissible) const;

    /// Image as quotient-basis indices.
    std::vector<std::size_t> image_indices(const StringPreorder& admissible) const;

private:
    friend OracleNormalForm oracle_normal_form(int k, int n, int d);

    int k_ = 0;
    int n_ = 0;
    int d_ = 0;
    std::size_t relation_rows_ = 0;
    std::size_t rank_ = 0;
    bool basis_matches_basic_ = false;
    std::vector<StringPreorder> columns_;
    std::unordered_map<StringPreorder, std::uint32_t> column_index_;
    std::vector<StringPreorder> basis_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> images_;  // columns_.size() rows of words_ words
};

/// Cap on the number of admissible preorders the oracle will take on.
/// Reads NOKEQUAL_MAX_ORACLE_DIM; defaults to 60000.
std::size_t oracle_dimension_limit();

/// Number of admissible preorders with d blocks (without enumerating them).
double admissible_count(int k, int n, int d);

/// Throws TooLarge when admissible_count exceeds oracle_dimension_limit().
OracleNormalForm oracle_normal_form(int k, int n, int d);

}  // namespace nokequal
