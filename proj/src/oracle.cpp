#include "nokequal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "nokequal/error.hpp"

namespace nokequal {

namespace {

using Row = std::vector<std::uint32_t>;

struct FormHash {
    std::size_t operator()(const std::vector<Mask>& v) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Mask m : v)
            h = (h ^ m) * 0x100000001b3ull;
        return h;
    }
};

std::vector<Mask> flatten(const BlockForm& f)
{
    std::vector<Mask> v = f.prefix_regions;
    v.insert(v.end(), f.blocks.begin(), f.blocks.end());
    return v;
}

struct Elementary {
    Mask below = 0;
    Mask block = 0;
};

std::vector<Elementary> factors_of(const BlockForm& f)
{
    std::vector<Elementary> out;
    Mask below = f.prefix_regions[0];
    for (int i = 0; i < f.block_count(); ++i) {
        out.push_back({below, f.blocks[i]});
        below |= f.blocks[i] | f.prefix_regions[i + 1];
    }
    return out;
}

bool nests(const Elementary& x, const Elementary& y)
{
    return ((x.below | x.block) & ~y.below) == 0 || ((y.below | y.block) & ~x.below) == 0;
}

/// Closure of pairwise nested factors.
BlockForm assemble(std::vector<Elementary> fs, int n)
{
    std::sort(fs.begin(), fs.end(), [](const Elementary& a, const Elementary& b) {
        return cardinality(a.below) < cardinality(b.below);
    });
    BlockForm f;
    f.n = n;
    Mask covered = 0;
    for (const auto& e : fs) {
        f.prefix_regions.push_back(e.below & ~covered);
        f.blocks.push_back(e.block);
        covered = e.below | e.block;
    }
    f.prefix_regions.push_back(full_mask(n) & ~covered);
    return f;
}

void symmetric_difference(Row& acc, const Row& other, Row& scratch)
{
    scratch.clear();
    std::set_symmetric_difference(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(scratch));
    acc.swap(scratch);
}

double binomial(int n, int r)
{
    if (r < 0 || r > n)
        return 0;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0));
}

}  // namespace

std::size_t oracle_dimension_limit()
{
    if (const char* env = std::getenv("NOKEQUAL_MAX_ORACLE_DIM")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
        }
    }
    return 60000;
}

double admissible_count(int k, int n, int d)
{
    const int used = d * (k - 1);
    if (d < 0 || used > n)
        return 0;
    double count = 1;
    int left = n;
    for (int i = 0; i < d; ++i) {
        count *= binomial(left, k - 1);
        left -= k - 1;
    }
    return std::round(count * std::pow(d + 1.0, left));
}

OracleNormalForm oracle_normal_form(int k, int n, int d)
{
    if (k < 3 || n < 0 || n > kMaxElements || d < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "oracle needs k >= 3, 0 <= n <= 64, d >= 0");
    const double expected = admissible_count(k, n, d);
    if (expected > static_cast<double>(oracle_dimension_limit()))
        throw Error(ErrorCode::TooLarge, std::to_string(static_cast<long long>(expected)) +
                                             " admissible preorders exceed the oracle limit of " +
                                             std::to_string(oracle_dimension_limit()));

    OracleNormalForm out;
    out.k_ = k;
    out.n_ = n;
    out.d_ = d;

    // Columns: non-basic first so that they take the pivots.
    std::vector<BlockForm> forms;
    for_each_admissible(k, n, d, [&](const BlockForm& f) { forms.push_back(f); });
    std::stable_partition(forms.begin(), forms.end(), [](const BlockForm& f) { return !is_basic(f); });
    std::unordered_map<std::vector<Mask>, std::uint32_t, FormHash> index;
    index.reserve(forms.size() * 2);
    for (std::size_t i = 0; i < forms.size(); ++i)
        index.emplace(flatten(forms[i]), static_cast<std::uint32_t>(i));
    const std::size_t ncols = forms.size();

    // Rows: each relation instance times each admissible preorder of degree d-1.
    std::vector<Row> pivot(ncols);
    Row row;
    Row scratch;
    const auto reduce_and_insert = [&](Row& r) {
        while (!r.empty()) {
            const auto lead = r.front();
            if (pivot[lead].empty()) {
                pivot[lead] = r;
                ++out.rank_;
                return;
            }
            symmetric_difference(r, pivot[lead], scratch);
        }
    };

    if (d >= 1) {
        std::vector<RelationInstance> relations;
        for_each_relation_instance(k, n, [&](const RelationInstance& r) { relations.push_back(r); });
        std::vector<BlockForm> lower;
        for_each_admissible(k, n, d - 1, [&](const BlockForm& f) { lower.push_back(f); });

        std::vector<Elementary> combined;
        for (const auto& q : lower) {
            const auto qf = factors_of(q);
            for (const auto& rel : relations) {
                bool possible = true;
                for (const auto& f : qf) {
                    const bool under = ((rel.a | rel.b) & ~f.below) == 0;
                    const bool over = ((f.below | f.block) & ~rel.a) == 0;
                    if (!under && !over) {
                        possible = false;
                        break;
                    }
                }
                if (!possible)
                    continue;
                row.clear();
                const auto add_term = [&](const Elementary& t) {
                    for (const auto& f : qf)
                        if (!nests(t, f))
                            return;
                    combined = qf;
                    combined.push_back(t);
                    const auto it = index.find(flatten(assemble(combined, n)));
                    if (it == index.end())
                        throw Error(ErrorCode::NotAdmissible, "relation term outside the admissible columns");
                    row.push_back(it->second);
                };
                for (int e : elements_of(rel.a))
                    add_term({rel.a & ~element_bit(e), rel.b | element_bit(e)});
                for (int e : elements_of(rel.c))
                    add_term({rel.a, rel.b | element_bit(e)});
                std::sort(row.begin(), row.end());
                // cancel repeated columns mod 2
                Row reduced;
                for (std::size_t i = 0; i < row.size();) {
                    std::size_t j = i;
                    while (j < row.size() && row[j] == row[i])
                        ++j;
                    if ((j - i) % 2 == 1)
                        reduced.push_back(row[i]);
                    i = j;
                }
                if (reduced.empty())
                    continue;
                ++out.relation_rows_;
                reduce_and_insert(reduced);
            }
        }
    }

    // Free columns span the quotient.
    std::vector<std::int64_t> free_index(ncols, -1);
    std::size_t nfree = 0;
    for (std::size_t c = 0; c < ncols; ++c)
        if (pivot[c].empty())
            free_index[c] = static_cast<std::int64_t>(nfree++);
    out.words_ = (nfree + 63) / 64;
    out.images_.assign(ncols * out.words_, 0);
    for (std::size_t c = ncols; c-- > 0;) {
        std::uint64_t* img = out.images_.data() + c * out.words_;
        if (free_index[c] >= 0) {
            img[free_index[c] / 64] |= std::uint64_t{1} << (free_index[c] % 64);
            continue;
        }
        for (std::size_t t = 1; t < pivot[c].size(); ++t) {
            const std::uint64_t* other = out.images_.data() + static_cast<std::size_t>(pivot[c][t]) * out.words_;
            for (std::size_t w = 0; w < out.words_; ++w)
                img[w] ^= other[w];
        }
    }

    out.columns_.reserve(ncols);
    bool matches = true;
    for (std::size_t c = 0; c < ncols; ++c) {
        out.columns_.push_back(forms[c].to_preorder());
        out.column_index_.emplace(out.columns_.back(), static_cast<std::uint32_t>(c));
        if (free_index[c] >= 0) {
            out.basis_.push_back(out.columns_.back());
            matches = matches && is_basic(forms[c]);
        } else {
            matches = matches && !is_basic(forms[c]);
        }
    }
    out.basis_matches_basic_ = matches;
    return out;
}

std::vector<std::size_t> OracleNormalForm::image_indices(const StringPreorder& admissible) const
{
    const auto it = column_index_.find(admissible);
    if (it == column_index_.end())
        throw Error(ErrorCode::NotAdmissible,
                    admissible.to_string() + " is not an admissible preorder with " + std::to_string(d_) + " blocks");
    std::vector<std::size_t> out;
    const std::uint64_t* img = images_.data() + static_cast<std::size_t>(it->second) * words_;
    for (std::size_t w = 0; w < words_; ++w)
        for (std::uint64_t bits = img[w]; bits != 0; bits &= bits - 1)
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    return out;
}

CohClass OracleNormalForm::image(const StringPreorder& admissible) const
{
    if (!basis_matches_basic_)
        throw Error(ErrorCode::NotAdmissible, "oracle quotient basis differs from the basic preorders");
    CohClass out(k_, n_);
    for (std::size_t i : image_indices(admissible))
        out.toggle(basis_[i]);
    return out;
}

}  // namespace nokequal
