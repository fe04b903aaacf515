#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nokequal {

int cat_formula(int k, int n);
int tc_formula(int k, int n);
/// Higher topological complexity; s = 2 gives tc_formula.
int tcs_formula(int k, int n, int s);
int hdim_formula(int k, int n);

/// Sum_{i=k}^{n} C(n,i) C(i-1,k-1); throws RangeViolation unless k < n < 2k.
std::uint64_t betti_closed_form(int k, int n);

enum class CertificateStatus { Pass, Fail, Skipped };

std::string_view to_string(CertificateStatus status);

struct Certificate {
    std::string name;
    std::optional<long long> closed_form;
    std::optional<long long> lower;  // computed
    std::optional<long long> upper;  // analytic, never computed
    CertificateStatus status = CertificateStatus::Skipped;
    std::string note;

    /// lower == closed_form == upper wherever each is present.
    bool agreement() const;
};

struct InvariantReport {
    int k = 0;
    int n = 0;
    int s = 2;
    int cat = 0;
    int hdim = 0;
    int tc = 0;
    int tcs = 0;
    std::vector<std::size_t> betti;  // betti[d] for d = 0..floor(n/k)
    std::vector<Certificate> certificates;

    bool all_pass() const;
};

InvariantReport verify_cell(int k, int n, int s);

struct IntRange {
    int lo = 0;
    int hi = 0;
};

/// Reports for every cell of the grid, k-major then n then s; cells are
/// computed concurrently.
std::vector<InvariantReport> verify_range(IntRange k_range, IntRange n_range, IntRange s_range);

std::string to_json(const std::vector<InvariantReport>& reports);
std::string to_csv(const std::vector<InvariantReport>& reports);

}  // namespace nokequal
