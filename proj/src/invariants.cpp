#include "nokequal/invariants.hpp"

#include <future>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "nokequal/cohomology.hpp"
#include "nokequal/error.hpp"
#include "nokequal/tensor.hpp"

namespace nokequal {

namespace {

void check_k(int k)
{
    if (k < 3)
        throw Error(ErrorCode::ParameterOutOfRange, "k must be at least 3");
}

unsigned __int128 choose(int n, int r)
{
    if (r < 0 || r > n)
        return 0;
    unsigned __int128 c = 1;
    for (int i = 1; i <= r; ++i)
        c = c * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    return c;
}

Certificate cat_certificate(int k, int n)
{
    Certificate c;
    c.name = "cat";
    c.closed_form = cat_formula(k, n);
    c.upper = n / k;
    c.note = "lower bound: nonzero product of x_1 x_{k+1} ...; upper bound: hdim/(k-2)";
    try {
        const auto cert = cup_length_certificate(k, n);
        c.lower = cert.value;
        if (cert.witness)
            c.note += "; witness " + cert.witness->to_string();
        if (cert.upper_bound_confirmed)
            c.note += "; no basic preorder with " + std::to_string(cert.value + 1) + " blocks";
        c.status = c.agreement() ? CertificateStatus::Pass : CertificateStatus::Fail;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge)
            throw;
        c.note = e.what();
    }
    return c;
}

/// TC (s = 2) or TC_s with the zcl lower bound; for n = k the lower bound is
/// the known value for the sphere S^{k-2}, which zcl alone does not reach.
Certificate tcs_certificate(int k, int n, int s, const std::optional<int>& zcl)
{
    Certificate c;
    c.name = s == 2 ? "tc" : "tc_s";
    c.closed_form = tcs_formula(k, n, s);
    if (n < k) {
        c.lower = 0;
        c.upper = 0;
        c.note = "contractible";
    } else if (n == k) {
        c.lower = tcs_formula(k, n, s);
        c.upper = tcs_formula(k, n, s);
        c.note = "upper bound from sphere S^{k-2}; zcl certificate = " + (zcl ? std::to_string(*zcl) : std::string("?")) +
                 " only";
    } else {
        if (zcl)
            c.lower = *zcl;
        c.upper = static_cast<long long>(s) * (n / k);
        c.note = "lower bound: zero-divisor cup-length; upper bound: s*hdim/(k-2)";
    }
    if (!c.lower)
        c.status = CertificateStatus::Skipped;
    else
        c.status = c.agreement() ? CertificateStatus::Pass : CertificateStatus::Fail;
    return c;
}

}  // namespace

int cat_formula(int k, int n)
{
    check_k(k);
    return n < 0 ? 0 : n / k;
}

int tc_formula(int k, int n)
{
    check_k(k);
    if (n < k)
        return 0;
    if (n == k)
        return k % 2 == 1 ? 1 : 2;
    return 2 * (n / k);
}

int tcs_formula(int k, int n, int s)
{
    check_k(k);
    if (s < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "s must be at least 2");
    if (s == 2)
        return tc_formula(k, n);
    if (n < k)
        return 0;
    if (n == k)
        return k % 2 == 1 ? s - 1 : s;
    return s * (n / k);
}

int hdim_formula(int k, int n)
{
    check_k(k);
    return n < k ? 0 : (k - 2) * (n / k);
}

std::uint64_t betti_closed_form(int k, int n)
{
    check_k(k);
    if (n <= k || n >= 2 * k)
        throw Error(ErrorCode::RangeViolation, "the closed form needs k < n < 2k");
    unsigned __int128 sum = 0;
    for (int i = k; i <= n; ++i)
        sum += choose(n, i) * choose(i - 1, k - 1);
    if (sum > std::numeric_limits<std::uint64_t>::max())
        throw Error(ErrorCode::TooLarge, "closed form exceeds 64 bits");
    return static_cast<std::uint64_t>(sum);
}

std::string_view to_string(CertificateStatus status)
{
    switch (status) {
    case CertificateStatus::Pass: return "pass";
    case CertificateStatus::Fail: return "fail";
    case CertificateStatus::Skipped: return "skipped";
    }
    return "unknown";
}

bool Certificate::agreement() const
{
    std::optional<long long> seen;
    for (const auto& v : {closed_form, lower, upper}) {
        if (!v)
            continue;
        if (seen && *seen != *v)
            return false;
        seen = v;
    }
    return true;
}

bool InvariantReport::all_pass() const
{
    for (const auto& c : certificates)
        if (c.status == CertificateStatus::Fail)
            return false;
    return true;
}

InvariantReport verify_cell(int k, int n, int s)
{
    check_k(k);
    if (n < 1 || n > kMaxElements)
        throw Error(ErrorCode::ParameterOutOfRange, "n must lie in 1..64");
    InvariantReport r;
    r.k = k;
    r.n = n;
    r.s = s;
    r.cat = cat_formula(k, n);
    r.hdim = hdim_formula(k, n);
    r.tc = tc_formula(k, n);
    r.tcs = tcs_formula(k, n, s);
    for (int d = 0; d <= n / k; ++d)
        r.betti.push_back(betti(k, n, d));

    r.certificates.push_back(cat_certificate(k, n));

    Certificate zcl;
    zcl.name = "zcl";
    std::optional<int> zcl_value;
    try {
        const auto cert = zcl_certificate(k, n, s);
        zcl_value = cert.value;
        zcl.lower = cert.value;
        const int expected = n < k ? 0 : n == k ? s - 1 : s * (n / k);
        zcl.closed_form = expected;
        zcl.status = cert.value >= expected ? CertificateStatus::Pass : CertificateStatus::Fail;
        zcl.note = cert.witness.empty() ? "informational" : "informational; " + cert.witness;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge)
            throw;
        zcl.note = e.what();
    }
    r.certificates.push_back(tcs_certificate(k, n, s, zcl_value));
    r.certificates.push_back(zcl);

    if (k < n && n < 2 * k) {
        Certificate b;
        b.name = "betti";
        b.closed_form = static_cast<long long>(betti_closed_form(k, n));
        b.lower = static_cast<long long>(r.betti.at(1));
        b.upper = b.lower;
        b.note = "basic preorders with one block vs the binomial sum";
        b.status = b.agreement() ? CertificateStatus::Pass : CertificateStatus::Fail;
        r.certificates.push_back(b);
    }
    return r;
}

std::vector<InvariantReport> verify_range(IntRange k_range, IntRange n_range, IntRange s_range)
{
    std::vector<std::future<InvariantReport>> jobs;
    for (int k = k_range.lo; k <= k_range.hi; ++k)
        for (int n = n_range.lo; n <= n_range.hi; ++n)
            for (int s = s_range.lo; s <= s_range.hi; ++s)
                jobs.push_back(std::async(std::launch::async, verify_cell, k, n, s));
    std::vector<InvariantReport> out;
    out.reserve(jobs.size());
    for (auto& j : jobs)
        out.push_back(j.get());
    return out;
}

std::string to_json(const std::vector<InvariantReport>& reports)
{
    using nlohmann::ordered_json;
    auto arr = ordered_json::array();
    const auto opt = [](const std::optional<long long>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    for (const auto& r : reports) {
        ordered_json j;
        j["k"] = r.k;
        j["n"] = r.n;
        j["s"] = r.s;
        j["cat"] = r.cat;
        j["hdim"] = r.hdim;
        j["tc"] = r.tc;
        j["tcs"] = r.tcs;
        j["betti"] = r.betti;
        auto certs = ordered_json::array();
        for (const auto& c : r.certificates) {
            ordered_json cj;
            cj["name"] = c.name;
            cj["value"] = opt(c.lower);
            cj["status"] = std::string(to_string(c.status));
            cj["closed_form"] = opt(c.closed_form);
            cj["upper"] = opt(c.upper);
            cj["agreement"] = c.agreement();
            cj["note"] = c.note;
            certs.push_back(cj);
        }
        j["certificates"] = certs;
        arr.push_back(j);
    }
    return arr.dump(2);
}

std::string to_csv(const std::vector<InvariantReport>& reports)
{
    std::ostringstream out;
    out << "k,n,s,cat,hdim,tc,tcs,betti,certificate,value,closed_form,upper,agreement,status\n";
    const auto opt = [](const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& r : reports) {
        std::string betti;
        for (std::size_t d = 0; d < r.betti.size(); ++d)
            betti += (d ? ";" : "") + std::to_string(r.betti[d]);
        for (const auto& c : r.certificates)
            out << r.k << ',' << r.n << ',' << r.s << ',' << r.cat << ',' << r.hdim << ',' << r.tc << ',' << r.tcs << ','
                << betti << ',' << c.name << ',' << opt(c.lower) << ',' << opt(c.closed_form) << ',' << opt(c.upper)
                << ',' << (c.agreement() ? "true" : "false") << ',' << to_string(c.status) << '\n';
    }
    return out.str();
}

}  // namespace nokequal
