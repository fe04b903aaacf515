#include "nokequal/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "nokequal/error.hpp"

namespace nokequal {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr int kMaxComplexVertices = 24;

void check_finite(const Configuration& x)
{
    if (!x.allFinite())
        throw Error(ErrorCode::NotInSpace, "configuration has non-finite coordinates");
}

/// Does the segment a + t (b - a), t in [0,1], put every coordinate of sigma
/// at a common value for some t? Exact on the double inputs.
bool segment_hits(const Configuration& a, const Configuration& b, Mask sigma)
{
    const auto idx = elements_of(sigma);
    const int i0 = idx.front() - 1;
    // admissible t: everything (nullopt) or a single value
    std::optional<Rational> t;
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const int i = idx[j] - 1;
        const Rational c0 = Rational(a[i]) - Rational(a[i0]);
        const Rational c1 = (Rational(b[i]) - Rational(a[i])) - (Rational(b[i0]) - Rational(a[i0]));
        if (c1 == 0) {
            if (c0 != 0)
                return false;
            continue;
        }
        const Rational root = -c0 / c1;
        if (root < 0 || root > 1)
            return false;
        if (t && *t != root)
            return false;
        t = root;
    }
    return true;
}

std::vector<Mask> k_subsets(int n, int k)
{
    std::vector<Mask> out;
    if (k < 1 || k > n)
        return out;
    const Mask last = range_mask(n - k + 1, n);
    for (Mask m = range_mask(1, k);; ) {
        out.push_back(m);
        if (m == last)
            return out;
        // next subset of the same size (Gosper)
        const Mask c = m & (~m + 1);
        const Mask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

std::vector<Mask> nonfaces_for(const Constraint& c, int n)
{
    if (const int* k = std::get_if<int>(&c)) {
        if (*k < 2)
            throw Error(ErrorCode::ParameterOutOfRange, "k must be at least 2");
        return k_subsets(n, *k);
    }
    const auto& complex = std::get<SimplicialComplex>(c);
    if (complex.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "configuration of size " + std::to_string(n) + " against a complex on " +
                                                      std::to_string(complex.size()) + " vertices");
    return complex.minimal_nonfaces();
}

}  // namespace

// ---------------------------------------------------------------------------
// Membership

bool in_conf_k(const Configuration& x, int k)
{
    std::unordered_map<double, int> counts;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (++counts[x[i] == 0 ? 0.0 : x[i]] >= k)
            return false;
    return true;
}

SimplicialComplex::SimplicialComplex(int n, std::vector<Mask> facets) : n_(n), facets_(std::move(facets))
{
    if (n < 1 || n > kMaxComplexVertices)
        throw Error(ErrorCode::ParameterOutOfRange, "complexes need 1 <= n <= " + std::to_string(kMaxComplexVertices));
    for (Mask f : facets_)
        if (f == 0 || (f & ~full_mask(n)) != 0)
            throw Error(ErrorCode::NotAPartition, "facet outside {1.." + std::to_string(n) + "}");
    for (int e = 1; e <= n; ++e)
        if (!is_face(element_bit(e)))
            facets_.push_back(element_bit(e));
    // drop facets contained in others
    std::sort(facets_.begin(), facets_.end());
    facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());
    std::vector<Mask> maximal;
    for (Mask f : facets_) {
        const bool covered = std::any_of(facets_.begin(), facets_.end(), [&](Mask g) { return g != f && (f & ~g) == 0; });
        if (!covered)
            maximal.push_back(f);
    }
    facets_ = std::move(maximal);

    for (int size = 2; size <= n; ++size) {
        for (Mask sigma : k_subsets(n, size)) {
            if (is_face(sigma))
                continue;
            bool minimal = true;
            for (int e : elements_of(sigma))
                if (!is_face(sigma & ~element_bit(e))) {
                    minimal = false;
                    break;
                }
            if (minimal)
                minimal_nonfaces_.push_back(sigma);
        }
    }
}

SimplicialComplex SimplicialComplex::full_simplex(int n) { return SimplicialComplex(n, {full_mask(n)}); }

SimplicialComplex SimplicialComplex::skeleton(int n, int dim)
{
    if (dim < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "skeleton dimension must be non-negative");
    return SimplicialComplex(n, k_subsets(n, std::min(dim + 1, n)));
}

bool SimplicialComplex::is_face(Mask sigma) const
{
    return std::any_of(facets_.begin(), facets_.end(), [&](Mask f) { return (sigma & ~f) == 0; });
}

bool in_conf_complex(const Configuration& x, const SimplicialComplex& k)
{
    if (x.size() != k.size())
        throw Error(ErrorCode::DimensionMismatch, "configuration of size " + std::to_string(x.size()) +
                                                      " against a complex on " + std::to_string(k.size()) + " vertices");
    for (Mask sigma : k.minimal_nonfaces()) {
        const auto idx = elements_of(sigma);
        const double v = x[idx.front() - 1];
        if (std::all_of(idx.begin(), idx.end(), [&](int e) { return x[e - 1] == v; }))
            return false;
    }
    return true;
}

bool satisfies(const Configuration& x, const Constraint& c)
{
    if (const int* k = std::get_if<int>(&c))
        return in_conf_k(x, *k);
    return in_conf_complex(x, std::get<SimplicialComplex>(c));
}

// ---------------------------------------------------------------------------
// Reduction

Reduction reduce_to_xn(const Configuration& x)
{
    const auto n = x.size();
    if (n < 3)
        throw Error(ErrorCode::NotInSpace, "the reduction needs n >= 3");
    check_finite(x);
    if (!in_conf_k(x, 3))
        throw Error(ErrorCode::NotInSpace, "configuration is not in Conf_3(R,n)");
    Reduction r;
    r.offset = x[n - 1];
    Configuration v = x.array() - r.offset;
    v[n - 1] = 0;
    r.scale = v.norm();
    if (!(r.scale > 0))
        throw Error(ErrorCode::NotInSpace, "zero scale");
    r.point = v / r.scale;
    return r;
}

Configuration inverse_reduce(const Reduction& r) { return (r.point * r.scale).array() + r.offset; }

// ---------------------------------------------------------------------------
// Conf_3(R,3)

int conf3_3_domain(const Configuration& x, const Configuration& y)
{
    if (x.size() != 3 || y.size() != 3)
        throw Error(ErrorCode::DimensionMismatch, "Conf_3(R,3) points have three coordinates");
    return segment_hits(x, y, full_mask(3)) ? 1 : 0;
}

Plan plan_conf3_3(const Configuration& x, const Configuration& y)
{
    if (x.size() != 3 || y.size() != 3)
        throw Error(ErrorCode::DimensionMismatch, "Conf_3(R,3) points have three coordinates");
    check_finite(x);
    check_finite(y);
    if (!in_conf_k(x, 3) || !in_conf_k(y, 3))
        throw Error(ErrorCode::NotInSpace, "endpoint on the diagonal");
    Plan plan;
    if (conf3_3_domain(x, y) == 0) {
        plan.path.breakpoints = {x, y};
        return plan;
    }
    plan.domain = 1;
    // the crossing parameter, from the first coordinate pair that moves
    // relative to each other
    const Rational d01 = (Rational(y[1]) - Rational(x[1])) - (Rational(y[0]) - Rational(x[0]));
    const Rational d12 = (Rational(y[2]) - Rational(x[2])) - (Rational(y[1]) - Rational(x[1]));
    const Rational t = d01 != 0 ? -(Rational(x[1]) - Rational(x[0])) / d01 : -(Rational(x[2]) - Rational(x[1])) / d12;
    const double p = static_cast<double>(Rational(x[0]) + t * (Rational(y[0]) - Rational(x[0])));
    const Eigen::Vector3d dir = y - x;
    const Eigen::Vector3d u = dir.cross(Eigen::Vector3d::Ones());
    const Configuration waypoint = Eigen::Vector3d::Constant(p) + u;
    plan.path.breakpoints = {x, waypoint, y};
    return plan;
}

// ---------------------------------------------------------------------------
// Validation

bool validate_path(const Path& path, const Constraint& c, int samples)
{
    if (samples < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "validation needs at least two samples per piece");
    if (path.breakpoints.empty())
        return false;
    const auto n = path.breakpoints.front().size();
    for (const auto& b : path.breakpoints)
        if (b.size() != n)
            return false;
    if (path.breakpoints.size() == 1)
        return satisfies(path.breakpoints.front(), c);
    for (std::size_t i = 0; i + 1 < path.breakpoints.size(); ++i) {
        const auto& a = path.breakpoints[i];
        const auto& b = path.breakpoints[i + 1];
        for (int j = 0; j < samples; ++j) {
            const double t = static_cast<double>(j) / (samples - 1);
            const Configuration x = j == samples - 1 ? b : Configuration(a + t * (b - a));
            if (!satisfies(x, c))
                return false;
        }
    }
    return true;
}

bool validate_path_exact(const Path& path, const Constraint& c)
{
    if (path.breakpoints.empty())
        return false;
    const auto n = static_cast<int>(path.breakpoints.front().size());
    for (const auto& b : path.breakpoints)
        if (b.size() != n || !b.allFinite())
            return false;
    const auto nonfaces = nonfaces_for(c, n);
    const auto& bp = path.breakpoints;
    // a single breakpoint is checked as a constant piece
    const std::size_t pieces = bp.size() == 1 ? 1 : bp.size() - 1;
    for (std::size_t i = 0; i < pieces; ++i) {
        const auto& b = bp.size() == 1 ? bp[0] : bp[i + 1];
        for (Mask sigma : nonfaces)
            if (segment_hits(bp[i], b, sigma))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Pullback

ParametricPath pullback_rule(const SpaceMap& alpha, const SpaceMap& beta, const Homotopy& h, const BaseRule& base,
                             const Configuration& x, const Configuration& y)
{
    auto inner = base(alpha(x), alpha(y));
    if (!inner)
        throw Error(ErrorCode::BaseRuleUndefined, "base rule undefined at the image pair");
    return [=, s = std::move(*inner)](double t) -> Configuration {
        if (t <= 1.0 / 3)
            return h(x, 3 * t);
        if (t <= 2.0 / 3)
            return beta(s(3 * t - 1));
        return h(y, 3 * (1 - t));
    };
}

ReductionEquivalence reduction_equivalence()
{
    ReductionEquivalence eq;
    eq.alpha = [](const Configuration& x) { return reduce_to_xn(x).point; };
    eq.beta = [](const Configuration& p) { return p; };
    eq.homotopy = [](const Configuration& x, double tau) {
        // straight line in (scale, offset) from (N, x_n) to (1, 0)
        auto r = reduce_to_xn(x);
        r.scale = (1 - tau) * r.scale + tau;
        r.offset = (1 - tau) * r.offset;
        return inverse_reduce(r);
    };
    return eq;
}

std::optional<ParametricPath> plan_x3(const Configuration& u, const Configuration& v)
{
    if (u.size() != 3 || v.size() != 3)
        throw Error(ErrorCode::DimensionMismatch, "X_3 points have three coordinates");
    const double a = std::atan2(u[1], u[0]);
    double delta = std::atan2(v[1], v[0]) - a;
    while (delta > std::numbers::pi)
        delta -= 2 * std::numbers::pi;
    while (delta <= -std::numbers::pi)
        delta += 2 * std::numbers::pi;
    // delta == pi exactly is the antipodal rule (counter-clockwise half turn)
    return ParametricPath([a, delta, u, v](double t) -> Configuration {
        if (t <= 0)
            return u;
        if (t >= 1)
            return v;
        const double angle = a + t * delta;
        return Eigen::Vector3d(std::cos(angle), std::sin(angle), 0);
    });
}

Path sample_path(const ParametricPath& f, int samples)
{
    if (samples < 2)
        throw Error(ErrorCode::ParameterOutOfRange, "sampling needs at least two points");
    Path p;
    for (int i = 0; i < samples; ++i)
        p.breakpoints.push_back(f(static_cast<double>(i) / (samples - 1)));
    return p;
}

}  // namespace nokequal
