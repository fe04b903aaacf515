#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nokequal/preorder.hpp"

namespace nokequal {

/// Positions of n labelled points on the line.
using Configuration = Eigen::VectorXd;

/// True iff no value is shared by k or more coordinates.
bool in_conf_k(const Configuration& x, int k);

/// Downward closure of a set of facets on {1..n}; singletons are always faces.
class SimplicialComplex {
public:
    SimplicialComplex(int n, std::vector<Mask> facets);

    static SimplicialComplex full_simplex(int n);
    /// All faces of dimension <= dim (vertex sets of size <= dim+1).
    static SimplicialComplex skeleton(int n, int dim);

    int size() const { return n_; }
    const std::vector<Mask>& facets() const { return facets_; }
    bool is_face(Mask sigma) const;

    /// Inclusion-minimal non-faces, ordered by size then mask.
    const std::vector<Mask>& minimal_nonfaces() const { return minimal_nonfaces_; }

private:
    int n_;
    std::vector<Mask> facets_;
    std::vector<Mask> minimal_nonfaces_;
};

/// True iff no minimal non-face has all its coordinates equal.
bool in_conf_complex(const Configuration& x, const SimplicialComplex& k);

/// (point on X_n, scale N > 0, offset x_n).
struct Reduction {
    Configuration point;
    double scale = 1;
    double offset = 0;
};

Reduction reduce_to_xn(const Configuration& x);
Configuration inverse_reduce(const Reduction& r);

/// Piecewise-linear path through its breakpoints.
struct Path {
    std::vector<Configuration> breakpoints;

    std::size_t piece_count() const { return breakpoints.size() < 2 ? 1 : breakpoints.size() - 1; }
    const Configuration& start() const { return breakpoints.front(); }
    const Configuration& end() const { return breakpoints.back(); }
};

struct Plan {
    int domain = 0;
    Path path;
};

/// Two-rule planner on Conf_3(R,3): the straight segment when it misses the
/// diagonal, otherwise a detour through p + u with u = (y - x) x (1,1,1).
Plan plan_conf3_3(const Configuration& x, const Configuration& y);

/// 0 when [x,y] misses the diagonal, 1 otherwise; exact on the double inputs.
int conf3_3_domain(const Configuration& x, const Configuration& y);

using Constraint = std::variant<int, SimplicialComplex>;

bool satisfies(const Configuration& x, const Constraint& c);

/// Samples each piece uniformly (endpoints included).
bool validate_path(const Path& path, const Constraint& c, int samples);

/// Exact check of every piece against every minimal non-face, in rationals.
bool validate_path_exact(const Path& path, const Constraint& c);

using ParametricPath = std::function<Configuration(double)>;
using SpaceMap = std::function<Configuration(const Configuration&)>;
/// H(x, 0) = x and H(x, 1) = beta(alpha(x)).
using Homotopy = std::function<Configuration(const Configuration&, double)>;
using BaseRule = std::function<std::optional<ParametricPath>(const Configuration&, const Configuration&)>;

/// Local rule on X from a local rule on Y through alpha: X -> Y, beta: Y -> X:
/// H(x, .) for the first third, beta of the base path for the second, and
/// H(y, .) backwards for the last. Throws BaseRuleUndefined.
ParametricPath pullback_rule(const SpaceMap& alpha, const SpaceMap& beta, const Homotopy& h, const BaseRule& base,
                             const Configuration& x, const Configuration& y);

/// alpha, beta and H for Conf_3(R,n) -> X_n and the inclusion back.
struct ReductionEquivalence {
    SpaceMap alpha;
    SpaceMap beta;
    Homotopy homotopy;
};
ReductionEquivalence reduction_equivalence();

/// Two-rule planner on X_3 (a circle in the plane x_3 = 0): the short arc,
/// or the counter-clockwise half turn for antipodal pairs.
std::optional<ParametricPath> plan_x3(const Configuration& u, const Configuration& v);

Path sample_path(const ParametricPath& f, int samples);

}  // namespace nokequal
