#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dmt/channel.hpp"
#include "dmt/exponent_vector.hpp"

namespace dmt {

/// Matrix shape whose eigenvalue exponents enter the optimization.
struct Shape {
  int m;
  int n;
};

enum class SearchMethod { Grid, GridRefine };

struct SearchOptions {
  double step = 0.01;                             // grid resolution per component
  SearchMethod method = SearchMethod::GridRefine; // refine by coordinate bisection
  double refine_tol = 1e-4;
};

/// Outage-set membership as a function of the per-shape S values. Must be
/// downward closed: feasible at S implies feasible at any componentwise
/// smaller S' (raising exponents shrinks S and must never leave the set).
using SValueConstraint = std::function<bool(std::span<const double>)>;

struct ExponentSolution {
  double weight = 0.0;                // +infinity when no grid point is feasible
  std::vector<ExponentVector> argmin; // one vector per shape
};

/// Infimum of the total exponent weight over admissible exponent vectors
/// (components in [0,1], nonincreasing) whose S values satisfy the
/// constraint. Grid search over each component, optionally refined by
/// per-coordinate bisection. Enumeration cost grows combinatorially with
/// min(m,n); intended for small antenna counts.
ExponentSolution minimize_exponent_solution(std::span<const Shape> shapes,
                                            const SValueConstraint& constraint,
                                            const SearchOptions& options = {});

double minimize_exponent(std::span<const Shape> shapes, const SValueConstraint& constraint,
                         const SearchOptions& options = {});

/// Diversity gain of the dynamic CF protocol for the one-way multi-hop
/// channel: optimal exponent weight over the outage set
/// S1*S4/(S1+S4) <= r (with 0/0 read as 0) for hops (m1 x mr), (mr x m2).
double dcf_dmt(const AntennaConfig& config, double r, const SearchOptions& options = {});

/// Full-duplex CF exponent via the two-hop union: the weaker of the two
/// point-to-point curves. Equals cf_dmt from the analytic module.
double cf_exponent(const AntennaConfig& config, double r1);

}  // namespace dmt
