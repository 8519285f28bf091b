#pragma once

#include <utility>
#include <vector>

#include "dmt/channel.hpp"

namespace dmt {

/// Piecewise-linear tradeoff curve of an m x n link: vertices
/// (k, (m-k)(n-k)) for k = 0..min(m,n), straight lines in between.
struct DmtCurve {
  int m;
  int n;
  std::vector<std::pair<double, double>> vertices;  // (r, d), r increasing
};

DmtCurve make_dmt_curve(int m, int n);

struct MultiplexingPair {
  double r1 = 0.0;
  double r2 = 0.0;
};

struct DiversityPair {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Intersection of halfplanes a*r1 + b*r2 <= c with a, b in {0,1}, c >= 0.
struct RateRegion {
  struct Constraint {
    double a;
    double b;
    double c;
  };
  std::vector<Constraint> constraints;

  bool contains(double r1, double r2, double tol = 1e-12) const;
};

/// Diversity gain of an m x n link at multiplexing gain r in [0, min(m,n)].
/// Values up to 1e-9 outside the domain are clamped; beyond that, throws
/// std::domain_error.
double dmt_value(int m, int n, double r);

/// Inverse curve: the unique r with dmt_value(m, n, r) = d, d in [0, m*n].
double dmt_inverse(int m, int n, double d);

/// Cut-set outer bound: both users are capped by the min(M1,M2) x Mr curve.
DiversityPair outer_bound(const AntennaConfig& config, const MultiplexingPair& r);

/// Multiplexing-gain region achievable by decode-and-forward at common
/// diversity d: per-user caps r_{M*,Mr}(d) plus the relay decoding
/// constraint r1 + r2 <= r_{M1+M2,Mr}(d).
RateRegion df_region(const AntennaConfig& config, double d);

/// True when the DF region reaches the outer-bound corner at diversity d,
/// i.e. r_{M*,Mr}(d) <= r_{M1+M2,Mr}(d) / 2 (tolerance 1e-12).
bool df_optimal(const AntennaConfig& config, double d);

/// Smallest d* such that df_optimal holds for every d >= d*. Bisection on
/// the piecewise-linear difference to absolute tolerance 1e-9.
double df_threshold(const AntennaConfig& config);

/// Per-user diversity achieved by compress-and-forward: the full
/// point-to-point curve d_{M*,Mr}(r), independent of the other user's rate.
double cf_dmt(const AntennaConfig& config, double r);

}  // namespace dmt
