#include "dmt/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dmt {
namespace {

constexpr double kDomainSlack = 1e-9;

void check_antennas(int m, int n) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("antenna counts must be >= 1");
  }
}

// Inverse with the out-of-range convention used by the sum constraint:
// any diversity demand above the curve's maximum forces zero rate.
double dmt_inverse_clamped(int m, int n, double d) {
  const double d_max = static_cast<double>(m) * n;
  if (d >= d_max) return 0.0;
  return dmt_inverse(m, n, std::max(0.0, d));
}

}  // namespace

DmtCurve make_dmt_curve(int m, int n) {
  check_antennas(m, n);
  DmtCurve curve{m, n, {}};
  const int q = std::min(m, n);
  curve.vertices.reserve(static_cast<std::size_t>(q) + 1);
  for (int k = 0; k <= q; ++k) {
    curve.vertices.emplace_back(k, static_cast<double>(m - k) * (n - k));
  }
  return curve;
}

bool RateRegion::contains(double r1, double r2, double tol) const {
  if (r1 < -tol || r2 < -tol) return false;
  for (const Constraint& c : constraints) {
    if (c.a * r1 + c.b * r2 > c.c + tol) return false;
  }
  return true;
}

double dmt_value(int m, int n, double r) {
  check_antennas(m, n);
  // Canonical orientation keeps d_{m,n} and d_{n,m} bit-identical.
  if (m > n) std::swap(m, n);
  const int q = m;  // min(m, n)
  if (r < -kDomainSlack || r > q + kDomainSlack) {
    throw std::domain_error("multiplexing gain outside [0, min(m,n)]");
  }
  r = std::clamp(r, 0.0, static_cast<double>(q));
  const int k = std::min(static_cast<int>(r), q - 1);
  const double d_lo = static_cast<double>(m - k) * (n - k);
  const double d_hi = static_cast<double>(m - k - 1) * (n - k - 1);
  return d_lo + (r - k) * (d_hi - d_lo);
}

double dmt_inverse(int m, int n, double d) {
  check_antennas(m, n);
  if (m > n) std::swap(m, n);
  const int q = m;
  const double d_max = static_cast<double>(m) * n;
  if (d < -kDomainSlack || d > d_max + kDomainSlack) {
    throw std::domain_error("diversity gain outside [0, m*n]");
  }
  d = std::clamp(d, 0.0, d_max);
  // d decreases along segments k -> k+1; find the segment containing d.
  for (int k = 0; k < q; ++k) {
    const double d_lo = static_cast<double>(m - k) * (n - k);       // at r = k
    const double d_hi = static_cast<double>(m - k - 1) * (n - k - 1);  // at r = k+1
    if (d <= d_lo && d >= d_hi) {
      return k + (d_lo - d) / (d_lo - d_hi);
    }
  }
  return static_cast<double>(q);  // d == 0
}

DiversityPair outer_bound(const AntennaConfig& config, const MultiplexingPair& r) {
  const int m_star = config.m_star();
  return {dmt_value(m_star, config.mr, r.r1), dmt_value(m_star, config.mr, r.r2)};
}

RateRegion df_region(const AntennaConfig& config, double d) {
  const int m_star = config.m_star();
  const double d_max = static_cast<double>(m_star) * config.mr;
  if (d < -kDomainSlack || d > d_max + kDomainSlack) {
    throw std::domain_error("diversity gain outside [0, m_star*mr]");
  }
  d = std::clamp(d, 0.0, d_max);
  const double box = dmt_inverse(m_star, config.mr, d);
  const double sum = dmt_inverse_clamped(config.m1 + config.m2, config.mr, d);
  return RateRegion{{{1.0, 0.0, box}, {0.0, 1.0, box}, {1.0, 1.0, sum}}};
}

bool df_optimal(const AntennaConfig& config, double d) {
  const double box = dmt_inverse(config.m_star(), config.mr, d);
  const double sum = dmt_inverse_clamped(config.m1 + config.m2, config.mr, d);
  return box <= 0.5 * sum + 1e-12;
}

double df_threshold(const AntennaConfig& config) {
  const int d_max = config.m_star() * config.mr;
  const auto holds = [&](double d) { return df_optimal(config, d); };
  // Both inverse curves have breakpoints only at integer diversity values,
  // so the difference is linear on every [j, j+1]: checking the integers is
  // exhaustive. Scan down for the highest failing integer, then bisect.
  int failing = -1;
  for (int j = d_max; j >= 0; --j) {
    if (!holds(j)) {
      failing = j;
      break;
    }
  }
  if (failing < 0) return 0.0;  // holds everywhere
  double lo = failing;          // condition fails here
  double hi = failing + 1.0;    // first integer above where it holds
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double cf_dmt(const AntennaConfig& config, double r) {
  return dmt_value(config.m_star(), config.mr, r);
}

}  // namespace dmt
