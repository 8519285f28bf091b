#include "dmt/exponent_opt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "dmt/curves.hpp"

namespace dmt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weight_of(int j_one_based, int m, int n) {
  return 2.0 * j_one_based - 1.0 + std::abs(m - n);
}

double s_of(std::span<const double> alphas) {
  double s = 0.0;
  for (double a : alphas) s += std::max(0.0, 1.0 - a);
  return s;
}

double weight_sum(std::span<const double> alphas, int m, int n) {
  double w = 0.0;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    w += weight_of(static_cast<int>(j) + 1, m, n) * alphas[j];
  }
  return w;
}

// One candidate exponent vector of a shape with its S value and weight.
struct GridPoint {
  double s;
  double w;
  std::vector<double> alphas;
};

// Enumerates nonincreasing vectors over the grid {i/n_steps} and keeps the
// Pareto frontier: smaller S helps feasibility, smaller W helps cost, so
// dominated points can never appear in an optimum.
std::vector<GridPoint> shape_frontier(const Shape& shape, int n_steps) {
  const int q = std::min(shape.m, shape.n);
  std::vector<GridPoint> points;
  std::vector<double> alphas(static_cast<std::size_t>(q));
  const auto recurse = [&](auto&& self, int level, int max_idx) -> void {
    if (level == q) {
      points.push_back({s_of(alphas), weight_sum(alphas, shape.m, shape.n), alphas});
      return;
    }
    for (int i = max_idx; i >= 0; --i) {
      alphas[static_cast<std::size_t>(level)] = static_cast<double>(i) / n_steps;
      self(self, level + 1, i);
    }
  };
  recurse(recurse, 0, n_steps);

  std::sort(points.begin(), points.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.s != b.s ? a.s < b.s : a.w < b.w;
  });
  std::vector<GridPoint> frontier;
  double best_w = kInf;
  for (GridPoint& p : points) {
    if (p.w < best_w) {
      best_w = p.w;
      frontier.push_back(std::move(p));
    }
  }
  return frontier;
}

struct Candidate {
  double weight = kInf;
  std::vector<std::vector<double>> alphas;
};

// Exhaustive product over the per-shape frontiers.
void search_product(const std::vector<std::vector<GridPoint>>& frontiers,
                    const SValueConstraint& constraint, std::size_t level,
                    std::vector<const GridPoint*>& chosen, std::vector<double>& s_values,
                    double weight_so_far, Candidate& best) {
  if (weight_so_far >= best.weight) return;  // cannot improve
  if (level == frontiers.size()) {
    if (constraint(s_values)) {
      best.weight = weight_so_far;
      best.alphas.clear();
      for (const GridPoint* p : chosen) best.alphas.push_back(p->alphas);
    }
    return;
  }
  for (const GridPoint& p : frontiers[level]) {
    chosen[level] = &p;
    s_values[level] = p.s;
    search_product(frontiers, constraint, level + 1, chosen, s_values, weight_so_far + p.w, best);
  }
}

// Coordinate descent: each component is pushed down to the smallest value
// that keeps the constraint satisfied (feasibility is monotone in each
// component because the outage set is downward closed in S). Bisection per
// coordinate, a few passes until the largest move is below tolerance.
void refine(std::vector<std::vector<double>>& alphas, const SValueConstraint& constraint,
            double tol) {
  const std::size_t k = alphas.size();
  std::vector<double> s_values(k);
  const auto recompute_s = [&](std::size_t i) { s_values[i] = s_of(alphas[i]); };
  for (std::size_t i = 0; i < k; ++i) recompute_s(i);

  const auto feasible_with = [&](std::size_t i, std::size_t j, double value) {
    const double saved = alphas[i][j];
    alphas[i][j] = value;
    recompute_s(i);
    const bool ok = constraint(s_values);
    alphas[i][j] = saved;
    recompute_s(i);
    return ok;
  };

  for (int pass = 0; pass < 64; ++pass) {
    double max_move = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < alphas[i].size(); ++j) {
        const double cur = alphas[i][j];
        const double floor_bound = (j + 1 < alphas[i].size()) ? alphas[i][j + 1] : 0.0;
        if (cur - floor_bound <= 0.0) continue;
        double chosen = cur;
        if (feasible_with(i, j, floor_bound)) {
          chosen = floor_bound;
        } else {
          double lo = floor_bound;  // infeasible
          double hi = cur;          // feasible
          while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (feasible_with(i, j, mid)) {
              hi = mid;
            } else {
              lo = mid;
            }
          }
          chosen = hi;
        }
        if (chosen < cur) {
          max_move = std::max(max_move, cur - chosen);
          alphas[i][j] = chosen;
          recompute_s(i);
        }
      }
    }
    if (max_move <= tol) break;
  }
}

}  // namespace

ExponentVector::ExponentVector(std::vector<double> alphas_in, int m_in, int n_in)
    : alphas(std::move(alphas_in)), m(m_in), n(n_in) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("exponent vector shape must be positive");
  }
  if (alphas.size() != static_cast<std::size_t>(std::min(m, n))) {
    throw std::invalid_argument("exponent vector length must be min(m, n)");
  }
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (std::isnan(alphas[j]) || alphas[j] < 0.0) {
      throw std::invalid_argument("exponents must be nonnegative");
    }
    if (j > 0 && alphas[j] > alphas[j - 1]) {
      throw std::invalid_argument("exponents must be nonincreasing");
    }
  }
}

double s_value(const ExponentVector& alpha) {
  return s_of(alpha.alphas);
}

double exponent_weight(const ExponentVector& alpha) {
  return weight_sum(alpha.alphas, alpha.m, alpha.n);
}

ExponentSolution minimize_exponent_solution(std::span<const Shape> shapes,
                                            const SValueConstraint& constraint,
                                            const SearchOptions& options) {
  if (shapes.empty()) {
    throw std::invalid_argument("minimize_exponent needs at least one shape");
  }
  if (!(options.step > 0.0 && options.step <= 1.0)) {
    throw std::invalid_argument("grid step must lie in (0, 1]");
  }
  const int n_steps = std::max(1, static_cast<int>(std::lround(1.0 / options.step)));

  std::vector<std::vector<GridPoint>> frontiers;
  frontiers.reserve(shapes.size());
  for (const Shape& shape : shapes) {
    if (shape.m < 1 || shape.n < 1) {
      throw std::invalid_argument("shape dimensions must be positive");
    }
    frontiers.push_back(shape_frontier(shape, n_steps));
  }

  Candidate best;
  std::vector<const GridPoint*> chosen(shapes.size());
  std::vector<double> s_values(shapes.size());
  search_product(frontiers, constraint, 0, chosen, s_values, 0.0, best);

  ExponentSolution solution;
  if (!std::isfinite(best.weight)) {
    solution.weight = kInf;
    return solution;
  }
  if (options.method == SearchMethod::GridRefine) {
    refine(best.alphas, constraint, options.refine_tol);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    total += weight_sum(best.alphas[i], shapes[i].m, shapes[i].n);
    solution.argmin.emplace_back(std::move(best.alphas[i]), shapes[i].m, shapes[i].n);
  }
  solution.weight = total;
  return solution;
}

double minimize_exponent(std::span<const Shape> shapes, const SValueConstraint& constraint,
                         const SearchOptions& options) {
  return minimize_exponent_solution(shapes, constraint, options).weight;
}

double dcf_dmt(const AntennaConfig& config, double r, const SearchOptions& options) {
  if (r < 0.0) {
    throw std::domain_error("multiplexing gain must be nonnegative");
  }
  // The harmonic constraint is symmetric in the hops; fixing a canonical
  // order makes dcf_dmt(m1, mr, m2) and dcf_dmt(m2, mr, m1) bit-identical.
  const int lo = std::min(config.m1, config.m2);
  const int hi = std::max(config.m1, config.m2);
  const Shape shapes[] = {{lo, config.mr}, {config.mr, hi}};
  const auto in_outage = [r](std::span<const double> s) {
    const double s1 = s[0];
    const double s4 = s[1];
    if (s1 <= 0.0 || s4 <= 0.0) return true;  // harmonic mean degenerates to 0 <= r
    return s1 * s4 / (s1 + s4) <= r;
  };
  // The all-ones exponent vector is always in the outage set here (both S
  // values vanish), so the problem is never infeasible.
  return minimize_exponent(shapes, in_outage, options);
}

double cf_exponent(const AntennaConfig& config, double r1) {
  return std::min(dmt_value(config.m1, config.mr, r1), dmt_value(config.mr, config.m2, r1));
}

}  // namespace dmt
