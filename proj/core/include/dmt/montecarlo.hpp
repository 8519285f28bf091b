#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dmt/channel.hpp"
#include "dmt/curves.hpp"
#include "dmt/protocols.hpp"

namespace dmt {

/// Strictly increasing SNR sweep points in dB. At least two points.
struct SnrGrid {
  std::vector<double> points_db;

  SnrGrid() = default;
  explicit SnrGrid(std::vector<double> points_db);
};

struct TrialPlan {
  std::int64_t trials_per_point = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = all available cores
};

struct OutageEstimate {
  SnrPoint snr{1.0, 0.0};
  std::int64_t trials = 0;
  std::array<std::int64_t, 2> failures{0, 0};   // per message
  std::array<double, 2> p_hat{0.0, 0.0};        // failures / trials
  std::array<double, 2> stderr_p{0.0, 0.0};     // sqrt(p(1-p)/trials)
};

/// Diversity gain fitted as the log-log slope of one message's outage curve.
struct SlopeFit {
  double d_hat = 0.0;
  double stderr_d = 0.0;
  int points_used = 0;
};

class InsufficientDataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Multiplexing-scaled rates: rate_i = r_i * log2(snr). Requires snr > 1.
RateAssignment scaled_rates(const MultiplexingPair& r, const SnrPoint& snr);

/// One Monte Carlo trial: draws from the stream, sets the per-message
/// outage flags. A factory produces one TrialFn per worker so each worker
/// owns its scratch state.
using TrialFn = std::function<void(Stream&, std::array<bool, 2>&)>;
using TrialFactory = std::function<TrialFn()>;

/// Chunked deterministic Monte Carlo driver. Trials are partitioned into
/// fixed-size chunks; chunk c draws from the substream derived from
/// (plan.seed, c) and results merge by summation, so the estimate is
/// bit-identical for any worker count.
OutageEstimate run_trials(const SnrPoint& snr, const TrialPlan& plan,
                          const TrialFactory& make_trial);

/// Outage probability of `protocol` at one SNR point with rates scaled by
/// the multiplexing pair. DCF requires r.r2 = 0; `dcf_fixed_listen`
/// selects the fixed-t baseline.
OutageEstimate estimate_outage(Protocol protocol, const AntennaConfig& config,
                               const MultiplexingPair& r, const SnrPoint& snr,
                               const TrialPlan& plan,
                               std::optional<double> dcf_fixed_listen = std::nullopt);

/// Points with fewer failures than this are dropped from slope fits (their
/// log-probability is too noisy; zero-failure points have no log at all).
inline constexpr std::int64_t kMinFailuresForFit = 20;

/// Least-squares slope of -log10(p_hat) against log10(snr) for one message
/// (0 or 1). Throws InsufficientDataError with fewer than two usable points.
SlopeFit fit_diversity(std::span<const OutageEstimate> estimates, int message,
                       std::int64_t min_failures = kMinFailuresForFit);

struct SweepResult {
  std::vector<OutageEstimate> estimates;
  std::array<std::optional<SlopeFit>, 2> fits;  // per message; empty if unfittable
};

/// Full sweep over the grid. Point i uses the derived seed
/// mix_seed(plan.seed, i), so points are independent and the sweep is
/// reproducible as a whole.
SweepResult simulate_sweep(Protocol protocol, const AntennaConfig& config,
                           const MultiplexingPair& r, const SnrGrid& grid, const TrialPlan& plan,
                           std::optional<double> dcf_fixed_listen = std::nullopt);

}  // namespace dmt
