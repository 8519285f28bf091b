#include "dmt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dmt {
namespace {

constexpr std::int64_t kChunkTrials = 16384;

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

SnrGrid::SnrGrid(std::vector<double> points) : points_db(std::move(points)) {
  if (points_db.size() < 2) {
    throw std::invalid_argument("snr grid needs at least 2 points");
  }
  for (std::size_t i = 0; i < points_db.size(); ++i) {
    if (!std::isfinite(points_db[i])) {
      throw std::invalid_argument("snr grid points must be finite");
    }
    if (i > 0 && !(points_db[i] > points_db[i - 1])) {
      throw std::invalid_argument("snr grid must be strictly increasing");
    }
  }
}

RateAssignment scaled_rates(const MultiplexingPair& r, const SnrPoint& snr) {
  if (!(snr.linear > 1.0)) {
    throw std::domain_error("scaled rates require snr > 1");
  }
  const double log_snr = std::log2(snr.linear);
  return {r.r1 * log_snr, r.r2 * log_snr};
}

OutageEstimate run_trials(const SnrPoint& snr, const TrialPlan& plan,
                          const TrialFactory& make_trial) {
  if (plan.trials_per_point < 1) {
    throw std::invalid_argument("trials_per_point must be >= 1");
  }
  const std::int64_t total = plan.trials_per_point;
  const std::int64_t chunks = (total + kChunkTrials - 1) / kChunkTrials;
  const Stream root(plan.seed);

  std::atomic<std::int64_t> next_chunk{0};
  std::atomic<std::int64_t> failures1{0};
  std::atomic<std::int64_t> failures2{0};

  const auto worker = [&] {
    TrialFn trial = make_trial();
    std::int64_t local1 = 0;
    std::int64_t local2 = 0;
    std::array<bool, 2> verdict{};
    for (std::int64_t c = next_chunk.fetch_add(1); c < chunks; c = next_chunk.fetch_add(1)) {
      Stream stream = root.substream(static_cast<std::uint64_t>(c));
      const std::int64_t in_chunk = std::min(kChunkTrials, total - c * kChunkTrials);
      for (std::int64_t t = 0; t < in_chunk; ++t) {
        verdict[0] = verdict[1] = false;
        trial(stream, verdict);
        local1 += verdict[0];
        local2 += verdict[1];
      }
    }
    failures1.fetch_add(local1);
    failures2.fetch_add(local2);
  };

  const int workers = std::min<std::int64_t>(resolve_workers(plan.workers), chunks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  OutageEstimate est;
  est.snr = snr;
  est.trials = total;
  est.failures = {failures1.load(), failures2.load()};
  for (int msg = 0; msg < 2; ++msg) {
    const double p = static_cast<double>(est.failures[msg]) / static_cast<double>(total);
    est.p_hat[msg] = p;
    est.stderr_p[msg] = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  }
  return est;
}

OutageEstimate estimate_outage(Protocol protocol, const AntennaConfig& config,
                               const MultiplexingPair& r, const SnrPoint& snr,
                               const TrialPlan& plan, std::optional<double> dcf_fixed_listen) {
  if (protocol == Protocol::DCF && r.r2 != 0.0) {
    throw std::invalid_argument("configuration error: DCF is one-way, r2 must be 0");
  }
  if (dcf_fixed_listen && protocol != Protocol::DCF) {
    throw std::invalid_argument("configuration error: fixed listening fraction is DCF-only");
  }
  const RateAssignment rates = scaled_rates(r, snr);
  const TrialFactory factory = [=]() -> TrialFn {
    return [=, real = ChannelRealization{}](Stream& stream, std::array<bool, 2>& out) mutable {
      sample_realization(config, stream, real);
      OutageVerdict v;
      switch (protocol) {
        case Protocol::CF:
          v = cf_outage(real, snr, rates);
          break;
        case Protocol::DF:
          v = df_outage(real, snr, rates);
          break;
        case Protocol::DCF:
          v = dcf_outage(real, snr, rates.rate1, dcf_fixed_listen);
          break;
      }
      out[0] = v.message1_in_outage;
      out[1] = v.message2_in_outage;
    };
  };
  return run_trials(snr, plan, factory);
}

SlopeFit fit_diversity(std::span<const OutageEstimate> estimates, int message,
                       std::int64_t min_failures) {
  if (message < 0 || message > 1) {
    throw std::invalid_argument("message index must be 0 or 1");
  }
  std::vector<double> x;  // log10 snr
  std::vector<double> y;  // -log10 p_hat
  for (const OutageEstimate& est : estimates) {
    if (est.failures[static_cast<std::size_t>(message)] < min_failures) continue;
    x.push_back(std::log10(est.snr.linear));
    y.push_back(-std::log10(est.p_hat[static_cast<std::size_t>(message)]));
  }
  const int n = static_cast<int>(x.size());
  if (n < 2) {
    throw InsufficientDataError("fewer than 2 points with enough failures to fit a slope");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (!(sxx > 0.0)) {
    throw InsufficientDataError("slope fit needs at least 2 distinct snr points");
  }
  SlopeFit fit;
  fit.d_hat = sxy / sxx;
  fit.points_used = n;
  if (n > 2) {
    const double intercept = mean_y - fit.d_hat * mean_x;
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = y[i] - (intercept + fit.d_hat * x[i]);
      sse += e * e;
    }
    fit.stderr_d = std::sqrt(sse / (n - 2) / sxx);
  }
  return fit;
}

SweepResult simulate_sweep(Protocol protocol, const AntennaConfig& config,
                           const MultiplexingPair& r, const SnrGrid& grid, const TrialPlan& plan,
                           std::optional<double> dcf_fixed_listen) {
  SweepResult result;
  result.estimates.reserve(grid.points_db.size());
  for (std::size_t i = 0; i < grid.points_db.size(); ++i) {
    TrialPlan point_plan = plan;
    point_plan.seed = mix_seed(plan.seed, i);
    result.estimates.push_back(estimate_outage(protocol, config, r,
                                               SnrPoint::from_db(grid.points_db[i]), point_plan,
                                               dcf_fixed_listen));
  }
  for (int msg = 0; msg < 2; ++msg) {
    try {
      result.fits[static_cast<std::size_t>(msg)] = fit_diversity(result.estimates, msg);
    } catch (const InsufficientDataError&) {
      result.fits[static_cast<std::size_t>(msg)] = std::nullopt;
    }
  }
  return result;
}

}  // namespace dmt
