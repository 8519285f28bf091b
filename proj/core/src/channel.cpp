#include "dmt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmt {
namespace {

constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln(2)
constexpr double kZeroEigenvalue = 1e-300;         // underflow guard

void fill_gaussian(ChannelMatrix& h, int rows, int cols, Stream& stream) {
  h.resize(rows, cols);
  // Row-major draw order regardless of Eigen's storage layout.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      h(i, j) = stream.gaussian();
    }
  }
}

void check_finite(const ChannelMatrix& h) {
  if (!h.allFinite()) {
    throw std::invalid_argument("channel matrix has non-finite entries");
  }
}

double log_det_capacity(const ChannelMatrix& h, double snr_over_m) {
  check_finite(h);
  const Eigen::Index q = std::min(h.rows(), h.cols());
  if (q == 1) {
    // The smaller Gram matrix is a scalar; its eigenvalue is the squared norm.
    return std::log1p(snr_over_m * h.squaredNorm()) * kInvLn2;
  }
  const ChannelMatrix gram =
      h.rows() <= h.cols() ? ChannelMatrix(h * h.adjoint()) : ChannelMatrix(h.adjoint() * h);
  Eigen::SelfAdjointEigenSolver<ChannelMatrix> solver(gram, Eigen::EigenvaluesOnly);
  double bits = 0.0;
  for (Eigen::Index j = 0; j < q; ++j) {
    const double lambda = std::max(0.0, solver.eigenvalues()[j]);
    bits += std::log1p(snr_over_m * lambda) * kInvLn2;
  }
  return bits;
}

}  // namespace

AntennaConfig::AntennaConfig(int m1, int mr, int m2) : m1(m1), mr(mr), m2(m2) {
  if (m1 < 1 || mr < 1 || m2 < 1) {
    throw std::invalid_argument("antenna counts must be >= 1");
  }
}

SnrPoint SnrPoint::from_db(double db) {
  return {std::pow(10.0, db / 10.0), db};
}

SnrPoint SnrPoint::from_linear(double linear) {
  if (!(linear > 0.0)) {
    throw std::invalid_argument("snr must be positive");
  }
  return {linear, 10.0 * std::log10(linear)};
}

bool ChannelRealization::dims_match(const AntennaConfig& config) const {
  return h1.rows() == config.mr && h1.cols() == config.m1 &&
         h2.rows() == config.mr && h2.cols() == config.m2 &&
         h3.rows() == config.m1 && h3.cols() == config.mr &&
         h4.rows() == config.m2 && h4.cols() == config.mr;
}

ChannelRealization sample_realization(const AntennaConfig& config, Stream& stream) {
  ChannelRealization real;
  sample_realization(config, stream, real);
  return real;
}

void sample_realization(const AntennaConfig& config, Stream& stream, ChannelRealization& out) {
  fill_gaussian(out.h1, config.mr, config.m1, stream);
  fill_gaussian(out.h2, config.mr, config.m2, stream);
  fill_gaussian(out.h3, config.m1, config.mr, stream);
  fill_gaussian(out.h4, config.m2, config.mr, stream);
}

double capacity(const ChannelMatrix& h, int m_tx, const SnrPoint& snr) {
  return log_det_capacity(h, snr.linear / m_tx);
}

double half_power_capacity(const ChannelMatrix& h, int m_tx, const SnrPoint& snr) {
  return log_det_capacity(h, snr.linear / (2.0 * m_tx));
}

double mac_sum_capacity(const ChannelMatrix& ha, int m_tx_a, const ChannelMatrix& hb, int m_tx_b,
                        const SnrPoint& snr) {
  check_finite(ha);
  check_finite(hb);
  if (ha.rows() != hb.rows()) {
    throw std::invalid_argument("mac_sum_capacity: receiver dimensions differ");
  }
  const double a = snr.linear / m_tx_a;
  const double b = snr.linear / m_tx_b;
  if (ha.rows() == 1) {
    return std::log1p(a * ha.squaredNorm() + b * hb.squaredNorm()) * kInvLn2;
  }
  const ChannelMatrix gram = a * (ha * ha.adjoint()) + b * (hb * hb.adjoint());
  Eigen::SelfAdjointEigenSolver<ChannelMatrix> solver(gram, Eigen::EigenvaluesOnly);
  double bits = 0.0;
  for (Eigen::Index j = 0; j < gram.rows(); ++j) {
    bits += std::log1p(std::max(0.0, solver.eigenvalues()[j])) * kInvLn2;
  }
  return bits;
}

std::vector<double> gram_eigenvalues(const ChannelMatrix& h) {
  check_finite(h);
  const Eigen::Index q = std::min(h.rows(), h.cols());
  std::vector<double> lambdas(static_cast<std::size_t>(q));
  if (q == 1) {
    lambdas[0] = h.squaredNorm();
    return lambdas;
  }
  const ChannelMatrix gram =
      h.rows() <= h.cols() ? ChannelMatrix(h * h.adjoint()) : ChannelMatrix(h.adjoint() * h);
  Eigen::SelfAdjointEigenSolver<ChannelMatrix> solver(gram, Eigen::EigenvaluesOnly);
  // Eigen returns ascending order; flip to nonincreasing.
  for (Eigen::Index j = 0; j < q; ++j) {
    lambdas[static_cast<std::size_t>(j)] = std::max(0.0, solver.eigenvalues()[q - 1 - j]);
  }
  return lambdas;
}

ExponentVector eigen_exponents(const ChannelMatrix& h, const SnrPoint& snr) {
  if (!(snr.linear > 1.0)) {
    throw std::domain_error("eigen_exponents requires snr > 1");
  }
  const double log_snr = std::log(snr.linear);
  std::vector<double> alphas;
  for (double lambda : gram_eigenvalues(h)) {
    if (lambda < kZeroEigenvalue) {
      alphas.push_back(std::numeric_limits<double>::infinity());
    } else {
      // Eigenvalues above 1 clamp to exponent 0 (no decay).
      alphas.push_back(std::max(0.0, -std::log(lambda) / log_snr));
    }
  }
  // Eigenvalues come out nonincreasing, so the exponents are nondecreasing;
  // reverse to the stored nonincreasing-alpha convention.
  std::reverse(alphas.begin(), alphas.end());
  return ExponentVector(std::move(alphas), static_cast<int>(h.rows()),
                        static_cast<int>(h.cols()));
}

}  // namespace dmt
