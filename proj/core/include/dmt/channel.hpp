#pragma once

#include <Eigen/Dense>

#include "dmt/exponent_vector.hpp"
#include "dmt/random.hpp"

namespace dmt {

/// Antenna counts of an (M1, Mr, M2) system: user 1, relay, user 2.
struct AntennaConfig {
  int m1;
  int mr;
  int m2;

  AntennaConfig(int m1, int mr, int m2);

  /// min(M1, M2), the bottleneck user side.
  int m_star() const { return m1 < m2 ? m1 : m2; }
};

/// SNR operating point, kept in both linear and dB form.
struct SnrPoint {
  double linear;
  double db;

  static SnrPoint from_db(double db);
  static SnrPoint from_linear(double linear);
};

using ChannelMatrix = Eigen::MatrixXcd;

/// One quasi-static Rayleigh draw of the four links:
///   h1: user1 -> relay (mr x m1)     h2: user2 -> relay (mr x m2)
///   h3: relay -> user1 (m1 x mr)     h4: relay -> user2 (m2 x mr)
struct ChannelRealization {
  ChannelMatrix h1;
  ChannelMatrix h2;
  ChannelMatrix h3;
  ChannelMatrix h4;

  bool dims_match(const AntennaConfig& config) const;
};

/// Draws the four matrices with i.i.d. CN(0,1) entries. Draw order is fixed:
/// h1, h2, h3, h4, row-major within each matrix, real part then imaginary.
ChannelRealization sample_realization(const AntennaConfig& config, Stream& stream);

/// In-place variant for hot loops; resizes `out` as needed.
void sample_realization(const AntennaConfig& config, Stream& stream, ChannelRealization& out);

/// log2 det(I + (snr/m_tx) h h+) in bits per channel use, computed through
/// the eigenvalues of the smaller Gram matrix.
double capacity(const ChannelMatrix& h, int m_tx, const SnrPoint& snr);

/// Same with the power split halved: log2 det(I + (snr/(2 m_tx)) h h+).
double half_power_capacity(const ChannelMatrix& h, int m_tx, const SnrPoint& snr);

/// Two-transmitter sum capacity into one receiver array:
/// log2 det(I + (snr/m_tx_a) ha ha+ + (snr/m_tx_b) hb hb+).
/// `ha` and `hb` must have the same row count.
double mac_sum_capacity(const ChannelMatrix& ha, int m_tx_a, const ChannelMatrix& hb, int m_tx_b,
                        const SnrPoint& snr);

/// Eigenvalues of h h+ (or h+ h, whichever is smaller), sorted nonincreasing,
/// clamped at zero. Length min(rows, cols).
std::vector<double> gram_eigenvalues(const ChannelMatrix& h);

/// Decay exponents alpha_j = -ln(lambda_j)/ln(snr) of the Gram eigenvalues,
/// sorted nonincreasing. Eigenvalues below 1e-300 map to +infinity and
/// eigenvalues above 1 clamp to exponent 0. Requires snr.linear > 1.
ExponentVector eigen_exponents(const ChannelMatrix& h, const SnrPoint& snr);

}  // namespace dmt
