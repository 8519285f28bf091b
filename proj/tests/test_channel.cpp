#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dmt/channel.hpp"

using namespace dmt;

namespace {

ChannelMatrix scalar_channel(std::complex<double> h) {
  ChannelMatrix m(1, 1);
  m(0, 0) = h;
  return m;
}

// Determinant-route oracle, independent of the eigenvalue path used by
// capacity().
double det_capacity(const ChannelMatrix& h, int m_tx, const SnrPoint& snr) {
  const Eigen::Index rx = h.rows();
  ChannelMatrix m = ChannelMatrix::Identity(rx, rx) + (snr.linear / m_tx) * (h * h.adjoint());
  return std::log2(m.determinant().real());
}

ChannelMatrix random_matrix(int rows, int cols, Stream& stream) {
  ChannelMatrix h(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) h(i, j) = stream.gaussian();
  return h;
}

// One-sample Kolmogorov-Smirnov statistic against the Exp(1) CDF.
double ks_statistic_exp1(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = 1.0 - std::exp(-xs[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

}  // namespace

TEST_CASE("antenna config validation and m_star") {
  CHECK(AntennaConfig(1, 1, 1).m_star() == 1);
  CHECK(AntennaConfig(2, 3, 4).m_star() == 2);
  CHECK(AntennaConfig(4, 1, 2).m_star() == 2);
  CHECK_THROWS_AS(AntennaConfig(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(AntennaConfig(1, -2, 1), std::invalid_argument);
}

TEST_CASE("snr point conversions stay consistent") {
  const SnrPoint p = SnrPoint::from_db(30.0);
  CHECK(p.linear == doctest::Approx(1000.0).epsilon(1e-12));
  const SnrPoint q = SnrPoint::from_linear(8.0);
  CHECK(q.db == doctest::Approx(10.0 * std::log10(8.0)).epsilon(1e-12));
  CHECK_THROWS_AS(SnrPoint::from_linear(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SnrPoint::from_linear(-3.0), std::invalid_argument);
}

TEST_CASE("sampled realizations have the dimensions of the config") {
  Stream stream(7);
  const AntennaConfig config(2, 3, 2);
  const ChannelRealization real = sample_realization(config, stream);
  CHECK(real.h1.rows() == 3);
  CHECK(real.h1.cols() == 2);
  CHECK(real.h2.rows() == 3);
  CHECK(real.h2.cols() == 2);
  CHECK(real.h3.rows() == 2);
  CHECK(real.h3.cols() == 3);
  CHECK(real.h4.rows() == 2);
  CHECK(real.h4.cols() == 3);
  CHECK(real.dims_match(config));
  CHECK_FALSE(real.dims_match(AntennaConfig(2, 3, 1)));
}

TEST_CASE("identical seeds reproduce identical realizations") {
  const AntennaConfig config(2, 2, 2);
  Stream a(42);
  Stream b(42);
  const ChannelRealization ra = sample_realization(config, a);
  const ChannelRealization rb = sample_realization(config, b);
  CHECK(ra.h1 == rb.h1);
  CHECK(ra.h2 == rb.h2);
  CHECK(ra.h3 == rb.h3);
  CHECK(ra.h4 == rb.h4);

  Stream c(43);
  const ChannelRealization rc = sample_realization(config, c);
  CHECK(ra.h1 != rc.h1);
}

TEST_CASE("entries are unit-variance complex gaussians") {
  const AntennaConfig config(1, 1, 1);
  Stream stream(1);
  double sum_sq = 0.0;
  const int n = 1'000'000;
  ChannelRealization real;
  for (int i = 0; i < n / 4; ++i) {
    sample_realization(config, stream, real);
    sum_sq += real.h1.squaredNorm() + real.h2.squaredNorm() + real.h3.squaredNorm() +
              real.h4.squaredNorm();
  }
  const double mean = sum_sq / (4 * (n / 4));
  CHECK(mean > 0.99);
  CHECK(mean < 1.01);
}

TEST_CASE("1x1 squared magnitude is Exp(1): Kolmogorov-Smirnov") {
  Stream stream(1234);
  const int n = 100'000;
  std::vector<double> xs(n);
  for (double& x : xs) x = std::norm(stream.gaussian());
  // Significance 0.01: critical value 1.6276 / sqrt(n).
  CHECK(ks_statistic_exp1(std::move(xs)) < 1.6276 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("capacity closed-form spot values") {
  CHECK(capacity(scalar_channel(1.0), 1, SnrPoint::from_linear(1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(capacity(ChannelMatrix::Zero(3, 2), 2, SnrPoint::from_linear(100.0)) == 0.0);
  CHECK(capacity(ChannelMatrix::Identity(2, 2), 2, SnrPoint::from_linear(2.0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("half power capacity spot values and ordering") {
  CHECK(half_power_capacity(scalar_channel(1.0), 1, SnrPoint::from_linear(2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(half_power_capacity(ChannelMatrix::Zero(2, 2), 2, SnrPoint::from_linear(5.0)) == 0.0);

  Stream stream(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + static_cast<int>(stream.uniform() * 4) % 4;
    const int cols = 1 + static_cast<int>(stream.uniform() * 4) % 4;
    const ChannelMatrix h = random_matrix(rows, cols, stream);
    const SnrPoint snr = SnrPoint::from_linear(0.5 + 100.0 * stream.uniform());
    const double full = capacity(h, cols, snr);
    const double half = half_power_capacity(h, cols, snr);
    CHECK(half <= full);
    // Each eigenvalue loses at most one bit when the power is halved.
    CHECK(full - half <= std::min(rows, cols) + 1e-12);
    CHECK(half >= 0.0);
  }
}

TEST_CASE("capacity rejects non-finite inputs") {
  ChannelMatrix h(1, 1);
  h(0, 0) = std::complex<double>(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(capacity(h, 1, SnrPoint::from_linear(1.0)), std::invalid_argument);
  h(0, 0) = std::complex<double>(0.0, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(half_power_capacity(h, 1, SnrPoint::from_linear(1.0)), std::invalid_argument);
}

TEST_CASE("capacity is nondecreasing in snr") {
  Stream stream(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelMatrix h = random_matrix(2, 3, stream);
    double prev = -1.0;
    for (double db = -10.0; db <= 40.0; db += 5.0) {
      const double c = capacity(h, 3, SnrPoint::from_db(db));
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("eigenvalue route matches determinant route") {
  Stream stream(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + trial % 4;
    const int cols = 1 + (trial / 4) % 4;
    const ChannelMatrix h = random_matrix(rows, cols, stream);
    const SnrPoint snr = SnrPoint::from_db(40.0 * stream.uniform());
    const double via_eigen = capacity(h, cols, snr);
    const double via_det = det_capacity(h, cols, snr);
    CHECK(via_eigen == doctest::Approx(via_det).epsilon(1e-9));
  }
}

TEST_CASE("capacity equals the per-eigenvalue sum") {
  Stream stream(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 1 + trial % 3;
    const int cols = 1 + (trial / 3) % 3;
    const ChannelMatrix h = random_matrix(rows, cols, stream);
    const SnrPoint snr = SnrPoint::from_db(25.0);
    double sum = 0.0;
    for (double lambda : gram_eigenvalues(h)) sum += std::log2(1.0 + snr.linear / cols * lambda);
    CHECK(capacity(h, cols, snr) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("gram eigenvalues are nonincreasing and match either gram order") {
  Stream stream(41);
  const ChannelMatrix h = random_matrix(2, 4, stream);
  const auto lam_wide = gram_eigenvalues(h);
  const auto lam_tall = gram_eigenvalues(ChannelMatrix(h.adjoint()));
  REQUIRE(lam_wide.size() == 2);
  REQUIRE(lam_tall.size() == 2);
  CHECK(lam_wide[0] >= lam_wide[1]);
  for (int i = 0; i < 2; ++i) {
    CHECK(lam_wide[static_cast<std::size_t>(i)] ==
          doctest::Approx(lam_tall[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("eigen exponents: defining relation") {
  const SnrPoint snr = SnrPoint::from_linear(100.0);

  SUBCASE("lambda = 1/snr gives alpha = 1") {
    const ExponentVector alpha =
        eigen_exponents(scalar_channel(std::sqrt(1.0 / snr.linear)), snr);
    REQUIRE(alpha.alphas.size() == 1);
    CHECK(alpha.alphas[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("lambda = 1 gives alpha = 0") {
    const ExponentVector alpha = eigen_exponents(scalar_channel(1.0), snr);
    CHECK(alpha.alphas[0] == doctest::Approx(0.0));
  }
  SUBCASE("2x2 gram eigenvalues snr^-2, snr^-1 give alphas [2, 1]") {
    ChannelMatrix h = ChannelMatrix::Zero(2, 2);
    h(0, 0) = 1.0 / snr.linear;          // gram eigenvalue snr^-2
    h(1, 1) = std::sqrt(1.0 / snr.linear);  // gram eigenvalue snr^-1
    const ExponentVector alpha = eigen_exponents(h, snr);
    REQUIRE(alpha.alphas.size() == 2);
    CHECK(alpha.alphas[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(alpha.alphas[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero eigenvalue maps to +infinity") {
    const ExponentVector alpha = eigen_exponents(scalar_channel(0.0), snr);
    CHECK(std::isinf(alpha.alphas[0]));
  }
  SUBCASE("snr at or below 1 is rejected") {
    CHECK_THROWS_AS(eigen_exponents(scalar_channel(1.0), SnrPoint::from_linear(1.0)),
                    std::domain_error);
  }
}

TEST_CASE("substreams are decoupled from the parent position") {
  Stream a(5);
  Stream b(5);
  (void)a.uniform();  // advance the parent
  const Stream sa = a.substream(3);
  const Stream sb = b.substream(3);
  Stream sa_copy = sa;
  Stream sb_copy = sb;
  CHECK(sa_copy.uniform() == sb_copy.uniform());
  Stream other = a.substream(4);
  CHECK(other.uniform() != sa_copy.uniform());
}
