#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmt/protocols.hpp"

using namespace dmt;

namespace {

ChannelRealization unit_realization_111() {
  ChannelRealization real;
  real.h1 = ChannelMatrix::Ones(1, 1);
  real.h2 = ChannelMatrix::Ones(1, 1);
  real.h3 = ChannelMatrix::Ones(1, 1);
  real.h4 = ChannelMatrix::Ones(1, 1);
  return real;
}

ChannelRealization random_realization(const AntennaConfig& config, Stream& stream) {
  return sample_realization(config, stream);
}

}  // namespace

TEST_CASE("cf outage: zero rates are never in outage") {
  Stream stream(2);
  for (int i = 0; i < 100; ++i) {
    const AntennaConfig config(1 + i % 3, 1 + (i / 3) % 3, 1 + (i / 9) % 3);
    const ChannelRealization real = random_realization(config, stream);
    const OutageVerdict v = cf_outage(real, SnrPoint::from_db(10.0), {0.0, 0.0});
    CHECK_FALSE(v.message1_in_outage);
    CHECK_FALSE(v.message2_in_outage);
  }
}

TEST_CASE("cf outage: dead forward link dooms message 1") {
  ChannelRealization real = unit_realization_111();
  real.h4 = ChannelMatrix::Zero(1, 1);
  for (double h1_gain : {0.1, 1.0, 100.0}) {
    real.h1(0, 0) = h1_gain;
    OutageDetail detail;
    const OutageVerdict v = cf_outage(real, SnrPoint::from_db(20.0), {0.25, 0.0}, &detail);
    CHECK(v.message1_in_outage);
    CHECK((detail.causes & kCauseMsg1Forward));
    CHECK_FALSE(v.message2_in_outage);
  }
}

TEST_CASE("cf outage: worked example at snr 8") {
  // C4 = log2(9), check-C1 = log2(5); rate 1 clears both thresholds.
  const ChannelRealization real = unit_realization_111();
  OutageDetail detail;
  const OutageVerdict v = cf_outage(real, SnrPoint::from_linear(8.0), {1.0, 0.0}, &detail);
  CHECK_FALSE(v.message1_in_outage);
  CHECK(detail.c4 == doctest::Approx(std::log2(9.0)).epsilon(1e-12));
  CHECK(detail.c_check1 == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
}

TEST_CASE("cf outage: message 1 depends only on h1 and h4") {
  Stream stream(7);
  const AntennaConfig config(2, 2, 2);
  ChannelRealization real = random_realization(config, stream);
  const SnrPoint snr = SnrPoint::from_db(12.0);
  const RateAssignment rates{1.5, 2.5};
  const OutageVerdict before = cf_outage(real, snr, rates);
  // replace the links message 1 never touches
  real.h2 = random_realization(config, stream).h2;
  real.h3 = random_realization(config, stream).h3;
  const OutageVerdict after = cf_outage(real, snr, rates);
  CHECK(before.message1_in_outage == after.message1_in_outage);
}

TEST_CASE("df outage: zero rates and dead access link") {
  const ChannelRealization real = unit_realization_111();
  const OutageVerdict zero = df_outage(real, SnrPoint::from_db(10.0), {0.0, 0.0});
  CHECK_FALSE(zero.message1_in_outage);
  CHECK_FALSE(zero.message2_in_outage);

  ChannelRealization dead = unit_realization_111();
  dead.h1 = ChannelMatrix::Zero(1, 1);
  OutageDetail detail;
  const OutageVerdict v = df_outage(dead, SnrPoint::from_db(10.0), {0.5, 0.0}, &detail);
  CHECK(v.message1_in_outage);
  CHECK((detail.causes & kCauseMsg1Access));
}

TEST_CASE("df outage: sum constraint fires only at low snr and marks both") {
  const ChannelRealization real = unit_realization_111();
  const RateAssignment rates{1.0, 1.0};

  // snr 3: C1 = C2 = 2, sum capacity log2(7) > 2 -> no outage
  OutageDetail detail_hi;
  const OutageVerdict hi = df_outage(real, SnrPoint::from_linear(3.0), rates, &detail_hi);
  CHECK(detail_hi.mac_sum == doctest::Approx(std::log2(7.0)).epsilon(1e-12));
  CHECK_FALSE(hi.message1_in_outage);
  CHECK_FALSE(hi.message2_in_outage);

  // snr 1: sum capacity log2(3) < 2 -> the sum constraint fires, both fail
  OutageDetail detail_lo;
  const OutageVerdict lo = df_outage(real, SnrPoint::from_linear(1.0), rates, &detail_lo);
  CHECK(detail_lo.mac_sum == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK((detail_lo.causes & kCauseMacSum));
  CHECK(lo.message1_in_outage);
  CHECK(lo.message2_in_outage);
}

TEST_CASE("df outage: zero rates are never in outage") {
  Stream stream(3);
  for (int i = 0; i < 100; ++i) {
    const AntennaConfig config(1 + i % 3, 1 + (i / 3) % 3, 1 + (i / 9) % 3);
    const ChannelRealization real = random_realization(config, stream);
    const OutageVerdict v = df_outage(real, SnrPoint::from_db(3.0), {0.0, 0.0});
    CHECK_FALSE(v.message1_in_outage);
    CHECK_FALSE(v.message2_in_outage);
  }
}

TEST_CASE("detail causes agree with the verdicts") {
  Stream stream(41);
  const SnrPoint snr = SnrPoint::from_db(6.0);
  for (int i = 0; i < 200; ++i) {
    const AntennaConfig config(1 + i % 2, 1 + (i / 2) % 2, 1 + (i / 4) % 2);
    const ChannelRealization real = random_realization(config, stream);
    const RateAssignment rates{4.0 * stream.uniform(), 4.0 * stream.uniform()};

    OutageDetail cf_detail;
    const OutageVerdict cf = cf_outage(real, snr, rates, &cf_detail);
    CHECK(cf.message1_in_outage ==
          ((cf_detail.causes & (kCauseMsg1Forward | kCauseMsg1Access)) != 0));
    CHECK(cf.message2_in_outage ==
          ((cf_detail.causes & (kCauseMsg2Forward | kCauseMsg2Access)) != 0));

    OutageDetail df_detail;
    const OutageVerdict df = df_outage(real, snr, rates, &df_detail);
    CHECK(df.message1_in_outage ==
          ((df_detail.causes & (kCauseMsg1Forward | kCauseMsg1Access | kCauseMacSum)) != 0));
    CHECK(df.message2_in_outage ==
          ((df_detail.causes & (kCauseMsg2Forward | kCauseMsg2Access | kCauseMacSum)) != 0));

    OutageDetail dcf_detail;
    const OutageVerdict dcf = dcf_outage(real, snr, rates.rate1, {}, &dcf_detail);
    CHECK(dcf.message1_in_outage == (dcf_detail.causes != kCauseNone));
  }
}

TEST_CASE("outage monotonicity in the rates") {
  Stream stream(13);
  const SnrPoint snr = SnrPoint::from_db(8.0);
  for (int i = 0; i < 200; ++i) {
    const AntennaConfig config(1 + i % 2, 1 + (i / 2) % 2, 1 + (i / 4) % 2);
    const ChannelRealization real = random_realization(config, stream);
    const RateAssignment lo{3.0 * stream.uniform(), 3.0 * stream.uniform()};
    const RateAssignment hi{lo.rate1 + 2.0 * stream.uniform(), lo.rate2 + 2.0 * stream.uniform()};

    const OutageVerdict cf_lo = cf_outage(real, snr, lo);
    const OutageVerdict cf_hi = cf_outage(real, snr, hi);
    if (cf_lo.message1_in_outage) CHECK(cf_hi.message1_in_outage);
    if (cf_lo.message2_in_outage) CHECK(cf_hi.message2_in_outage);

    const OutageVerdict df_lo = df_outage(real, snr, lo);
    const OutageVerdict df_hi = df_outage(real, snr, hi);
    if (df_lo.message1_in_outage) CHECK(df_hi.message1_in_outage);
    if (df_lo.message2_in_outage) CHECK(df_hi.message2_in_outage);

    const OutageVerdict dcf_lo = dcf_outage(real, snr, lo.rate1);
    const OutageVerdict dcf_hi = dcf_outage(real, snr, hi.rate1);
    if (dcf_lo.message1_in_outage) CHECK(dcf_hi.message1_in_outage);
  }
}

TEST_CASE("cf and df outage never appears when snr grows") {
  Stream stream(17);
  for (int i = 0; i < 100; ++i) {
    const AntennaConfig config(1 + i % 2, 1 + (i / 2) % 2, 1 + (i / 4) % 2);
    const ChannelRealization real = random_realization(config, stream);
    const RateAssignment rates{2.0 * stream.uniform(), 2.0 * stream.uniform()};
    bool cf1_prev = true, cf2_prev = true, df1_prev = true, df2_prev = true;
    bool first = true;
    for (double db = 0.0; db <= 40.0; db += 4.0) {
      const SnrPoint snr = SnrPoint::from_db(db);
      const OutageVerdict cf = cf_outage(real, snr, rates);
      const OutageVerdict df = df_outage(real, snr, rates);
      if (!first) {
        if (!cf1_prev) CHECK_FALSE(cf.message1_in_outage);
        if (!cf2_prev) CHECK_FALSE(cf.message2_in_outage);
        if (!df1_prev) CHECK_FALSE(df.message1_in_outage);
        if (!df2_prev) CHECK_FALSE(df.message2_in_outage);
      }
      cf1_prev = cf.message1_in_outage;
      cf2_prev = cf.message2_in_outage;
      df1_prev = df.message1_in_outage;
      df2_prev = df.message2_in_outage;
      first = false;
    }
  }
}

TEST_CASE("dcf listen fraction") {
  ChannelRealization real = unit_realization_111();
  // C1 = 4 at snr 15
  CHECK(dcf_listen_fraction(real, SnrPoint::from_linear(15.0), 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // C1 = 1 at snr 1
  CHECK(dcf_listen_fraction(real, SnrPoint::from_linear(1.0), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  real.h1 = ChannelMatrix::Zero(1, 1);
  CHECK(std::isinf(dcf_listen_fraction(real, SnrPoint::from_db(20.0), 1.0)));
}

TEST_CASE("dcf outage events") {
  SUBCASE("listen window longer than the block") {
    // C1 = 1, rate 1 -> t = 2 > 1
    const ChannelRealization real = unit_realization_111();
    OutageDetail detail;
    const OutageVerdict v = dcf_outage(real, SnrPoint::from_linear(1.0), 1.0, {}, &detail);
    CHECK(v.message1_in_outage);
    CHECK((detail.causes & kCauseListenWindow));
    CHECK(detail.listen_fraction == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("worked example at snr 15") {
    // t = 0.5; 1 > 0.5*4 - 0.5 fails; 1 > 0.5*log2(8.5) fails -> no outage
    const ChannelRealization real = unit_realization_111();
    OutageDetail detail;
    const OutageVerdict v = dcf_outage(real, SnrPoint::from_linear(15.0), 1.0, {}, &detail);
    CHECK_FALSE(v.message1_in_outage);
    CHECK_FALSE(v.message2_in_outage);
    CHECK(detail.listen_fraction == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(detail.c_check1 == doctest::Approx(std::log2(8.5)).epsilon(1e-12));
  }
  SUBCASE("strong first hop at zero rate clears") {
    ChannelRealization real = unit_realization_111();
    real.h1(0, 0) = 1000.0;  // C1 huge -> t near 0
    const OutageVerdict v = dcf_outage(real, SnrPoint::from_linear(100.0), 0.0);
    CHECK_FALSE(v.message1_in_outage);
  }
  SUBCASE("zero rate is in outage exactly when the forward budget is negative") {
    Stream stream(23);
    for (int i = 0; i < 200; ++i) {
      ChannelRealization real = random_realization(AntennaConfig(1, 1, 1), stream);
      if (i % 3 == 0) real.h4 *= 1e-4;  // exercise the tiny-C4 corner
      const SnrPoint snr = SnrPoint::from_db(6.0);
      const double t = dcf_listen_fraction(real, snr, 0.0);
      const double c4 = capacity(real.h4, 1, snr);
      const bool expected = t > 1.0 || 0.0 > (1.0 - t) * c4 - t;
      CHECK(dcf_outage(real, snr, 0.0).message1_in_outage == expected);
    }
  }
  SUBCASE("message 2 is never involved") {
    Stream stream(29);
    const ChannelRealization real = random_realization(AntennaConfig(2, 2, 2), stream);
    CHECK_FALSE(dcf_outage(real, SnrPoint::from_db(10.0), 3.0).message2_in_outage);
  }
}

TEST_CASE("dcf defining identity t*C1 = 1 + rate") {
  Stream stream(31);
  for (int i = 0; i < 100; ++i) {
    const ChannelRealization real = random_realization(AntennaConfig(2, 3, 1), stream);
    const SnrPoint snr = SnrPoint::from_db(15.0);
    const double rate1 = 4.0 * stream.uniform();
    const double t = dcf_listen_fraction(real, snr, rate1);
    const double c1 = capacity(real.h1, 2, snr);
    CHECK(t * c1 == doctest::Approx(1.0 + rate1).epsilon(1e-12));
  }
}

TEST_CASE("dcf fixed listening fraction baseline") {
  const ChannelRealization real = unit_realization_111();
  const SnrPoint snr = SnrPoint::from_linear(15.0);
  // fixed t = 1/2 reproduces the worked example's two link events
  OutageDetail detail;
  const OutageVerdict v = dcf_outage(real, snr, 1.0, 0.5, &detail);
  CHECK_FALSE(v.message1_in_outage);
  CHECK(detail.listen_fraction == 0.5);
  // but a weaker forward link now fails: 1 > 0.5*C4 - 0.5 needs C4 < 3
  ChannelRealization weak = unit_realization_111();
  weak.h4(0, 0) = std::sqrt(6.0 / 15.0);  // C4 = log2(7) < 3
  CHECK(dcf_outage(weak, snr, 1.0, 0.5).message1_in_outage);
  CHECK_THROWS_AS(dcf_outage(real, snr, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dcf_outage(real, snr, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dcf outage bound chain: algebraic forms agree") {
  Stream stream(37);
  for (int i = 0; i < 500; ++i) {
    const double c1 = 0.05 + 20.0 * stream.uniform();
    const double c4 = 0.05 + 20.0 * stream.uniform();
    const double r1 = 10.0 * stream.uniform();
    const double t = (1.0 + r1) / c1;

    // (1 - (1+R)/C1)*C4 - (1+R)/C1 == (C1*C4 - C4 - R*C4 - 1 - R)/C1
    const double lhs = (1.0 - t) * c4 - t;
    const double rhs = (c1 * c4 - c4 - r1 * c4 - 1.0 - r1) / c1;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // the displayed threshold form solves the event for R1 (C1 > 0)
    const bool event_form = r1 > (1.0 - t) * c4 - t;
    const bool threshold_form = r1 > (c1 * c4 - c4 - 1.0) / (1.0 + c1 + c4);
    CHECK(event_form == threshold_form);
  }
}
