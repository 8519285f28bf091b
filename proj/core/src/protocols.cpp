#include "dmt/protocols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

OutageDetail::OutageDetail()
    : c1(kNaN), c2(kNaN), c3(kNaN), c4(kNaN), c_check1(kNaN), c_check2(kNaN),
      mac_sum(kNaN), listen_fraction(kNaN) {}

OutageVerdict cf_outage(const ChannelRealization& real, const SnrPoint& snr,
                        const RateAssignment& rates, OutageDetail* detail) {
  const int m1 = static_cast<int>(real.h1.cols());
  const int m2 = static_cast<int>(real.h2.cols());
  const int mr = static_cast<int>(real.h4.cols());
  OutageVerdict v;
  // A zero-rate message is never in outage (strict inequalities against
  // nonnegative thresholds), so its capacities only matter for diagnostics.
  if (rates.rate1 > 0.0 || detail) {
    const double c4 = capacity(real.h4, mr, snr);
    const double cc1 = half_power_capacity(real.h1, m1, snr);
    const bool forward = rates.rate1 > std::max(0.0, c4 - 1.0);
    const bool access = rates.rate1 > cc1;
    v.message1_in_outage = forward || access;
    if (detail) {
      detail->c4 = c4;
      detail->c_check1 = cc1;
      if (forward) detail->causes |= kCauseMsg1Forward;
      if (access) detail->causes |= kCauseMsg1Access;
    }
  }
  if (rates.rate2 > 0.0 || detail) {
    const double c3 = capacity(real.h3, mr, snr);
    const double cc2 = half_power_capacity(real.h2, m2, snr);
    const bool forward = rates.rate2 > std::max(0.0, c3 - 1.0);
    const bool access = rates.rate2 > cc2;
    v.message2_in_outage = forward || access;
    if (detail) {
      detail->c3 = c3;
      detail->c_check2 = cc2;
      if (forward) detail->causes |= kCauseMsg2Forward;
      if (access) detail->causes |= kCauseMsg2Access;
    }
  }
  return v;
}

OutageVerdict df_outage(const ChannelRealization& real, const SnrPoint& snr,
                        const RateAssignment& rates, OutageDetail* detail) {
  const int m1 = static_cast<int>(real.h1.cols());
  const int m2 = static_cast<int>(real.h2.cols());
  const int mr = static_cast<int>(real.h4.cols());

  const double sum_rate = rates.rate1 + rates.rate2;
  bool mac_sum_fail = false;
  if (sum_rate > 0.0 || detail) {
    const double mac_sum = mac_sum_capacity(real.h1, m1, real.h2, m2, snr);
    mac_sum_fail = sum_rate > mac_sum;
    if (detail) {
      detail->mac_sum = mac_sum;
      if (mac_sum_fail) detail->causes |= kCauseMacSum;
    }
  }

  OutageVerdict v;
  v.message1_in_outage = mac_sum_fail;
  v.message2_in_outage = mac_sum_fail;
  if (rates.rate1 > 0.0 || detail) {
    const double c1 = capacity(real.h1, m1, snr);
    const double c4 = capacity(real.h4, mr, snr);
    const bool access = rates.rate1 > c1;
    const bool forward = rates.rate1 > c4;
    v.message1_in_outage = v.message1_in_outage || access || forward;
    if (detail) {
      detail->c1 = c1;
      detail->c4 = c4;
      if (access) detail->causes |= kCauseMsg1Access;
      if (forward) detail->causes |= kCauseMsg1Forward;
    }
  }
  if (rates.rate2 > 0.0 || detail) {
    const double c2 = capacity(real.h2, m2, snr);
    const double c3 = capacity(real.h3, mr, snr);
    const bool access = rates.rate2 > c2;
    const bool forward = rates.rate2 > c3;
    v.message2_in_outage = v.message2_in_outage || access || forward;
    if (detail) {
      detail->c2 = c2;
      detail->c3 = c3;
      if (access) detail->causes |= kCauseMsg2Access;
      if (forward) detail->causes |= kCauseMsg2Forward;
    }
  }
  return v;
}

double dcf_listen_fraction(const ChannelRealization& real, const SnrPoint& snr, double rate1) {
  const int m1 = static_cast<int>(real.h1.cols());
  const double c1 = capacity(real.h1, m1, snr);
  if (c1 <= 0.0) return kInf;
  return (1.0 + rate1) / c1;
}

OutageVerdict dcf_outage(const ChannelRealization& real, const SnrPoint& snr, double rate1,
                         std::optional<double> fixed_listen, OutageDetail* detail) {
  if (fixed_listen && !(*fixed_listen > 0.0 && *fixed_listen < 1.0)) {
    throw std::invalid_argument("fixed listening fraction must lie in (0, 1)");
  }
  const int m1 = static_cast<int>(real.h1.cols());
  const int mr = static_cast<int>(real.h4.cols());
  const double t = fixed_listen ? *fixed_listen : dcf_listen_fraction(real, snr, rate1);
  if (detail) {
    detail->listen_fraction = t;
    detail->c1 = capacity(real.h1, m1, snr);
  }

  OutageVerdict v;
  if (!fixed_listen && t > 1.0) {
    // Listen window exceeds the block; no time left to forward.
    v.message1_in_outage = true;
    if (detail) detail->causes |= kCauseListenWindow;
    return v;
  }
  const double c4 = capacity(real.h4, mr, snr);
  const double cc1 = half_power_capacity(real.h1, m1, snr);
  const bool forward = rate1 > (1.0 - t) * c4 - t;
  const bool access = rate1 > t * cc1;
  v.message1_in_outage = forward || access;
  if (detail) {
    detail->c4 = c4;
    detail->c_check1 = cc1;
    if (forward) detail->causes |= kCauseMsg1Forward;
    if (access) detail->causes |= kCauseMsg1Access;
  }
  return v;
}

}  // namespace dmt
