#pragma once

#include <optional>

#include "dmt/channel.hpp"

namespace dmt {

enum class Protocol { CF, DF, DCF };

/// Per-block target rates in bits per channel use. rate2 is zero in
/// multi-hop (one-way) operation.
struct RateAssignment {
  double rate1 = 0.0;
  double rate2 = 0.0;
};

/// Which outage inequality fired.
enum OutageCause : unsigned {
  kCauseNone = 0,
  kCauseMsg1Forward = 1u << 0,  // relay -> user 2 link fails message 1
  kCauseMsg1Access = 1u << 1,   // user 1 -> relay link fails message 1
  kCauseMsg2Forward = 1u << 2,  // relay -> user 1 link fails message 2
  kCauseMsg2Access = 1u << 3,   // user 2 -> relay link fails message 2
  kCauseMacSum = 1u << 4,       // relay joint-decoding sum constraint (DF)
  kCauseListenWindow = 1u << 5, // listen fraction exceeds the block (DCF)
};

/// Diagnostic record: the capacities the predicate evaluated (NaN when a
/// protocol does not use a quantity) and the fired inequalities.
struct OutageDetail {
  double c1, c2, c3, c4;        // capacity() of h1..h4
  double c_check1, c_check2;    // half_power_capacity() of h1, h2
  double mac_sum;               // DF sum capacity at the relay
  double listen_fraction;       // DCF t
  unsigned causes = kCauseNone;

  OutageDetail();
};

struct OutageVerdict {
  bool message1_in_outage = false;
  bool message2_in_outage = false;
};

/// Compress-and-forward outage: message 1 fails when
/// rate1 > [C4 - 1]+ or rate1 > check-C1; message 2 symmetrically through
/// C3 and check-C2. Inequalities are strict.
OutageVerdict cf_outage(const ChannelRealization& real, const SnrPoint& snr,
                        const RateAssignment& rates, OutageDetail* detail = nullptr);

/// Decode-and-forward outage: message i fails on its individual
/// multiple-access constraint (rate_i > C_i), on the relay's joint-decoding
/// sum constraint (which marks both messages), or on its broadcast hop
/// (rate1 > C4, rate2 > C3).
OutageVerdict df_outage(const ChannelRealization& real, const SnrPoint& snr,
                        const RateAssignment& rates, OutageDetail* detail = nullptr);

/// Listening fraction t = (1 + rate1) / C1 of the dynamic CF relay.
/// Returns +infinity when C1 = 0 (certain outage).
double dcf_listen_fraction(const ChannelRealization& real, const SnrPoint& snr, double rate1);

/// Dynamic CF outage for the one-way multi-hop channel (only message 1 is
/// active): outage when t > 1, rate1 > (1-t)*C4 - t, or rate1 > t*check-C1.
/// `fixed_listen`, when set, replaces the dynamic t with a constant
/// fraction in (0,1) and drops the t > 1 event (baseline mode).
OutageVerdict dcf_outage(const ChannelRealization& real, const SnrPoint& snr, double rate1,
                         std::optional<double> fixed_listen = std::nullopt,
                         OutageDetail* detail = nullptr);

}  // namespace dmt
