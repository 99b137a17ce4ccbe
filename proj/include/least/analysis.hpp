#pragma once

#include "least/network.hpp"
#include "least/protocols.hpp"

namespace least {

/// Closed-form setup-phase power per round, in epsilon-scaled joules.
struct PowerEstimate {
    double least_estimate = 0.0;
    double leach_estimate = 0.0;
    double difference = 0.0; // leach_estimate - least_estimate
};

/// eps * n * (p_hn * d_m^2 + 3 * p_ch * d^2). Heir traffic is priced at the
/// p_h = 0 bound of one heir per first-level node.
double estimate_least(double n, const ProtocolParams& params, const NetworkStats& stats, double epsilon);

/// eps * n * (p_ch * d_m^2 + (1 - p_ch) * d^2).
double estimate_leach(double n, const ProtocolParams& params, const NetworkStats& stats, double epsilon);

PowerEstimate compare_estimates(double n, const ProtocolParams& params, const NetworkStats& stats, double epsilon);

} // namespace least
