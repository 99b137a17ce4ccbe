#include "least/analysis.hpp"

namespace least {

double estimate_least(double n, const ProtocolParams& params, const NetworkStats& stats, double epsilon) {
    const double dm2 = stats.d_bar_max * stats.d_bar_max;
    const double d2 = stats.d_bar * stats.d_bar;
    return epsilon * n * (params.p_hn * dm2 + 3.0 * params.p_ch * d2);
}

double estimate_leach(double n, const ProtocolParams& params, const NetworkStats& stats, double epsilon) {
    const double dm2 = stats.d_bar_max * stats.d_bar_max;
    const double d2 = stats.d_bar * stats.d_bar;
    return epsilon * n * (params.p_ch * dm2 + (1.0 - params.p_ch) * d2);
}

PowerEstimate compare_estimates(double n, const ProtocolParams& params, const NetworkStats& stats, double epsilon) {
    PowerEstimate e;
    e.least_estimate = estimate_least(n, params, stats, epsilon);
    e.leach_estimate = estimate_leach(n, params, stats, epsilon);
    e.difference = e.leach_estimate - e.least_estimate;
    return e;
}

} // namespace least
