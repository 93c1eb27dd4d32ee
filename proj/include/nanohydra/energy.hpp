#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nanohydra/model.hpp"

namespace nanohydra {

/// Duty-cycled operating point: the MCU computes for dt_inf out of every
/// dt_acq seconds and sleeps the rest; the ADC is always on.
struct PowerProfile {
    double p_inf_uw = 0.0;
    double p_sleep_uw = 0.0;
    double p_adc_uw = 0.0;
    double dt_inf_s = 0.0;
    double dt_acq_s = 1.0;
    std::string label;
};

struct Battery {
    double capacity_mah = 600.0;
    double voltage_v = 3.0;
};

inline constexpr Battery kCR2450{600.0, 3.0};

/// P_avg = (P_inf dt_inf + P_sleep (dt_acq - dt_inf)) / dt_acq + P_ADC, in uW.
/// Throws std::invalid_argument when dt_acq == 0 or dt_inf > dt_acq.
double avg_power_uw(const PowerProfile& p);

/// Battery energy (capacity * voltage) divided by average power, in years.
/// Throws std::invalid_argument on zero power.
double lifetime_years(const PowerProfile& p, const Battery& b);

/// Energy ratio of two operating points from their power and latency scale
/// factors: E2/E1 = p_scale * t_scale.
double energy_ratio(double p_scale, double t_scale);

struct CostReport {
    std::uint64_t macs_per_inference = 0;
    std::size_t bytes_model = 0;
    std::size_t bytes_peak = 0; // streaming-transform working set
};

/// Static operation/byte counts: MACs = sum over views of t*H*K*W plus the
/// classifier's L_F*C; bytes_model from the serializer; bytes_peak from the
/// streaming working set (no conv output is ever materialized).
CostReport cost_report(const QuantizedModel& m);

/// Built-in operating points. Model variants: "e" (n_dil=3, n_diff=1) and
/// "a" (n_dil=5, n_diff=2); modes ulpm/lpm/hpm; systems ulpws/biogap.
/// Names look like "ulpws-e-lpm" or "biogap-a-lpm".
std::optional<PowerProfile> builtin_profile(const std::string& name);
std::vector<std::string> builtin_profile_names();

} // namespace nanohydra
