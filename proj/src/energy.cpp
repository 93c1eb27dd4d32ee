#include "nanohydra/energy.hpp"

#include <map>
#include <stdexcept>

#include "nanohydra/series.hpp"

namespace nanohydra {

double avg_power_uw(const PowerProfile& p) {
    if (p.dt_acq_s <= 0.0)
        throw std::invalid_argument("avg_power: dt_acq must be positive");
    if (p.dt_inf_s < 0.0 || p.dt_inf_s > p.dt_acq_s)
        throw std::invalid_argument("avg_power: need 0 <= dt_inf <= dt_acq");
    return (p.p_inf_uw * p.dt_inf_s + p.p_sleep_uw * (p.dt_acq_s - p.dt_inf_s)) / p.dt_acq_s +
           p.p_adc_uw;
}

double lifetime_years(const PowerProfile& p, const Battery& b) {
    const double avg = avg_power_uw(p);
    if (avg <= 0.0) throw std::invalid_argument("lifetime: zero average power");
    const double energy_uwh = b.capacity_mah * b.voltage_v * 1e3; // mWh -> uWh
    const double hours = energy_uwh / avg;
    return hours / 8760.0;
}

double energy_ratio(double p_scale, double t_scale) {
    if (p_scale <= 0.0 || t_scale <= 0.0)
        throw std::invalid_argument("energy_ratio: scales must be positive");
    return p_scale * t_scale;
}

CostReport cost_report(const QuantizedModel& m) {
    const ModelConfig& cfg = m.config;
    CostReport rep;

    // Transform MACs: one multiply-accumulate per (view, group, kernel,
    // timestep, tap); classifier adds L_F * C.
    const auto dils = cfg.dilation_schedule();
    std::uint64_t conv_macs = 0;
    for (int order = 0; order < cfg.n_diff; ++order) {
        const int len = cfg.input_len - order;
        for (int d : dils) {
            const std::uint64_t t = static_cast<std::uint64_t>(cfg.timesteps(len, d));
            conv_macs += t * cfg.groups * cfg.kernels_per_group * cfg.kernel_len;
        }
    }
    rep.macs_per_inference =
        conv_macs + static_cast<std::uint64_t>(cfg.feature_len()) * cfg.num_classes;

    rep.bytes_model = model_size_bytes(m);

    // Working set of the streaming transform plus classification: input and
    // difference series, regenerated kernels, one K-wide response buffer,
    // hard/soft histograms, scaled features, per-class accumulators.
    const std::size_t lf = static_cast<std::size_t>(cfg.feature_len());
    const std::size_t bank_bytes = static_cast<std::size_t>(cfg.n_dil) * cfg.n_diff *
                                   cfg.groups * cfg.kernels_per_group * cfg.kernel_len;
    rep.bytes_peak = static_cast<std::size_t>(cfg.input_len) * 2 +
                     (cfg.n_diff > 1 ? static_cast<std::size_t>(cfg.input_len - 1) * 2 : 0) +
                     bank_bytes + static_cast<std::size_t>(cfg.kernels_per_group) * 4 +
                     lf * 2 + lf * 2 + static_cast<std::size_t>(cfg.num_classes) * 4;
    return rep;
}

namespace {

struct Variant {
    double power_uw[3];   // ULPM, LPM, HPM
    double latency_s[3];
};

// Measured operating points of the two model variants on the target MCU.
const Variant kEfficient{{13090.0, 23020.0, 51240.0}, {0.77e-3, 0.33e-3, 0.22e-3}};
const Variant kAccurate{{13690.0, 25630.0, 60110.0}, {2.23e-3, 0.97e-3, 0.64e-3}};

int mode_index(const std::string& mode) {
    if (mode == "ulpm") return 0;
    if (mode == "lpm") return 1;
    if (mode == "hpm") return 2;
    return -1;
}

} // namespace

std::optional<PowerProfile> builtin_profile(const std::string& name) {
    // <system>-<variant>-<mode>
    const auto p1 = name.find('-');
    const auto p2 = name.rfind('-');
    if (p1 == std::string::npos || p2 == p1) return std::nullopt;
    const std::string system = name.substr(0, p1);
    const std::string variant = name.substr(p1 + 1, p2 - p1 - 1);
    const std::string mode = name.substr(p2 + 1);
    const int mi = mode_index(mode);
    if (mi < 0) return std::nullopt;
    const Variant* var = variant == "e" ? &kEfficient : variant == "a" ? &kAccurate : nullptr;
    if (!var) return std::nullopt;

    PowerProfile p;
    p.dt_inf_s = var->latency_s[mi];
    p.dt_acq_s = 1.0; // 1 s acquisition windows
    p.label = name;
    if (system == "ulpws") {
        // GAP9 plus an ADS7042 ADC: 45 uW deep sleep, 1 uW ADC.
        p.p_inf_uw = var->power_uw[mi];
        p.p_sleep_uw = 45.0;
        p.p_adc_uw = 1.0;
    } else if (system == "biogap") {
        // BioGAP board: 24 mW active in LPM, 150 uW sleep. The ADS1298 ADC
        // power is not published for this configuration; 640 uW reproduces
        // the reported lifetime order and is overridable from the CLI.
        p.p_inf_uw = 24000.0;
        p.p_sleep_uw = 150.0;
        p.p_adc_uw = 640.0;
    } else {
        return std::nullopt;
    }
    return p;
}

std::vector<std::string> builtin_profile_names() {
    std::vector<std::string> names;
    for (const char* sys : {"ulpws", "biogap"})
        for (const char* var : {"e", "a"})
            for (const char* mode : {"ulpm", "lpm", "hpm"})
                names.push_back(std::string(sys) + "-" + var + "-" + mode);
    return names;
}

} // namespace nanohydra
