#include "nanohydra/config.hpp"

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nanohydra {

std::vector<int> ModelConfig::dilation_schedule() const {
    std::vector<int> dils;
    dils.reserve(static_cast<std::size_t>(n_dil));
    // Every view, including the length L_x-1 difference view, must keep at
    // least one valid timestep.
    const int min_len = input_len - (n_diff - 1);
    for (int j = 0; j < n_dil; ++j) {
        const int d = 1 << j;
        if ((kernel_len - 1) * d >= min_len)
            throw std::invalid_argument("dilation_schedule: kernel span exceeds input at d=" +
                                        std::to_string(d));
        dils.push_back(d);
    }
    return dils;
}

int min_conv_preshift(const ModelConfig& cfg) {
    // Worst case: the winning kernel sees a full-magnitude response at every
    // timestep. Bounded with timesteps <= L_x, which covers both paddings.
    const std::int64_t worst = static_cast<std::int64_t>(cfg.max_abs_sample(cfg.n_diff - 1)) *
                               cfg.kernel_len * cfg.input_len;
    int s = 0;
    while ((worst >> s) > 32767)
        ++s;
    return s;
}

ModelConfig resolve_preshift(ModelConfig cfg) {
    if (cfg.conv_preshift < 0)
        cfg.conv_preshift = min_conv_preshift(cfg);
    return cfg;
}

ValidationReport validate(const ModelConfig& cfg) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };

    if (cfg.input_len <= 0) fail("input_len must be positive");
    if (cfg.input_len > 32767) fail("input_len exceeds int16 hard-count range");
    if (cfg.num_classes <= 0) fail("num_classes must be positive");
    if (cfg.n_dil <= 0) fail("n_dil must be positive");
    if (cfg.n_diff != 1 && cfg.n_diff != 2) fail("n_diff must be 1 or 2");
    if (cfg.groups <= 0) fail("groups must be positive");
    if (cfg.kernels_per_group <= 0) fail("kernels_per_group must be positive");
    if (cfg.kernel_len <= 0 || cfg.kernel_len % 2 == 0) fail("kernel_len must be odd and positive");
    if (cfg.lambda_feats != 2) fail("lambda_feats is fixed at 2");
    if (cfg.input_frac_bits < 0 || cfg.input_frac_bits > 14)
        fail("input_frac_bits must be in [0, 14] so differences fit int16");
    if (cfg.conv_preshift < 0) fail("conv_preshift must be nonnegative");
    if (cfg.count_shift < 0 || cfg.count_shift > 15) fail("count_shift must be in [0, 15]");

    if (rep.ok) {
        try {
            cfg.dilation_schedule();
        } catch (const std::invalid_argument&) {
            fail("kernel span exceeds input");
        }
    }

    if (rep.ok) {
        // int16 soft-count budget: worst-case accumulated response per feature.
        const std::int64_t worst = static_cast<std::int64_t>(cfg.max_abs_sample(cfg.n_diff - 1)) *
                                   cfg.kernel_len * cfg.input_len;
        if ((worst >> cfg.conv_preshift) > 32767)
            fail("int16 soft budget exceeded: (" + std::to_string(worst) + " >> " +
                 std::to_string(cfg.conv_preshift) + ") > 32767; need conv_preshift >= " +
                 std::to_string(min_conv_preshift(cfg)));

        // int32 classifier budget: |weights_q| <= 127, features clamped to
        // +/-2047 after scaling; keep at least 2^30 headroom for the bias.
        const std::int64_t dot = 127LL * 2047LL * cfg.feature_len();
        if (dot > (1LL << 30))
            fail("int32 classifier accumulator budget exceeded: feature_len too large");
    }
    return rep;
}

namespace {

const char* const kKeys[] = {
    "input_len",      "num_classes",  "n_dil",         "n_diff",
    "groups",         "kernels_per_group", "kernel_len", "lambda_feats",
    "input_frac_bits", "conv_preshift", "seed",         "padding",
    "counting_mode",  "count_shift",  "count_shift_soft", "znorm",
};

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
    std::uint64_t v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw std::invalid_argument("config: malformed integer for key '" + key + "': " + s);
    return v;
}

std::int64_t parse_i64(const std::string& key, const std::string& s) {
    std::int64_t v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw std::invalid_argument("config: malformed integer for key '" + key + "': " + s);
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string config_to_text(const ModelConfig& cfg) {
    std::ostringstream os;
    os << "input_len = " << cfg.input_len << '\n'
       << "num_classes = " << cfg.num_classes << '\n'
       << "n_dil = " << cfg.n_dil << '\n'
       << "n_diff = " << cfg.n_diff << '\n'
       << "groups = " << cfg.groups << '\n'
       << "kernels_per_group = " << cfg.kernels_per_group << '\n'
       << "kernel_len = " << cfg.kernel_len << '\n'
       << "lambda_feats = " << cfg.lambda_feats << '\n'
       << "input_frac_bits = " << cfg.input_frac_bits << '\n'
       << "conv_preshift = " << cfg.conv_preshift << '\n'
       << "seed = " << cfg.seed << '\n'
       << "padding = " << static_cast<int>(cfg.padding) << '\n'
       << "counting_mode = " << static_cast<int>(cfg.counting_mode) << '\n'
       << "count_shift = " << cfg.count_shift << '\n'
       << "count_shift_soft = " << (cfg.count_shift_soft ? 1 : 0) << '\n'
       << "znorm = " << (cfg.znorm ? 1 : 0) << '\n';
    return os.str();
}

ModelConfig config_from_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line without '=': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        bool known = false;
        for (const char* k : kKeys)
            if (key == k) { known = true; break; }
        if (!known)
            throw std::invalid_argument("config: unknown key '" + key + "'");
        if (!kv.emplace(key, val).second)
            throw std::invalid_argument("config: duplicate key '" + key + "'");
    }
    for (const char* k : kKeys)
        if (!kv.count(k))
            throw std::invalid_argument(std::string("config: missing key '") + k + "'");

    auto geti = [&kv](const char* k) { return static_cast<int>(parse_i64(k, kv.at(k))); };
    ModelConfig cfg;
    cfg.input_len = geti("input_len");
    cfg.num_classes = geti("num_classes");
    cfg.n_dil = geti("n_dil");
    cfg.n_diff = geti("n_diff");
    cfg.groups = geti("groups");
    cfg.kernels_per_group = geti("kernels_per_group");
    cfg.kernel_len = geti("kernel_len");
    cfg.lambda_feats = geti("lambda_feats");
    cfg.input_frac_bits = geti("input_frac_bits");
    cfg.conv_preshift = geti("conv_preshift");
    cfg.seed = parse_u64("seed", kv.at("seed"));
    const int pad = geti("padding");
    if (pad != 0 && pad != 1) throw std::invalid_argument("config: padding must be 0 or 1");
    cfg.padding = static_cast<Padding>(pad);
    const int cm = geti("counting_mode");
    if (cm != 0 && cm != 1) throw std::invalid_argument("config: counting_mode must be 0 or 1");
    cfg.counting_mode = static_cast<CountingMode>(cm);
    cfg.count_shift = geti("count_shift");
    const int css = geti("count_shift_soft");
    if (css != 0 && css != 1) throw std::invalid_argument("config: count_shift_soft must be 0 or 1");
    cfg.count_shift_soft = css == 1;
    const int zn = geti("znorm");
    if (zn != 0 && zn != 1) throw std::invalid_argument("config: znorm must be 0 or 1");
    cfg.znorm = zn == 1;
    return cfg;
}

} // namespace nanohydra
