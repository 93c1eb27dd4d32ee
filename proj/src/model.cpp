#include "nanohydra/model.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nanohydra {

namespace {

constexpr char kMagic[4] = {'N', 'H', 'Y', 'D'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

void put_i16(std::vector<std::uint8_t>& out, std::int16_t v) {
    put_u16(out, static_cast<std::uint16_t>(v));
}

void put_i32(std::vector<std::uint8_t>& out, std::int32_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
}

struct Reader {
    const std::uint8_t* p;
    std::size_t left;

    void need(std::size_t n) const {
        if (left < n) throw std::runtime_error("model: truncated file");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
        p += 2;
        left -= 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
        p += 4;
        left -= 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
        p += 8;
        left -= 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::int16_t i16() { return static_cast<std::int16_t>(u16()); }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::int8_t i8() {
        need(1);
        std::int8_t v = static_cast<std::int8_t>(*p);
        ++p;
        --left;
        return v;
    }
};

} // namespace

std::vector<std::uint8_t> serialize(const QuantizedModel& m) {
    const std::size_t lf = static_cast<std::size_t>(m.config.feature_len());
    const std::size_t C = static_cast<std::size_t>(m.config.num_classes);
    if (m.scaler.mu.size() != lf || m.scaler.sigma_shift.size() != lf)
        throw std::runtime_error("serialize: scaler size does not match config");
    if (m.clf.weights_q.size() != C * lf || m.clf.bias_q.size() != C)
        throw std::runtime_error("serialize: classifier size does not match config");

    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u16(out, kVersion);
    const std::string cfg_text = config_to_text(m.config);
    put_u32(out, static_cast<std::uint32_t>(cfg_text.size()));
    out.insert(out.end(), cfg_text.begin(), cfg_text.end());
    put_f64(out, m.input_scale);
    put_u64(out, m.bank_seed);
    for (std::int16_t v : m.scaler.mu) put_i16(out, v);
    for (std::int8_t v : m.scaler.sigma_shift) out.push_back(static_cast<std::uint8_t>(v));
    put_f64(out, m.clf.weight_scale);
    for (std::int8_t v : m.clf.weights_q) out.push_back(static_cast<std::uint8_t>(v));
    for (std::int32_t v : m.clf.bias_q) put_i32(out, v);
    return out;
}

QuantizedModel deserialize(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes.data(), bytes.size()};
    r.need(4);
    if (std::memcmp(r.p, kMagic, 4) != 0) throw std::runtime_error("model: bad magic");
    r.p += 4;
    r.left -= 4;
    const std::uint16_t version = r.u16();
    if (version != kVersion)
        throw std::runtime_error("model: unsupported version " + std::to_string(version));

    const std::uint32_t cfg_len = r.u32();
    r.need(cfg_len);
    const std::string cfg_text(reinterpret_cast<const char*>(r.p), cfg_len);
    r.p += cfg_len;
    r.left -= cfg_len;

    QuantizedModel m;
    m.config = config_from_text(cfg_text);
    m.input_scale = r.f64();
    m.bank_seed = r.u64();

    const std::size_t lf = static_cast<std::size_t>(m.config.feature_len());
    const std::size_t C = static_cast<std::size_t>(m.config.num_classes);
    m.scaler.mu.resize(lf);
    for (auto& v : m.scaler.mu) v = r.i16();
    m.scaler.sigma_shift.resize(lf);
    for (auto& v : m.scaler.sigma_shift) v = r.i8();
    m.scaler.count_shift = m.config.count_shift;
    m.scaler.count_shift_soft = m.config.count_shift_soft;
    m.clf.weight_scale = r.f64();
    m.clf.num_classes = m.config.num_classes;
    m.clf.num_features = m.config.feature_len();
    m.clf.weights_q.resize(C * lf);
    for (auto& v : m.clf.weights_q) v = r.i8();
    m.clf.bias_q.resize(C);
    for (auto& v : m.clf.bias_q) v = r.i32();
    if (r.left != 0) throw std::runtime_error("model: trailing bytes");
    return m;
}

std::size_t model_size_bytes(const QuantizedModel& m) { return serialize(m).size(); }

void save_model(const std::filesystem::path& path, const QuantizedModel& m) {
    const auto bytes = serialize(m);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

QuantizedModel load_model(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open model: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

} // namespace nanohydra
