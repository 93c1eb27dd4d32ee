#include "nanohydra/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nanohydra {

namespace {

struct RawRow {
    double label;
    std::vector<double> values;
};

double parse_cell(const std::string& tok, const std::filesystem::path& file, std::size_t line) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || !std::isfinite(v))
        throw std::runtime_error(file.string() + ":" + std::to_string(line) +
                                 ": non-numeric cell '" + tok + "'");
    return v;
}

std::vector<RawRow> read_rows(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open dataset file: " + file.string());
    std::vector<RawRow> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        RawRow row;
        std::istringstream ls(line);
        std::string tok;
        bool first = true;
        while (std::getline(ls, tok, '\t')) {
            const double v = parse_cell(tok, file, lineno);
            if (first) {
                row.label = v;
                first = false;
            } else {
                row.values.push_back(v);
            }
        }
        if (first || row.values.empty())
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": row with no values");
        if (width == 0) width = row.values.size();
        if (row.values.size() != width)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": ragged row (expected " + std::to_string(width) +
                                     " values, got " + std::to_string(row.values.size()) + ")");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("empty dataset file: " + file.string());
    return rows;
}

std::map<double, int> build_label_map(const std::vector<RawRow>& rows) {
    std::map<double, int> m;
    for (const auto& r : rows) m.emplace(r.label, 0);
    int next = 0;
    for (auto& [orig, idx] : m) idx = next++;
    return m;
}

std::vector<LabeledSeries> remap(const std::vector<RawRow>& rows,
                                 const std::map<double, int>& label_map,
                                 const std::filesystem::path& file) {
    std::vector<LabeledSeries> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        const auto it = label_map.find(r.label);
        if (it == label_map.end())
            throw std::runtime_error(file.string() + ": label " + std::to_string(r.label) +
                                     " absent from train split");
        out.push_back({r.values, it->second});
    }
    return out;
}

} // namespace

Dataset load_ucr_tsv(const std::filesystem::path& file) {
    const auto rows = read_rows(file);
    const auto label_map = build_label_map(rows);
    Dataset ds;
    ds.name = file.stem().string();
    ds.train = remap(rows, label_map, file);
    ds.n_classes = static_cast<int>(label_map.size());
    ds.series_len = static_cast<int>(rows.front().values.size());
    for (const auto& [orig, idx] : label_map) ds.label_map.push_back(orig);
    return ds;
}

Dataset load_ucr_dataset(const std::filesystem::path& dir, const std::string& name) {
    const auto train_file = dir / (name + "_TRAIN.tsv");
    const auto test_file = dir / (name + "_TEST.tsv");
    const auto train_rows = read_rows(train_file);
    const auto test_rows = read_rows(test_file);
    if (train_rows.front().values.size() != test_rows.front().values.size())
        throw std::runtime_error(name + ": train/test series length mismatch");
    const auto label_map = build_label_map(train_rows);
    Dataset ds;
    ds.name = name;
    ds.train = remap(train_rows, label_map, train_file);
    ds.test = remap(test_rows, label_map, test_file);
    ds.n_classes = static_cast<int>(label_map.size());
    ds.series_len = static_cast<int>(train_rows.front().values.size());
    for (const auto& [orig, idx] : label_map) ds.label_map.push_back(orig);
    return ds;
}

std::vector<int> class_histogram(const std::vector<LabeledSeries>& split, int n_classes) {
    std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
    for (const auto& s : split)
        if (s.label >= 0 && s.label < n_classes) ++counts[static_cast<std::size_t>(s.label)];
    return counts;
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t dataset_hash(const Dataset& ds) {
    std::uint64_t h = fnv1a(ds.name.data(), ds.name.size());
    auto mix_split = [&h](const std::vector<LabeledSeries>& split) {
        for (const auto& s : split) {
            h = fnv1a(&s.label, sizeof(s.label), h);
            h = fnv1a(s.values.data(), s.values.size() * sizeof(double), h);
        }
    };
    mix_split(ds.train);
    mix_split(ds.test);
    return h;
}

void save_feature_cache(const std::filesystem::path& path, const FeatureMatrix& m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open cache for writing: " + path.string());
    const std::uint32_t n = static_cast<std::uint32_t>(m.rows);
    const std::uint32_t lf = static_cast<std::uint32_t>(m.cols);
    std::uint8_t hdr[8];
    for (int i = 0; i < 4; ++i) hdr[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF);
    for (int i = 0; i < 4; ++i) hdr[4 + i] = static_cast<std::uint8_t>((lf >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(hdr), 8);
    std::vector<std::uint8_t> buf(m.data.size() * 2);
    for (std::size_t i = 0; i < m.data.size(); ++i) {
        const auto u = static_cast<std::uint16_t>(m.data[i]);
        buf[2 * i] = static_cast<std::uint8_t>(u & 0xFF);
        buf[2 * i + 1] = static_cast<std::uint8_t>(u >> 8);
    }
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!os) throw std::runtime_error("cache write failed: " + path.string());
}

FeatureMatrix load_feature_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open cache: " + path.string());
    std::uint8_t hdr[8];
    is.read(reinterpret_cast<char*>(hdr), 8);
    if (!is) throw std::runtime_error("cache truncated: " + path.string());
    std::uint32_t n = 0, lf = 0;
    for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(hdr[i]) << (8 * i);
    for (int i = 0; i < 4; ++i) lf |= static_cast<std::uint32_t>(hdr[4 + i]) << (8 * i);
    FeatureMatrix m;
    m.rows = n;
    m.cols = lf;
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(n) * lf * 2);
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!is) throw std::runtime_error("cache truncated: " + path.string());
    m.data.resize(static_cast<std::size_t>(n) * lf);
    for (std::size_t i = 0; i < m.data.size(); ++i)
        m.data[i] = static_cast<std::int16_t>(
            static_cast<std::uint16_t>(buf[2 * i] | (buf[2 * i + 1] << 8)));
    return m;
}

std::filesystem::path feature_cache_path(const std::filesystem::path& dir,
                                         std::uint64_t dataset_h, std::uint64_t config_h,
                                         std::uint64_t seed, const std::string& split) {
    std::ostringstream name;
    name << std::hex << dataset_h << "_" << config_h << "_" << seed << "_" << split << ".feat";
    return dir / name.str();
}

} // namespace nanohydra
