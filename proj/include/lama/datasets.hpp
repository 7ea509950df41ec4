#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lama/matrix.hpp"
#include "lama/model.hpp"
#include "lama/rng.hpp"

namespace lama {

/// Per-dimension affine map onto [0,1], fitted from data. Constant columns
/// cannot be stretched; they map to 0 and are recorded so callers can warn.
struct FeatureScaler {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<std::size_t> constant_columns;

    std::size_t dim() const { return min.size(); }

    static FeatureScaler fit(const Matrix& rows) {
        if (rows.rows() == 0 || rows.cols() == 0)
            throw std::invalid_argument("FeatureScaler::fit: empty input");
        FeatureScaler s;
        s.min.assign(rows.cols(), 0.0);
        s.max.assign(rows.cols(), 0.0);
        for (std::size_t c = 0; c < rows.cols(); ++c) {
            double lo = rows(0, c), hi = rows(0, c);
            for (std::size_t r = 1; r < rows.rows(); ++r) {
                lo = std::min(lo, rows(r, c));
                hi = std::max(hi, rows(r, c));
            }
            s.min[c] = lo;
            s.max[c] = hi;
            if (lo == hi) s.constant_columns.push_back(c);
        }
        return s;
    }

    void transform_row(std::span<const double> in, std::span<double> out) const {
        require_same_dim(in.size(), dim(), "FeatureScaler::transform");
        for (std::size_t c = 0; c < dim(); ++c) {
            const double range = max[c] - min[c];
            out[c] = range > 0.0 ? (in[c] - min[c]) / range : 0.0;
        }
    }

    Matrix transform(const Matrix& rows) const {
        Matrix out(rows.rows(), rows.cols());
        for (std::size_t r = 0; r < rows.rows(); ++r) transform_row(rows.row(r), out.row(r));
        return out;
    }

    Matrix inverse(const Matrix& rows) const {
        require_same_dim(rows.cols(), dim(), "FeatureScaler::inverse");
        Matrix out(rows.rows(), rows.cols());
        for (std::size_t r = 0; r < rows.rows(); ++r)
            for (std::size_t c = 0; c < dim(); ++c)
                out(r, c) = min[c] + rows(r, c) * (max[c] - min[c]);
        return out;
    }
};

namespace detail {

inline double parse_field(std::string_view field, std::size_t row_number) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("zoo parse error at row " + std::to_string(row_number) +
                                    ": non-numeric attribute '" + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace detail

/// Load the UCI Zoo file: name, 16 numeric attributes, type. The type column
/// is dropped; the rest is min-max scaled per column, so the 0/1 attributes
/// pass through unchanged and the legs count maps its observed maximum to 1.
inline Dataset load_zoo(std::istream& in) {
    std::vector<std::string> names;
    std::vector<std::array<double, 16>> raw;
    std::string line;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 18)
            throw std::invalid_argument("zoo parse error at row " + std::to_string(row_number) +
                                        ": expected 18 fields, got " +
                                        std::to_string(fields.size()));
        names.emplace_back(fields[0]);
        std::array<double, 16> attrs{};
        for (std::size_t i = 0; i < 16; ++i)
            attrs[i] = detail::parse_field(fields[i + 1], row_number);
        raw.push_back(attrs);
    }
    if (raw.empty()) throw std::invalid_argument("zoo parse error: no data rows");

    Matrix rows(raw.size(), 16);
    for (std::size_t r = 0; r < raw.size(); ++r)
        for (std::size_t c = 0; c < 16; ++c) rows(r, c) = raw[r][c];
    Dataset dataset{FeatureScaler::fit(rows).transform(rows), std::move(names)};
    dataset.validate();
    return dataset;
}

inline Dataset load_zoo_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open zoo data file: " + path.string());
    return load_zoo(in);
}

/// Synthetic two-formant vowel dataset. Five isotropic Gaussian clusters
/// around the (F1, F2) means of the Japanese vowels.
struct FormantSpec {
    std::size_t samples_per_vowel = 40;
    double spread_f1 = 60.0;   // Hz
    double spread_f2 = 120.0;  // Hz
    std::uint64_t seed = 1;
};

inline constexpr std::array<std::string_view, 5> formant_vowels{"a", "i", "u", "e", "o"};
inline constexpr std::array<std::array<double, 2>, 5> formant_vowel_means{{
    {850.0, 1610.0},  // a
    {240.0, 2400.0},  // i
    {300.0, 1390.0},  // u
    {390.0, 2300.0},  // e
    {360.0, 640.0},   // o
}};

struct FormantData {
    Dataset dataset;      // pooled samples scaled to [0,1]^2, names = vowels
    Matrix raw;           // same samples in Hz
    Matrix scaled_means;  // the five vowel means under the same scaler, row order a,i,u,e,o
    FeatureScaler scaler;
};

namespace detail {
/// One standard-normal pair via Box-Muller, built on Rng::uniform01 so that
/// equal seeds give identical samples on every platform.
inline std::pair<double, double> normal_pair(Rng& rng) {
    const double u1 = 1.0 - rng.uniform01();  // (0,1], keeps the log finite
    const double u2 = rng.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}
}  // namespace detail

inline FormantData gen_formant(const FormantSpec& spec) {
    if (spec.samples_per_vowel == 0)
        throw std::invalid_argument("gen_formant: samples_per_vowel must be positive");
    if (!(spec.spread_f1 > 0.0) || !(spec.spread_f2 > 0.0))
        throw std::invalid_argument("gen_formant: spread must be positive");

    const std::size_t n = formant_vowels.size() * spec.samples_per_vowel;
    Matrix raw(n, 2);
    std::vector<std::string> names;
    names.reserve(n);
    Rng rng(spec.seed);
    std::size_t r = 0;
    for (std::size_t v = 0; v < formant_vowels.size(); ++v) {
        for (std::size_t s = 0; s < spec.samples_per_vowel; ++s, ++r) {
            const auto [z1, z2] = detail::normal_pair(rng);
            raw(r, 0) = formant_vowel_means[v][0] + spec.spread_f1 * z1;
            raw(r, 1) = formant_vowel_means[v][1] + spec.spread_f2 * z2;
            names.emplace_back(formant_vowels[v]);
        }
    }

    FormantData out;
    out.scaler = FeatureScaler::fit(raw);
    out.dataset = Dataset{out.scaler.transform(raw), std::move(names)};
    out.scaled_means = Matrix(formant_vowels.size(), 2);
    for (std::size_t v = 0; v < formant_vowels.size(); ++v) {
        const std::array<double, 2> mean = formant_vowel_means[v];
        out.scaler.transform_row(std::span<const double>(mean.data(), 2), out.scaled_means.row(v));
    }
    out.raw = std::move(raw);
    out.dataset.validate();
    return out;
}

/// The zoo landmark rows used by the presets, as (0-based row, animal name).
/// Loading is order-preserving, so these names guard against a reordered or
/// truncated data file.
inline const std::vector<std::pair<std::size_t, std::string_view>>& zoo_landmark_rows() {
    static const std::vector<std::pair<std::size_t, std::string_view>> rows = {
        {21, "duck"}, {48, "mink"},     {58, "penguin"}, {74, "seal"},
        {75, "sealion"}, {80, "slowworm"}, {89, "toad"},
    };
    return rows;
}

/// Throws unless every landmark row of `zoo_landmark_rows` carries the
/// expected animal name in `dataset`.
inline void verify_zoo_landmarks(const Dataset& dataset) {
    for (const auto& [row, name] : zoo_landmark_rows()) {
        if (row >= dataset.size())
            throw std::runtime_error("zoo dataset too short: expected row " + std::to_string(row) +
                                     " ('" + std::string(name) + "')");
        if (dataset.names[row] != name)
            throw std::runtime_error("zoo dataset row " + std::to_string(row) + " is '" +
                                     dataset.names[row] + "', expected '" + std::string(name) +
                                     "'; row order does not match the UCI distribution");
    }
}

}  // namespace lama
