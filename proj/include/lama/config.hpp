#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lama/io.hpp"
#include "lama/schedules.hpp"

namespace lama {

/// A run description as read from a config file: the schedule parameters
/// plus landmark assignments (data row -> node index). The RNG seed is not
/// part of the file; it arrives per run from the command line.
struct ParsedConfig {
    TrainConfig config;
    std::vector<std::pair<std::size_t, std::size_t>> landmarks;

    bool operator==(const ParsedConfig&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double config_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config key '" + std::string(key) + "': bad number '" +
                                    std::string(value) + "'");
    return out;
}

inline std::size_t config_size(std::string_view key, std::string_view value) {
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config key '" + std::string(key) + "': bad integer '" +
                                    std::string(value) + "'");
    return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> config_landmarks(std::string_view value) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::string_view item : split_csv(value)) {
        item = trim(item);
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument(
                "config key 'landmarks': expected 'row:node' pairs, got '" + std::string(item) +
                "'");
        pairs.emplace_back(config_size("landmarks", trim(item.substr(0, colon))),
                           config_size("landmarks", trim(item.substr(colon + 1))));
    }
    return pairs;
}

}  // namespace detail

/// Parse `key = value` lines ('#' starts a comment). Keys must come from the
/// schedule-parameter vocabulary; unknown keys are rejected by name. The
/// landmark-phase keys may be omitted for plain data-driven runs.
inline ParsedConfig parse_config(std::istream& in) {
    ParsedConfig parsed;
    TrainConfig& cfg = parsed.config;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view view = line;
        if (const std::size_t hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty()) continue;
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config: expected 'key = value', got '" +
                                        std::string(view) + "'");
        const std::string_view key = detail::trim(view.substr(0, eq));
        const std::string_view value = detail::trim(view.substr(eq + 1));

        if (key == "kx") cfg.kx = detail::config_size(key, value);
        else if (key == "ky") cfg.ky = detail::config_size(key, value);
        else if (key == "t_max") cfg.t_max = detail::config_size(key, value);
        else if (key == "a_max") cfg.a_max = detail::config_double(key, value);
        else if (key == "a_min") cfg.a_min = detail::config_double(key, value);
        else if (key == "tau_a") cfg.tau_a = detail::config_double(key, value);
        else if (key == "sigma_max") cfg.sigma_max = detail::config_double(key, value);
        else if (key == "sigma_min") cfg.sigma_min = detail::config_double(key, value);
        else if (key == "tau_sigma") cfg.tau_sigma = detail::config_double(key, value);
        else if (key == "b_max") cfg.b_max = detail::config_double(key, value);
        else if (key == "b_min") cfg.b_min = detail::config_double(key, value);
        else if (key == "tau_b") cfg.tau_b = detail::config_double(key, value);
        else if (key == "t_center") cfg.t_center = detail::config_double(key, value);
        else if (key == "rho_b") cfg.rho_b = detail::config_double(key, value);
        else if (key == "rho_max") cfg.rho_max = detail::config_double(key, value);
        else if (key == "rho_min") cfg.rho_min = detail::config_double(key, value);
        else if (key == "tau_rho") cfg.tau_rho = detail::config_double(key, value);
        else if (key == "p_th") cfg.p_th = detail::config_double(key, value);
        else if (key == "landmarks") parsed.landmarks = detail::config_landmarks(value);
        else
            throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
    }

    cfg.validate();
    for (const auto& [row, node] : parsed.landmarks)
        if (node >= cfg.kx * cfg.ky)
            throw std::invalid_argument("config key 'landmarks': node " + std::to_string(node) +
                                        " outside the " + std::to_string(cfg.kx) + "x" +
                                        std::to_string(cfg.ky) + " grid");
    return parsed;
}

inline ParsedConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

/// Emit a config in the format parse_config reads. Landmark-phase keys are
/// written only when the landmark phase can occur, so plain data-driven
/// configs stay minimal and still round-trip to an equal ParsedConfig.
inline std::string serialize_config(const ParsedConfig& parsed) {
    const TrainConfig& cfg = parsed.config;
    std::ostringstream out;
    out << "kx = " << cfg.kx << '\n';
    out << "ky = " << cfg.ky << '\n';
    out << "t_max = " << cfg.t_max << '\n';
    out << "a_max = " << format_double(cfg.a_max) << '\n';
    out << "a_min = " << format_double(cfg.a_min) << '\n';
    out << "tau_a = " << format_double(cfg.tau_a) << '\n';
    out << "sigma_max = " << format_double(cfg.sigma_max) << '\n';
    out << "sigma_min = " << format_double(cfg.sigma_min) << '\n';
    out << "tau_sigma = " << format_double(cfg.tau_sigma) << '\n';
    if (cfg.p_th > 0.0 || !parsed.landmarks.empty()) {
        out << "b_max = " << format_double(cfg.b_max) << '\n';
        out << "b_min = " << format_double(cfg.b_min) << '\n';
        out << "tau_b = " << format_double(cfg.tau_b) << '\n';
        out << "t_center = " << format_double(cfg.t_center) << '\n';
        out << "rho_b = " << format_double(cfg.rho_b) << '\n';
        out << "rho_max = " << format_double(cfg.rho_max) << '\n';
        out << "rho_min = " << format_double(cfg.rho_min) << '\n';
        out << "tau_rho = " << format_double(cfg.tau_rho) << '\n';
    }
    out << "p_th = " << format_double(cfg.p_th) << '\n';
    if (!parsed.landmarks.empty()) {
        out << "landmarks = ";
        for (std::size_t i = 0; i < parsed.landmarks.size(); ++i) {
            if (i) out << ',';
            out << parsed.landmarks[i].first << ':' << parsed.landmarks[i].second;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace lama
