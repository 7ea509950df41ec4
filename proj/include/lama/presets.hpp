#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lama/schedules.hpp"

namespace lama {

enum class DatasetKind { zoo, formant };

/// A canned experiment: schedule parameters plus landmark assignments.
/// Zoo landmarks name a data row by index ("75"); formant landmarks name a
/// vowel ("a"). Either way the second element is the assigned node.
struct Preset {
    std::string_view name;
    DatasetKind dataset = DatasetKind::zoo;
    TrainConfig config;
    std::vector<std::pair<std::string_view, std::size_t>> landmarks;
};

namespace detail {

inline TrainConfig zoo_base() {
    TrainConfig cfg;
    cfg.kx = 25;
    cfg.ky = 25;
    cfg.t_max = 60000;
    cfg.a_max = 0.5;
    cfg.a_min = 0.15;
    cfg.tau_a = 19999;  // t_max/3 - 1
    cfg.sigma_max = 19;
    cfg.tau_sigma = 19999;
    return cfg;
}

inline void zoo_landmark_phase(TrainConfig& cfg) {
    cfg.b_max = 0.4;
    cfg.tau_b = 19999;
    cfg.t_center = 15000;
    cfg.rho_b = 25000;
    cfg.rho_max = 13;
    cfg.tau_rho = 19999;
}

inline std::vector<Preset> make_presets() {
    std::vector<Preset> out;

    {
        Preset p{"zoo-som", DatasetKind::zoo, zoo_base(), {}};
        p.config.sigma_min = 0.1;
        out.push_back(std::move(p));
    }
    {
        Preset p{"zoo-lama1", DatasetKind::zoo, zoo_base(), {{"75", 312}}};
        p.config.sigma_min = 0.1;
        zoo_landmark_phase(p.config);
        p.config.b_min = 0.01;
        p.config.rho_b = 20000;
        p.config.rho_min = 3;
        p.config.p_th = 0.01;
        out.push_back(std::move(p));
    }
    {
        Preset p{"zoo-lama2", DatasetKind::zoo, zoo_base(), {{"21", 303}, {"58", 321}}};
        p.config.sigma_min = 0.01;
        zoo_landmark_phase(p.config);
        p.config.b_min = 0.075;
        p.config.rho_min = 0.7;
        p.config.p_th = 0.05;
        out.push_back(std::move(p));
    }
    {
        Preset p{"zoo-lama3", DatasetKind::zoo, zoo_base(), {{"48", 37}, {"74", 552}, {"80", 572}}};
        p.config.sigma_min = 0.01;
        zoo_landmark_phase(p.config);
        p.config.b_min = 0.075;
        p.config.rho_min = 1;
        p.config.p_th = 0.07;
        out.push_back(std::move(p));
    }
    {
        Preset p{"zoo-lama4",
                 DatasetKind::zoo,
                 zoo_base(),
                 {{"48", 0}, {"89", 24}, {"74", 600}, {"80", 624}}};
        p.config.sigma_min = 0.01;
        zoo_landmark_phase(p.config);
        p.config.b_min = 0.1;
        p.config.rho_min = 1.5;
        p.config.p_th = 0.09;
        out.push_back(std::move(p));
    }

    {
        Preset p{"formant-som", DatasetKind::formant, {}, {}};
        p.config.kx = 10;
        p.config.ky = 10;
        p.config.t_max = 60000;
        p.config.a_max = 0.3;
        p.config.a_min = 0.1;
        p.config.tau_a = 19999;
        p.config.sigma_max = 4;
        p.config.sigma_min = 0.3;
        p.config.tau_sigma = 19999;
        out.push_back(std::move(p));
    }
    {
        Preset p{"formant-lama",
                 DatasetKind::formant,
                 {},
                 {{"a", 94}, {"i", 0}, {"u", 4}, {"e", 41}, {"o", 49}}};
        p.config.kx = 10;
        p.config.ky = 10;
        p.config.t_max = 60000;
        p.config.a_max = 0.3;
        p.config.a_min = 0.05;
        p.config.tau_a = 19999;
        p.config.sigma_max = 4;
        p.config.sigma_min = 0.4;
        p.config.tau_sigma = 19999;
        p.config.b_max = 0.3;
        p.config.b_min = 0.08;
        p.config.tau_b = 19999;
        p.config.t_center = 30000;
        p.config.rho_b = 15000;
        p.config.rho_max = 2;
        p.config.rho_min = 0.8;
        p.config.tau_rho = 19999;
        p.config.p_th = 0.1;
        out.push_back(std::move(p));
    }

    return out;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = detail::make_presets();
    return all;
}

inline const Preset* find_preset(std::string_view name) {
    for (const Preset& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace lama
