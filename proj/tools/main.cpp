// Command-line front end: train single runs, sweep seeds, export datasets
// and re-rendered visuals, list experiment presets.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lama/lama.hpp"

namespace {

struct Selection {
    std::string preset_name;
    std::string config_path;
    std::string data_path;
    std::uint64_t seed = 1;
    std::uint64_t data_seed = 1;
};

void add_selection_flags(CLI::App* cmd, Selection& sel, bool with_seed) {
    auto* preset = cmd->add_option("--preset", sel.preset_name, "Experiment preset name");
    auto* config = cmd->add_option("--config", sel.config_path, "Config file (key = value lines)");
    preset->excludes(config);
    config->excludes(preset);
    cmd->add_option("--data", sel.data_path, "Zoo-format data file (name + 16 attributes + type)");
    if (with_seed) cmd->add_option("--seed", sel.seed, "Training RNG seed (default 1)");
    cmd->add_option("--data-seed", sel.data_seed,
                    "Formant generator seed, kept apart from the training seed (default 1)");
}

lama::ExperimentSetup resolve(const Selection& sel) {
    if (!sel.preset_name.empty()) {
        const lama::Preset* preset = lama::find_preset(sel.preset_name);
        if (!preset) {
            std::string known;
            for (const lama::Preset& p : lama::presets()) {
                known += known.empty() ? "" : ", ";
                known += p.name;
            }
            throw std::runtime_error("unknown preset '" + sel.preset_name + "' (known: " + known +
                                     ")");
        }
        lama::FormantSpec formant;
        formant.seed = sel.data_seed;
        std::optional<std::filesystem::path> zoo;
        if (!sel.data_path.empty()) zoo = sel.data_path;
        return lama::prepare(*preset, zoo, sel.seed, formant);
    }
    if (!sel.config_path.empty()) {
        std::ifstream in(sel.config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + sel.config_path);
        const lama::ParsedConfig parsed = lama::parse_config(in);
        if (sel.data_path.empty())
            throw std::runtime_error("--config runs need --data <zoo-format file>");
        return lama::prepare(parsed, sel.data_path, sel.seed);
    }
    throw std::runtime_error("pass --preset <name> or --config <file>");
}

int cmd_train(const Selection& sel, const std::string& out_dir, bool snapshots) {
    lama::run_train(resolve(sel), out_dir, snapshots);
    std::cout << "wrote artifacts to " << out_dir << "\n";
    return 0;
}

int cmd_sweep(const Selection& sel, const std::string& out_dir, std::size_t runs,
              std::size_t jobs) {
    const lama::ExperimentSetup setup = resolve(sel);
    const lama::SweepReport report = lama::run_sweep(setup, runs, sel.seed, jobs);
    lama::write_sweep_files(report, out_dir);
    std::cout << "wrote sweep of " << runs << " runs (seeds " << sel.seed << ".."
              << sel.seed + runs - 1 << ") to " << out_dir << "\n";
    return 0;
}

int cmd_export(const Selection& sel, const std::string& out_dir,
               const std::string& codebook_path) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    if (!codebook_path.empty()) {
        // Re-render the visuals for a stored codebook without retraining.
        const lama::ExperimentSetup setup = resolve(sel);
        std::ifstream in(codebook_path);
        if (!in) throw std::runtime_error("cannot open codebook file: " + codebook_path);
        const lama::Codebook codebook = lama::read_codebook_csv(in);
        const lama::NodeGrid grid(setup.config.kx, setup.config.ky);
        if (codebook.nodes() != grid.size() || codebook.dim() != setup.data.dim())
            throw std::runtime_error("codebook shape does not match the selected experiment");

        const lama::UMatrix u = lama::umatrix(codebook, grid);
        lama::write_file(fs::path(out_dir) / "umatrix.csv",
                         [&](std::ostream& out) { lama::write_umatrix_csv(out, u); });
        lama::write_file(fs::path(out_dir) / "umatrix.svg",
                         [&](std::ostream& out) { lama::render_umatrix_svg(out, u); });

        std::vector<std::string> names = setup.data.names;
        std::vector<std::size_t> landmark_nodes;
        for (std::size_t m = 0; m < setup.landmarks.size(); ++m)
            landmark_nodes.push_back(lama::winner(codebook, setup.landmarks.data.row(m)));
        const lama::LabelOverlay overlay =
            lama::label_overlay(lama::project_all(codebook, setup.data), names, landmark_nodes,
                                setup.landmark_names);
        lama::write_file(fs::path(out_dir) / "overlay.svg", [&](std::ostream& out) {
            lama::render_overlay_svg(out, u, overlay);
        });

        const lama::PcaProjection pca = lama::pca_fit_project(codebook, setup.data);
        lama::write_file(fs::path(out_dir) / "pca.csv",
                         [&](std::ostream& out) { lama::write_pca_csv(out, pca); });
        lama::write_file(fs::path(out_dir) / "pca.svg", [&](std::ostream& out) {
            lama::render_pca_svg(out, pca, lama::mesh_edges(grid));
        });
        std::cout << "re-rendered visuals to " << out_dir << "\n";
        return 0;
    }

    // Dataset export: the generated formant samples (raw Hz) or the scaled
    // zoo features, depending on what the selection resolves to.
    if (!sel.preset_name.empty()) {
        const lama::Preset* preset = lama::find_preset(sel.preset_name);
        if (preset && preset->dataset == lama::DatasetKind::formant) {
            lama::FormantSpec spec;
            spec.seed = sel.data_seed;
            const lama::FormantData formant = lama::gen_formant(spec);
            lama::write_file(fs::path(out_dir) / "formant.csv",
                             [&](std::ostream& out) { lama::write_formant_csv(out, formant); });
            std::cout << "wrote formant.csv to " << out_dir << "\n";
            return 0;
        }
    }
    const lama::ExperimentSetup setup = resolve(sel);
    lama::write_file(fs::path(out_dir) / "dataset.csv",
                     [&](std::ostream& out) { lama::write_named_dataset_csv(out, setup.data); });
    std::cout << "wrote dataset.csv to " << out_dir << "\n";
    return 0;
}

int cmd_presets() {
    for (const lama::Preset& p : lama::presets()) {
        std::cout << p.name << "  ("
                  << (p.dataset == lama::DatasetKind::zoo ? "zoo" : "formant") << ", "
                  << p.config.kx << "x" << p.config.ky << ", t_max " << p.config.t_max
                  << ", p_th " << p.config.p_th;
        if (!p.landmarks.empty()) {
            std::cout << ", landmarks ";
            for (std::size_t i = 0; i < p.landmarks.size(); ++i) {
                if (i) std::cout << ',';
                std::cout << p.landmarks[i].first << ':' << p.landmarks[i].second;
            }
        }
        std::cout << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landmark map trainer: SOM-style online learning with landmark guidance"};
    app.require_subcommand(1);

    Selection sel;
    std::string out_dir;
    std::string codebook_path;
    bool snapshots = false;
    std::size_t runs = 20;
    std::size_t jobs = 1;

    CLI::App* train = app.add_subcommand("train", "Train once and write run artifacts");
    add_selection_flags(train, sel, true);
    train->add_option("--out", out_dir, "Output directory")->required();
    train->add_flag("--snapshots", snapshots, "Also write codebook-<step>.csv per checkpoint");

    CLI::App* sweep = app.add_subcommand("sweep", "Train across consecutive seeds, report means");
    add_selection_flags(sweep, sel, true);
    sweep->add_option("--runs", runs, "Number of runs (default 20)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--jobs", jobs, "Worker threads (default 1)")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* export_cmd =
        app.add_subcommand("export", "Write the dataset, or re-render visuals for a codebook");
    add_selection_flags(export_cmd, sel, false);
    export_cmd->add_option("--codebook", codebook_path, "Stored codebook.csv to re-render");
    export_cmd->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* presets_cmd = app.add_subcommand("presets", "List the experiment presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(sel, out_dir, snapshots);
        if (sweep->parsed()) return cmd_sweep(sel, out_dir, runs, jobs);
        if (export_cmd->parsed()) return cmd_export(sel, out_dir, codebook_path);
        if (presets_cmd->parsed()) return cmd_presets();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
