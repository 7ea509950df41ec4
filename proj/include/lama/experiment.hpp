#pragma once

#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lama/config.hpp"
#include "lama/datasets.hpp"
#include "lama/io.hpp"
#include "lama/model.hpp"
#include "lama/pca.hpp"
#include "lama/presets.hpp"
#include "lama/svg.hpp"
#include "lama/trainer.hpp"
#include "lama/viz.hpp"

namespace lama {

/// Everything a run needs: the data, the landmark assignments (possibly
/// empty), and a validated config. The RNG seed lives in the config.
struct ExperimentSetup {
    Dataset data;
    LandmarkSet landmarks;
    std::vector<std::string> landmark_names;
    TrainConfig config;
};

namespace detail {

inline std::size_t vowel_index(std::string_view vowel) {
    for (std::size_t v = 0; v < formant_vowels.size(); ++v)
        if (formant_vowels[v] == vowel) return v;
    throw std::invalid_argument("unknown vowel '" + std::string(vowel) + "'");
}

inline std::size_t zoo_row_index(std::string_view text) {
    std::size_t row = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), row);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad zoo landmark row '" + std::string(text) + "'");
    return row;
}

inline LandmarkSet landmarks_from_rows(const Dataset& data,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    LandmarkSet set;
    set.data = Matrix(pairs.size(), data.dim());
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        const auto [row, node] = pairs[m];
        if (row >= data.size())
            throw std::invalid_argument("landmark row " + std::to_string(row) +
                                        " outside dataset of " + std::to_string(data.size()) +
                                        " rows");
        std::span<const double> src = data.rows.row(row);
        std::span<double> dst = set.data.row(m);
        for (std::size_t c = 0; c < data.dim(); ++c) dst[c] = src[c];
        set.labels.push_back(node);
    }
    return set;
}

}  // namespace detail

/// Instantiate a preset: load (zoo) or generate (formant) the dataset,
/// resolve the landmark assignments, and stamp the run seed. Zoo landmark
/// rows are cross-checked against the expected animal names.
inline ExperimentSetup prepare(const Preset& preset,
                               const std::optional<std::filesystem::path>& zoo_path,
                               std::uint64_t seed, const FormantSpec& formant_spec = {}) {
    ExperimentSetup setup;
    setup.config = preset.config;
    setup.config.seed = seed;

    if (preset.dataset == DatasetKind::zoo) {
        if (!zoo_path)
            throw std::runtime_error(
                "this preset needs the zoo data file; pass --data <path> "
                "(see the README for the download instruction)");
        setup.data = load_zoo_file(*zoo_path);
        verify_zoo_landmarks(setup.data);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& [row_text, node] : preset.landmarks) {
            pairs.emplace_back(detail::zoo_row_index(row_text), node);
            setup.landmark_names.push_back(setup.data.names[pairs.back().first]);
        }
        setup.landmarks = detail::landmarks_from_rows(setup.data, pairs);
    } else {
        FormantData formant = gen_formant(formant_spec);
        setup.data = std::move(formant.dataset);
        setup.landmarks.data = Matrix(preset.landmarks.size(), 2);
        for (std::size_t m = 0; m < preset.landmarks.size(); ++m) {
            const auto& [vowel, node] = preset.landmarks[m];
            const std::size_t v = detail::vowel_index(vowel);
            setup.landmarks.data(m, 0) = formant.scaled_means(v, 0);
            setup.landmarks.data(m, 1) = formant.scaled_means(v, 1);
            setup.landmarks.labels.push_back(node);
            setup.landmark_names.emplace_back(vowel);
        }
    }

    setup.data.validate();
    setup.landmarks.validate(setup.config.kx * setup.config.ky, setup.data.dim());
    return setup;
}

/// Instantiate a config-file run over a zoo-format data file. Landmark pairs
/// are data-row:node, taken verbatim (no name check — the rows are whatever
/// the caller's file holds).
inline ExperimentSetup prepare(const ParsedConfig& parsed, const std::filesystem::path& data_path,
                               std::uint64_t seed) {
    ExperimentSetup setup;
    setup.config = parsed.config;
    setup.config.seed = seed;
    setup.data = load_zoo_file(data_path);
    setup.landmarks = detail::landmarks_from_rows(setup.data, parsed.landmarks);
    for (const auto& [row, node] : parsed.landmarks)
        setup.landmark_names.push_back(setup.data.names[row]);
    setup.landmarks.validate(setup.config.kx * setup.config.ky, setup.data.dim());
    return setup;
}

/// Train once and write the artifact set: trace.csv, codebook.csv,
/// umatrix.csv, umatrix.svg, overlay.svg, pca.csv, pca.svg (plus
/// codebook-<step>.csv snapshots when requested).
inline TrainResult run_train(const ExperimentSetup& setup, const std::filesystem::path& out_dir,
                             bool snapshots = false) {
    std::filesystem::create_directories(out_dir);
    const NodeGrid grid(setup.config.kx, setup.config.ky);

    TrainOptions options;
    options.record_snapshots = snapshots;
    TrainResult result = train(setup.data, setup.landmarks, setup.config, grid, options);

    write_file(out_dir / "trace.csv",
               [&](std::ostream& out) { write_trace_csv(out, result.trace.checkpoints); });
    write_file(out_dir / "codebook.csv",
               [&](std::ostream& out) { write_codebook_csv(out, result.codebook); });

    const UMatrix u = umatrix(result.codebook, grid);
    write_file(out_dir / "umatrix.csv", [&](std::ostream& out) { write_umatrix_csv(out, u); });
    write_file(out_dir / "umatrix.svg", [&](std::ostream& out) { render_umatrix_svg(out, u); });

    std::vector<std::string> names;
    if (setup.data.has_names()) {
        names = setup.data.names;
    } else {
        for (std::size_t r = 0; r < setup.data.size(); ++r) names.push_back(std::to_string(r));
    }
    std::vector<std::size_t> landmark_nodes;
    for (std::size_t m = 0; m < setup.landmarks.size(); ++m)
        landmark_nodes.push_back(winner(result.codebook, setup.landmarks.data.row(m)));
    const LabelOverlay overlay = label_overlay(project_all(result.codebook, setup.data), names,
                                               landmark_nodes, setup.landmark_names);
    write_file(out_dir / "overlay.svg",
               [&](std::ostream& out) { render_overlay_svg(out, u, overlay); });

    const PcaProjection pca = pca_fit_project(result.codebook, setup.data);
    write_file(out_dir / "pca.csv", [&](std::ostream& out) { write_pca_csv(out, pca); });
    write_file(out_dir / "pca.svg",
               [&](std::ostream& out) { render_pca_svg(out, pca, mesh_edges(grid)); });

    for (const auto& [step, codebook] : result.trace.snapshots)
        write_file(out_dir / ("codebook-" + std::to_string(step) + ".csv"),
                   [&, &cb = codebook](std::ostream& out) { write_codebook_csv(out, cb); });

    return result;
}

/// Multi-seed sweep results. Metric matrices are runs x checkpoints, row i
/// belonging to seeds[i]; means are taken column-wise in seed order.
struct SweepReport {
    std::vector<std::uint64_t> seeds;
    std::vector<std::size_t> checkpoint_steps;
    Matrix qed;
    Matrix ste;
    std::optional<Matrix> qel;
    std::vector<Codebook> final_codebooks;

    std::vector<double> mean(const Matrix& per_run) const {
        std::vector<double> out(per_run.cols(), 0.0);
        for (std::size_t r = 0; r < per_run.rows(); ++r)
            for (std::size_t c = 0; c < per_run.cols(); ++c) out[c] += per_run(r, c);
        for (double& v : out) v /= static_cast<double>(per_run.rows());
        return out;
    }
};

/// Run `runs` independent trainings with seeds base_seed, base_seed+1, ...
/// Runs may execute on up to `jobs` threads; aggregation happens after all
/// workers finish and depends only on seed order, never on schedule order.
/// Any failed run aborts the sweep with a report naming the failed seeds.
inline SweepReport run_sweep(const ExperimentSetup& setup, std::size_t runs,
                             std::uint64_t base_seed, std::size_t jobs = 1) {
    if (runs == 0) throw std::invalid_argument("run_sweep: runs must be positive");
    if (jobs == 0) jobs = 1;

    const NodeGrid grid(setup.config.kx, setup.config.ky);
    std::vector<TrainResult> results(runs);
    std::vector<std::string> errors(runs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= runs) return;
            try {
                TrainConfig cfg = setup.config;
                cfg.seed = base_seed + i;
                results[i] = train(setup.data, setup.landmarks, cfg, grid);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < std::min(jobs, runs); ++j) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::string failed;
    std::size_t completed = 0;
    for (std::size_t i = 0; i < runs; ++i) {
        if (errors[i].empty()) {
            ++completed;
        } else {
            failed += "\n  seed " + std::to_string(base_seed + i) + ": " + errors[i];
        }
    }
    if (!failed.empty())
        throw std::runtime_error("sweep aborted: " + std::to_string(completed) + "/" +
                                 std::to_string(runs) + " runs completed; failures:" + failed);

    SweepReport report;
    const std::size_t n_cp = results[0].trace.checkpoints.size();
    report.checkpoint_steps.reserve(n_cp);
    for (const TraceCheckpoint& cp : results[0].trace.checkpoints)
        report.checkpoint_steps.push_back(cp.step);
    report.qed = Matrix(runs, n_cp);
    report.ste = Matrix(runs, n_cp);
    if (setup.landmarks.size() > 0) report.qel = Matrix(runs, n_cp);
    for (std::size_t i = 0; i < runs; ++i) {
        report.seeds.push_back(base_seed + i);
        for (std::size_t c = 0; c < n_cp; ++c) {
            const TraceCheckpoint& cp = results[i].trace.checkpoints[c];
            report.qed(i, c) = cp.qed;
            report.ste(i, c) = cp.ste;
            if (report.qel) (*report.qel)(i, c) = cp.qel.value();
        }
        report.final_codebooks.push_back(std::move(results[i].codebook));
    }
    return report;
}

/// sweep_means.csv: metric,step,mean (the plot data for the error curves).
/// sweep_runs.csv: metric,step,seed,value (every underlying point).
inline void write_sweep_files(const SweepReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir / "sweep_means.csv", [&](std::ostream& out) {
        out << "metric,step,mean\n";
        const auto block = [&](const char* metric, const Matrix& per_run) {
            const std::vector<double> means = report.mean(per_run);
            for (std::size_t c = 0; c < means.size(); ++c)
                out << metric << ',' << report.checkpoint_steps[c] << ','
                    << format_double(means[c]) << '\n';
        };
        block("qed", report.qed);
        if (report.qel) block("qel", *report.qel);
        block("ste", report.ste);
    });
    write_file(out_dir / "sweep_runs.csv", [&](std::ostream& out) {
        out << "metric,step,seed,value\n";
        const auto block = [&](const char* metric, const Matrix& per_run) {
            for (std::size_t r = 0; r < per_run.rows(); ++r)
                for (std::size_t c = 0; c < per_run.cols(); ++c)
                    out << metric << ',' << report.checkpoint_steps[c] << ',' << report.seeds[r]
                        << ',' << format_double(per_run(r, c)) << '\n';
        };
        block("qed", report.qed);
        if (report.qel) block("qel", *report.qel);
        block("ste", report.ste);
    });
}

}  // namespace lama
