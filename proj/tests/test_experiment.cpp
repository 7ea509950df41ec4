#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lama/experiment.hpp"

namespace fs = std::filesystem;

namespace {

const char* zoo_path() { return LAMA_TEST_DATA_DIR "/zoo.data"; }

fs::path fresh_dir(const char* tag) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() /
                   ("lama-test-" + std::to_string(::getpid()) + "-" + tag + "-" +
                    std::to_string(counter++));
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Small zoo run: big enough to exercise every artifact, fast enough for a
// unit test.
lama::ParsedConfig small_zoo_config() {
    return lama::parse_config(std::string(
        "kx = 4\nky = 4\nt_max = 50\n"
        "a_max = 0.5\na_min = 0.1\ntau_a = 20\n"
        "sigma_max = 2\nsigma_min = 0.3\ntau_sigma = 20\n"
        "b_max = 0.3\nb_min = 0.05\ntau_b = 20\nt_center = 25\nrho_b = 10\n"
        "rho_max = 1.5\nrho_min = 0.4\ntau_rho = 20\n"
        "p_th = 0.2\nlandmarks = 21:0, 58:15\n"));
}

}  // namespace

TEST_CASE("prepare wires zoo preset landmarks to dataset rows") {
    const lama::Preset* preset = lama::find_preset("zoo-lama2");
    REQUIRE(preset != nullptr);
    const lama::ExperimentSetup setup = lama::prepare(*preset, fs::path(zoo_path()), 42);

    CHECK(setup.config.seed == 42);
    CHECK(setup.data.size() == 101);
    REQUIRE(setup.landmarks.size() == 2);
    CHECK(setup.landmark_names == std::vector<std::string>{"duck", "penguin"});
    CHECK(setup.landmarks.labels == std::vector<std::size_t>{303, 321});
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(setup.landmarks.data(0, i) == setup.data.rows(21, i));
        CHECK(setup.landmarks.data(1, i) == setup.data.rows(58, i));
    }
}

TEST_CASE("prepare for zoo requires a data path") {
    const lama::Preset* preset = lama::find_preset("zoo-som");
    REQUIRE(preset != nullptr);
    CHECK_THROWS_WITH(lama::prepare(*preset, std::nullopt, 1),
                      Catch::Matchers::ContainsSubstring("--data"));
}

TEST_CASE("prepare builds the formant experiment in-process") {
    const lama::Preset* preset = lama::find_preset("formant-lama");
    REQUIRE(preset != nullptr);
    const lama::ExperimentSetup setup = lama::prepare(*preset, std::nullopt, 3);

    CHECK(setup.data.size() == 200);
    CHECK(setup.data.dim() == 2);
    REQUIRE(setup.landmarks.size() == 5);
    CHECK(setup.landmark_names == std::vector<std::string>{"a", "i", "u", "e", "o"});
    CHECK(setup.landmarks.labels == std::vector<std::size_t>{94, 0, 4, 41, 49});

    // Landmark vectors are the scaled nominal vowel means.
    const lama::FormantData fd = lama::gen_formant({});
    CHECK(setup.landmarks.data == fd.scaled_means);

    // The training seed must not change the generated dataset.
    const lama::ExperimentSetup other = lama::prepare(*preset, std::nullopt, 4);
    CHECK(other.data.rows == setup.data.rows);
}

TEST_CASE("prepare accepts a parsed config over a zoo-format file") {
    const lama::ParsedConfig parsed = small_zoo_config();
    const lama::ExperimentSetup setup = lama::prepare(parsed, zoo_path(), 7);

    CHECK(setup.config.kx == 4);
    CHECK(setup.config.seed == 7);
    REQUIRE(setup.landmarks.size() == 2);
    CHECK(setup.landmarks.labels == std::vector<std::size_t>{0, 15});
    CHECK(setup.landmark_names == std::vector<std::string>{"duck", "penguin"});

    lama::ParsedConfig out_of_range = parsed;
    out_of_range.landmarks[0].first = 500;
    CHECK_THROWS_AS(lama::prepare(out_of_range, zoo_path(), 7), std::invalid_argument);
}

TEST_CASE("run_train writes the full artifact set") {
    const lama::ExperimentSetup setup = lama::prepare(small_zoo_config(), zoo_path(), 5);
    const fs::path dir = fresh_dir("train");
    const lama::TrainResult result = lama::run_train(setup, dir, /*snapshots=*/true);

    for (const char* name : {"trace.csv", "codebook.csv", "umatrix.csv", "umatrix.svg",
                             "overlay.svg", "pca.csv", "pca.svg"})
        CHECK(fs::exists(dir / name));

    // trace.csv: header plus one line per checkpoint, qel column populated.
    const std::string trace = slurp(dir / "trace.csv");
    CHECK(trace.rfind("step,qed,qel,ste\n", 0) == 0);
    const std::size_t lines = static_cast<std::size_t>(std::count(trace.begin(), trace.end(), '\n'));
    CHECK(lines == result.trace.checkpoints.size() + 1);

    // Snapshots exist for every checkpoint and the final one equals codebook.csv.
    for (const auto& [step, snapshot] : result.trace.snapshots)
        CHECK(fs::exists(dir / ("codebook-" + std::to_string(step) + ".csv")));
    CHECK(slurp(dir / ("codebook-" + std::to_string(setup.config.t_max - 1) + ".csv")) ==
          slurp(dir / "codebook.csv"));

    // The stored codebook parses back to the in-memory result.
    std::istringstream codebook_in(slurp(dir / "codebook.csv"));
    CHECK(lama::read_codebook_csv(codebook_in).weights == result.codebook.weights);

    fs::remove_all(dir);
}

TEST_CASE("run_train without snapshots writes none") {
    const lama::ExperimentSetup setup = lama::prepare(small_zoo_config(), zoo_path(), 5);
    const fs::path dir = fresh_dir("nosnap");
    const lama::TrainResult result = lama::run_train(setup, dir);
    CHECK(result.trace.snapshots.empty());
    CHECK_FALSE(fs::exists(dir / "codebook-0.csv"));
    fs::remove_all(dir);
}

TEST_CASE("a one-run sweep equals a direct training run") {
    const lama::ExperimentSetup setup = lama::prepare(small_zoo_config(), zoo_path(), 1);
    const lama::SweepReport report = lama::run_sweep(setup, 1, 9);

    lama::ExperimentSetup direct = setup;
    direct.config.seed = 9;
    const fs::path dir = fresh_dir("direct");
    const lama::TrainResult result = lama::run_train(direct, dir);
    fs::remove_all(dir);

    REQUIRE(report.seeds == std::vector<std::uint64_t>{9});
    REQUIRE(report.qed.rows() == 1);
    REQUIRE(report.final_codebooks.size() == 1);
    CHECK(report.final_codebooks[0].weights == result.codebook.weights);
    for (std::size_t c = 0; c < report.qed.cols(); ++c) {
        CHECK(report.qed(0, c) == result.trace.checkpoints[c].qed);
        CHECK(report.ste(0, c) == result.trace.checkpoints[c].ste);
        CHECK((*report.qel)(0, c) == result.trace.checkpoints[c].qel.value());
    }
}

TEST_CASE("sweep results do not depend on the number of worker threads") {
    const lama::ExperimentSetup setup = lama::prepare(small_zoo_config(), zoo_path(), 1);
    const lama::SweepReport serial = lama::run_sweep(setup, 4, 100, 1);
    const lama::SweepReport threaded = lama::run_sweep(setup, 4, 100, 3);

    CHECK(serial.seeds == threaded.seeds);
    CHECK(serial.qed == threaded.qed);
    CHECK(serial.ste == threaded.ste);
    CHECK(*serial.qel == *threaded.qel);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(serial.final_codebooks[i].weights == threaded.final_codebooks[i].weights);
}

TEST_CASE("sweep failures are reported per seed") {
    lama::ExperimentSetup broken = lama::prepare(small_zoo_config(), zoo_path(), 1);
    broken.landmarks.labels[0] = 99;  // node outside the 4x4 grid
    CHECK_THROWS_WITH(lama::run_sweep(broken, 2, 5),
                      Catch::Matchers::ContainsSubstring("sweep aborted") &&
                          Catch::Matchers::ContainsSubstring("seed 5") &&
                          Catch::Matchers::ContainsSubstring("seed 6"));

    CHECK_THROWS_AS(lama::run_sweep(broken, 0, 5), std::invalid_argument);
}

TEST_CASE("sweep files follow the documented schemas") {
    const lama::ExperimentSetup setup = lama::prepare(small_zoo_config(), zoo_path(), 1);
    const lama::SweepReport report = lama::run_sweep(setup, 2, 11);
    const fs::path dir = fresh_dir("sweep");
    lama::write_sweep_files(report, dir);

    const std::string means = slurp(dir / "sweep_means.csv");
    CHECK(means.rfind("metric,step,mean\n", 0) == 0);
    CHECK(means.find("\nqed,0,") != std::string::npos);
    CHECK(means.find("\nqel,") != std::string::npos);
    CHECK(means.find("\nste,") != std::string::npos);

    const std::string runs = slurp(dir / "sweep_runs.csv");
    CHECK(runs.rfind("metric,step,seed,value\n", 0) == 0);
    CHECK(runs.find(",11,") != std::string::npos);
    CHECK(runs.find(",12,") != std::string::npos);
    // header + 3 metrics * 2 seeds * checkpoints
    const std::size_t expected = 1 + 3 * 2 * report.checkpoint_steps.size();
    CHECK(static_cast<std::size_t>(std::count(runs.begin(), runs.end(), '\n')) == expected);

    fs::remove_all(dir);
}
