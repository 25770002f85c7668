#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/test_world.hpp"
#include "wildrisk/engine.hpp"

using namespace wildrisk;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const EngineInputs& tiny_inputs() {
    static const EngineInputs inputs = [] {
        const std::string dir = testworld::make_temp_dir("tinyworld");
        return load_inputs(testworld::write_tiny_world(dir));
    }();
    return inputs;
}

}  // namespace

TEST_CASE("enumerate_scenarios ordering and counts") {
    const auto net = load_grid(testworld::fixtures_dir() + "/ieee30.grid");
    const auto keys = enumerate_scenarios(net, 0.3);
    CHECK(keys.size() == 43712);
    // Strict lexicographic order, no duplicates.
    for (std::size_t i = 1; i < keys.size(); ++i) {
        CHECK(keys[i - 1] < keys[i]);
    }

    GridNetwork one;
    TransmissionLine l;
    l.branch_id = 4;
    l.polyline = {{0.0, 0.0}, {0.3, 0.0}};
    l.length_miles = 0.3;
    one.lines.push_back(l);
    CHECK(enumerate_scenarios(one, 0.3).size() == 32);

    one.lines[0].declared_ignition_count = 3;
    CHECK(enumerate_scenarios(one, 0.3).size() == 96);
}

TEST_CASE("tiny world loads with expected shape") {
    const auto& inputs = tiny_inputs();
    CHECK(inputs.network.lines.size() == 3);
    CHECK(inputs.network.links.size() == 1);
    CHECK(total_ignition_points(inputs.network,
                                inputs.config.tower_spacing_miles) == 10);
    const auto keys =
        enumerate_scenarios(inputs.network, inputs.config.tower_spacing_miles);
    CHECK(keys.size() == 320);
}

TEST_CASE("run_all output is identical across parallelism levels") {
    const auto& inputs = tiny_inputs();
    const std::string d1 = testworld::make_temp_dir("run_p1");
    const std::string d8 = testworld::make_temp_dir("run_p8");
    RunOptions o1;
    o1.parallelism = 1;
    RunOptions o8;
    o8.parallelism = 8;
    const auto r1 = run_all(inputs, d1, o1);
    const auto r8 = run_all(inputs, d8, o8);
    CHECK(r1.size() == 320);
    CHECK(slurp(d1 + "/results.csv") == slurp(d8 + "/results.csv"));
    CHECK(slurp(d1 + "/manifest.txt") == slurp(d8 + "/manifest.txt"));
}

TEST_CASE("interrupt and resume reproduce the uninterrupted file") {
    const auto& inputs = tiny_inputs();
    const std::string full_dir = testworld::make_temp_dir("run_full");
    const std::string part_dir = testworld::make_temp_dir("run_part");

    RunOptions full;
    full.parallelism = 4;
    run_all(inputs, full_dir, full);

    RunOptions half = full;
    half.stop_after_keys = 160;
    const auto partial = run_all(inputs, part_dir, half);
    CHECK(partial.size() == 160);

    RunOptions resume = full;
    resume.resume = true;
    const auto resumed = run_all(inputs, part_dir, resume);
    CHECK(resumed.size() == 320);
    CHECK(slurp(part_dir + "/results.csv") == slurp(full_dir + "/results.csv"));
}

TEST_CASE("resume refuses a digest mismatch") {
    const auto& inputs = tiny_inputs();
    const std::string dir = testworld::make_temp_dir("run_digest");
    RunOptions opts;
    opts.stop_after_keys = 32;
    run_all(inputs, dir, opts);

    EngineInputs changed = inputs;
    changed.digest = "0123456789abcdef";
    RunOptions resume;
    resume.resume = true;
    CHECK_THROWS_WITH_AS(run_all(changed, dir, resume),
                         doctest::Contains("digest"), EngineError);
}

TEST_CASE("persisted rows round-trip and match the composition oracle") {
    const auto& inputs = tiny_inputs();
    const std::string dir = testworld::make_temp_dir("run_oracle");
    const auto damages = run_all(inputs, dir, RunOptions{});
    const auto loaded = load_results(dir + "/results.csv");
    REQUIRE(loaded.size() == damages.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].key == damages[i].key);
        CHECK(loaded[i].total_cents == damages[i].total_cents);
        CHECK(loaded[i].third_party_cents == damages[i].third_party_cents);
        CHECK(loaded[i].grid_cents == damages[i].grid_cents);
    }

    // Re-run a sample of scenarios through the single-scenario pipeline.
    const auto keys =
        enumerate_scenarios(inputs.network, inputs.config.tower_spacing_miles);
    for (std::size_t i = 0; i < keys.size(); i += 37) {
        const auto& key = keys[i];
        const auto pts = generate_ignition_points(
            inputs.network.line_by_id(key.branch_id),
            inputs.config.tower_spacing_miles);
        const auto d = run_scenario(inputs, key, pts[key.span_index].location);
        CHECK(d.total_cents == damages[i].total_cents);
        CHECK(d.burned_acres == damages[i].burned_acres);
    }
}

TEST_CASE("report emits ranking, matrices, curves and chart") {
    const auto& inputs = tiny_inputs();
    const std::string run_dir = testworld::make_temp_dir("rep_run");
    const std::string out_dir = testworld::make_temp_dir("rep_out");
    const auto damages = run_all(inputs, run_dir, RunOptions{});
    report(damages, inputs, out_dir);

    const auto ranking = slurp(out_dir + "/ranking.csv");
    CHECK(ranking.rfind("rank,branch_id,weighted_cost_usd\n", 0) == 0);
    CHECK(std::count(ranking.begin(), ranking.end(), '\n') == 4);  // header + 3

    for (int branch : {1, 2, 3}) {
        const auto m = read_matrix_csv(
            out_dir + "/matrix_" + std::to_string(branch) + ".csv", branch);
        CHECK(m.branch_id == branch);
    }
    CHECK(std::filesystem::exists(out_dir + "/shift_curves.csv"));
    CHECK(std::filesystem::exists(out_dir + "/season_curves.csv"));
    const auto svg = slurp(out_dir + "/chart.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '<') > 3);

    SUBCASE("ranking is descending and re-derivable from per-scenario rows") {
        std::vector<DamageMatrix> matrices;
        for (const auto& line : inputs.network.lines) {
            matrices.push_back(per_line_matrix(
                damages, line.branch_id,
                ignition_count(line, inputs.config.tower_spacing_miles)));
        }
        const auto expect = rank_from_matrices(matrices, inputs.weights);
        std::istringstream in(ranking);
        std::string header, row;
        std::getline(in, header);
        for (const auto& r : expect) {
            REQUIRE(std::getline(in, row));
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%d,%d,%.2f", r.rank, r.branch_id,
                          r.weighted_cost_usd);
            CHECK(row == buf);
        }
    }
    SUBCASE("incomplete damage set lists missing keys") {
        auto partial = damages;
        partial.resize(damages.size() - 3);
        CHECK_THROWS_AS(report(partial, inputs, out_dir),
                        IncompleteResultsError);
    }
}

TEST_CASE("matrix CSV round trip preserves cent precision") {
    const std::string dir = testworld::make_temp_dir("matrix_io");
    const auto m = testworld::line24_matrix();
    write_matrix_csv(m, dir + "/matrix_24.csv");
    const auto back = read_matrix_csv(dir + "/matrix_24.csv", 24);
    for (int s = 0; s < 4; ++s) {
        for (int d = 0; d < 8; ++d) {
            CHECK(back.values[s][d] == doctest::Approx(m.values[s][d]));
        }
    }
}

TEST_CASE("rank_from_matrices on injected study matrices") {
    const auto weights =
        build_weights(testworld::kSeasonProb, testworld::kShiftProb);
    auto scaled = [](double factor) {
        auto m = testworld::line24_matrix();
        for (auto& row : m.values) {
            for (auto& v : row) v *= factor;
        }
        return m;
    };
    std::vector<DamageMatrix> matrices;
    auto add = [&](int branch, double factor) {
        auto m = scaled(factor);
        m.branch_id = branch;
        matrices.push_back(m);
    };
    add(24, 1.0);
    add(8, 0.9);
    add(9, 0.8);
    add(7, 0.7);
    add(3, 0.1);
    const auto list = rank_from_matrices(matrices, weights);
    CHECK(list[0].branch_id == 24);
    CHECK(list[1].branch_id == 8);
    CHECK(list[2].branch_id == 9);
    CHECK(list[3].branch_id == 7);
    CHECK(list[0].weighted_cost_usd == doctest::Approx(101.20e6));
}
