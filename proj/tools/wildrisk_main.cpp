#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wildrisk/engine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitIncomplete = 3;

int cmd_validate(const std::string& config_path) {
    const auto inputs = wildrisk::load_inputs(config_path);
    const auto keys = wildrisk::enumerate_scenarios(
        inputs.network, inputs.config.tower_spacing_miles);
    std::cout << "landscape: " << inputs.stack.grid().n_cols() << " x "
              << inputs.stack.grid().n_rows() << " cells at "
              << inputs.stack.grid().cell_size() << " mi\n"
              << "lines: " << inputs.network.lines.size() << "\n"
              << "links: " << inputs.network.links.size() << "\n"
              << "ignition points: "
              << wildrisk::total_ignition_points(
                     inputs.network, inputs.config.tower_spacing_miles)
              << "\n"
              << "scenarios: " << keys.size() << "\n"
              << "digest: " << inputs.digest << "\n";
    return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int parallelism, bool resume) {
    const auto inputs = wildrisk::load_inputs(config_path);
    wildrisk::RunOptions options;
    options.parallelism = parallelism;
    options.resume = resume;
    const auto damages = wildrisk::run_all(inputs, out_dir, options);
    std::cout << "completed " << damages.size() << " scenarios -> " << out_dir
              << "/results.csv\n";
    return kExitOk;
}

int cmd_report(const std::string& config_path, const std::string& results_dir,
               const std::string& out_dir) {
    const auto inputs = wildrisk::load_inputs(config_path);
    const auto damages = wildrisk::load_results(results_dir + "/results.csv");
    wildrisk::report(damages, inputs, out_dir);
    std::cout << "reports written to " << out_dir << "\n";
    return kExitOk;
}

int cmd_rank(const std::string& config_path, const std::string& matrices_dir,
             const std::string& out_file) {
    const auto cfg = wildrisk::load_config(config_path);
    const auto weights =
        wildrisk::build_weights(cfg.season_prob, cfg.shift_prob);

    std::vector<wildrisk::DamageMatrix> matrices;
    for (const auto& entry :
         std::filesystem::directory_iterator(matrices_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("matrix_", 0) != 0 ||
            entry.path().extension() != ".csv") {
            continue;
        }
        const int branch_id =
            std::stoi(name.substr(7, name.size() - 7 - 4));
        matrices.push_back(
            wildrisk::read_matrix_csv(entry.path().string(), branch_id));
    }
    if (matrices.empty()) {
        std::cerr << "no matrix_<branch>.csv files in " << matrices_dir << "\n";
        return kExitValidation;
    }
    const auto ranking = wildrisk::rank_from_matrices(matrices, weights);
    if (!out_file.empty()) {
        wildrisk::write_ranking_csv(ranking, out_file);
    } else {
        std::cout << "rank,branch_id,weighted_cost_usd\n";
        for (const auto& r : ranking) {
            std::printf("%d,%d,%.2f\n", r.rank, r.branch_id,
                        r.weighted_cost_usd);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-ignited wildfire risk engine"};
    app.require_subcommand(1);

    std::string config_path, out_dir, results_dir, matrices_dir, out_file;
    int parallelism = 1;
    bool resume = false;

    auto* validate = app.add_subcommand("validate", "Load and check all inputs");
    validate->add_option("--config", config_path, "engine config file")
        ->required();

    auto* run = app.add_subcommand("run", "Execute all wildfire scenarios");
    run->add_option("--config", config_path, "engine config file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--parallelism", parallelism, "worker thread count");
    run->add_flag("--resume", resume, "resume from an existing checkpoint");

    auto* report = app.add_subcommand("report", "Emit ranking, matrices, curves");
    report->add_option("--config", config_path, "engine config file")
        ->required();
    report->add_option("--results", results_dir, "directory with results.csv")
        ->required();
    report->add_option("--out", out_dir, "output directory")->required();

    auto* rank = app.add_subcommand(
        "rank", "Collapse existing per-line matrices to a ranking");
    rank->add_option("--matrices", matrices_dir,
                     "directory with matrix_<branch>.csv files")
        ->required();
    rank->add_option("--config", config_path, "engine config file")->required();
    rank->add_option("--out", out_file, "write ranking CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (run->parsed()) return cmd_run(config_path, out_dir, parallelism,
                                          resume);
        if (report->parsed())
            return cmd_report(config_path, results_dir, out_dir);
        if (rank->parsed()) return cmd_rank(config_path, matrices_dir, out_file);
    } catch (const wildrisk::IncompleteResultsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const wildrisk::EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
