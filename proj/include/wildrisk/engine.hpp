#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wildrisk/config.hpp"
#include "wildrisk/damage.hpp"
#include "wildrisk/prioritize.hpp"

namespace wildrisk {

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by report() when per-scenario results do not cover the key space.
class IncompleteResultsError : public EngineError {
public:
    using EngineError::EngineError;
};

// Lexicographic (branch_id, span_index, season, shift) order; length is
// total ignition points times 32.
std::vector<ScenarioKey> enumerate_scenarios(const GridNetwork& network,
                                             double tower_spacing);

struct RunOptions {
    int parallelism = 1;
    bool resume = false;
    std::size_t chunk_size = 64;  // keys per checkpointed batch
    // Stop after this many keys are persisted (0 = run to completion).
    // Exists so tests can exercise the interrupt/resume path.
    std::size_t stop_after_keys = 0;
};

// Runs every scenario, persisting one CSV row per key in key order to
// <out_dir>/results.csv with a manifest guarding the config digest.
// Output is byte-identical for any parallelism level and across an
// interrupt/resume cycle.
std::vector<ScenarioDamage> run_all(const EngineInputs& inputs,
                                    const std::string& out_dir,
                                    const RunOptions& options);

std::vector<ScenarioDamage> load_results(const std::string& results_path);

std::string manifest_digest(const std::string& out_dir);

// Single-scenario pipeline: shift wind, condense conditions, spread,
// threshold, price. Exposed so tests can cross-check run_all composition.
ScenarioDamage run_scenario(const EngineInputs& inputs, const ScenarioKey& key,
                            const Point& ignition_location);

// Emits ranking.csv, matrix_<branch>.csv per line, shift_curves.csv,
// season_curves.csv and chart.svg into out_dir.
void report(const std::vector<ScenarioDamage>& damages,
            const EngineInputs& inputs, const std::string& out_dir);

// Per-line weighted expected costs from per-line matrices.
PriorityList rank_from_matrices(const std::vector<DamageMatrix>& matrices,
                                const ScenarioWeights& weights);

void write_ranking_csv(const PriorityList& ranking, const std::string& path);
DamageMatrix read_matrix_csv(const std::string& path, int branch_id);
void write_matrix_csv(const DamageMatrix& matrix, const std::string& path);

}  // namespace wildrisk
