#include "wildrisk/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace wildrisk {

namespace {

constexpr const char* kResultsHeader =
    "branch_id,span_index,season,shift_deg,burned_acres,third_party_cents,"
    "grid_cents,total_cents";

std::vector<TransmissionLine> lines_by_id(const GridNetwork& network) {
    std::vector<TransmissionLine> lines = network.lines;
    std::sort(lines.begin(), lines.end(),
              [](const TransmissionLine& a, const TransmissionLine& b) {
                  return a.branch_id < b.branch_id;
              });
    return lines;
}

std::string format_row(const ScenarioDamage& d) {
    char acres[40];
    std::snprintf(acres, sizeof(acres), "%.17g", d.burned_acres);
    std::ostringstream row;
    row << d.key.branch_id << ',' << d.key.span_index << ','
        << season_name(d.key.season) << ',' << d.key.shift_degrees() << ','
        << acres << ',' << d.third_party_cents << ',' << d.grid_cents << ','
        << d.total_cents;
    return row.str();
}

Season parse_season(const std::string& name) {
    for (Season s : kSeasons) {
        if (name == season_name(s)) return s;
    }
    throw EngineError("unknown season '" + name + "'");
}

int shift_index_of(int degrees) {
    for (int i = 0; i < 8; ++i) {
        if (kShiftDegrees[i] == degrees) return i;
    }
    throw EngineError("unknown wind shift " + std::to_string(degrees));
}

std::string key_str(const ScenarioKey& k) {
    return "branch " + std::to_string(k.branch_id) + " span " +
           std::to_string(k.span_index) + " " + season_name(k.season) + " " +
           std::to_string(k.shift_degrees()) + "deg";
}

// The 32 per-(season, shift) burn conditions, computed once per run.
std::array<std::array<BurnConditions, 8>, 4> condition_table(
    const EngineInputs& inputs) {
    std::array<std::array<BurnConditions, 8>, 4> table;
    for (int s = 0; s < 4; ++s) {
        for (int d = 0; d < 8; ++d) {
            table[s][d] = burn_conditions(
                shift_wind(inputs.seasons[s], kShiftDegrees[d]),
                inputs.config.burn_window_hours);
        }
    }
    return table;
}

ScenarioDamage evaluate(const EngineInputs& inputs, const ScenarioKey& key,
                        const Point& location, const BurnConditions& conditions) {
    const Raster& raster = inputs.stack.grid();
    const CellIndex ignition = coord_to_cell(raster, location.x, location.y);
    const ArrivalTimeMatrix arrival =
        spread(inputs.stack, ignition, conditions, inputs.config.spread, {},
               inputs.config.catalog);
    const FireStatusMatrix status =
        to_fire_status(arrival, inputs.config.spread.burn_duration_hours);
    return scenario_damage(status, inputs.network, raster, inputs.config.costs,
                           key);
}

}  // namespace

std::vector<ScenarioKey> enumerate_scenarios(const GridNetwork& network,
                                             double tower_spacing) {
    std::vector<ScenarioKey> keys;
    for (const auto& line : lines_by_id(network)) {
        const int k = ignition_count(line, tower_spacing);
        for (int span = 0; span < k; ++span) {
            for (Season season : kSeasons) {
                for (int shift = 0; shift < 8; ++shift) {
                    keys.push_back({line.branch_id, span, season, shift});
                }
            }
        }
    }
    return keys;
}

ScenarioDamage run_scenario(const EngineInputs& inputs, const ScenarioKey& key,
                            const Point& ignition_location) {
    const BurnConditions conditions = burn_conditions(
        shift_wind(inputs.seasons[static_cast<int>(key.season)],
                   key.shift_degrees()),
        inputs.config.burn_window_hours);
    return evaluate(inputs, key, ignition_location, conditions);
}

std::string manifest_digest(const std::string& out_dir) {
    std::ifstream in(out_dir + "/manifest.txt");
    if (!in) {
        throw EngineError("no manifest in " + out_dir);
    }
    std::string word, digest;
    if (!(in >> word >> digest) || word != "digest") {
        throw EngineError("malformed manifest in " + out_dir);
    }
    return digest;
}

std::vector<ScenarioDamage> load_results(const std::string& results_path) {
    std::ifstream in(results_path);
    if (!in) {
        throw EngineError("cannot open results file: " + results_path);
    }
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader) {
        throw EngineError(results_path + ": missing or wrong results header");
    }
    std::vector<ScenarioDamage> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8) {
            throw EngineError(results_path + " row " + std::to_string(line_no) +
                              ": expected 8 fields");
        }
        ScenarioDamage d;
        d.key.branch_id = std::stoi(fields[0]);
        d.key.span_index = std::stoi(fields[1]);
        d.key.season = parse_season(fields[2]);
        d.key.shift_index = shift_index_of(std::stoi(fields[3]));
        d.burned_acres = std::stod(fields[4]);
        d.third_party_cents = std::stoll(fields[5]);
        d.grid_cents = std::stoll(fields[6]);
        d.total_cents = std::stoll(fields[7]);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<ScenarioDamage> run_all(const EngineInputs& inputs,
                                    const std::string& out_dir,
                                    const RunOptions& options) {
    if (options.parallelism < 1) {
        throw EngineError("parallelism must be >= 1");
    }
    std::filesystem::create_directories(out_dir);
    const std::string results_path = out_dir + "/results.csv";
    const std::string manifest_path = out_dir + "/manifest.txt";

    const auto keys =
        enumerate_scenarios(inputs.network, inputs.config.tower_spacing_miles);

    std::vector<ScenarioDamage> done;
    if (options.resume && std::filesystem::exists(manifest_path)) {
        const std::string recorded = manifest_digest(out_dir);
        if (recorded != inputs.digest) {
            throw EngineError("manifest digest " + recorded +
                              " does not match inputs " + inputs.digest +
                              "; inputs changed since checkpoint");
        }
        done = load_results(results_path);
        for (std::size_t i = 0; i < done.size(); ++i) {
            if (i >= keys.size() || !(done[i].key == keys[i])) {
                throw EngineError("checkpointed results are not a prefix of the "
                                  "scenario order");
            }
        }
    } else {
        std::ofstream manifest(manifest_path, std::ios::trunc);
        manifest << "digest " << inputs.digest << "\n"
                 << "results results.csv\n";
        std::ofstream results(results_path, std::ios::trunc);
        results << kResultsHeader << "\n";
    }

    // Ignition locations, keyed like the scenario order.
    std::map<int, std::vector<IgnitionPoint>> points;
    for (const auto& line : inputs.network.lines) {
        points[line.branch_id] =
            generate_ignition_points(line, inputs.config.tower_spacing_miles);
    }
    const auto conditions = condition_table(inputs);

    std::size_t limit = keys.size();
    if (options.stop_after_keys > 0) {
        limit = std::min(limit, options.stop_after_keys);
    }

    std::ofstream results(results_path, std::ios::app);
    std::size_t next = done.size();
    while (next < limit) {
        const std::size_t chunk_end =
            std::min(limit, next + std::max<std::size_t>(1, options.chunk_size));
        std::vector<ScenarioDamage> chunk(chunk_end - next);
        std::mutex err_mutex;
        std::string first_error;
        const int workers = static_cast<int>(
            std::min<std::size_t>(options.parallelism, chunk.size()));
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t i = w; i < chunk.size(); i += workers) {
                    const ScenarioKey& key = keys[next + i];
                    try {
                        const Point loc =
                            points.at(key.branch_id)[key.span_index].location;
                        chunk[i] = evaluate(
                            inputs, key, loc,
                            conditions[static_cast<int>(key.season)]
                                      [key.shift_index]);
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (first_error.empty()) {
                            first_error =
                                "scenario " + key_str(key) + ": " + e.what();
                        }
                        return;
                    }
                }
            });
        }
        for (auto& t : threads) t.join();
        if (!first_error.empty()) {
            throw EngineError(first_error);
        }
        for (const auto& d : chunk) {
            results << format_row(d) << "\n";
        }
        results.flush();
        done.insert(done.end(), chunk.begin(), chunk.end());
        next = chunk_end;
    }
    return done;
}

PriorityList rank_from_matrices(const std::vector<DamageMatrix>& matrices,
                                const ScenarioWeights& weights) {
    std::vector<LineRisk> risks;
    risks.reserve(matrices.size());
    for (const auto& m : matrices) {
        risks.push_back({m.branch_id, weighted_cost(m, weights)});
    }
    return rank(std::move(risks));
}

void write_ranking_csv(const PriorityList& ranking, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw EngineError("cannot write " + path);
    }
    out << "rank,branch_id,weighted_cost_usd\n";
    char buf[40];
    for (const auto& r : ranking) {
        std::snprintf(buf, sizeof(buf), "%.2f", r.weighted_cost_usd);
        out << r.rank << ',' << r.branch_id << ',' << buf << "\n";
    }
}

void write_matrix_csv(const DamageMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw EngineError("cannot write " + path);
    }
    out << "# rows: winter,spring,summer,fall; cols: wind shift "
           "0,45,90,135,180,225,270,315 (usd)\n";
    char buf[40];
    for (int s = 0; s < 4; ++s) {
        for (int d = 0; d < 8; ++d) {
            std::snprintf(buf, sizeof(buf), "%.2f", matrix.values[s][d]);
            out << (d ? "," : "") << buf;
        }
        out << "\n";
    }
}

DamageMatrix read_matrix_csv(const std::string& path, int branch_id) {
    std::ifstream in(path);
    if (!in) {
        throw EngineError("cannot open matrix file: " + path);
    }
    DamageMatrix m;
    m.branch_id = branch_id;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (row >= 4) {
            throw EngineError(path + ": more than 4 data rows");
        }
        std::istringstream ss(line);
        std::string field;
        int col = 0;
        while (std::getline(ss, field, ',')) {
            if (col >= 8) break;
            m.values[row][col++] = std::stod(field);
        }
        if (col != 8) {
            throw EngineError(path + ": row " + std::to_string(row + 1) +
                              " does not have 8 values");
        }
        ++row;
    }
    if (row != 4) {
        throw EngineError(path + ": expected 4 data rows, got " +
                          std::to_string(row));
    }
    return m;
}

namespace {

void write_svg_chart(const PriorityList& ranking, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw EngineError("cannot write " + path);
    }
    const int width = 900, height = 420, margin = 50;
    double max_cost = 1.0;
    for (const auto& r : ranking) max_cost = std::max(max_cost, r.weighted_cost_usd);
    const double plot_w = width - 2.0 * margin;
    const double plot_h = height - 2.0 * margin;
    const double bar_w = plot_w / std::max<std::size_t>(1, ranking.size());

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n"
        << "<text x=\"" << margin << "\" y=\"25\" font-size=\"15\">"
        << "Weighted wildfire damage cost by line (ranked)</text>\n";
    char buf[64];
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& r = ranking[i];
        const double h = plot_h * r.weighted_cost_usd / max_cost;
        const double x = margin + i * bar_w;
        const double y = height - margin - h;
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" "
                      "height=\"%.1f\" fill=\"#c0392b\"/>\n",
                      x + 1.0, y, bar_w - 2.0, h);
        out << buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%d\" font-size=\"9\" "
                      "text-anchor=\"middle\">%d</text>\n",
                      x + bar_w / 2.0, height - margin + 12, r.branch_id);
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace

void report(const std::vector<ScenarioDamage>& damages,
            const EngineInputs& inputs, const std::string& out_dir) {
    const auto keys =
        enumerate_scenarios(inputs.network, inputs.config.tower_spacing_miles);
    std::map<ScenarioKey, const ScenarioDamage*> by_key;
    for (const auto& d : damages) {
        by_key[d.key] = &d;
    }
    std::vector<ScenarioKey> missing;
    for (const auto& k : keys) {
        if (!by_key.count(k)) missing.push_back(k);
    }
    if (!missing.empty()) {
        std::string msg = "incomplete damage set, " +
                          std::to_string(missing.size()) + " keys missing:";
        for (std::size_t i = 0; i < missing.size() && i < 8; ++i) {
            msg += " [" + key_str(missing[i]) + "]";
        }
        if (missing.size() > 8) msg += " ...";
        throw IncompleteResultsError(msg);
    }

    std::filesystem::create_directories(out_dir);

    std::vector<DamageMatrix> matrices;
    for (const auto& line : lines_by_id(inputs.network)) {
        const int k = ignition_count(line, inputs.config.tower_spacing_miles);
        std::vector<ScenarioDamage> line_damages;
        for (const auto& d : damages) {
            if (d.key.branch_id == line.branch_id) line_damages.push_back(d);
        }
        matrices.push_back(per_line_matrix(line_damages, line.branch_id, k));
        write_matrix_csv(matrices.back(), out_dir + "/matrix_" +
                                              std::to_string(line.branch_id) +
                                              ".csv");
    }

    const PriorityList ranking = rank_from_matrices(matrices, inputs.weights);
    write_ranking_csv(ranking, out_dir + "/ranking.csv");
    write_svg_chart(ranking, out_dir + "/chart.svg");

    char buf[40];
    {
        std::ofstream out(out_dir + "/shift_curves.csv", std::ios::trunc);
        out << "shift_deg,branch_id,season_weighted_cost_usd\n";
        for (int d = 0; d < 8; ++d) {
            for (const auto& m : matrices) {
                double cost = 0.0;
                for (int s = 0; s < 4; ++s) {
                    cost += inputs.weights.season_prob[s] * m.values[s][d];
                }
                std::snprintf(buf, sizeof(buf), "%.2f", cost);
                out << kShiftDegrees[d] << ',' << m.branch_id << ',' << buf
                    << "\n";
            }
        }
    }
    {
        std::ofstream out(out_dir + "/season_curves.csv", std::ios::trunc);
        out << "season,branch_id,shift_weighted_cost_usd\n";
        for (Season season : kSeasons) {
            const int s = static_cast<int>(season);
            for (const auto& m : matrices) {
                double cost = 0.0;
                for (int d = 0; d < 8; ++d) {
                    cost += inputs.weights.shift_prob[d] * m.values[s][d];
                }
                std::snprintf(buf, sizeof(buf), "%.2f", cost);
                out << season_name(season) << ',' << m.branch_id << ',' << buf
                    << "\n";
            }
        }
    }
}

}  // namespace wildrisk
