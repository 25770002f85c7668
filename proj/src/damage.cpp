#include "wildrisk/damage.hpp"

#include <cmath>

namespace wildrisk {

double burned_acres(const FireStatusMatrix& status, double cell_size) {
    const double area = cell_size * cell_size * 640.0;
    int count = 0;
    for (unsigned char b : status.burned) count += b;
    return count * area;
}

Cents third_party_cost(double acres, const CostModel& model) {
    if (acres < 0.0) {
        throw DamageError("burned acreage cannot be negative");
    }
    return static_cast<Cents>(
        std::llround(acres * model.third_party_usd_per_acre * 100.0));
}

double burned_line_miles(const FireStatusMatrix& status,
                         const TransmissionLine& line, const Raster& raster) {
    if (status.n_cols != raster.n_cols() || status.n_rows != raster.n_rows()) {
        throw DamageError("fire status dimensions do not match raster");
    }
    const auto cells = rasterize_polyline(raster, line.polyline);
    int burned = 0;
    for (const auto& c : cells) {
        burned += status.at(c);
    }
    if (burned == 0) return 0.0;
    return line.length_miles * burned / static_cast<double>(cells.size());
}

ScenarioDamage scenario_damage(const FireStatusMatrix& status,
                               const GridNetwork& network, const Raster& raster,
                               const CostModel& model, const ScenarioKey& key) {
    model.validate();
    if (status.n_cols != raster.n_cols() || status.n_rows != raster.n_rows()) {
        throw DamageError("fire status dimensions do not match raster");
    }
    ScenarioDamage d;
    d.key = key;
    d.burned_acres = burned_acres(status, raster.cell_size());
    d.third_party_cents = third_party_cost(d.burned_acres, model);
    for (const auto& line : network.lines) {
        const double miles = burned_line_miles(status, line, raster);
        if (miles > 0.0) {
            d.burned_miles_by_line[line.branch_id] = miles;
            d.grid_cents += static_cast<Cents>(
                std::llround(miles * model.grid_usd_per_mile * 100.0));
        }
    }
    d.total_cents = d.third_party_cents + d.grid_cents;
    return d;
}

DamageMatrix per_line_matrix(const std::vector<ScenarioDamage>& damages,
                             int branch_id, int ignition_points) {
    if (ignition_points <= 0) {
        throw DamageError("ignition point count must be positive");
    }
    std::array<std::array<Cents, 8>, 4> sums{};
    std::array<std::array<int, 8>, 4> counts{};
    for (const auto& d : damages) {
        if (d.key.branch_id != branch_id) continue;
        sums[static_cast<int>(d.key.season)][d.key.shift_index] += d.total_cents;
        counts[static_cast<int>(d.key.season)][d.key.shift_index] += 1;
    }
    DamageMatrix m;
    m.branch_id = branch_id;
    for (int s = 0; s < 4; ++s) {
        for (int sh = 0; sh < 8; ++sh) {
            if (counts[s][sh] != ignition_points) {
                throw DamageError(
                    "branch " + std::to_string(branch_id) + ": expected " +
                    std::to_string(ignition_points) + " records for " +
                    season_name(static_cast<Season>(s)) + "/" +
                    std::to_string(kShiftDegrees[sh]) + " deg, got " +
                    std::to_string(counts[s][sh]));
            }
            m.values[s][sh] =
                cents_to_usd(sums[s][sh]) / static_cast<double>(ignition_points);
        }
    }
    return m;
}

}  // namespace wildrisk
