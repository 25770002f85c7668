#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "wildrisk/firesim.hpp"
#include "wildrisk/gridmodel.hpp"
#include "wildrisk/weather.hpp"

namespace wildrisk {

class DamageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioKey {
    int branch_id = 0;
    int span_index = 0;
    Season season = Season::winter;
    int shift_index = 0;  // index into kShiftDegrees

    int shift_degrees() const { return kShiftDegrees[shift_index]; }

    bool operator==(const ScenarioKey&) const = default;
    auto operator<=>(const ScenarioKey&) const = default;
};

struct CostModel {
    double third_party_usd_per_acre = 20000.0;
    double grid_usd_per_mile = 200000.0;

    void validate() const {
        if (third_party_usd_per_acre < 0.0 || grid_usd_per_mile < 0.0) {
            throw DamageError("cost rates must be nonnegative");
        }
    }
};

// Money is carried as integer cents so parallel reductions are exact.
using Cents = std::int64_t;

inline double cents_to_usd(Cents c) { return static_cast<double>(c) / 100.0; }

struct ScenarioDamage {
    ScenarioKey key;
    double burned_acres = 0.0;
    Cents third_party_cents = 0;
    std::map<int, double> burned_miles_by_line;
    Cents grid_cents = 0;
    Cents total_cents = 0;
};

// 4x8 season-by-shift matrix of mean total cost in dollars for one line.
struct DamageMatrix {
    int branch_id = 0;
    std::array<std::array<double, 8>, 4> values{};
};

double burned_acres(const FireStatusMatrix& status, double cell_size);

Cents third_party_cost(double acres, const CostModel& model);

// Burned mileage via proportional cell attribution over the line's
// supercover cells.
double burned_line_miles(const FireStatusMatrix& status,
                         const TransmissionLine& line, const Raster& raster);

ScenarioDamage scenario_damage(const FireStatusMatrix& status,
                               const GridNetwork& network, const Raster& raster,
                               const CostModel& model, const ScenarioKey& key);

// Mean total cost per (season, shift) over the line's ignition points.
// Expects exactly ignition_points records per (season, shift) cell.
DamageMatrix per_line_matrix(const std::vector<ScenarioDamage>& damages,
                             int branch_id, int ignition_points);

}  // namespace wildrisk
