#include "wildrisk/firesim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace wildrisk {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Step {
    int dc;
    int dr;
    double distance_cells;
    double bearing_deg;  // geographic bearing of the step, 0 = north (+row)
};

std::vector<Step> neighborhood_steps(int neighborhood) {
    std::vector<Step> steps;
    auto add = [&steps](int dc, int dr) {
        const double dist = std::hypot(static_cast<double>(dc),
                                       static_cast<double>(dr));
        double bearing = std::atan2(static_cast<double>(dc),
                                    static_cast<double>(dr)) / kDegToRad;
        if (bearing < 0.0) bearing += 360.0;
        steps.push_back({dc, dr, dist, bearing});
    };
    for (int dc = -1; dc <= 1; ++dc) {
        for (int dr = -1; dr <= 1; ++dr) {
            if (dc || dr) add(dc, dr);
        }
    }
    if (neighborhood == 16) {
        add(1, 2); add(2, 1); add(2, -1); add(1, -2);
        add(-1, -2); add(-2, -1); add(-2, 1); add(-1, 2);
    }
    return steps;
}

}  // namespace

const FuelParams& FuelCatalog::at(int code) const {
    auto it = fuels.find(code);
    if (it == fuels.end()) {
        throw FireSimError("unknown fuel code " + std::to_string(code));
    }
    return it->second;
}

std::set<int> FuelCatalog::codes() const {
    std::set<int> out;
    for (const auto& [code, params] : fuels) out.insert(code);
    return out;
}

FuelCatalog FuelCatalog::standard() {
    FuelCatalog c;
    const double ros[13] = {2.0,  1.5,  1.2,  0.9, 0.7, 0.55, 0.4,
                            0.3,  0.22, 0.15, 0.1, 0.07, 0.05};
    const double ext[13] = {0.12, 0.15, 0.25, 0.2, 0.2, 0.25, 0.4,
                            0.3,  0.25, 0.25, 0.25, 0.3, 0.3};
    for (int i = 0; i < 13; ++i) {
        c.fuels[i + 1] = {ros[i], ext[i], true};
    }
    for (int code = 91; code <= 99; ++code) {
        c.fuels[code] = {0.0, 0.25, false};
    }
    return c;
}

void SpreadParams::validate() const {
    if (wind_factor < 0.0 || slope_factor < 0.0) {
        throw FireSimError("wind and slope factors must be nonnegative");
    }
    if (burn_duration_hours <= 0.0) {
        throw FireSimError("burn_duration must be positive");
    }
    if (neighborhood != 8 && neighborhood != 16) {
        throw FireSimError("neighborhood must be 8 or 16");
    }
}

double fuel_moisture(const BurnConditions& conditions,
                     const MoistureCoefficients& coeffs) {
    const double m =
        coeffs.base + coeffs.humidity_gain * conditions.effective_humidity_pct / 100.0 -
        coeffs.temp_drop * std::max(0.0, conditions.effective_temperature_c - 20.0);
    return std::clamp(m, 0.01, 0.35);
}

double directional_ros(const FuelParams& fuel, double slope_deg,
                       double aspect_deg, const BurnConditions& conditions,
                       double moisture, double travel_direction_deg,
                       const SpreadParams& params) {
    if (!fuel.burnable || moisture >= fuel.moisture_extinction) {
        return 0.0;
    }
    const double damp = 1.0 - moisture / fuel.moisture_extinction;
    const double f_m = damp * damp;

    const double head = conditions.effective_wind_dir_deg + 180.0;  // downwind
    const double f_w = 1.0 + params.wind_factor * conditions.effective_wind_speed_mph *
                                 std::max(0.0, std::cos((travel_direction_deg - head) *
                                                        kDegToRad));

    const double upslope = aspect_deg + 180.0;
    const double f_s = 1.0 + params.slope_factor * std::tan(slope_deg * kDegToRad) *
                                 std::max(0.0, std::cos((travel_direction_deg - upslope) *
                                                        kDegToRad));

    return fuel.base_ros_mph * f_m * f_w * f_s;
}

ArrivalTimeMatrix spread(const LandscapeStack& stack, const CellIndex& ignition,
                         const BurnConditions& conditions,
                         const SpreadParams& params,
                         const std::set<CellIndex>& barriers,
                         const FuelCatalog& catalog) {
    params.validate();
    const Raster& grid = stack.grid();
    if (!grid.in_bounds(ignition)) {
        throw FireSimError("ignition cell out of bounds");
    }

    ArrivalTimeMatrix arrival;
    arrival.n_cols = grid.n_cols();
    arrival.n_rows = grid.n_rows();
    arrival.minutes.assign(grid.cell_count(), kUnreached);
    arrival.at(ignition) = 0.0;

    auto passable = [&](const CellIndex& c) {
        if (barriers.count(c)) return false;
        if (stack.fuel_model.is_nodata(c)) return false;
        return catalog.at(static_cast<int>(stack.fuel_model.at(c))).burnable;
    };
    if (!passable(ignition)) {
        return arrival;  // ignition recorded, no spread
    }

    const double moisture = fuel_moisture(conditions, params.moisture);
    const auto steps = neighborhood_steps(params.neighborhood);
    const double cs = grid.cell_size();

    // Directional ROS per cell is reused across edges; precompute per step.
    auto ros_for = [&](const CellIndex& c, double bearing) {
        return directional_ros(
            catalog.at(static_cast<int>(stack.fuel_model.at(c))),
            stack.slope.is_nodata(c) ? 0.0 : stack.slope.at(c),
            stack.aspect.is_nodata(c) ? 0.0 : stack.aspect.at(c), conditions,
            moisture, bearing, params);
    };

    using QueueEntry = std::pair<double, std::size_t>;  // (minutes, cell index)
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> pq;
    auto flat = [&](const CellIndex& c) {
        return static_cast<std::size_t>(c.row) * grid.n_cols() + c.col;
    };
    pq.push({0.0, flat(ignition)});

    std::vector<char> settled(grid.cell_count(), 0);
    while (!pq.empty()) {
        const auto [t, idx] = pq.top();
        pq.pop();
        if (settled[idx]) continue;
        settled[idx] = 1;
        const CellIndex u{static_cast<int>(idx % grid.n_cols()),
                          static_cast<int>(idx / grid.n_cols())};
        for (const auto& step : steps) {
            const CellIndex v{u.col + step.dc, u.row + step.dr};
            if (!grid.in_bounds(v) || !passable(v)) continue;
            const std::size_t vi = flat(v);
            if (settled[vi]) continue;
            const double mean_ros =
                0.5 * (ros_for(u, step.bearing_deg) + ros_for(v, step.bearing_deg));
            if (mean_ros <= 0.0) continue;
            const double edge_minutes = step.distance_cells * cs / mean_ros * 60.0;
            const double cand = t + edge_minutes;
            if (cand < arrival.minutes[vi]) {
                arrival.minutes[vi] = cand;
                pq.push({cand, vi});
            }
        }
    }
    return arrival;
}

int FireStatusMatrix::burned_cell_count() const {
    int n = 0;
    for (unsigned char b : burned) n += b;
    return n;
}

FireStatusMatrix to_fire_status(const ArrivalTimeMatrix& arrival,
                                double burn_duration_hours) {
    FireStatusMatrix status;
    status.n_cols = arrival.n_cols;
    status.n_rows = arrival.n_rows;
    status.burned.resize(arrival.minutes.size());
    const double cutoff = burn_duration_hours * 60.0;
    for (std::size_t i = 0; i < arrival.minutes.size(); ++i) {
        status.burned[i] =
            std::isfinite(arrival.minutes[i]) && arrival.minutes[i] <= cutoff
                ? 1
                : 0;
    }
    return status;
}

}  // namespace wildrisk
