#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "wildrisk/config.hpp"
#include "wildrisk/engine.hpp"
#include "wildrisk/firesim.hpp"
#include "wildrisk/geodata.hpp"

namespace testworld {

inline std::string fixtures_dir() { return WILDRISK_FIXTURES_DIR; }

// Study data the engine must reproduce: season and wind-shift
// probabilities, the published 4x8 damage matrix for line 24 (million
// dollars), and the expected 4x8 weight matrix.
inline const std::array<double, 4> kSeasonProb = {0.10, 0.20, 0.40, 0.30};
inline const std::array<double, 8> kShiftProb = {0.30, 0.15, 0.10, 0.075,
                                                 0.05, 0.075, 0.10, 0.15};
inline const double kLine24MillionUsd[4][8] = {
    {15, 15, 16, 16, 15, 15, 15, 15},
    {58, 57, 56, 56, 58, 58, 58, 58},
    {143, 143, 141, 138, 135, 136, 137, 142},
    {108, 109, 106, 102, 100, 103, 105, 107},
};
inline const double kWeightMatrix[4][8] = {
    {0.03, 0.015, 0.01, 0.0075, 0.005, 0.0075, 0.01, 0.015},
    {0.06, 0.03, 0.02, 0.015, 0.01, 0.015, 0.02, 0.03},
    {0.12, 0.06, 0.04, 0.03, 0.02, 0.03, 0.04, 0.06},
    {0.09, 0.045, 0.03, 0.0225, 0.015, 0.0225, 0.03, 0.045},
};

inline wildrisk::DamageMatrix line24_matrix() {
    wildrisk::DamageMatrix m;
    m.branch_id = 24;
    for (int s = 0; s < 4; ++s) {
        for (int d = 0; d < 8; ++d) {
            m.values[s][d] = kLine24MillionUsd[s][d] * 1e6;
        }
    }
    return m;
}

// Uniform landscape stack for spread tests: flat, single fuel code.
inline wildrisk::LandscapeStack uniform_stack(int n, double cell_size,
                                              int fuel_code = 1) {
    using wildrisk::Raster;
    auto layer = [&](double fill) {
        return Raster::filled(n, n, cell_size, 0.0, 0.0, fill);
    };
    return {layer(100.0), layer(0.0),  layer(0.0), layer(fuel_code),
            layer(10.0),  layer(5.0),  layer(1.0), layer(0.05)};
}

// Random landscape over codes 1..13 plus nonburnable 91, random gentle
// slopes and aspects.
inline wildrisk::LandscapeStack random_stack(std::mt19937& rng, int max_dim) {
    using wildrisk::Raster;
    std::uniform_int_distribution<int> dim(2, max_dim);
    const int n_cols = dim(rng);
    const int n_rows = dim(rng);
    std::uniform_real_distribution<double> slope(0.0, 30.0);
    std::uniform_real_distribution<double> aspect(0.0, 360.0);
    std::uniform_int_distribution<int> fuel_pick(0, 14);
    auto layer = [&](auto gen) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(n_cols) * n_rows);
        for (int i = 0; i < n_cols * n_rows; ++i) v.push_back(gen());
        return Raster(n_cols, n_rows, 0.075, 0.0, 0.0, -9999.0, std::move(v));
    };
    wildrisk::LandscapeStack stack{
        layer([] { return 100.0; }),
        layer([&] { return slope(rng); }),
        layer([&] { return aspect(rng); }),
        layer([&] {
            const int pick = fuel_pick(rng);
            return pick >= 13 ? 91.0 : pick + 1.0;  // ~13% nonburnable
        }),
        layer([] { return 10.0; }),
        layer([] { return 5.0; }),
        layer([] { return 1.0; }),
        layer([] { return 0.05; }),
    };
    return stack;
}

inline wildrisk::BurnConditions random_conditions(std::mt19937& rng) {
    std::uniform_real_distribution<double> temp(-5.0, 40.0);
    std::uniform_real_distribution<double> hum(5.0, 60.0);
    std::uniform_real_distribution<double> speed(0.0, 25.0);
    std::uniform_real_distribution<double> dir(0.0, 360.0);
    return {temp(rng), hum(rng), speed(rng), dir(rng)};
}

// Independent arrival-time oracle: relax every edge of the neighborhood
// graph until nothing changes. Shares only the public per-cell ROS
// formula with the engine, not its shortest-path machinery.
inline wildrisk::ArrivalTimeMatrix spread_oracle(
    const wildrisk::LandscapeStack& stack, const wildrisk::CellIndex& ignition,
    const wildrisk::BurnConditions& conditions,
    const wildrisk::SpreadParams& params,
    const std::set<wildrisk::CellIndex>& barriers = {},
    const wildrisk::FuelCatalog& catalog = wildrisk::FuelCatalog::standard()) {
    using namespace wildrisk;
    const Raster& grid = stack.grid();
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
    if (!passable(ignition)) return arrival;

    const double moisture = fuel_moisture(conditions, params.moisture);
    struct Offset { int dc, dr; };
    std::vector<Offset> offsets;
    for (int dc = -2; dc <= 2; ++dc) {
        for (int dr = -2; dr <= 2; ++dr) {
            const int a = std::abs(dc), b = std::abs(dr);
            if (a + b == 0) continue;
            const bool king = a <= 1 && b <= 1;
            const bool knight = (a == 1 && b == 2) || (a == 2 && b == 1);
            if (king || (params.neighborhood == 16 && knight)) {
                offsets.push_back({dc, dr});
            }
        }
    }

    auto ros_at = [&](const CellIndex& c, double bearing) {
        return directional_ros(
            catalog.at(static_cast<int>(stack.fuel_model.at(c))),
            stack.slope.at(c), stack.aspect.at(c), conditions, moisture,
            bearing, params);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int row = 0; row < grid.n_rows(); ++row) {
            for (int col = 0; col < grid.n_cols(); ++col) {
                const CellIndex u{col, row};
                if (!passable(u) || arrival.at(u) == kUnreached) continue;
                for (const auto& o : offsets) {
                    const CellIndex v{col + o.dc, row + o.dr};
                    if (!grid.in_bounds(v) || !passable(v)) continue;
                    const double dist =
                        std::hypot(static_cast<double>(o.dc),
                                   static_cast<double>(o.dr)) *
                        grid.cell_size();
                    double bearing = std::atan2(static_cast<double>(o.dc),
                                                static_cast<double>(o.dr)) *
                                     180.0 / 3.14159265358979323846;
                    if (bearing < 0.0) bearing += 360.0;
                    const double mean_ros =
                        0.5 * (ros_at(u, bearing) + ros_at(v, bearing));
                    if (mean_ros <= 0.0) continue;
                    const double cand =
                        arrival.at(u) + dist / mean_ros * 60.0;
                    if (cand < arrival.at(v) - 1e-15) {
                        arrival.at(v) = cand;
                        changed = true;
                    }
                }
            }
        }
    }
    return arrival;
}

// A scratch directory under the system temp root, unique per call.
inline std::string make_temp_dir(const std::string& tag) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("wildrisk_" + tag + "_" + std::to_string(::getpid()) +
                      "_" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

// Writes the full tiny-world input set (landscape, grid, weather, config)
// and returns the config path. 3 lines, 10 ignition points, 40x40 cells.
inline std::string write_tiny_world(const std::string& dir) {
    using wildrisk::Raster;
    namespace fs = std::filesystem;
    fs::create_directories(dir + "/landscape");

    const int n = 40;
    const double cs = 0.075;
    auto make = [&](auto gen) {
        std::vector<double> v;
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) v.push_back(gen(col, row));
        }
        return Raster(n, n, cs, 0.0, 0.0, -9999.0, std::move(v));
    };
    auto save = [&](const Raster& r, const char* name) {
        wildrisk::write_ascii_grid(r, dir + "/landscape/" + name + ".asc");
    };
    save(make([](int, int r) { return 100.0 + 5.0 * r; }), "elevation");
    save(make([](int, int r) { return static_cast<double>((r % 5) * 2); }),
         "slope");
    save(make([](int c, int) { return static_cast<double>((c * 37) % 360); }),
         "aspect");
    save(make([](int c, int r) {
             const int pick = (c * 7 + r * 3) % 11;
             return pick >= 9 ? 91.0 : pick + 1.0;
         }),
         "fuel_model");
    save(make([](int, int) { return 20.0; }), "canopy_cover");
    save(make([](int, int) { return 8.0; }), "stand_height");
    save(make([](int, int) { return 1.5; }), "canopy_base_height");
    save(make([](int, int) { return 0.08; }), "canopy_bulk_density");

    {
        std::ofstream g(dir + "/grid.txt");
        g << "[buses]\n"
             "1 0.3 0.5\n2 1.5 0.5\n3 0.5 1.5\n4 1.4 1.5\n5 1.8 0.9\n"
             "6 1.8 1.8\n"
             "[branches]\n"
             "1 1 2 line 1.2 4 0.3,0.5;1.5,0.5\n"
             "2 3 4 line 0.9 3 0.5,1.5;1.4,1.5\n"
             "3 5 6 line 0.9 3 1.8,0.9;1.8,1.8\n"
             "9 1 3 link 0.0\n";
    }
    {
        std::ofstream w(dir + "/weather.csv");
        w << "timestamp,temperature_c,humidity_pct,wind_speed_mph,wind_dir_deg\n";
        const int days_in_month[12] = {31, 28, 31, 30, 31, 30,
                                       31, 31, 30, 31, 30, 31};
        int tick = 0;
        char buf[96];
        for (int month = 1; month <= 12; ++month) {
            for (int day = 1; day <= days_in_month[month - 1]; ++day) {
                for (int hour = 0; hour < 24; hour += 6, ++tick) {
                    const double t =
                        12.0 + 14.0 * std::sin((month - 1) / 12.0 * 6.2832) +
                        3.0 * std::sin(tick * 0.7);
                    const double h =
                        45.0 - 18.0 * std::sin((month - 1) / 12.0 * 6.2832) +
                        8.0 * std::sin(tick * 1.3);
                    const double u = 6.0 + 5.0 * std::sin(tick * 0.31) +
                                     4.0 * std::sin(month * 1.1);
                    const double d =
                        std::fmod(200.0 + 90.0 * std::sin(tick * 0.17), 360.0);
                    std::snprintf(buf, sizeof(buf),
                                  "2022-%02d-%02dT%02d:00,%.3f,%.3f,%.3f,%.3f\n",
                                  month, day, hour, t, h, std::max(0.0, u),
                                  d < 0 ? d + 360.0 : d);
                    w << buf;
                }
            }
        }
    }
    const std::string config_path = dir + "/engine.cfg";
    {
        std::ofstream c(config_path);
        c << "[paths]\n"
             "landscape_dir = landscape\n"
             "grid_file = grid.txt\n"
             "weather_file = weather.csv\n"
             "[scenario]\n"
             "year = 2022\n"
             "tower_spacing_miles = 0.3\n"
             "burn_window_hours = 6\n"
             "[spread]\n"
             "k_w = 0.4\n"
             "k_s = 3.0\n"
             "burn_duration_hours = 0.25\n"
             "neighborhood = 16\n";
    }
    return config_path;
}

}  // namespace testworld
