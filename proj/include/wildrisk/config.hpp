#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "wildrisk/damage.hpp"
#include "wildrisk/firesim.hpp"
#include "wildrisk/geodata.hpp"
#include "wildrisk/gridmodel.hpp"
#include "wildrisk/weather.hpp"

namespace wildrisk {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineConfig {
    // Paths, resolved relative to the config file's directory.
    std::string landscape_dir;
    std::string grid_file;
    std::string weather_file;

    int year = 2022;
    double tower_spacing_miles = 0.3;
    int burn_window_hours = 12;

    SpreadParams spread;
    FuelCatalog catalog = FuelCatalog::standard();

    std::array<double, 4> season_prob = {0.10, 0.20, 0.40, 0.30};
    std::array<double, 8> shift_prob = {0.30, 0.15, 0.10, 0.075,
                                        0.05, 0.075, 0.10, 0.15};
    CostModel costs;
};

EngineConfig load_config(const std::string& path);

// All validated inputs a run needs, loaded once and shared read-only
// across scenario workers.
struct EngineInputs {
    EngineConfig config;
    LandscapeStack stack;
    GridNetwork network;
    std::array<WeatherStream, 4> seasons;
    ScenarioWeights weights;
    std::string digest;  // content hash of config + input files
};

EngineInputs load_inputs(const std::string& config_path);

// FNV-1a over the concatenated bytes of the named files, hex-encoded.
std::string content_digest(const std::vector<std::string>& file_paths);

}  // namespace wildrisk
