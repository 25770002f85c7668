#include "wildrisk/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace wildrisk {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& value, std::size_t expect,
                                  const std::string& key) {
    std::istringstream ss(value);
    std::vector<double> out;
    double v;
    while (ss >> v) out.push_back(v);
    if (out.size() != expect) {
        throw ConfigError(key + ": expected " + std::to_string(expect) +
                          " numbers, got " + std::to_string(out.size()));
    }
    return out;
}

}  // namespace

EngineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&base](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    EngineConfig cfg;
    bool custom_fuels = false;
    std::string section;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line =
            trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + " line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "paths.landscape_dir") cfg.landscape_dir = resolve(value);
        else if (qual == "paths.grid_file") cfg.grid_file = resolve(value);
        else if (qual == "paths.weather_file") cfg.weather_file = resolve(value);
        else if (qual == "scenario.year") cfg.year = std::stoi(value);
        else if (qual == "scenario.tower_spacing_miles")
            cfg.tower_spacing_miles = std::stod(value);
        else if (qual == "scenario.burn_window_hours")
            cfg.burn_window_hours = std::stoi(value);
        else if (qual == "spread.k_w") cfg.spread.wind_factor = std::stod(value);
        else if (qual == "spread.k_s") cfg.spread.slope_factor = std::stod(value);
        else if (qual == "spread.burn_duration_hours")
            cfg.spread.burn_duration_hours = std::stod(value);
        else if (qual == "spread.neighborhood")
            cfg.spread.neighborhood = std::stoi(value);
        else if (qual == "spread.moisture_base")
            cfg.spread.moisture.base = std::stod(value);
        else if (qual == "spread.moisture_humidity_gain")
            cfg.spread.moisture.humidity_gain = std::stod(value);
        else if (qual == "spread.moisture_temp_drop")
            cfg.spread.moisture.temp_drop = std::stod(value);
        else if (section == "fuels") {
            // <code> = <base_ros_mph> <moisture_extinction> <burnable 0|1>
            if (!custom_fuels) {
                cfg.catalog.fuels.clear();
                custom_fuels = true;
            }
            const auto nums = parse_numbers(value, 3, qual);
            if (nums[0] <= 0.0 && nums[2] != 0.0) {
                throw ConfigError(qual + ": burnable fuel needs base_ros > 0");
            }
            cfg.catalog.fuels[std::stoi(key)] = {nums[0], nums[1],
                                                 nums[2] != 0.0};
        } else if (qual == "probabilities.season") {
            const auto nums = parse_numbers(value, 4, qual);
            std::copy(nums.begin(), nums.end(), cfg.season_prob.begin());
        } else if (qual == "probabilities.shift") {
            const auto nums = parse_numbers(value, 8, qual);
            std::copy(nums.begin(), nums.end(), cfg.shift_prob.begin());
        } else if (qual == "costs.third_party_usd_per_acre")
            cfg.costs.third_party_usd_per_acre = std::stod(value);
        else if (qual == "costs.grid_usd_per_mile")
            cfg.costs.grid_usd_per_mile = std::stod(value);
        else {
            throw ConfigError(path + " line " + std::to_string(line_no) +
                              ": unknown key '" + qual + "'");
        }
    }
    cfg.spread.validate();
    cfg.costs.validate();
    if (cfg.tower_spacing_miles <= 0.0) {
        throw ConfigError("tower_spacing_miles must be positive");
    }
    return cfg;
}

std::string content_digest(const std::vector<std::string>& file_paths) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64 offset basis
    auto mix = [&h](const char* data, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(data[i]);
            h *= 1099511628211ULL;
        }
    };
    for (const auto& path : file_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw ConfigError("cannot read for digest: " + path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string bytes = buf.str();
        mix(path.c_str(), path.size());
        mix(bytes.data(), bytes.size());
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(h));
    return out;
}

EngineInputs load_inputs(const std::string& config_path) {
    EngineInputs inputs;
    inputs.config = load_config(config_path);
    const auto& cfg = inputs.config;
    if (cfg.landscape_dir.empty() || cfg.grid_file.empty() ||
        cfg.weather_file.empty()) {
        throw ConfigError("config must set paths.landscape_dir, paths.grid_file "
                          "and paths.weather_file");
    }
    inputs.stack = load_landscape(cfg.landscape_dir, cfg.catalog.codes());
    inputs.network = load_grid(cfg.grid_file);
    const WeatherStream year_stream = load_weather(cfg.weather_file);
    inputs.seasons = partition_seasons(year_stream, cfg.year);
    inputs.weights = build_weights(cfg.season_prob, cfg.shift_prob);

    std::vector<std::string> digest_files{config_path, cfg.grid_file,
                                          cfg.weather_file};
    for (const char* layer :
         {"elevation", "slope", "aspect", "fuel_model", "canopy_cover",
          "stand_height", "canopy_base_height", "canopy_bulk_density"}) {
        digest_files.push_back(cfg.landscape_dir + "/" + layer + ".asc");
    }
    inputs.digest = content_digest(digest_files);
    return inputs;
}

}  // namespace wildrisk
