#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace wildrisk {

class WeatherError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Season { winter = 0, spring = 1, summer = 2, fall = 3 };

constexpr std::array<Season, 4> kSeasons = {Season::winter, Season::spring,
                                            Season::summer, Season::fall};
constexpr std::array<int, 8> kShiftDegrees = {0, 45, 90, 135, 180, 225, 270, 315};

const char* season_name(Season s);

struct WeatherRecord {
    int year = 0;
    int month = 0;
    int day = 0;
    int hour = 0;
    double temperature_c = 0.0;
    double humidity_pct = 0.0;
    double wind_speed_mph = 0.0;
    double wind_dir_deg = 0.0;  // direction the wind blows FROM

    // Sortable calendar key; good enough for strict ordering checks.
    long long time_key() const {
        return ((static_cast<long long>(year) * 100 + month) * 100 + day) * 100 +
               hour;
    }
};

struct WeatherStream {
    std::vector<WeatherRecord> records;
    std::string label;
};

struct ScenarioWeights {
    std::array<double, 4> season_prob{};
    std::array<double, 8> shift_prob{};
    std::array<std::array<double, 8>, 4> weights{};
};

// Scalar conditions the spread kernel consumes, condensed from a stream.
struct BurnConditions {
    double effective_temperature_c = 0.0;
    double effective_humidity_pct = 0.0;
    double effective_wind_speed_mph = 0.0;
    double effective_wind_dir_deg = 0.0;
};

WeatherStream load_weather(const std::string& path);

// DJF / MAM / JJA / SON split. Winter takes December of the prior year
// when the stream has it, otherwise the requested year's December.
std::array<WeatherStream, 4> partition_seasons(const WeatherStream& stream,
                                               int year);

WeatherStream shift_wind(const WeatherStream& stream, int delta_degrees);

ScenarioWeights build_weights(const std::array<double, 4>& season_prob,
                              const std::array<double, 8>& shift_prob);

// Picks the contiguous burn_window-hour slice with maximum mean wind speed
// (earliest on ties): max temperature, min humidity, vector-mean wind.
BurnConditions burn_conditions(const WeatherStream& stream, int burn_window);

}  // namespace wildrisk
