#include "wildrisk/weather.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace wildrisk {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrap360(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d;
}

}  // namespace

const char* season_name(Season s) {
    switch (s) {
        case Season::winter: return "winter";
        case Season::spring: return "spring";
        case Season::summer: return "summer";
        case Season::fall: return "fall";
    }
    return "?";
}

WeatherStream load_weather(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw WeatherError("cannot open weather file: " + path);
    }
    std::string line;
    if (!std::getline(in, line) ||
        line != "timestamp,temperature_c,humidity_pct,wind_speed_mph,wind_dir_deg") {
        throw WeatherError(path + ": missing or wrong CSV header");
    }
    WeatherStream stream;
    stream.label = "raw";
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        WeatherRecord r;
        char colon;
        std::istringstream ss(line);
        std::string ts;
        if (!std::getline(ss, ts, ',')) {
            throw WeatherError(path + ": malformed row " +
                               std::to_string(line_no));
        }
        int minute = -1;
        if (std::sscanf(ts.c_str(), "%d-%d-%dT%d%c%d", &r.year, &r.month,
                        &r.day, &r.hour, &colon, &minute) != 6 ||
            colon != ':' || minute != 0 || r.month < 1 || r.month > 12 ||
            r.day < 1 || r.day > 31 || r.hour < 0 || r.hour > 23) {
            throw WeatherError(path + ": malformed timestamp '" + ts +
                               "' on row " + std::to_string(line_no));
        }
        std::string field;
        double vals[4];
        for (double& v : vals) {
            if (!std::getline(ss, field, ',')) {
                throw WeatherError(path + ": malformed row " +
                                   std::to_string(line_no));
            }
            try {
                v = std::stod(field);
            } catch (const std::exception&) {
                throw WeatherError(path + ": non-numeric field '" + field +
                                   "' on row " + std::to_string(line_no));
            }
        }
        r.temperature_c = vals[0];
        r.humidity_pct = vals[1];
        r.wind_speed_mph = vals[2];
        r.wind_dir_deg = vals[3];
        if (r.humidity_pct < 0.0 || r.humidity_pct > 100.0) {
            throw WeatherError(path + ": humidity " +
                               std::to_string(r.humidity_pct) +
                               " out of [0, 100] on row " +
                               std::to_string(line_no));
        }
        if (r.wind_speed_mph < 0.0) {
            throw WeatherError(path + ": negative wind speed on row " +
                               std::to_string(line_no));
        }
        if (r.wind_dir_deg < 0.0 || r.wind_dir_deg >= 360.0) {
            throw WeatherError(path + ": wind direction out of [0, 360) on row " +
                               std::to_string(line_no));
        }
        if (!stream.records.empty() &&
            r.time_key() <= stream.records.back().time_key()) {
            throw WeatherError(path + ": timestamps not strictly increasing at row " +
                               std::to_string(line_no));
        }
        stream.records.push_back(r);
    }
    return stream;
}

std::array<WeatherStream, 4> partition_seasons(const WeatherStream& stream,
                                               int year) {
    bool has_prior_december = false;
    for (const auto& r : stream.records) {
        if (r.year == year - 1 && r.month == 12) {
            has_prior_december = true;
            break;
        }
    }
    const int winter_dec_year = has_prior_december ? year - 1 : year;

    std::array<WeatherStream, 4> seasons;
    for (Season s : kSeasons) {
        seasons[static_cast<int>(s)].label = season_name(s);
    }
    for (const auto& r : stream.records) {
        if (r.year == winter_dec_year && r.month == 12) {
            seasons[static_cast<int>(Season::winter)].records.push_back(r);
        } else if (r.year != year) {
            continue;
        } else if (r.month <= 2) {
            seasons[static_cast<int>(Season::winter)].records.push_back(r);
        } else if (r.month <= 5) {
            seasons[static_cast<int>(Season::spring)].records.push_back(r);
        } else if (r.month <= 8) {
            seasons[static_cast<int>(Season::summer)].records.push_back(r);
        } else if (r.month <= 11) {
            seasons[static_cast<int>(Season::fall)].records.push_back(r);
        }
    }
    for (Season s : kSeasons) {
        if (seasons[static_cast<int>(s)].records.empty()) {
            throw WeatherError(std::string("season ") + season_name(s) +
                               " is empty for year " + std::to_string(year));
        }
    }
    return seasons;
}

WeatherStream shift_wind(const WeatherStream& stream, int delta_degrees) {
    if (delta_degrees < 0 || delta_degrees >= 360 || delta_degrees % 45 != 0) {
        throw WeatherError("wind shift must be a multiple of 45 in [0, 360), got " +
                           std::to_string(delta_degrees));
    }
    WeatherStream out = stream;
    for (auto& r : out.records) {
        r.wind_dir_deg = wrap360(r.wind_dir_deg + delta_degrees);
    }
    out.label = stream.label + "+" + std::to_string(delta_degrees);
    return out;
}

ScenarioWeights build_weights(const std::array<double, 4>& season_prob,
                              const std::array<double, 8>& shift_prob) {
    auto check = [](const auto& probs, const char* what) {
        double sum = 0.0;
        for (double p : probs) {
            if (p < 0.0) {
                throw WeatherError(std::string(what) +
                                   " probabilities must be nonnegative");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw WeatherError(std::string(what) + " probabilities sum to " +
                               std::to_string(sum) + ", expected 1");
        }
    };
    check(season_prob, "season");
    check(shift_prob, "shift");

    ScenarioWeights w;
    w.season_prob = season_prob;
    w.shift_prob = shift_prob;
    for (int s = 0; s < 4; ++s) {
        for (int d = 0; d < 8; ++d) {
            w.weights[s][d] = season_prob[s] * shift_prob[d];
        }
    }
    return w;
}

BurnConditions burn_conditions(const WeatherStream& stream, int burn_window) {
    if (burn_window < 1) {
        throw WeatherError("burn_window must be >= 1 hour");
    }
    const auto& rec = stream.records;
    if (rec.size() < static_cast<std::size_t>(burn_window)) {
        throw WeatherError("weather stream shorter than burn window (" +
                           std::to_string(rec.size()) + " < " +
                           std::to_string(burn_window) + ")");
    }

    std::size_t best_start = 0;
    double best_sum = -1.0;
    double window_sum = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        window_sum += rec[i].wind_speed_mph;
        if (i + 1 >= static_cast<std::size_t>(burn_window)) {
            const std::size_t start = i + 1 - burn_window;
            if (start > 0) window_sum -= rec[start - 1].wind_speed_mph;
            if (window_sum > best_sum) {
                best_sum = window_sum;
                best_start = start;
            }
        }
    }

    BurnConditions c;
    c.effective_temperature_c = rec[best_start].temperature_c;
    c.effective_humidity_pct = rec[best_start].humidity_pct;
    double u = 0.0, v = 0.0;
    for (std::size_t i = best_start; i < best_start + burn_window; ++i) {
        c.effective_temperature_c =
            std::max(c.effective_temperature_c, rec[i].temperature_c);
        c.effective_humidity_pct =
            std::min(c.effective_humidity_pct, rec[i].humidity_pct);
        u += rec[i].wind_speed_mph * std::sin(rec[i].wind_dir_deg * kDegToRad);
        v += rec[i].wind_speed_mph * std::cos(rec[i].wind_dir_deg * kDegToRad);
    }
    u /= burn_window;
    v /= burn_window;
    c.effective_wind_speed_mph = std::hypot(u, v);
    c.effective_wind_dir_deg =
        (u == 0.0 && v == 0.0) ? 0.0 : wrap360(std::atan2(u, v) * kRadToDeg);
    return c;
}

}  // namespace wildrisk
