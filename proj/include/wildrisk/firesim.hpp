#pragma once

#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "wildrisk/geodata.hpp"
#include "wildrisk/weather.hpp"

namespace wildrisk {

class FireSimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FuelParams {
    double base_ros_mph = 0.0;       // at reference moisture
    double moisture_extinction = 0.25;  // fraction
    bool burnable = true;
};

struct FuelCatalog {
    std::map<int, FuelParams> fuels;

    bool has(int code) const { return fuels.count(code) != 0; }
    const FuelParams& at(int code) const;
    std::set<int> codes() const;

    // 13 burnable classes (1-13, fast grass down to slow timber litter)
    // plus nonburnable codes 91-99.
    static FuelCatalog standard();
};

struct MoistureCoefficients {
    double base = 0.02;          // a
    double humidity_gain = 0.25; // b, per unit relative humidity
    double temp_drop = 0.001;    // per degC above 20
};

struct SpreadParams {
    double wind_factor = 0.4;   // per mph
    double slope_factor = 3.0;
    MoistureCoefficients moisture;
    double burn_duration_hours = 12.0;
    int neighborhood = 16;      // 8 or 16

    void validate() const;
};

constexpr double kUnreached = std::numeric_limits<double>::infinity();

struct ArrivalTimeMatrix {
    int n_cols = 0;
    int n_rows = 0;
    std::vector<double> minutes;  // row-major, kUnreached where never burned

    double at(const CellIndex& c) const {
        return minutes[static_cast<std::size_t>(c.row) * n_cols + c.col];
    }
    double& at(const CellIndex& c) {
        return minutes[static_cast<std::size_t>(c.row) * n_cols + c.col];
    }
};

struct FireStatusMatrix {
    int n_cols = 0;
    int n_rows = 0;
    std::vector<unsigned char> burned;  // row-major, 0 or 1

    unsigned char at(const CellIndex& c) const {
        return burned[static_cast<std::size_t>(c.row) * n_cols + c.col];
    }
    int burned_cell_count() const;
};

// Dead-fuel moisture fraction from ambient conditions, clamped to
// [0.01, 0.35]: m = a + b*H/100 - c*max(0, T-20).
double fuel_moisture(const BurnConditions& conditions,
                     const MoistureCoefficients& coeffs);

// Rate of spread in the given travel direction (degrees from north):
// base_ros * moisture damping * wind alignment * slope alignment.
// Zero for nonburnable fuel or moisture at/above extinction.
double directional_ros(const FuelParams& fuel, double slope_deg,
                       double aspect_deg, const BurnConditions& conditions,
                       double moisture, double travel_direction_deg,
                       const SpreadParams& params);

// Minimum-travel-time arrival field over the 8- or 16-neighbor raster
// graph. Barrier cells and nonburnable fuel block spread entirely.
ArrivalTimeMatrix spread(const LandscapeStack& stack, const CellIndex& ignition,
                         const BurnConditions& conditions,
                         const SpreadParams& params,
                         const std::set<CellIndex>& barriers = {},
                         const FuelCatalog& catalog = FuelCatalog::standard());

FireStatusMatrix to_fire_status(const ArrivalTimeMatrix& arrival,
                                double burn_duration_hours);

}  // namespace wildrisk
