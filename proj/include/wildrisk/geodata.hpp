#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wildrisk {

// Planar study coordinates in miles, lower-left origin.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct CellIndex {
    int col = 0;
    int row = 0;

    bool operator==(const CellIndex&) const = default;
    auto operator<=>(const CellIndex&) const = default;
};

class RasterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Row-major grid of doubles. Row 0 is the bottom (south) row; y grows north.
class Raster {
public:
    Raster() = default;
    Raster(int n_cols, int n_rows, double cell_size, double origin_x,
           double origin_y, double nodata, std::vector<double> values);

    static Raster filled(int n_cols, int n_rows, double cell_size,
                         double origin_x, double origin_y, double fill,
                         double nodata = -9999.0);

    int n_cols() const { return n_cols_; }
    int n_rows() const { return n_rows_; }
    double cell_size() const { return cell_size_; }
    double origin_x() const { return origin_x_; }
    double origin_y() const { return origin_y_; }
    double nodata() const { return nodata_; }
    std::size_t cell_count() const {
        return static_cast<std::size_t>(n_cols_) * n_rows_;
    }

    double at(const CellIndex& c) const {
        return values_[index_of(c)];
    }
    double& at(const CellIndex& c) {
        return values_[index_of(c)];
    }
    bool is_nodata(const CellIndex& c) const { return at(c) == nodata_; }
    bool in_bounds(const CellIndex& c) const {
        return c.col >= 0 && c.col < n_cols_ && c.row >= 0 && c.row < n_rows_;
    }

    double width() const { return n_cols_ * cell_size_; }
    double height() const { return n_rows_ * cell_size_; }
    bool contains_point(const Point& p) const;

    // Center of a cell in study coordinates.
    Point cell_center(const CellIndex& c) const;

    const std::vector<double>& values() const { return values_; }

    bool same_shape(const Raster& other) const;

private:
    std::size_t index_of(const CellIndex& c) const;

    int n_cols_ = 0;
    int n_rows_ = 0;
    double cell_size_ = 1.0;
    double origin_x_ = 0.0;
    double origin_y_ = 0.0;
    double nodata_ = -9999.0;
    std::vector<double> values_;
};

// The eight-layer world the fire burns through. Canopy layers are carried
// as data only; the spread kernel does not model crown fire.
struct LandscapeStack {
    Raster elevation;            // meters
    Raster slope;                // degrees
    Raster aspect;               // degrees from north
    Raster fuel_model;           // integer fuel code
    Raster canopy_cover;         // percent
    Raster stand_height;         // meters
    Raster canopy_base_height;   // meters
    Raster canopy_bulk_density;  // kg/m^3

    const Raster& grid() const { return fuel_model; }
};

// Maps a point to its containing cell. Floor binning; interior upper edges
// belong to the next cell; the extent's top/right boundary belongs to the
// last cell. Throws RasterError when the point is outside the extent.
CellIndex coord_to_cell(const Raster& raster, double x, double y);

double cell_area_acres(const Raster& raster);

// Supercover traversal: every cell whose closed square the polyline passes
// through, corner touches included, deduplicated, in traversal order.
std::vector<CellIndex> rasterize_polyline(const Raster& raster,
                                          const std::vector<Point>& polyline);

// Loads the eight named .asc layers from a directory and validates the
// stack. known_fuel_codes drives the unknown-fuel-code check.
LandscapeStack load_landscape(const std::string& directory_path,
                              const std::set<int>& known_fuel_codes);

// Single-layer ASCII grid reader, exposed for fixtures and tooling.
Raster read_ascii_grid(const std::string& path);
void write_ascii_grid(const Raster& raster, const std::string& path);

}  // namespace wildrisk
