#include "wildrisk/geodata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wildrisk {

namespace {

std::string cell_str(const CellIndex& c) {
    return "(col " + std::to_string(c.col) + ", row " + std::to_string(c.row) +
           ")";
}

}  // namespace

Raster::Raster(int n_cols, int n_rows, double cell_size, double origin_x,
               double origin_y, double nodata, std::vector<double> values)
    : n_cols_(n_cols),
      n_rows_(n_rows),
      cell_size_(cell_size),
      origin_x_(origin_x),
      origin_y_(origin_y),
      nodata_(nodata),
      values_(std::move(values)) {
    if (n_cols_ <= 0 || n_rows_ <= 0) {
        throw RasterError("raster dimensions must be positive");
    }
    if (cell_size_ <= 0.0) {
        throw RasterError("cell_size must be positive");
    }
    if (values_.size() != cell_count()) {
        throw RasterError("value count " + std::to_string(values_.size()) +
                          " does not match " + std::to_string(n_cols_) + "x" +
                          std::to_string(n_rows_));
    }
}

Raster Raster::filled(int n_cols, int n_rows, double cell_size, double origin_x,
                      double origin_y, double fill, double nodata) {
    std::vector<double> v(static_cast<std::size_t>(n_cols) * n_rows, fill);
    return Raster(n_cols, n_rows, cell_size, origin_x, origin_y, nodata,
                  std::move(v));
}

std::size_t Raster::index_of(const CellIndex& c) const {
    if (!in_bounds(c)) {
        throw RasterError("cell " + cell_str(c) + " out of bounds");
    }
    return static_cast<std::size_t>(c.row) * n_cols_ + c.col;
}

bool Raster::contains_point(const Point& p) const {
    return p.x >= origin_x_ && p.x <= origin_x_ + width() && p.y >= origin_y_ &&
           p.y <= origin_y_ + height();
}

Point Raster::cell_center(const CellIndex& c) const {
    return {origin_x_ + (c.col + 0.5) * cell_size_,
            origin_y_ + (c.row + 0.5) * cell_size_};
}

bool Raster::same_shape(const Raster& other) const {
    return n_cols_ == other.n_cols_ && n_rows_ == other.n_rows_ &&
           cell_size_ == other.cell_size_ && origin_x_ == other.origin_x_ &&
           origin_y_ == other.origin_y_;
}

CellIndex coord_to_cell(const Raster& raster, double x, double y) {
    if (!raster.contains_point({x, y})) {
        throw RasterError("point (" + std::to_string(x) + ", " +
                          std::to_string(y) + ") outside raster extent");
    }
    int col = static_cast<int>(
        std::floor((x - raster.origin_x()) / raster.cell_size()));
    int row = static_cast<int>(
        std::floor((y - raster.origin_y()) / raster.cell_size()));
    // Top/right boundary of the extent is owned by the last cell.
    col = std::min(col, raster.n_cols() - 1);
    row = std::min(row, raster.n_rows() - 1);
    return {col, row};
}

double cell_area_acres(const Raster& raster) {
    return raster.cell_size() * raster.cell_size() * 640.0;
}

namespace {

// Cells whose closed unit square contains the point, in grid units.
// Up to four when the point sits exactly on an edge or a corner.
void touched_cells(double gx, double gy, int n_cols, int n_rows,
                   std::vector<CellIndex>& out) {
    const double fx = std::floor(gx);
    const double fy = std::floor(gy);
    const bool on_vline = (gx == fx) && gx > 0.0 && gx < n_cols;
    const bool on_hline = (gy == fy) && gy > 0.0 && gy < n_rows;
    const int cx = std::min(static_cast<int>(fx), n_cols - 1);
    const int cy = std::min(static_cast<int>(fy), n_rows - 1);
    out.push_back({cx, cy});
    if (on_vline) out.push_back({cx - 1, cy});
    if (on_hline) out.push_back({cx, cy - 1});
    if (on_vline && on_hline) out.push_back({cx - 1, cy - 1});
}

}  // namespace

std::vector<CellIndex> rasterize_polyline(const Raster& raster,
                                          const std::vector<Point>& polyline) {
    if (polyline.size() < 2) {
        throw RasterError("polyline needs at least 2 vertices");
    }
    for (const auto& p : polyline) {
        if (!raster.contains_point(p)) {
            throw RasterError("polyline vertex (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ") outside raster extent");
        }
    }

    std::vector<CellIndex> result;
    std::set<CellIndex> seen;
    auto emit = [&](const CellIndex& c) {
        if (seen.insert(c).second) result.push_back(c);
    };
    std::vector<CellIndex> scratch;
    auto emit_point = [&](double gx, double gy) {
        scratch.clear();
        touched_cells(gx, gy, raster.n_cols(), raster.n_rows(), scratch);
        for (const auto& c : scratch) emit(c);
    };

    const double cs = raster.cell_size();
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        // Segment endpoints in grid units.
        const double x0 = (polyline[i].x - raster.origin_x()) / cs;
        const double y0 = (polyline[i].y - raster.origin_y()) / cs;
        const double x1 = (polyline[i + 1].x - raster.origin_x()) / cs;
        const double y1 = (polyline[i + 1].y - raster.origin_y()) / cs;
        const double dx = x1 - x0;
        const double dy = y1 - y0;

        emit_point(x0, y0);
        if (dx == 0.0 && dy == 0.0) continue;

        // Parameter values where the segment crosses grid lines.
        std::vector<double> ts{0.0, 1.0};
        auto add_crossings = [&ts](double p0, double d, int n_lines) {
            if (d == 0.0) return;
            const double lo = std::min(p0, p0 + d);
            const double hi = std::max(p0, p0 + d);
            const int k0 = std::max(0, static_cast<int>(std::ceil(lo)));
            const int k1 = std::min(n_lines, static_cast<int>(std::floor(hi)));
            for (int k = k0; k <= k1; ++k) {
                const double t = (k - p0) / d;
                if (t > 0.0 && t < 1.0) ts.push_back(t);
            }
        };
        add_crossings(x0, dx, raster.n_cols());
        add_crossings(y0, dy, raster.n_rows());
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

        // Interval midpoints give the cells the open segment passes through;
        // crossing points themselves pick up edge and corner touches.
        for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
            const double t = ts[j];
            if (t > 0.0) emit_point(x0 + t * dx, y0 + t * dy);
            const double tm = 0.5 * (ts[j] + ts[j + 1]);
            emit_point(x0 + tm * dx, y0 + tm * dy);
        }
        emit_point(x1, y1);
    }
    return result;
}

namespace {

struct AsciiHeader {
    int ncols = 0;
    int nrows = 0;
    double xllcorner = 0.0;
    double yllcorner = 0.0;
    double cellsize = 0.0;
    double nodata_value = -9999.0;
};

AsciiHeader parse_header(std::istream& in, const std::string& path) {
    AsciiHeader h;
    const char* keys[6] = {"ncols",    "nrows",    "xllcorner",
                           "yllcorner", "cellsize", "nodata_value"};
    for (const char* key : keys) {
        std::string line;
        if (!std::getline(in, line)) {
            throw RasterError(path + ": truncated header, expected '" +
                              std::string(key) + "'");
        }
        std::istringstream ls(line);
        std::string k;
        double v;
        if (!(ls >> k >> v) || k != key) {
            throw RasterError(path + ": malformed header line '" + line +
                              "', expected '" + std::string(key) + " <value>'");
        }
        if (k == "ncols") h.ncols = static_cast<int>(v);
        else if (k == "nrows") h.nrows = static_cast<int>(v);
        else if (k == "xllcorner") h.xllcorner = v;
        else if (k == "yllcorner") h.yllcorner = v;
        else if (k == "cellsize") h.cellsize = v;
        else h.nodata_value = v;
    }
    if (h.ncols <= 0 || h.nrows <= 0 || h.cellsize <= 0.0) {
        throw RasterError(path + ": non-positive ncols/nrows/cellsize");
    }
    return h;
}

}  // namespace

Raster read_ascii_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw RasterError("cannot open raster file: " + path);
    }
    const AsciiHeader h = parse_header(in, path);
    const std::size_t n = static_cast<std::size_t>(h.ncols) * h.nrows;
    std::vector<double> values(n);
    // File stores the top row first; internal row 0 is the bottom row.
    for (int file_row = 0; file_row < h.nrows; ++file_row) {
        const int row = h.nrows - 1 - file_row;
        for (int col = 0; col < h.ncols; ++col) {
            double v;
            if (!(in >> v)) {
                throw RasterError(path + ": expected " + std::to_string(n) +
                                  " values, ran out at file row " +
                                  std::to_string(file_row));
            }
            values[static_cast<std::size_t>(row) * h.ncols + col] = v;
        }
    }
    double extra;
    if (in >> extra) {
        throw RasterError(path + ": more values than ncols*nrows");
    }
    return Raster(h.ncols, h.nrows, h.cellsize, h.xllcorner, h.yllcorner,
                  h.nodata_value, std::move(values));
}

void write_ascii_grid(const Raster& raster, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw RasterError("cannot write raster file: " + path);
    }
    out.precision(17);
    out << "ncols " << raster.n_cols() << "\n"
        << "nrows " << raster.n_rows() << "\n"
        << "xllcorner " << raster.origin_x() << "\n"
        << "yllcorner " << raster.origin_y() << "\n"
        << "cellsize " << raster.cell_size() << "\n"
        << "nodata_value " << raster.nodata() << "\n";
    for (int file_row = 0; file_row < raster.n_rows(); ++file_row) {
        const int row = raster.n_rows() - 1 - file_row;
        for (int col = 0; col < raster.n_cols(); ++col) {
            if (col) out << ' ';
            out << raster.at({col, row});
        }
        out << "\n";
    }
}

LandscapeStack load_landscape(const std::string& directory_path,
                              const std::set<int>& known_fuel_codes) {
    auto layer = [&](const char* name) {
        return read_ascii_grid(directory_path + "/" + name + ".asc");
    };
    LandscapeStack stack{
        layer("elevation"),          layer("slope"),
        layer("aspect"),             layer("fuel_model"),
        layer("canopy_cover"),       layer("stand_height"),
        layer("canopy_base_height"), layer("canopy_bulk_density"),
    };

    const Raster* layers[8] = {
        &stack.elevation,     &stack.slope,          &stack.aspect,
        &stack.fuel_model,    &stack.canopy_cover,   &stack.stand_height,
        &stack.canopy_base_height, &stack.canopy_bulk_density};
    const char* names[8] = {"elevation",    "slope",        "aspect",
                            "fuel_model",   "canopy_cover", "stand_height",
                            "canopy_base_height", "canopy_bulk_density"};
    for (int i = 1; i < 8; ++i) {
        if (!layers[0]->same_shape(*layers[i])) {
            throw RasterError(std::string("header mismatch: ") + names[i] +
                              " does not match elevation");
        }
    }

    for (int row = 0; row < stack.grid().n_rows(); ++row) {
        for (int col = 0; col < stack.grid().n_cols(); ++col) {
            const CellIndex c{col, row};
            if (!stack.slope.is_nodata(c)) {
                const double s = stack.slope.at(c);
                if (s < 0.0 || s >= 90.0) {
                    throw RasterError("slope " + std::to_string(s) +
                                      " out of [0, 90) at " + cell_str(c));
                }
            }
            if (!stack.aspect.is_nodata(c)) {
                const double a = stack.aspect.at(c);
                if (a < 0.0 || a >= 360.0) {
                    throw RasterError("aspect " + std::to_string(a) +
                                      " out of [0, 360) at " + cell_str(c));
                }
            }
            if (!stack.fuel_model.is_nodata(c)) {
                const int code = static_cast<int>(stack.fuel_model.at(c));
                if (!known_fuel_codes.count(code)) {
                    throw RasterError("unknown fuel code " +
                                      std::to_string(code) + " at " +
                                      cell_str(c));
                }
            }
        }
    }
    return stack;
}

}  // namespace wildrisk
