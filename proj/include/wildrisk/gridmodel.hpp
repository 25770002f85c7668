#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wildrisk/geodata.hpp"

namespace wildrisk {

class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TransmissionLine {
    int branch_id = 0;
    int from_bus = 0;
    int to_bus = 0;
    std::vector<Point> polyline;
    double length_miles = 0.0;
    std::optional<int> declared_ignition_count;
};

struct Bus {
    int id = 0;
    Point location;
};

struct GridNetwork {
    std::vector<Bus> buses;
    std::vector<TransmissionLine> lines;
    std::vector<int> links;  // branch ids excluded from ignition

    const TransmissionLine& line_by_id(int branch_id) const;
};

// Candidate fire start within one tower-to-tower span.
struct IgnitionPoint {
    int branch_id = 0;
    int span_index = 0;
    Point location;
};

double polyline_length(const std::vector<Point>& polyline);

// Point at a given arc-length fraction in [0, 1] along the polyline.
Point point_at_fraction(const std::vector<Point>& polyline, double fraction);

GridNetwork load_grid(const std::string& path);

// Declared span count when present, otherwise max(1, round(length/spacing)).
int ignition_count(const TransmissionLine& line, double tower_spacing);

// Midpoints of k equal arc-length spans, k = ignition_count.
std::vector<IgnitionPoint> generate_ignition_points(const TransmissionLine& line,
                                                    double tower_spacing);

int total_ignition_points(const GridNetwork& network, double tower_spacing);

}  // namespace wildrisk
