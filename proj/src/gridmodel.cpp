#include "wildrisk/gridmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wildrisk {

namespace {

constexpr double kLengthTolerance = 0.005;  // relative

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::vector<Point> parse_polyline(const std::string& field, int line_no) {
    std::vector<Point> pts;
    std::istringstream ss(field);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        const auto comma = pair.find(',');
        if (comma == std::string::npos) {
            throw GridError("line " + std::to_string(line_no) +
                            ": bad polyline pair '" + pair + "'");
        }
        pts.push_back({std::stod(pair.substr(0, comma)),
                       std::stod(pair.substr(comma + 1))});
    }
    return pts;
}

}  // namespace

const TransmissionLine& GridNetwork::line_by_id(int branch_id) const {
    for (const auto& l : lines) {
        if (l.branch_id == branch_id) return l;
    }
    throw GridError("no line with branch id " + std::to_string(branch_id));
}

double polyline_length(const std::vector<Point>& polyline) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        len += std::hypot(polyline[i + 1].x - polyline[i].x,
                          polyline[i + 1].y - polyline[i].y);
    }
    return len;
}

Point point_at_fraction(const std::vector<Point>& polyline, double fraction) {
    if (polyline.size() < 2) {
        throw GridError("polyline needs at least 2 vertices");
    }
    const double total = polyline_length(polyline);
    double target = std::clamp(fraction, 0.0, 1.0) * total;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const double seg = std::hypot(polyline[i + 1].x - polyline[i].x,
                                      polyline[i + 1].y - polyline[i].y);
        if (target <= seg || i + 2 == polyline.size()) {
            const double t = seg > 0.0 ? target / seg : 0.0;
            return {polyline[i].x + t * (polyline[i + 1].x - polyline[i].x),
                    polyline[i].y + t * (polyline[i + 1].y - polyline[i].y)};
        }
        target -= seg;
    }
    return polyline.back();
}

GridNetwork load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw GridError("cannot open grid file: " + path);
    }

    GridNetwork net;
    std::set<int> seen_ids;
    enum class Section { none, buses, branches } section = Section::none;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "[buses]") {
            section = Section::buses;
            continue;
        }
        if (toks[0] == "[branches]") {
            section = Section::branches;
            continue;
        }
        if (section == Section::buses) {
            if (toks.size() != 3) {
                throw GridError("line " + std::to_string(line_no) +
                                ": bus row needs 'id x y'");
            }
            net.buses.push_back(
                {std::stoi(toks[0]), {std::stod(toks[1]), std::stod(toks[2])}});
            continue;
        }
        if (section != Section::branches) {
            throw GridError("line " + std::to_string(line_no) +
                            ": data before any section header");
        }

        // branch_id from_bus to_bus kind length_miles [ignition_points] [polyline]
        if (toks.size() < 5) {
            throw GridError("line " + std::to_string(line_no) +
                            ": branch row needs at least 5 fields");
        }
        const int branch_id = std::stoi(toks[0]);
        if (!seen_ids.insert(branch_id).second) {
            throw GridError("duplicate branch id " + std::to_string(branch_id));
        }
        const std::string& kind = toks[3];
        if (kind == "link") {
            net.links.push_back(branch_id);
            continue;
        }
        if (kind != "line") {
            throw GridError("line " + std::to_string(line_no) +
                            ": branch kind must be line or link, got '" + kind +
                            "'");
        }
        TransmissionLine tl;
        tl.branch_id = branch_id;
        tl.from_bus = std::stoi(toks[1]);
        tl.to_bus = std::stoi(toks[2]);
        tl.length_miles = std::stod(toks[4]);
        for (std::size_t i = 5; i < toks.size(); ++i) {
            if (toks[i].find(',') != std::string::npos) {
                tl.polyline = parse_polyline(toks[i], line_no);
            } else {
                tl.declared_ignition_count = std::stoi(toks[i]);
            }
        }
        if (tl.polyline.empty()) {
            auto bus = [&](int id) -> const Bus& {
                for (const auto& b : net.buses) {
                    if (b.id == id) return b;
                }
                throw GridError("line " + std::to_string(line_no) +
                                ": unknown bus " + std::to_string(id));
            };
            tl.polyline = {bus(tl.from_bus).location, bus(tl.to_bus).location};
        }
        if (tl.polyline.size() < 2) {
            throw GridError("branch " + std::to_string(branch_id) +
                            ": polyline needs at least 2 vertices");
        }
        const double actual = polyline_length(tl.polyline);
        if (std::abs(actual - tl.length_miles) >
            kLengthTolerance * tl.length_miles) {
            throw GridError("branch " + std::to_string(branch_id) +
                            ": declared length " +
                            std::to_string(tl.length_miles) +
                            " mi does not match polyline length " +
                            std::to_string(actual) + " mi");
        }
        net.lines.push_back(std::move(tl));
    }
    return net;
}

int ignition_count(const TransmissionLine& line, double tower_spacing) {
    if (tower_spacing <= 0.0) {
        throw GridError("tower_spacing must be positive");
    }
    if (line.declared_ignition_count) {
        return *line.declared_ignition_count;
    }
    return std::max(
        1, static_cast<int>(std::lround(line.length_miles / tower_spacing)));
}

std::vector<IgnitionPoint> generate_ignition_points(const TransmissionLine& line,
                                                    double tower_spacing) {
    const int k = ignition_count(line, tower_spacing);
    std::vector<IgnitionPoint> pts;
    pts.reserve(k);
    for (int i = 0; i < k; ++i) {
        const double fraction = (i + 0.5) / k;
        pts.push_back({line.branch_id, i, point_at_fraction(line.polyline,
                                                            fraction)});
    }
    return pts;
}

int total_ignition_points(const GridNetwork& network, double tower_spacing) {
    int total = 0;
    for (const auto& line : network.lines) {
        total += ignition_count(line, tower_spacing);
    }
    return total;
}

}  // namespace wildrisk
