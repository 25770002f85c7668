#pragma once

#include <stdexcept>
#include <vector>

#include "wildrisk/damage.hpp"
#include "wildrisk/weather.hpp"

namespace wildrisk {

class RankError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LineRisk {
    int branch_id = 0;
    double weighted_cost_usd = 0.0;
};

struct RankedLine {
    int rank = 0;  // 1-based
    int branch_id = 0;
    double weighted_cost_usd = 0.0;
};

using PriorityList = std::vector<RankedLine>;

// Probability-weighted annual expected cost: sum of matrix entries times
// the 4x8 weight matrix.
double weighted_cost(const DamageMatrix& matrix, const ScenarioWeights& weights);

// Descending by cost, ties broken by ascending branch id.
PriorityList rank(std::vector<LineRisk> risks);

}  // namespace wildrisk
