#include "wildrisk/prioritize.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace wildrisk {

double weighted_cost(const DamageMatrix& matrix, const ScenarioWeights& weights) {
    double total = 0.0;
    for (int s = 0; s < 4; ++s) {
        for (int d = 0; d < 8; ++d) {
            total += matrix.values[s][d] * weights.weights[s][d];
        }
    }
    return total;
}

PriorityList rank(std::vector<LineRisk> risks) {
    std::set<int> ids;
    for (const auto& r : risks) {
        if (!ids.insert(r.branch_id).second) {
            throw RankError("duplicate branch id " + std::to_string(r.branch_id));
        }
    }
    std::sort(risks.begin(), risks.end(), [](const LineRisk& a, const LineRisk& b) {
        if (a.weighted_cost_usd != b.weighted_cost_usd) {
            return a.weighted_cost_usd > b.weighted_cost_usd;
        }
        return a.branch_id < b.branch_id;
    });
    PriorityList out;
    out.reserve(risks.size());
    for (std::size_t i = 0; i < risks.size(); ++i) {
        out.push_back({static_cast<int>(i) + 1, risks[i].branch_id,
                       risks[i].weighted_cost_usd});
    }
    return out;
}

}  // namespace wildrisk
