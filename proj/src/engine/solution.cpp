#include "sparqlsec/engine/solution.hpp"

#include <set>

namespace sparqlsec::engine {

bool compatible(const solution &a, const solution &b)
{
    const auto &small = a.size() <= b.size() ? a : b;
    const auto &large = a.size() <= b.size() ? b : a;
    for (const auto &[name, value] : small) {
        if (auto it = large.find(name); it != large.end() && it->second != value) {
            return false;
        }
    }
    return true;
}

void apply_distinct(solution_set &s)
{
    std::set<solution> seen;
    std::vector<solution> kept;
    for (auto &row : s.rows) {
        if (seen.insert(row).second) {
            kept.push_back(std::move(row));
        }
    }
    s.rows = std::move(kept);
    s.distinct_applied = true;
}

} // namespace sparqlsec::engine
