#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qbc/error.hpp"
#include "qbc/region/types.hpp"

namespace qbc::oracle {

inline constexpr double kCompositionBudget = 1e7;

// Number of ways to write `total` as an ordered sum of `cells` nonnegative
// integers.
inline double composition_count(std::size_t cells, std::size_t total) {
  double c = 1.0;
  for (std::size_t i = 1; i < cells; ++i)
    c = c * static_cast<double>(total + i) / static_cast<double>(i);
  return std::round(c);
}

inline void check_enumeration_budget(std::size_t x_size, std::size_t t_size, std::size_t mesh) {
  if (x_size == 0 || t_size == 0 || mesh == 0)
    throw ValidationError("oracle needs positive alphabet, t_size and mesh");
  if (x_size > 3) throw BudgetError("oracle alphabet larger than 3");
  if (mesh > 12) throw BudgetError("oracle mesh larger than 12");
  const double n = composition_count(x_size * t_size, mesh);
  if (n > kCompositionBudget)
    throw BudgetError("oracle enumeration of " + std::to_string(static_cast<long long>(n)) +
                      " distributions exceeds the budget");
}

// Calls f(counts) for every composition of `total` into counts.size() cells
// whose first cell equals `first`.
template <class F>
void for_each_composition(std::vector<int>& counts, std::size_t pos, int remaining, F& f) {
  if (pos + 1 == counts.size()) {
    counts[pos] = remaining;
    f(counts);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    counts[pos] = v;
    for_each_composition(counts, pos + 1, remaining - v, f);
  }
}

// Exact Pareto staircase of (common, personal) with common increasing and
// personal strictly decreasing.
class Staircase {
 public:
  struct Entry {
    double personal;
    std::vector<int> counts;
  };

  void insert(double common, double personal, const std::vector<int>& counts) {
    auto it = steps_.lower_bound(common);
    if (it != steps_.end() && it->second.personal >= personal) return;
    if (it != steps_.end() && it->first == common) {
      it->second = {personal, counts};
    } else {
      it = steps_.emplace_hint(it, common, Entry{personal, counts});
    }
    while (it != steps_.begin()) {
      auto prev = std::prev(it);
      if (prev->second.personal <= personal) steps_.erase(prev);
      else break;
    }
  }

  void merge(const Staircase& other) {
    for (const auto& [c, e] : other.steps_) insert(c, e.personal, e.counts);
  }

  const std::map<double, Entry>& steps() const { return steps_; }

 private:
  std::map<double, Entry> steps_;
};

}  // namespace qbc::oracle
