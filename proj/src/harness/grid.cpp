#include "fnd/harness/grid.hpp"

#include <stdexcept>

#include "fnd/stats/stats.hpp"

namespace fnd::harness {

std::vector<GridCell> GridSpec::cells() const {
  std::vector<GridCell> out;
  for (std::size_t f : filters) {
    for (double p : dropouts) out.push_back({f, p});
  }
  return out;
}

std::size_t select_best(std::span<const GridEntry> entries) {
  if (entries.empty()) throw std::invalid_argument("empty grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const GridEntry& a = entries[i];
    const GridEntry& b = entries[best];
    const double fa = a.run.best_val.f1;
    const double fb = b.run.best_val.f1;
    bool better = fa > fb;
    if (fa == fb) {
      better = a.cell.num_filters < b.cell.num_filters ||
               (a.cell.num_filters == b.cell.num_filters && a.cell.dropout < b.cell.dropout);
    }
    if (better) best = i;
  }
  return best;
}

GridResult grid_search(const GridSpec& spec, const CellRunner& runner) {
  GridResult result;
  for (const GridCell& cell : spec.cells()) result.entries.push_back({cell, runner(cell)});
  result.best = select_best(result.entries);
  return result;
}

SeedSummary multi_seed_eval(std::size_t k, std::uint64_t seed0,
                            const std::function<double(std::uint64_t)>& run) {
  if (k == 0) throw std::invalid_argument("multi_seed_eval needs k >= 1");
  SeedSummary s;
  for (std::size_t i = 0; i < k; ++i) {
    s.seeds.push_back(seed0 + i);
    s.values.push_back(run(seed0 + i));
  }
  const stats::MeanStd ms = stats::mean_std(s.values);
  s.mean = ms.mean;
  s.std = ms.std;
  return s;
}

}  // namespace fnd::harness
