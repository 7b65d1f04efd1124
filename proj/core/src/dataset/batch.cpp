#include "macrocast/dataset/batch.hpp"

#include <numeric>

#include "macrocast/errors.hpp"

namespace macrocast::dataset {

std::vector<std::vector<int>> batch_schedule(int n_instances, int batch_size, bool shuffle,
                                             Rng& rng) {
  if (n_instances < 1) throw StructuralError("batch_schedule: empty dataset");
  if (batch_size < 1) throw ConfigError("batch_schedule: batch_size must be >= 1");
  std::vector<int> order(static_cast<std::size_t>(n_instances));
  std::iota(order.begin(), order.end(), 0);
  if (shuffle) rng.shuffle(order);
  std::vector<std::vector<int>> batches;
  batches.reserve(static_cast<std::size_t>((n_instances + batch_size - 1) / batch_size));
  for (int start = 0; start < n_instances; start += batch_size) {
    int end = std::min(start + batch_size, n_instances);
    batches.emplace_back(order.begin() + start, order.begin() + end);
  }
  return batches;
}

}  // namespace macrocast::dataset
