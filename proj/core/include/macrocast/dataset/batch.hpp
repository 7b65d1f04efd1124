#pragma once

#include <vector>

#include "macrocast/rng.hpp"

namespace macrocast::dataset {

// One epoch's minibatch index schedule: a seeded permutation chunked into
// batches. Every instance appears exactly once per epoch; the final batch may
// be short. shuffle=false keeps natural order (used for validation scoring).
std::vector<std::vector<int>> batch_schedule(int n_instances, int batch_size, bool shuffle,
                                             Rng& rng);

}  // namespace macrocast::dataset
