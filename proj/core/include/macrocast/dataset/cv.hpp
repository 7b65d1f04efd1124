#pragma once

#include <vector>

namespace macrocast::dataset {

// Expanding-window blocked cross-validation over a time-ordered instance
// range. Validation blocks have fixed length (128 by default); the first
// training block takes the remainder l = n - val_len * (floor(n/val_len) - 1)
// so it is always strictly longer than one block.
struct CvSplit {
  int train_begin = 0;
  int train_end = 0;  // exclusive; == val_begin
  int val_begin = 0;
  int val_end = 0;  // exclusive
};

// Errors: n divisible by val_len (first train block would collapse to one
// block), or n too small for one split (needs n >= 2 * val_len + 1).
std::vector<CvSplit> blocked_cv_splits(int n_total, int val_len = 128);

}  // namespace macrocast::dataset
