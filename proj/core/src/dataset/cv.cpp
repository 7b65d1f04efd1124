#include "macrocast/dataset/cv.hpp"

#include <string>

#include "macrocast/errors.hpp"

namespace macrocast::dataset {

std::vector<CvSplit> blocked_cv_splits(int n_total, int val_len) {
  if (val_len < 1) throw ConfigError("blocked_cv_splits: val_len must be >= 1");
  if (n_total < 2 * val_len + 1)
    throw DataError("blocked_cv_splits: " + std::to_string(n_total) +
                    " instances are too few for one split with validation length " +
                    std::to_string(val_len));
  if (n_total % val_len == 0)
    throw DataError("blocked_cv_splits: instance count " + std::to_string(n_total) +
                    " divisible by validation length " + std::to_string(val_len) +
                    " leaves no oversized first training block");

  const int l = n_total - val_len * (n_total / val_len - 1);
  const int k = (n_total - l) / val_len;
  std::vector<CvSplit> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    CvSplit s;
    s.train_begin = 0;
    s.train_end = l + val_len * i;
    s.val_begin = s.train_end;
    s.val_end = s.val_begin + val_len;
    out.push_back(s);
  }
  return out;
}

}  // namespace macrocast::dataset
