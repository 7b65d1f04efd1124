#pragma once

namespace macrocast::train {

// Patience-based early stopping on validation loss. An epoch improves only
// if it beats the best seen by more than min_delta; training stops once
// patience + 1 epochs pass without improvement (so a flat curve runs for
// exactly patience + 1 epochs after the first), and the caller restores the
// best-epoch parameter snapshot.
struct EarlyStopState {
  int patience = 5;
  double min_delta = 1e-6;

  double best_val = 0.0;
  int best_epoch = -1;  // 1-based once set
  int epochs_since_improvement = 0;
  bool stopped = false;

  // feed one epoch's validation loss; returns true when training should stop
  bool observe(int epoch, double val_loss) {
    if (best_epoch < 0 || best_val - val_loss > min_delta) {
      best_val = val_loss;
      best_epoch = epoch;
      epochs_since_improvement = 0;
      return false;
    }
    ++epochs_since_improvement;
    if (epochs_since_improvement >= patience + 1) stopped = true;
    return stopped;
  }
};

}  // namespace macrocast::train
