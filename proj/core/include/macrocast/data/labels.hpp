#pragma once

#include <string>
#include <vector>

#include "macrocast/data/calendar.hpp"

namespace macrocast::data {

enum class TurningPointKind { Peak, Trough };

struct Announcement {
  YearMonth turning_point;
  TurningPointKind kind;
  YearMonth announced;
};

// CSV columns: turning_point,kind,announced   (kind in {peak,trough})
std::vector<Announcement> load_announcements_csv(const std::string& path);
void write_announcements_csv(const std::vector<Announcement>& anns, const std::string& path);

// Recession indicator as it was knowable at a vintage date: only
// announcements published on or before the vintage count. A month is in
// recession strictly after a peak through the following trough inclusive,
// and the last known state persists past the final announced turning point.
// Months before the first known turning point take the opposite state
// (expansion before a peak, recession before a trough).
//
// Announced turning points that do not alternate peak/trough in turning-point
// order -> DataError (inconsistent announcements). No usable announcements ->
// all months expansion.
std::vector<int> build_realtime_labels(const std::vector<Announcement>& announcements,
                                       const std::vector<YearMonth>& months,
                                       const YearMonth& vintage);

}  // namespace macrocast::data
