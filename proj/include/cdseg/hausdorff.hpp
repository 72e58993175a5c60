#pragma once

#include <cstdint>
#include <functional>

#include "cdseg/geometry.hpp"
#include "cdseg/order.hpp"

namespace cdseg {

// A distance whose square is the exact rational sq_num / sq_den.  The double
// is derived; comparisons should go through sq_less.
struct Distance {
  double value = 0.0;
  __int128 sq_num = 0;
  std::int64_t sq_den = 1;
};

// exact comparison of squared values by cross multiplication
bool sq_less(const Distance& a, const Distance& b);

// Euclidean distance from r to the closed line segment p..q in the plane.
Distance point_segment_distance(GridPoint r, GridPoint p, GridPoint q);

// Hausdorff distance between the digital segment, taken as a connected grid
// path, and the straight chord joining its endpoints.  Distance to the chord
// is convex, so its maximum over the path is attained at lattice points; the
// directed distance from the chord back to the path never exceeds that
// maximum.  With verify_chord_direction set, the chord is sampled densely
// against the path's edges and the claim is asserted numerically.
Distance hausdorff_distance(const DigitalSegment& seg,
                            bool verify_chord_direction = false);

struct BoundCheck {
  bool holds = false;      // hausdorff <= sqrt(5) * log2(L1 length)
  bool vacuous = false;    // L1 length < 2, bound not applicable
  bool certified = false;  // verdict provable despite rounding
};

// Tests the logarithmic bound for the segment.  Power-of-two lengths are
// decided exactly in integers; other lengths through directed rounding with a
// relative guard band, and a verdict inside the band is reported uncertified.
BoundCheck check_bound(const DigitalSegment& seg);

// Both r and s must lie on the order-derived segment p..q.  Verifies that the
// subsegment's chord distance is at most twice the full segment's.
bool check_subsegment_inequality(const TotalOrder& order, GridPoint p, GridPoint q,
                                 GridPoint r, GridPoint s);

struct SweepConfig {
  enum class Mode { exhaustive, random };

  Mode mode = Mode::exhaustive;
  std::int64_t window = 32;       // exhaustive: all pairs in [0, window]^2
  std::uint64_t count = 0;        // random: number of pairs
  std::int64_t max_l = 1 << 16;   // random: cap on L1 length
  std::uint64_t seed = 1;
};

struct SweepRow {
  GridPoint p, q;
  std::int64_t l1 = 0;
  double hausdorff = 0.0;
  double bound = 0.0;  // sqrt(5) * log2(l1), 0 when vacuous
  double ratio = 0.0;  // hausdorff / log2(l1), 0 when vacuous
};

struct SweepSummary {
  std::uint64_t pairs = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t bound_violations = 0;
  std::uint64_t uncertified = 0;
  double max_hausdorff = 0.0;
  GridPoint argmax_p, argmax_q;
  double max_ratio = 0.0;
};

// Measures order-derived segments against the logarithmic bound.  Hausdorff
// distances are memoized per translation class (diagonal offset and extent),
// which diagonal translates share.  The optional callback sees every pair in
// scan order.
SweepSummary sweep(const TotalOrder& order, const SweepConfig& config,
                   const std::function<void(const SweepRow&)>& row_callback = nullptr);

}  // namespace cdseg
