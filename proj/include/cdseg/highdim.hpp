#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdseg/order.hpp"

namespace cdseg {

using GridPointD = std::vector<std::int64_t>;

// Segment between componentwise-comparable endpoints in d >= 2 dimensions:
// the diagonal sums of the segment's interval are ranked by the order, the
// largest ones assigned to the last coordinate, the next block to the one
// before, and so on; the walk from p steps in the direction assigned to the
// current sum.  Requires p <= q componentwise (strictly positive slope type).
std::vector<GridPointD> segment_d(const TotalOrder& order, const GridPointD& p,
                                  const GridPointD& q);

// Extends segment_d to arbitrary endpoint pairs by reflecting the coordinates
// that decrease, building the positive-slope segment, and reflecting back.
// The pair is canonicalized first so both orientations give the same points.
std::vector<GridPointD> segment_mixed(const TotalOrder& order, GridPointD p,
                                      GridPointD q);

struct BoxD {
  GridPointD lo, hi;
};

struct ViolationD {
  std::string axiom;
  std::vector<GridPointD> points;
};

// Path validity, endpoint symmetry, subsegment closure, prolongation, and
// degeneracy over all componentwise-comparable pairs in the box.
std::vector<ViolationD> check_axioms_d(const TotalOrder& order, const BoxD& box);

// First (p, q, r) in scan order with r on segment_mixed(p, q) but
// segment_mixed(p, r) not contained in it, if any.  Scans all ordered
// endpoint pairs in the box, every slope type.
std::optional<std::array<GridPointD, 3>> find_mixed_s3_violation(const TotalOrder& order,
                                                                 const BoxD& box);

}  // namespace cdseg
