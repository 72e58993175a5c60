#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdseg/geometry.hpp"
#include "cdseg/order.hpp"
#include "cdseg/segment.hpp"

namespace cdseg {

// A slope is an upward-closed set of diagonal sums: the line steps up exactly
// at the sums in the set.  The rational variants cut the order at an integer;
// window_predicate lists a finite window's membership explicitly and stands
// in for cuts without an integer boundary.
enum class SlopeVariant { all, empty, rational_inclusive, rational_exclusive, window_predicate };

class Slope {
 public:
  static Slope all();
  static Slope empty();
  static Slope rational_inclusive(std::int64_t c);   // {s : s == c or c precedes s}
  static Slope rational_exclusive(std::int64_t c);   // {s : c strictly precedes s}
  // members must be upward closed within domain under the order
  static Slope window_predicate(const TotalOrder& order, IntegerInterval domain,
                                std::vector<std::int64_t> members);

  SlopeVariant variant() const { return variant_; }
  std::optional<std::int64_t> cut() const;             // rational variants
  std::optional<IntegerInterval> domain() const;       // window_predicate
  const std::vector<std::int64_t>& members() const;    // window_predicate, sorted

  // s must lie inside the domain for window_predicate slopes
  bool contains(const TotalOrder& order, std::int64_t s) const;

  std::string to_spec() const;
  // accepts "all", "empty", "ratinc:<c>", "ratexc:<c>", "pred:<file>"
  static Slope from_spec(const std::string& spec, const TotalOrder& order);
  static Slope load_predicate(const std::string& filename, const TotalOrder& order);

 private:
  Slope() = default;

  SlopeVariant variant_ = SlopeVariant::all;
  std::int64_t cut_ = 0;
  std::int64_t domain_lo_ = 0, domain_hi_ = -1;
  std::vector<std::int64_t> members_;
};

// A digital line restricted to a window of diagonals: steps are defined at
// the sums in diag, so the points cover the sums diag.lo .. diag.hi + 1, one
// point per diagonal.  The generating slope rides along for parallel search.
struct LineWindow {
  IntegerInterval diag;
  std::vector<GridPoint> points;
  Slope slope;

  GridPoint point_at(std::int64_t sum) const;
  bool up_at(std::int64_t sum) const;  // step at sum, for sum in diag
  bool contains_point(GridPoint r) const;
};

// The line through p with the given slope, grown forwards and reconstructed
// backwards across diag.  p's diagonal sum must lie within the point range
// [diag.lo, diag.hi + 1]; a window_predicate slope must cover diag.
LineWindow line_window(const TotalOrder& order, GridPoint p, const Slope& slope,
                       IntegerInterval diag);

// Every order-derived segment between two line points retraces the line.
bool contains_own_segments(const TotalOrder& order, const LineWindow& lw);

enum class IntersectionClass {
  disjoint,
  cross_with_common_segment,    // shared run strictly inside the window
  common_halfline_in_window,    // shared run touching a window end
};

// Both lines must cover the same diagonal window.  Their shared points form a
// contiguous run for lines of this family; a non-contiguous overlap is
// rejected as malformed input.
IntersectionClass classify_intersection(const LineWindow& a, const LineWindow& b);

// The slopes of the lines through p (not on lw) that neither meet lw inside
// the window nor leave their own window, under the boundary-step candidate
// rule: at most the slope itself, the slope minus its least member, and the
// slope plus its greatest non-member.  Throws when the window cannot separate
// the candidates of a rational slope.
std::vector<Slope> parallels_through(const TotalOrder& order, const LineWindow& lw,
                                     GridPoint p);

}  // namespace cdseg
