#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdseg/geometry.hpp"
#include "cdseg/order.hpp"
#include "cdseg/segment.hpp"

namespace cdseg {

enum class Axiom { S1, S2, S3, S4, S5, C1, C2, C3, OBS1, NOCROSS };
const char* axiom_name(Axiom a);

// Everything needed to replay a failure: the defining points first, then any
// integer parameters.
struct Violation {
  Axiom axiom;
  std::vector<GridPoint> points;
  std::vector<std::int64_t> ints;
};

std::string to_json_line(const Violation& v);

struct CheckResult {
  std::vector<Violation> violations;
  // pairs whose every surviving prolongation candidate was unanswerable
  // (outside the system's domain); the prolongation axiom is undecided there
  std::vector<std::pair<GridPoint, GridPoint>> s4_inconclusive;

  bool clean() const { return violations.empty(); }
};

// Path validity, endpoint symmetry, subsegment closure, prolongation, and
// monotone degeneracy over all endpoint pairs in w.  Prolongation witnesses
// are searched among the four neighbours of each endpoint, all of which lie
// inside w enlarged by one.
CheckResult check_axioms(const SegmentSystem& system, const Window& w);

// Slope-sign coherence and bounding-box containment over w, and closure of
// pairwise intersections under connecting segments over c3_window.
CheckResult check_consequences(const SegmentSystem& system, const Window& w,
                               const Window& c3_window);

// Among all segments from p to the diagonal x + y == C + 1 (targets above and
// right of p, inside w), no segment may step up at a larger x than another
// steps right at, where both steps leave the diagonal x + y == C.
std::vector<Violation> check_no_cross(const SegmentSystem& system, GridPoint p,
                                      std::int64_t C, const Window& w);

// First non-negative-slope endpoint pair in w (with shift t) whose segment is
// not the diagonal translate of the untranslated one, if any.  Negative-slope
// segments live on anti-diagonals, which a (t, -t) shift moves, so the two
// slope halves are never comparable this way and the negative half is skipped.
std::optional<Violation> check_translation_invariance(const SegmentSystem& system,
                                                      const Window& w);

// A total order on a diagonal interval read off a system's segments from one
// base point.
struct InducedOrder {
  GridPoint base_point;
  IntegerInterval domain;
  std::vector<std::int64_t> increasing;  // domain listed smallest to largest

  bool precedes(std::int64_t a, std::int64_t b) const;
  TotalOrder as_total_order() const;
};

struct ExtractResult {
  std::optional<InducedOrder> order;
  // a pair the pairwise comparisons ordered inconsistently
  std::optional<std::pair<std::int64_t, std::int64_t>> conflict;

  bool ok() const { return order.has_value(); }
};

// Derives the order the system's segments from p induce on the diagonal sums
// in domain.  Requires domain.lo >= p.x + p.y.
ExtractResult extract_order(const SegmentSystem& system, GridPoint p,
                            IntegerInterval domain);

struct RecoverResult {
  enum class Status { ok, invariance_violation, order_conflict };

  Status status = Status::ok;
  std::optional<InducedOrder> order;                 // status ok
  std::optional<Violation> invariance_witness;       // status invariance_violation
  // status order_conflict: the pair ordered differently and the base points
  // that disagree about it
  std::optional<std::array<std::int64_t, 2>> conflict_pair;
  std::optional<std::pair<GridPoint, GridPoint>> conflict_bases;

  bool ok() const { return status == Status::ok; }
};

// Checks translation invariance over w, then extracts the induced order from
// every base point in w low enough to see all of domain and requires the
// results to agree.
RecoverResult recover_global_order(const SegmentSystem& system, const Window& w,
                                   IntegerInterval domain);

// Sorts [A, A + 2^(k+1) - 2] and verifies the enumeration never takes two
// consecutive elements on the same side of the midpoint A + 2^k - 1.  The
// midpoint must be divisible by 2^k, else the premise fails (domain error).
bool check_alternation(const TotalOrder& order, std::int64_t A, int k);

}  // namespace cdseg
