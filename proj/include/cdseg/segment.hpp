#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdseg/geometry.hpp"
#include "cdseg/order.hpp"

namespace cdseg {

// Failure to reach or understand an external segment oracle.  Distinct from
// axiom violations: transport trouble is a configuration problem, not a
// property of the system under test.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rule assigning a digital segment to every endpoint pair.  The base class
// canonicalizes the pair lexicographically before dispatch and re-orients the
// result, so segment(p, q) and segment(q, p) always traverse the same points.
class SegmentSystem {
 public:
  virtual ~SegmentSystem() = default;

  DigitalSegment segment(GridPoint p, GridPoint q) const;

  virtual std::string spec() const = 0;

 protected:
  // pair is canonical: p lexicographically at most q
  virtual DigitalSegment build(GridPoint p, GridPoint q) const = 0;
};

struct Prolongation {
  GridPoint point;
  // both one-step extensions of the segment p..q contain it
  bool split = false;
};

// Segments derived from a total order: walking from the lower endpoint, the
// path steps up exactly at the sums that are among the k largest of the
// segment's diagonal interval, k being the height to climb.  Negative slopes
// are built by reflecting across the y axis.
class OrderDerivedSystem final : public SegmentSystem {
 public:
  explicit OrderDerivedSystem(TotalOrder order);

  const TotalOrder& order() const { return order_; }
  std::string spec() const override;

  // One-step extension past q whose segment from p contains all of
  // segment(p, q).  Requires p <= q componentwise.
  Prolongation prolong(GridPoint p, GridPoint q) const;

 protected:
  DigitalSegment build(GridPoint p, GridPoint q) const override;

 private:
  TotalOrder order_;
};

// Axis-parallel boundary path of the bounding box: the horizontal run first
// when the slope is non-negative, the vertical run first otherwise.
class BoxBoundarySystem final : public SegmentSystem {
 public:
  std::string spec() const override;

 protected:
  DigitalSegment build(GridPoint p, GridPoint q) const override;
};

// Paths that hug the x axis: run along y = 0 as far as the endpoints allow.
// Satisfies the axioms but not translation invariance.
class WaterlineSystem final : public SegmentSystem {
 public:
  std::string spec() const override;

 protected:
  DigitalSegment build(GridPoint p, GridPoint q) const override;
};

// A fixed staircase path, weakly increasing in both coordinates.
struct MonotonePath {
  std::vector<GridPoint> points;

  explicit MonotonePath(std::vector<GridPoint> pts);
  static MonotonePath load(const std::string& filename);
};

// Segments guided by a staircase: endpoints above the line go right then up,
// endpoints below go up then right, and travel along the line continues until
// the destination's row or column is reached.  Negative slopes fall back to
// the box boundary.  Endpoints must lie in the window covered by the
// staircase (its bounding box shrunk by one).
class SpecialLineSystem final : public SegmentSystem {
 public:
  explicit SpecialLineSystem(MonotonePath path);

  const MonotonePath& path() const { return path_; }
  Window covered_window() const { return covered_; }
  std::string spec() const override;

 protected:
  DigitalSegment build(GridPoint p, GridPoint q) const override;

 private:
  bool on_line(GridPoint r) const;
  // per column x: the rows [ylo(x), yhi(x)] the staircase occupies
  std::int64_t ylo(std::int64_t x) const;
  std::int64_t yhi(std::int64_t x) const;

  MonotonePath path_;
  Window covered_;
  std::int64_t x0_ = 0;
  std::vector<std::int64_t> ylo_, yhi_;
};

// Segments answered by a child process.  The child is spawned lazily via
// /bin/sh -c and spoken to over pipes, one request per line:
//   "SEG px py qx qy\n"  ->  "n x1 y1 x2 y2 ... xn yn\n"
// Any spawn, write, read, or parse failure raises TransportError.
class ExternalSystem final : public SegmentSystem {
 public:
  explicit ExternalSystem(std::string command);
  ~ExternalSystem() override;

  ExternalSystem(const ExternalSystem&) = delete;
  ExternalSystem& operator=(const ExternalSystem&) = delete;

  std::string spec() const override;

 protected:
  DigitalSegment build(GridPoint p, GridPoint q) const override;

 private:
  struct Child;
  void ensure_child() const;

  std::string command_;
  mutable std::unique_ptr<Child> child_;
};

// Accepts "order:<orderspec>", "box", "waterline", "specialline:<file>",
// "extern:<command>".
std::unique_ptr<SegmentSystem> system_from_spec(const std::string& spec);

}  // namespace cdseg
