#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

#include "cdseg/geometry.hpp"
#include "cdseg/segment.hpp"

namespace cdseg_test {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  const std::int64_t r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

// Chord rounding: one point per column (per row when steep), the row chosen
// by rounding the chord's height.  Plausible at a glance, but rounding jumps
// produce diagonal steps and subsegments that disagree with the segment.
class RoundingSystem final : public cdseg::SegmentSystem {
 public:
  std::string spec() const override { return "fixture:rounding"; }

 protected:
  cdseg::DigitalSegment build(cdseg::GridPoint p, cdseg::GridPoint q) const override {
    const std::int64_t dx = q.x - p.x;  // >= 0 after canonicalization
    const std::int64_t dy = q.y - p.y;
    cdseg::DigitalSegment seg;
    if (dx == 0 && dy == 0) {
      seg.points.push_back(p);
      return seg;
    }
    if (dx >= std::llabs(dy)) {
      for (std::int64_t x = p.x; x <= q.x; ++x)
        seg.points.push_back(
            {x, p.y + floor_div(2 * (x - p.x) * dy + dx, 2 * dx)});
      return seg;
    }
    const std::int64_t step = dy > 0 ? 1 : -1;
    const std::int64_t ady = std::llabs(dy);
    for (std::int64_t i = 0; i <= ady; ++i)
      seg.points.push_back(
          {p.x + floor_div(2 * i * dx + ady, 2 * ady), p.y + step * i});
    return seg;
  }
};

// Hand-picked segments from (0,0) whose induced diagonal comparisons form a
// cycle: 0 before 1, 1 before 2, 2 before 0.
class IntransitiveSystem final : public cdseg::SegmentSystem {
 public:
  IntransitiveSystem() {
    table_[{0, 2}] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 2}};
    table_[{1, 1}] = {{0, 0}, {0, 1}, {1, 1}};
    table_[{2, 0}] = {{0, 0}, {1, 0}, {2, 0}};
    table_[{0, 3}] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
    table_[{1, 2}] = {{0, 0}, {0, 1}, {1, 1}, {1, 2}};
    table_[{2, 1}] = {{0, 0}, {0, 1}, {1, 1}, {2, 1}};
    table_[{1, 0}] = {{0, 0}, {1, 0}};
  }

  std::string spec() const override { return "fixture:intransitive"; }

 protected:
  cdseg::DigitalSegment build(cdseg::GridPoint p, cdseg::GridPoint q) const override {
    if (p == cdseg::GridPoint{0, 0}) {
      const auto it = table_.find(q);
      if (it != table_.end()) return {it->second};
    }
    throw std::domain_error("pair outside the fixture table");
  }

 private:
  std::map<cdseg::GridPoint, std::vector<cdseg::GridPoint>> table_;
};

// staircase from (x0, y0) alternating right and up for `steps` repetitions
inline cdseg::MonotonePath staircase(std::int64_t x0, std::int64_t y0, int steps) {
  std::vector<cdseg::GridPoint> pts;
  cdseg::GridPoint cur{x0, y0};
  pts.push_back(cur);
  for (int i = 0; i < steps; ++i) {
    pts.push_back({++cur.x, cur.y});
    pts.push_back({cur.x, ++cur.y});
  }
  return cdseg::MonotonePath(std::move(pts));
}

}  // namespace cdseg_test
