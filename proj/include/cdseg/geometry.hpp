#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cdseg {

struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  // lexicographic by x then y; canonicalization and scan order rely on this
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
inline GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }

// Inclusive rectangle of lattice points.
struct Window {
  GridPoint lo;
  GridPoint hi;

  Window(GridPoint lo_, GridPoint hi_) : lo(lo_), hi(hi_) {
    if (lo.x > hi.x || lo.y > hi.y) throw std::invalid_argument("window bounds out of order");
  }

  bool contains(GridPoint p) const {
    return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y;
  }
  Window enlarged(std::int64_t margin) const {
    return Window({lo.x - margin, lo.y - margin}, {hi.x + margin, hi.y + margin});
  }
  std::int64_t width() const { return hi.x - lo.x + 1; }
  std::int64_t height() const { return hi.y - lo.y + 1; }
};

// Ordered list of lattice points. A well-formed segment is a duplicate-free
// path in the grid graph; the type stays permissive because broken paths are
// exactly what the conformance checks need to represent.
struct DigitalSegment {
  std::vector<GridPoint> points;

  bool operator==(const DigitalSegment&) const = default;

  std::size_t size() const { return points.size(); }
  GridPoint front() const { return points.front(); }
  GridPoint back() const { return points.back(); }

  bool contains(GridPoint p) const {
    return std::find(points.begin(), points.end(), p) != points.end();
  }

  // consecutive points differ by one unit step in exactly one coordinate
  bool is_grid_path() const {
    for (std::size_t i = 1; i < points.size(); ++i) {
      const std::int64_t dx = points[i].x - points[i - 1].x;
      const std::int64_t dy = points[i].y - points[i - 1].y;
      if (dx * dx + dy * dy != 1) return false;
    }
    return true;
  }

  bool has_duplicates() const {
    std::vector<GridPoint> s = points;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) != s.end();
  }
};

inline DigitalSegment reversed(DigitalSegment seg) {
  std::reverse(seg.points.begin(), seg.points.end());
  return seg;
}

// Every point shifted by (t, -t).
inline DigitalSegment translate_diagonal(const DigitalSegment& seg, std::int64_t t) {
  DigitalSegment out;
  out.points.reserve(seg.points.size());
  for (GridPoint p : seg.points) out.points.push_back({p.x + t, p.y - t});
  return out;
}

}  // namespace cdseg
