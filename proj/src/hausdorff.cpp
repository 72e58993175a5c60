#include "cdseg/hausdorff.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cdseg/segment.hpp"

namespace cdseg {

namespace {

std::int64_t l1_length(GridPoint p, GridPoint q) {
  const std::int64_t dx = q.x > p.x ? q.x - p.x : p.x - q.x;
  const std::int64_t dy = q.y > p.y ? q.y - p.y : p.y - q.y;
  return dx + dy;
}

Distance exact_point_distance(GridPoint a, GridPoint b) {
  const std::int64_t dx = b.x - a.x;
  const std::int64_t dy = b.y - a.y;
  Distance d;
  d.sq_num = static_cast<__int128>(dx) * dx + static_cast<__int128>(dy) * dy;
  d.sq_den = 1;
  d.value = std::sqrt(static_cast<double>(d.sq_num));
  return d;
}

// shared by check_bound and sweep so both certify identically
BoundCheck bound_for(std::int64_t l1, const Distance& h) {
  BoundCheck bc;
  if (l1 < 2) {
    bc.holds = true;
    bc.vacuous = true;
    bc.certified = true;
    return bc;
  }
  if (std::has_single_bit(static_cast<std::uint64_t>(l1))) {
    const int m = std::countr_zero(static_cast<std::uint64_t>(l1));
    bc.holds = h.sq_num <= static_cast<__int128>(5) * m * m * h.sq_den;
    bc.certified = true;
    return bc;
  }
  const double lhs = h.value;
  const double rhs = std::sqrt(5.0) * std::log2(static_cast<double>(l1));
  if (lhs <= rhs * (1.0 - 1e-12)) {
    bc.holds = true;
    bc.certified = true;
  } else if (lhs >= rhs * (1.0 + 1e-12)) {
    bc.holds = false;
    bc.certified = true;
  } else {
    bc.holds = lhs <= rhs;
    bc.certified = false;
  }
  return bc;
}

double point_to_edge(double vx, double vy, GridPoint a, GridPoint b) {
  const double wx = static_cast<double>(b.x - a.x);
  const double wy = static_cast<double>(b.y - a.y);
  const double ux = vx - static_cast<double>(a.x);
  const double uy = vy - static_cast<double>(a.y);
  const double len2 = wx * wx + wy * wy;
  const double t = len2 > 0.0 ? std::clamp((ux * wx + uy * wy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(ux - t * wx, uy - t * wy);
}

// The digital segment enters the Hausdorff distance as a connected grid path,
// so chord samples measure against the path's unit edges.
void verify_chord(const DigitalSegment& seg, const Distance& forward) {
  const GridPoint p = seg.front();
  const GridPoint q = seg.back();
  const std::int64_t samples = 64 * std::max<std::int64_t>(l1_length(p, q), 1);
  double worst = 0.0;
  for (std::int64_t i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    const double vx = static_cast<double>(p.x) + t * static_cast<double>(q.x - p.x);
    const double vy = static_cast<double>(p.y) + t * static_cast<double>(q.y - p.y);
    double nearest = std::numeric_limits<double>::infinity();
    if (seg.size() == 1)
      nearest = point_to_edge(vx, vy, seg.front(), seg.front());
    for (std::size_t e = 0; e + 1 < seg.points.size(); ++e)
      nearest = std::min(nearest, point_to_edge(vx, vy, seg.points[e], seg.points[e + 1]));
    worst = std::max(worst, nearest);
  }
  if (worst > forward.value + 1e-9)
    throw std::logic_error("chord-to-path distance exceeds path-to-chord distance");
}

}  // namespace

bool sq_less(const Distance& a, const Distance& b) {
  return a.sq_num * b.sq_den < b.sq_num * a.sq_den;
}

Distance point_segment_distance(GridPoint r, GridPoint p, GridPoint q) {
  if (p == q) return exact_point_distance(r, p);
  const std::int64_t wx = q.x - p.x;
  const std::int64_t wy = q.y - p.y;
  const std::int64_t vx = r.x - p.x;
  const std::int64_t vy = r.y - p.y;
  const std::int64_t dot = vx * wx + vy * wy;
  const std::int64_t len2 = wx * wx + wy * wy;
  if (dot <= 0) return exact_point_distance(r, p);
  if (dot >= len2) return exact_point_distance(r, q);
  const std::int64_t cross = vx * wy - vy * wx;
  Distance d;
  d.sq_num = static_cast<__int128>(cross) * cross;
  d.sq_den = len2;
  d.value = std::abs(static_cast<double>(cross)) / std::sqrt(static_cast<double>(len2));
  return d;
}

Distance hausdorff_distance(const DigitalSegment& seg, bool verify_chord_direction) {
  if (seg.size() == 0) throw std::domain_error("empty segment");
  const GridPoint p = seg.front();
  const GridPoint q = seg.back();
  Distance best;  // zero
  for (GridPoint r : seg.points) {
    const Distance d = point_segment_distance(r, p, q);
    if (sq_less(best, d)) best = d;
  }
  if (verify_chord_direction) verify_chord(seg, best);
  return best;
}

BoundCheck check_bound(const DigitalSegment& seg) {
  if (seg.size() == 0) throw std::domain_error("empty segment");
  const std::int64_t l1 = l1_length(seg.front(), seg.back());
  if (l1 < 2) return bound_for(l1, Distance{});
  return bound_for(l1, hausdorff_distance(seg));
}

bool check_subsegment_inequality(const TotalOrder& order, GridPoint p, GridPoint q,
                                 GridPoint r, GridPoint s) {
  const OrderDerivedSystem sys(order);
  const DigitalSegment whole = sys.segment(p, q);
  if (!whole.contains(r) || !whole.contains(s))
    throw std::domain_error("subsegment endpoints must lie on the segment");
  const Distance sub = hausdorff_distance(sys.segment(r, s));
  const Distance full = hausdorff_distance(whole);
  return sub.sq_num * full.sq_den <= 4 * full.sq_num * sub.sq_den;
}

SweepSummary sweep(const TotalOrder& order, const SweepConfig& config,
                   const std::function<void(const SweepRow&)>& row_callback) {
  const OrderDerivedSystem sys(order);

  // distances are shared within a diagonal translation class; negative-slope
  // pairs are mirrored onto their reflection class, an isometry
  std::unordered_map<std::uint64_t, Distance> memo;
  const auto class_distance = [&](GridPoint p, GridPoint q) {
    std::int64_t a = p.x + p.y;
    const std::int64_t dx = q.x - p.x;
    std::int64_t dy = q.y - p.y;
    if (dy < 0) {
      a = q.y - q.x;
      dy = -dy;
    }
    const std::uint64_t key =
        (static_cast<std::uint64_t>(a + (std::int64_t{1} << 21)) << 40) |
        (static_cast<std::uint64_t>(dx) << 20) | static_cast<std::uint64_t>(dy);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const GridPoint rep{a, 0};
    const Distance d = hausdorff_distance(sys.segment(rep, {a + dx, dy}));
    memo.emplace(key, d);
    return d;
  };

  SweepSummary summary;
  Distance max_h;
  const auto record = [&](GridPoint p, GridPoint q) {
    const std::int64_t l1 = l1_length(p, q);
    const Distance h = class_distance(p, q);
    const BoundCheck bc = bound_for(l1, h);

    SweepRow row{p, q, l1, h.value, 0.0, 0.0};
    if (!bc.vacuous) {
      const double log_l = std::log2(static_cast<double>(l1));
      row.bound = std::sqrt(5.0) * log_l;
      row.ratio = h.value / log_l;
    }
    if (row_callback) row_callback(row);

    ++summary.pairs;
    if (bc.vacuous) ++summary.vacuous;
    if (!bc.holds) ++summary.bound_violations;
    if (!bc.certified) ++summary.uncertified;
    if (sq_less(max_h, h)) {
      max_h = h;
      summary.argmax_p = p;
      summary.argmax_q = q;
    }
    summary.max_ratio = std::max(summary.max_ratio, row.ratio);
  };

  if (config.mode == SweepConfig::Mode::exhaustive) {
    // the class key packs offsets into 20-bit fields
    if (config.window < 0 || config.window >= (std::int64_t{1} << 19))
      throw std::invalid_argument("window outside [0, 2^19)");
    const std::int64_t n = config.window;
    for (std::int64_t px = 0; px <= n; ++px)
      for (std::int64_t py = 0; py <= n; ++py)
        for (std::int64_t qx = px; qx <= n; ++qx) {
          const std::int64_t qy0 = (qx == px) ? py + 1 : 0;
          for (std::int64_t qy = qy0; qy <= n; ++qy)
            record({px, py}, {qx, qy});
        }
  } else {
    if (config.max_l < 1 || config.max_l >= (std::int64_t{1} << 19))
      throw std::invalid_argument("max_l outside [1, 2^19)");
    // raw modulo draws keep the stream identical across standard libraries
    std::mt19937_64 gen(config.seed);
    const auto draw = [&gen](std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    for (std::uint64_t i = 0; i < config.count; ++i) {
      std::int64_t dx = 0, dy = 0;
      GridPoint p;
      bool down = false;
      do {
        p = {draw(-65536, 65536), draw(-65536, 65536)};
        dx = draw(0, config.max_l);
        dy = draw(0, config.max_l - dx);
        down = (gen() & 1) != 0;
      } while (dx == 0 && dy == 0);
      record(p, {p.x + dx, down ? p.y - dy : p.y + dy});
    }
  }

  summary.max_hausdorff = max_h.value;
  return summary;
}

}  // namespace cdseg
