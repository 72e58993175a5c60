#include "cdseg/highdim.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace cdseg {

namespace {

std::int64_t coord_sum(const GridPointD& p) {
  return std::accumulate(p.begin(), p.end(), std::int64_t{0});
}

void validate_pair_shape(const GridPointD& p, const GridPointD& q) {
  if (p.size() != q.size() || p.size() < 2)
    throw std::domain_error("endpoints must share a dimension of at least 2");
}

bool componentwise_leq(const GridPointD& a, const GridPointD& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// lexicographically ordered points of the box
std::vector<GridPointD> box_points(const BoxD& box) {
  if (box.lo.size() != box.hi.size() || box.lo.size() < 2)
    throw std::invalid_argument("box corners must share a dimension of at least 2");
  if (!componentwise_leq(box.lo, box.hi))
    throw std::invalid_argument("box corners out of order");
  std::vector<GridPointD> points;
  GridPointD cur = box.lo;
  for (;;) {
    points.push_back(cur);
    std::size_t i = cur.size();
    while (i-- > 0) {
      if (cur[i] < box.hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = box.lo[i];
      if (i == 0) return points;
    }
  }
}

using SegmentMap = std::map<std::vector<std::int64_t>, std::vector<GridPointD>>;

std::vector<std::int64_t> pair_key(const GridPointD& p, const GridPointD& q) {
  std::vector<std::int64_t> key = p;
  key.insert(key.end(), q.begin(), q.end());
  return key;
}

}  // namespace

std::vector<GridPointD> segment_d(const TotalOrder& order, const GridPointD& p,
                                  const GridPointD& q) {
  validate_pair_shape(p, q);
  const std::size_t d = p.size();
  for (std::size_t i = 0; i < d; ++i)
    if (p[i] > q[i])
      throw std::domain_error("slope type must be strictly positive: p <= q componentwise");

  const std::int64_t lo = coord_sum(p), hi = coord_sum(q);
  std::vector<GridPointD> path{p};
  if (lo == hi) return path;

  // rank the step sums; the greatest block moves the last coordinate
  const std::vector<std::int64_t> increasing = sort_interval(order, IntegerInterval(lo, hi - 1));
  std::vector<std::size_t> direction(increasing.size());
  std::size_t at = increasing.size();
  for (std::size_t k = d; k-- > 0;)
    for (std::int64_t j = 0; j < q[k] - p[k]; ++j)
      direction[static_cast<std::size_t>(increasing[--at] - lo)] = k;

  GridPointD cur = p;
  path.reserve(static_cast<std::size_t>(hi - lo) + 1);
  for (std::int64_t s = lo; s < hi; ++s) {
    ++cur[direction[static_cast<std::size_t>(s - lo)]];
    path.push_back(cur);
  }
  return path;
}

std::vector<GridPointD> segment_mixed(const TotalOrder& order, GridPointD p, GridPointD q) {
  validate_pair_shape(p, q);
  const bool swapped = std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end());
  if (swapped) std::swap(p, q);

  const std::size_t d = p.size();
  std::vector<char> reflected(d, 0);
  GridPointD rp = p, rq = q;
  for (std::size_t i = 0; i < d; ++i) {
    if (q[i] < p[i]) {
      reflected[i] = 1;
      rp[i] = -p[i];
      rq[i] = -q[i];
    }
  }
  std::vector<GridPointD> path = segment_d(order, rp, rq);
  for (GridPointD& r : path)
    for (std::size_t i = 0; i < d; ++i)
      if (reflected[i]) r[i] = -r[i];
  if (swapped) std::reverse(path.begin(), path.end());
  return path;
}

std::vector<ViolationD> check_axioms_d(const TotalOrder& order, const BoxD& box) {
  const std::vector<GridPointD> points = box_points(box);
  const std::size_t d = box.lo.size();

  SegmentMap cache;
  const auto get = [&](const GridPointD& a, const GridPointD& b) -> const std::vector<GridPointD>& {
    const auto [it, fresh] = cache.try_emplace(pair_key(a, b));
    if (fresh) it->second = segment_d(order, a, b);
    return it->second;
  };

  std::vector<ViolationD> violations;
  for (const GridPointD& p : points) {
    for (const GridPointD& q : points) {
      if (!componentwise_leq(p, q)) continue;
      const std::vector<GridPointD>& path = get(p, q);

      bool walk_ok = path.front() == p && path.back() == q &&
                     path.size() == static_cast<std::size_t>(coord_sum(q) - coord_sum(p)) + 1;
      for (std::size_t i = 1; walk_ok && i < path.size(); ++i) {
        std::int64_t moved = 0;
        for (std::size_t k = 0; k < d; ++k) {
          const std::int64_t delta = path[i][k] - path[i - 1][k];
          if (delta < 0 || delta > 1) walk_ok = false;
          moved += delta;
        }
        if (moved != 1) walk_ok = false;
      }
      if (!walk_ok) {
        violations.push_back({"S1", {p, q}});
        continue;
      }

      if (segment_mixed(order, q, p) !=
          std::vector<GridPointD>(path.rbegin(), path.rend()))
        violations.push_back({"S2", {p, q}});

      for (std::size_t k = 0; k < d; ++k) {
        if (p[k] != q[k]) continue;
        for (const GridPointD& r : path) {
          if (r[k] != p[k]) {
            violations.push_back({"S5", {p, q, r}});
            k = d - 1;
            break;
          }
        }
      }

      // one point per diagonal sum, so containment means prefix/suffix equality
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        const GridPointD& r = path[i];
        const std::vector<GridPointD>& head = get(p, r);
        const std::vector<GridPointD>& tail = get(r, q);
        if (!std::equal(head.begin(), head.end(), path.begin()) ||
            !std::equal(tail.begin(), tail.end(), path.begin() + static_cast<std::ptrdiff_t>(i))) {
          violations.push_back({"S3", {p, r, q}});
          break;
        }
      }

      bool extends_past_q = false;
      for (std::size_t k = 0; k < d && !extends_past_q; ++k) {
        GridPointD far = q;
        ++far[k];
        extends_past_q = std::equal(path.begin(), path.end(), get(p, far).begin());
      }
      if (!extends_past_q) violations.push_back({"S4", {p, q}});

      bool extends_past_p = false;
      for (std::size_t k = 0; k < d && !extends_past_p; ++k) {
        GridPointD far = p;
        --far[k];
        extends_past_p = std::equal(path.rbegin(), path.rend(), get(far, q).rbegin());
      }
      if (!extends_past_p) violations.push_back({"S4", {q, p}});
    }
  }
  return violations;
}

std::optional<std::array<GridPointD, 3>> find_mixed_s3_violation(const TotalOrder& order,
                                                                 const BoxD& box) {
  const std::vector<GridPointD> points = box_points(box);
  if (box.lo.size() != 3) throw std::domain_error("mixed slope-type search is defined for d = 3");

  SegmentMap cache;
  const auto get = [&](const GridPointD& a, const GridPointD& b) -> const std::vector<GridPointD>& {
    const auto [it, fresh] = cache.try_emplace(pair_key(a, b));
    if (fresh) it->second = segment_mixed(order, a, b);
    return it->second;
  };

  for (const GridPointD& p : points) {
    for (const GridPointD& q : points) {
      if (p == q) continue;
      const std::vector<GridPointD>& path = get(p, q);
      std::vector<GridPointD> member = path;
      std::sort(member.begin(), member.end());

      std::vector<GridPointD> inner(path.begin() + 1, path.end() - 1);
      std::sort(inner.begin(), inner.end());
      for (const GridPointD& r : inner) {
        for (const GridPointD& s : get(p, r)) {
          if (!std::binary_search(member.begin(), member.end(), s))
            return std::array<GridPointD, 3>{p, q, r};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace cdseg
