#include "cdseg/conformance.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include <nlohmann/json.hpp>

namespace cdseg {

namespace {

class SegmentCache {
 public:
  struct Entry {
    DigitalSegment seg;
    std::vector<GridPoint> sorted;
  };

  explicit SegmentCache(const SegmentSystem& system) : system_(system) {}

  const Entry& get(GridPoint p, GridPoint q) {
    if (q < p) std::swap(p, q);
    auto it = map_.find({p, q});
    if (it == map_.end()) {
      Entry e;
      e.seg = system_.segment(p, q);
      e.sorted = e.seg.points;
      std::sort(e.sorted.begin(), e.sorted.end());
      it = map_.emplace(std::make_pair(p, q), std::move(e)).first;
    }
    return it->second;
  }

 private:
  const SegmentSystem& system_;
  std::map<std::pair<GridPoint, GridPoint>, Entry> map_;
};

bool entry_contains(const SegmentCache::Entry& e, GridPoint r) {
  return std::binary_search(e.sorted.begin(), e.sorted.end(), r);
}

bool subset_of(const SegmentCache::Entry& small, const SegmentCache::Entry& big) {
  for (GridPoint r : small.sorted)
    if (!entry_contains(big, r)) return false;
  return true;
}

template <typename F>
void for_canonical_pairs(const Window& w, F&& f) {
  for (std::int64_t px = w.lo.x; px <= w.hi.x; ++px)
    for (std::int64_t py = w.lo.y; py <= w.hi.y; ++py)
      for (std::int64_t qx = px; qx <= w.hi.x; ++qx) {
        const std::int64_t qy0 = (qx == px) ? py : w.lo.y;
        for (std::int64_t qy = qy0; qy <= w.hi.y; ++qy)
          f(GridPoint{px, py}, GridPoint{qx, qy});
      }
}

// first point of the path with the given diagonal sum, plus the direction of
// the step leaving it
struct CrossStep {
  bool found = false;
  bool up = false;
  GridPoint at;
};

CrossStep cross_at(const DigitalSegment& seg, std::int64_t sum) {
  for (std::size_t i = 0; i < seg.points.size(); ++i) {
    if (seg.points[i].x + seg.points[i].y != sum) continue;
    CrossStep cs;
    cs.at = seg.points[i];
    if (i + 1 < seg.points.size()) {
      cs.found = true;
      cs.up = seg.points[i + 1].y > seg.points[i].y;
    }
    return cs;
  }
  return {};
}

}  // namespace

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::S1: return "S1";
    case Axiom::S2: return "S2";
    case Axiom::S3: return "S3";
    case Axiom::S4: return "S4";
    case Axiom::S5: return "S5";
    case Axiom::C1: return "C1";
    case Axiom::C2: return "C2";
    case Axiom::C3: return "C3";
    case Axiom::OBS1: return "OBS1";
    case Axiom::NOCROSS: return "NOCROSS";
  }
  return "?";
}

std::string to_json_line(const Violation& v) {
  nlohmann::json witness = nlohmann::json::array();
  for (GridPoint p : v.points) witness.push_back({p.x, p.y});
  for (std::int64_t i : v.ints) witness.push_back(i);
  const nlohmann::json j = {{"axiom", axiom_name(v.axiom)}, {"witness", witness}};
  return j.dump();
}

CheckResult check_axioms(const SegmentSystem& system, const Window& w) {
  CheckResult result;
  SegmentCache cache(system);
  for_canonical_pairs(w, [&](GridPoint p, GridPoint q) {
    const auto& entry = cache.get(p, q);
    const DigitalSegment& seg = entry.seg;

    if (seg.size() == 0 || seg.front() != p || seg.back() != q || !seg.is_grid_path() ||
        seg.has_duplicates())
      result.violations.push_back({Axiom::S1, {p, q}, {}});

    if (reversed(system.segment(q, p)) != seg)
      result.violations.push_back({Axiom::S2, {p, q}, {}});

    if (p.x == q.x || p.y == q.y)
      for (GridPoint r : seg.points)
        if ((p.x == q.x && r.x != p.x) || (p.y == q.y && r.y != p.y)) {
          result.violations.push_back({Axiom::S5, {p, q, r}, {}});
          break;
        }

    for (GridPoint r : seg.points) {
      if (r == p || r == q) continue;
      if (!subset_of(cache.get(p, r), entry) || !subset_of(cache.get(r, q), entry)) {
        result.violations.push_back({Axiom::S3, {p, r, q}, {}});
        break;
      }
    }

    // prolongation in both directions; candidates adjacent to the far end
    // stay inside w enlarged by one, so a candidate is lost only to the
    // system's own domain limits
    const std::pair<GridPoint, GridPoint> directions[] = {{p, q}, {q, p}};
    for (const auto& [base, far] : directions) {
      bool satisfied = false;
      bool unanswerable = false;
      const GridPoint candidates[] = {{far.x + 1, far.y},
                                      {far.x, far.y + 1},
                                      {far.x - 1, far.y},
                                      {far.x, far.y - 1}};
      for (GridPoint cand : candidates) {
        if (entry_contains(entry, cand)) continue;
        try {
          if (subset_of(entry, cache.get(base, cand))) {
            satisfied = true;
            break;
          }
        } catch (const std::domain_error&) {
          unanswerable = true;
        }
      }
      if (!satisfied) {
        if (unanswerable)
          result.s4_inconclusive.emplace_back(base, far);
        else
          result.violations.push_back({Axiom::S4, {base, far}, {}});
      }
      if (p == q) break;  // both directions coincide
    }
  });
  return result;
}

CheckResult check_consequences(const SegmentSystem& system, const Window& w,
                               const Window& c3_window) {
  CheckResult result;
  SegmentCache cache(system);

  for_canonical_pairs(w, [&](GridPoint p, GridPoint q) {
    const auto& entry = cache.get(p, q);
    const std::vector<GridPoint>& pts = entry.seg.points;

    // slope-sign coherence across every point pair; a horizontal endpoint
    // pair must satisfy both signs
    const std::int64_t dy = q.y - p.y;
    bool c1_done = false;
    for (std::size_t i = 0; i < pts.size() && !c1_done; ++i)
      for (std::size_t j = i + 1; j < pts.size() && !c1_done; ++j) {
        const std::int64_t prod = (pts[j].x - pts[i].x) * (pts[j].y - pts[i].y);
        if ((dy >= 0 && prod < 0) || (dy <= 0 && prod > 0)) {
          result.violations.push_back({Axiom::C1, {p, q, pts[i], pts[j]}, {}});
          c1_done = true;
        }
      }

    for (GridPoint r : pts)
      if (r.x < std::min(p.x, q.x) || r.x > std::max(p.x, q.x) ||
          r.y < std::min(p.y, q.y) || r.y > std::max(p.y, q.y)) {
        result.violations.push_back({Axiom::C2, {p, q, r}, {}});
        break;
      }
  });

  // pairwise intersections over the c3 window, via per-segment bitsets
  const std::int64_t W = c3_window.width();
  const std::int64_t H = c3_window.height();
  const std::size_t words = static_cast<std::size_t>((W * H + 63) / 64);
  struct Indexed {
    GridPoint p, q;
    const SegmentCache::Entry* entry;
    std::vector<std::uint64_t> bits;
  };
  std::vector<Indexed> items;
  for_canonical_pairs(c3_window, [&](GridPoint p, GridPoint q) {
    Indexed item{p, q, &cache.get(p, q), std::vector<std::uint64_t>(words, 0)};
    for (GridPoint r : item.entry->seg.points) {
      if (!c3_window.contains(r)) continue;  // clipped: scope is the window
      const std::uint64_t idx = static_cast<std::uint64_t>((r.x - c3_window.lo.x) * H +
                                                           (r.y - c3_window.lo.y));
      item.bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    }
    items.push_back(std::move(item));
  });
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      int common = 0;
      for (std::size_t word = 0; word < words; ++word)
        common += std::popcount(items[i].bits[word] & items[j].bits[word]);
      if (common < 2) continue;
      std::vector<GridPoint> shared;
      for (std::size_t word = 0; word < words; ++word) {
        std::uint64_t bitsw = items[i].bits[word] & items[j].bits[word];
        while (bitsw) {
          const int bit = std::countr_zero(bitsw);
          bitsw &= bitsw - 1;
          const std::int64_t idx = static_cast<std::int64_t>(word) * 64 + bit;
          shared.push_back({c3_window.lo.x + idx / H, c3_window.lo.y + idx % H});
        }
      }
      bool done = false;
      for (std::size_t a = 0; a < shared.size() && !done; ++a)
        for (std::size_t b = a + 1; b < shared.size() && !done; ++b) {
          const auto& conn = cache.get(shared[a], shared[b]);
          if (!subset_of(conn, *items[i].entry) || !subset_of(conn, *items[j].entry)) {
            result.violations.push_back({Axiom::C3,
                                         {items[i].p, items[i].q, items[j].p, items[j].q,
                                          shared[a], shared[b]},
                                         {}});
            done = true;
          }
        }
    }
  return result;
}

std::vector<Violation> check_no_cross(const SegmentSystem& system, GridPoint p,
                                      std::int64_t C, const Window& w) {
  struct Event {
    GridPoint target;
    GridPoint at;
    bool up;
  };
  std::vector<Event> events;
  for (std::int64_t tx = p.x; tx + p.y <= C + 1; ++tx) {
    const GridPoint t{tx, C + 1 - tx};
    if (t.y < p.y || !w.contains(t)) continue;
    const DigitalSegment seg = system.segment(p, t);
    for (std::size_t i = 0; i + 1 < seg.points.size(); ++i) {
      const GridPoint u = seg.points[i];
      const GridPoint v = seg.points[i + 1];
      if (u.x + u.y == C && v.x + v.y == C + 1)
        events.push_back({t, u, v.y > u.y});
    }
  }
  for (const Event& up_ev : events) {
    if (!up_ev.up) continue;
    for (const Event& right_ev : events) {
      if (right_ev.up || right_ev.target == up_ev.target) continue;
      if (up_ev.at.x > right_ev.at.x)
        return {{Axiom::NOCROSS,
                 {p, up_ev.target, right_ev.target, up_ev.at, right_ev.at},
                 {C}}};
    }
  }
  return {};
}

std::optional<Violation> check_translation_invariance(const SegmentSystem& system,
                                                      const Window& w) {
  SegmentCache cache(system);
  std::optional<Violation> found;
  for_canonical_pairs(w, [&](GridPoint p, GridPoint q) {
    if (found || q.y < p.y) return;  // negative slope: not covered
    const DigitalSegment seg = cache.get(p, q).seg;
    const std::int64_t tlo = std::max(w.lo.x - p.x, std::max(p.y, q.y) - w.hi.y);
    const std::int64_t thi = std::min(w.hi.x - q.x, std::min(p.y, q.y) - w.lo.y);
    for (std::int64_t t = tlo; t <= thi && !found; ++t) {
      if (t == 0) continue;
      // diagonal translation keeps the pair canonically oriented
      const GridPoint tp{p.x + t, p.y - t};
      const GridPoint tq{q.x + t, q.y - t};
      if (cache.get(tp, tq).seg != translate_diagonal(seg, t))
        found = Violation{Axiom::OBS1, {p, q}, {t}};
    }
  });
  return found;
}

bool InducedOrder::precedes(std::int64_t a, std::int64_t b) const {
  if (!domain.contains(a) || !domain.contains(b))
    throw std::domain_error("value outside the induced order's domain");
  const auto pa = std::find(increasing.begin(), increasing.end(), a);
  const auto pb = std::find(increasing.begin(), increasing.end(), b);
  return pa < pb;
}

TotalOrder InducedOrder::as_total_order() const {
  return TotalOrder::from_listing(increasing);
}

ExtractResult extract_order(const SegmentSystem& system, GridPoint p,
                            IntegerInterval domain) {
  const std::int64_t psum = p.x + p.y;
  if (domain.lo < psum)
    throw std::domain_error("domain must start at or after the base point's diagonal");

  // For each sum E, segments from p to the diagonal E + 1 must reuse a
  // crossing point on diagonal E (one more target than crossing slots); the
  // segment to the first reused crossing decides every comparison with E.
  std::map<std::int64_t, DigitalSegment> prefix;
  for (std::int64_t E = domain.lo + 1; E <= domain.hi; ++E) {
    std::vector<GridPoint> seen;
    std::optional<GridPoint> split;
    for (std::int64_t tx = p.x; tx <= E + 1 - p.y; ++tx) {
      const GridPoint t{tx, E + 1 - tx};
      const CrossStep cs = cross_at(system.segment(p, t), E);
      if (!cs.found)
        throw std::domain_error("segment misses a diagonal it must cross");
      if (std::find(seen.begin(), seen.end(), cs.at) != seen.end()) {
        split = cs.at;
        break;
      }
      seen.push_back(cs.at);
    }
    if (!split) throw std::domain_error("no diagonal crossing is reused");
    prefix.emplace(E, system.segment(p, *split));
  }

  const auto comes_before = [&prefix](std::int64_t a, std::int64_t b) {
    const auto [lo, hi] = std::minmax(a, b);
    const CrossStep cs = cross_at(prefix.at(hi), lo);
    if (!cs.found) throw std::domain_error("prefix segment misses a diagonal");
    // stepping right at the smaller sum ranks it below the larger one
    return a == lo ? !cs.up : cs.up;
  };

  std::vector<std::int64_t> listing;
  for (std::int64_t v = domain.lo; v <= domain.hi; ++v) {
    std::size_t pos = listing.size();
    while (pos > 0 && comes_before(v, listing[pos - 1])) --pos;
    listing.insert(listing.begin() + static_cast<std::ptrdiff_t>(pos), v);
  }

  ExtractResult result;
  for (std::size_t i = 0; i < listing.size(); ++i)
    for (std::size_t j = i + 1; j < listing.size(); ++j)
      if (!comes_before(listing[i], listing[j])) {
        result.conflict = {listing[i], listing[j]};
        return result;
      }
  result.order = InducedOrder{p, domain, std::move(listing)};
  return result;
}

RecoverResult recover_global_order(const SegmentSystem& system, const Window& w,
                                   IntegerInterval domain) {
  RecoverResult rr;
  if (auto viol = check_translation_invariance(system, w)) {
    rr.status = RecoverResult::Status::invariance_violation;
    rr.invariance_witness = std::move(viol);
    return rr;
  }

  std::vector<GridPoint> bases;
  for (std::int64_t x = w.lo.x; x <= w.hi.x; ++x)
    for (std::int64_t y = w.lo.y; y <= w.hi.y; ++y)
      if (x + y <= domain.lo) bases.push_back({x, y});
  if (bases.empty())
    throw std::domain_error("window holds no base point at or below the domain start");

  std::vector<InducedOrder> orders;
  for (GridPoint b : bases) {
    ExtractResult er = extract_order(system, b, domain);
    if (!er.ok()) {
      rr.status = RecoverResult::Status::order_conflict;
      rr.conflict_pair = {{er.conflict->first, er.conflict->second}};
      rr.conflict_bases = {b, b};
      return rr;
    }
    orders.push_back(std::move(*er.order));
  }

  for (std::size_t i = 1; i < orders.size(); ++i) {
    if (orders[i].increasing == orders[0].increasing) continue;
    std::size_t pos = 0;
    while (orders[i].increasing[pos] == orders[0].increasing[pos]) ++pos;
    rr.status = RecoverResult::Status::order_conflict;
    rr.conflict_pair = {{orders[0].increasing[pos], orders[i].increasing[pos]}};
    rr.conflict_bases = {bases[0], bases[i]};
    return rr;
  }

  rr.status = RecoverResult::Status::ok;
  rr.order = std::move(orders[0]);
  return rr;
}

bool check_alternation(const TotalOrder& order, std::int64_t A, int k) {
  if (k < 1 || k > 61) throw std::domain_error("k outside 1..61");
  const std::int64_t half = std::int64_t{1} << k;
  const std::int64_t M = A + half - 1;
  if (two_adic_valuation(M) < ExtendedValuation::finite(k))
    throw std::domain_error("midpoint not divisible by 2^k");
  const std::vector<std::int64_t> listing = sort_interval(order, {A, A + 2 * half - 2});
  int prev = 0;
  for (std::int64_t x : listing) {
    const int side = x < M ? -1 : (x > M ? 1 : 0);
    if (side != 0 && side == prev) return false;
    prev = side;
  }
  return true;
}

}  // namespace cdseg
