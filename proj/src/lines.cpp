#include "cdseg/lines.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace cdseg {

namespace {

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got \"" + text + "\"");
  }
  if (used != text.size()) throw std::invalid_argument("expected an integer, got \"" + text + "\"");
  return value;
}

std::int64_t least_under(const TotalOrder& order, const std::vector<std::int64_t>& values) {
  std::int64_t best = values.front();
  for (std::int64_t v : values)
    if (order.precedes(v, best)) best = v;
  return best;
}

std::int64_t greatest_under(const TotalOrder& order, const std::vector<std::int64_t>& values) {
  std::int64_t best = values.front();
  for (std::int64_t v : values)
    if (order.precedes(best, v)) best = v;
  return best;
}

std::vector<std::int64_t> without(std::vector<std::int64_t> values, std::int64_t v) {
  values.erase(std::remove(values.begin(), values.end(), v), values.end());
  return values;
}

std::vector<std::int64_t> with(std::vector<std::int64_t> values, std::int64_t v) {
  values.insert(std::lower_bound(values.begin(), values.end(), v), v);
  return values;
}

}  // namespace

Slope Slope::all() {
  Slope s;
  s.variant_ = SlopeVariant::all;
  return s;
}

Slope Slope::empty() {
  Slope s;
  s.variant_ = SlopeVariant::empty;
  return s;
}

Slope Slope::rational_inclusive(std::int64_t c) {
  Slope s;
  s.variant_ = SlopeVariant::rational_inclusive;
  s.cut_ = c;
  return s;
}

Slope Slope::rational_exclusive(std::int64_t c) {
  Slope s;
  s.variant_ = SlopeVariant::rational_exclusive;
  s.cut_ = c;
  return s;
}

Slope Slope::window_predicate(const TotalOrder& order, IntegerInterval domain,
                              std::vector<std::int64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::int64_t m : members)
    if (!domain.contains(m))
      throw std::invalid_argument("slope member outside the stated domain");
  for (std::int64_t m : members)
    for (std::int64_t s = domain.lo; s <= domain.hi; ++s)
      if (order.precedes(m, s) && !std::binary_search(members.begin(), members.end(), s))
        throw std::invalid_argument("slope members are not upward closed in the domain");
  Slope slope;
  slope.variant_ = SlopeVariant::window_predicate;
  slope.domain_lo_ = domain.lo;
  slope.domain_hi_ = domain.hi;
  slope.members_ = std::move(members);
  return slope;
}

std::optional<std::int64_t> Slope::cut() const {
  if (variant_ == SlopeVariant::rational_inclusive || variant_ == SlopeVariant::rational_exclusive)
    return cut_;
  return std::nullopt;
}

std::optional<IntegerInterval> Slope::domain() const {
  if (variant_ == SlopeVariant::window_predicate)
    return IntegerInterval(domain_lo_, domain_hi_);
  return std::nullopt;
}

const std::vector<std::int64_t>& Slope::members() const { return members_; }

bool Slope::contains(const TotalOrder& order, std::int64_t s) const {
  switch (variant_) {
    case SlopeVariant::all:
      return true;
    case SlopeVariant::empty:
      return false;
    case SlopeVariant::rational_inclusive:
      return s == cut_ || order.precedes(cut_, s);
    case SlopeVariant::rational_exclusive:
      return s != cut_ && order.precedes(cut_, s);
    case SlopeVariant::window_predicate:
      if (s < domain_lo_ || s > domain_hi_)
        throw std::domain_error("sum outside the slope's domain");
      return std::binary_search(members_.begin(), members_.end(), s);
  }
  throw std::logic_error("unhandled slope variant");
}

std::string Slope::to_spec() const {
  std::ostringstream out;
  switch (variant_) {
    case SlopeVariant::all:
      return "all";
    case SlopeVariant::empty:
      return "empty";
    case SlopeVariant::rational_inclusive:
      out << "ratinc:" << cut_;
      return out.str();
    case SlopeVariant::rational_exclusive:
      out << "ratexc:" << cut_;
      return out.str();
    case SlopeVariant::window_predicate:
      out << "pred:" << domain_lo_ << ".." << domain_hi_ << ":";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i > 0) out << ",";
        out << members_[i];
      }
      return out.str();
  }
  throw std::logic_error("unhandled slope variant");
}

Slope Slope::from_spec(const std::string& spec, const TotalOrder& order) {
  if (spec == "all") return all();
  if (spec == "empty") return empty();
  if (spec.rfind("ratinc:", 0) == 0) return rational_inclusive(parse_int(spec.substr(7)));
  if (spec.rfind("ratexc:", 0) == 0) return rational_exclusive(parse_int(spec.substr(7)));
  if (spec.rfind("pred:", 0) == 0) return load_predicate(spec.substr(5), order);
  throw std::invalid_argument("unknown slope spec \"" + spec + "\"");
}

Slope Slope::load_predicate(const std::string& filename, const TotalOrder& order) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open predicate file \"" + filename + "\"");
  std::vector<std::int64_t> values;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) values.push_back(parse_int(token));
  }
  if (values.size() < 2)
    throw std::invalid_argument("predicate file must list a domain: lo hi members...");
  const IntegerInterval domain(values[0], values[1]);
  return window_predicate(order, domain, {values.begin() + 2, values.end()});
}

GridPoint LineWindow::point_at(std::int64_t sum) const {
  if (sum < diag.lo || sum > diag.hi + 1)
    throw std::domain_error("diagonal sum outside the line window");
  return points[static_cast<std::size_t>(sum - diag.lo)];
}

bool LineWindow::up_at(std::int64_t sum) const {
  if (!diag.contains(sum)) throw std::domain_error("no step at this diagonal sum");
  return point_at(sum + 1).y > point_at(sum).y;
}

bool LineWindow::contains_point(GridPoint r) const {
  const std::int64_t sum = r.x + r.y;
  if (sum < diag.lo || sum > diag.hi + 1) return false;
  return point_at(sum) == r;
}

LineWindow line_window(const TotalOrder& order, GridPoint p, const Slope& slope,
                       IntegerInterval diag) {
  const std::int64_t psum = p.x + p.y;
  if (psum < diag.lo || psum > diag.hi + 1)
    throw std::domain_error("base point lies outside the diagonal window");
  if (const auto dom = slope.domain(); dom && !(dom->lo <= diag.lo && diag.hi <= dom->hi))
    throw std::domain_error("slope domain does not cover the diagonal window");

  std::vector<GridPoint> points(static_cast<std::size_t>(diag.size() + 1));
  points[static_cast<std::size_t>(psum - diag.lo)] = p;
  GridPoint cur = p;
  for (std::int64_t s = psum; s <= diag.hi; ++s) {
    cur = slope.contains(order, s) ? GridPoint{cur.x, cur.y + 1} : GridPoint{cur.x + 1, cur.y};
    points[static_cast<std::size_t>(s + 1 - diag.lo)] = cur;
  }
  cur = p;
  for (std::int64_t s = psum - 1; s >= diag.lo; --s) {
    cur = slope.contains(order, s) ? GridPoint{cur.x, cur.y - 1} : GridPoint{cur.x - 1, cur.y};
    points[static_cast<std::size_t>(s - diag.lo)] = cur;
  }
  return LineWindow{diag, std::move(points), slope};
}

bool contains_own_segments(const TotalOrder& order, const LineWindow& lw) {
  const OrderDerivedSystem system(order);
  const std::size_t n = lw.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::vector<GridPoint> expected(lw.points.begin() + static_cast<std::ptrdiff_t>(i),
                                            lw.points.begin() + static_cast<std::ptrdiff_t>(j + 1));
      if (system.segment(lw.points[i], lw.points[j]).points != expected) return false;
    }
  }
  return true;
}

IntersectionClass classify_intersection(const LineWindow& a, const LineWindow& b) {
  if (!(a.diag == b.diag))
    throw std::invalid_argument("line windows cover different diagonal ranges");
  std::vector<std::int64_t> shared;
  for (std::int64_t s = a.diag.lo; s <= a.diag.hi + 1; ++s)
    if (a.point_at(s) == b.point_at(s)) shared.push_back(s);
  if (shared.empty()) return IntersectionClass::disjoint;
  for (std::size_t k = 1; k < shared.size(); ++k)
    if (shared[k] != shared[k - 1] + 1)
      throw std::invalid_argument("shared points do not form one contiguous run");
  if (shared.front() == a.diag.lo || shared.back() == a.diag.hi + 1)
    return IntersectionClass::common_halfline_in_window;
  return IntersectionClass::cross_with_common_segment;
}

std::vector<Slope> parallels_through(const TotalOrder& order, const LineWindow& lw,
                                     GridPoint p) {
  if (lw.contains_point(p)) throw std::domain_error("point lies on the line");
  const std::int64_t psum = p.x + p.y;
  if (psum < lw.diag.lo || psum > lw.diag.hi + 1)
    throw std::domain_error("point lies outside the diagonal window");

  const Slope& base = lw.slope;
  std::vector<Slope> candidates{base};
  bool rational_pair = false;
  switch (base.variant()) {
    case SlopeVariant::all: {
      std::vector<std::int64_t> sums;
      for (std::int64_t s = lw.diag.lo; s <= lw.diag.hi; ++s) sums.push_back(s);
      candidates.push_back(
          Slope::window_predicate(order, lw.diag, without(sums, least_under(order, sums))));
      break;
    }
    case SlopeVariant::empty: {
      std::vector<std::int64_t> sums;
      for (std::int64_t s = lw.diag.lo; s <= lw.diag.hi; ++s) sums.push_back(s);
      candidates.push_back(
          Slope::window_predicate(order, lw.diag, {greatest_under(order, sums)}));
      break;
    }
    case SlopeVariant::rational_inclusive:
      candidates.push_back(Slope::rational_exclusive(*base.cut()));
      rational_pair = true;
      break;
    case SlopeVariant::rational_exclusive:
      candidates.push_back(Slope::rational_inclusive(*base.cut()));
      rational_pair = true;
      break;
    case SlopeVariant::window_predicate: {
      const IntegerInterval dom = *base.domain();
      const std::vector<std::int64_t>& members = base.members();
      if (!members.empty())
        candidates.push_back(Slope::window_predicate(
            order, dom, without(members, least_under(order, members))));
      std::vector<std::int64_t> rest;
      for (std::int64_t s = dom.lo; s <= dom.hi; ++s)
        if (!std::binary_search(members.begin(), members.end(), s)) rest.push_back(s);
      if (!rest.empty())
        candidates.push_back(
            Slope::window_predicate(order, dom, with(members, greatest_under(order, rest))));
      break;
    }
  }

  std::vector<Slope> parallels;
  std::vector<std::vector<GridPoint>> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    LineWindow candidate = line_window(order, p, candidates[i], lw.diag);
    const bool duplicate =
        std::find(seen.begin(), seen.end(), candidate.points) != seen.end();
    if (duplicate) {
      // The changed sum lies outside the window.  For a rational slope the
      // two global parallels are then indistinguishable here; a predicate
      // slope merely repeats the unique candidate.
      if (rational_pair && i > 0)
        throw std::domain_error("window too small to separate the candidate slopes");
      continue;
    }
    seen.push_back(candidate.points);
    if (classify_intersection(lw, candidate) != IntersectionClass::cross_with_common_segment)
      parallels.push_back(candidates[i]);
  }
  return parallels;
}

}  // namespace cdseg
