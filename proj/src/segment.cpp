#include "cdseg/segment.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace cdseg {

namespace {

// canonical non-negative slope walk: up exactly at the k largest sums of the
// segment's diagonal interval
DigitalSegment walk_up_right(const TotalOrder& order, GridPoint p, GridPoint q) {
  DigitalSegment seg;
  seg.points.reserve(static_cast<std::size_t>((q.x - p.x) + (q.y - p.y) + 1));
  seg.points.push_back(p);
  if (p == q) return seg;
  const std::int64_t A = p.x + p.y;
  const std::int64_t B = q.x + q.y;
  const std::int64_t k = q.y - p.y;
  const std::vector<char> up = top_k_mask(order, IntegerInterval(A, B - 1), k);
  GridPoint cur = p;
  for (std::int64_t s = A; s < B; ++s) {
    if (up[static_cast<std::size_t>(s - A)])
      ++cur.y;
    else
      ++cur.x;
    seg.points.push_back(cur);
  }
  if (cur != q) throw std::logic_error("up-step mask does not reach the endpoint");
  return seg;
}

// mirror a canonical negative-slope pair across the y axis, walk the
// resulting non-negative pair, and mirror back; the mirrored walk runs from
// q's image to p's image, so the result is reversed
template <typename NonNegWalk>
DigitalSegment mirrored_walk(GridPoint p, GridPoint q, const NonNegWalk& walk) {
  const DigitalSegment m = walk(GridPoint{-q.x, q.y}, GridPoint{-p.x, p.y});
  DigitalSegment seg;
  seg.points.reserve(m.points.size());
  for (std::size_t i = m.points.size(); i-- > 0;)
    seg.points.push_back({-m.points[i].x, m.points[i].y});
  return seg;
}

DigitalSegment box_walk(GridPoint p, GridPoint q) {
  DigitalSegment seg;
  seg.points.push_back(p);
  GridPoint cur = p;
  const auto x_run = [&](std::int64_t tx) {
    while (cur.x < tx) seg.points.push_back({++cur.x, cur.y});
  };
  const auto y_run = [&](std::int64_t ty) {
    while (cur.y < ty) seg.points.push_back({cur.x, ++cur.y});
    while (cur.y > ty) seg.points.push_back({cur.x, --cur.y});
  };
  if (p.y <= q.y) {
    x_run(q.x);
    y_run(q.y);
  } else {
    y_run(q.y);
    x_run(q.x);
  }
  return seg;
}

DigitalSegment waterline_nonneg(GridPoint p, GridPoint q) {
  DigitalSegment seg;
  seg.points.push_back(p);
  GridPoint cur = p;
  const auto right_to = [&](std::int64_t tx) {
    while (cur.x < tx) seg.points.push_back({++cur.x, cur.y});
  };
  const auto up_to = [&](std::int64_t ty) {
    while (cur.y < ty) seg.points.push_back({cur.x, ++cur.y});
  };
  // the horizontal run happens on whichever endpoint row is nearest the
  // x axis, or on the axis itself when the segment crosses it
  if (p.y >= 0) {
    right_to(q.x);
    up_to(q.y);
  } else if (q.y <= 0) {
    up_to(q.y);
    right_to(q.x);
  } else {
    up_to(0);
    right_to(q.x);
    up_to(q.y);
  }
  return seg;
}

}  // namespace

DigitalSegment SegmentSystem::segment(GridPoint p, GridPoint q) const {
  const bool swapped = q < p;
  if (swapped) std::swap(p, q);
  DigitalSegment seg = build(p, q);
  if (swapped) std::reverse(seg.points.begin(), seg.points.end());
  return seg;
}

OrderDerivedSystem::OrderDerivedSystem(TotalOrder order) : order_(std::move(order)) {}

std::string OrderDerivedSystem::spec() const { return "order:" + order_.to_spec(); }

DigitalSegment OrderDerivedSystem::build(GridPoint p, GridPoint q) const {
  if (p.y <= q.y) return walk_up_right(order_, p, q);
  return mirrored_walk(p, q, [this](GridPoint a, GridPoint b) {
    return walk_up_right(order_, a, b);
  });
}

Prolongation OrderDerivedSystem::prolong(GridPoint p, GridPoint q) const {
  if (p.x > q.x || p.y > q.y)
    throw std::domain_error("prolongation needs p <= q componentwise");
  const std::int64_t A = p.x + p.y;
  const std::int64_t B = q.x + q.y;
  const std::int64_t k = q.y - p.y;
  // climbing is valid iff the next sum ranks among the k + 1 largest of the
  // extended interval; running on iff it does not rank among the k largest
  const bool vertical = is_among_k_greatest(order_, B, IntegerInterval(A, B), k + 1);
  const bool horizontal = !is_among_k_greatest(order_, B, IntegerInterval(A, B), k);
  if (vertical) return {{q.x, q.y + 1}, horizontal};
  return {{q.x + 1, q.y}, false};
}

std::string BoxBoundarySystem::spec() const { return "box"; }

DigitalSegment BoxBoundarySystem::build(GridPoint p, GridPoint q) const {
  return box_walk(p, q);
}

std::string WaterlineSystem::spec() const { return "waterline"; }

DigitalSegment WaterlineSystem::build(GridPoint p, GridPoint q) const {
  if (p.y <= q.y) return waterline_nonneg(p, q);
  // the waterline rule is symmetric across the y axis
  return mirrored_walk(p, q, waterline_nonneg);
}

MonotonePath::MonotonePath(std::vector<GridPoint> pts) : points(std::move(pts)) {
  if (points.size() < 2) throw std::invalid_argument("staircase needs at least two points");
  bool some_up = false, some_right = false;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const std::int64_t dx = points[i].x - points[i - 1].x;
    const std::int64_t dy = points[i].y - points[i - 1].y;
    if (dx == 1 && dy == 0)
      some_right = true;
    else if (dx == 0 && dy == 1)
      some_up = true;
    else
      throw std::invalid_argument("staircase must step right or up");
  }
  if (!some_up || !some_right)
    throw std::invalid_argument("staircase must not be a single row or column");
}

MonotonePath MonotonePath::load(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open staircase file: " + filename);
  std::vector<GridPoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    GridPoint p;
    if (!(ls >> p.x >> p.y))
      throw std::invalid_argument("malformed staircase line: " + line);
    pts.push_back(p);
  }
  return MonotonePath(std::move(pts));
}

SpecialLineSystem::SpecialLineSystem(MonotonePath path)
    : path_(std::move(path)),
      covered_({path_.points.front().x + 1, path_.points.front().y + 1},
               {path_.points.back().x - 1, path_.points.back().y - 1}),
      x0_(path_.points.front().x) {
  const std::int64_t cols = path_.points.back().x - x0_ + 1;
  ylo_.assign(static_cast<std::size_t>(cols), 0);
  yhi_.assign(static_cast<std::size_t>(cols), 0);
  std::int64_t col = 0;
  ylo_[0] = yhi_[0] = path_.points.front().y;
  for (std::size_t i = 1; i < path_.points.size(); ++i) {
    if (path_.points[i].x > path_.points[i - 1].x) {
      ++col;
      ylo_[static_cast<std::size_t>(col)] = path_.points[i].y;
    }
    yhi_[static_cast<std::size_t>(col)] = path_.points[i].y;
  }
}

std::string SpecialLineSystem::spec() const { return "specialline"; }

bool SpecialLineSystem::on_line(GridPoint r) const {
  if (r.x < x0_ || r.x > path_.points.back().x) return false;
  return ylo(r.x) <= r.y && r.y <= yhi(r.x);
}

std::int64_t SpecialLineSystem::ylo(std::int64_t x) const {
  return ylo_[static_cast<std::size_t>(x - x0_)];
}

std::int64_t SpecialLineSystem::yhi(std::int64_t x) const {
  return yhi_[static_cast<std::size_t>(x - x0_)];
}

DigitalSegment SpecialLineSystem::build(GridPoint p, GridPoint q) const {
  if (!covered_.contains(p) || !covered_.contains(q))
    throw std::domain_error("endpoint outside the staircase's covered window");
  if (p.y > q.y) return box_walk(p, q);

  DigitalSegment seg;
  seg.points.push_back(p);
  GridPoint cur = p;
  while (cur != q) {
    GridPoint next;
    if (on_line(cur)) {
      if (cur.y == q.y)
        next = {cur.x + 1, cur.y};
      else if (cur.x == q.x)
        next = {cur.x, cur.y + 1};
      else if (on_line({cur.x, cur.y + 1}))
        next = {cur.x, cur.y + 1};  // follow the staircase
      else
        next = {cur.x + 1, cur.y};
    } else if (cur.y > yhi(cur.x)) {
      // above: right first, climb only in the destination column
      next = (cur.x == q.x) ? GridPoint{cur.x, cur.y + 1} : GridPoint{cur.x + 1, cur.y};
    } else {
      // below: climb first, run only on the destination row
      next = (cur.y == q.y) ? GridPoint{cur.x + 1, cur.y} : GridPoint{cur.x, cur.y + 1};
    }
    cur = next;
    seg.points.push_back(cur);
  }
  return seg;
}

struct ExternalSystem::Child {
  pid_t pid = -1;
  FILE* to = nullptr;
  FILE* from = nullptr;
  std::mutex mu;

  ~Child() {
    if (to) std::fclose(to);
    if (from) std::fclose(from);
    if (pid > 0) waitpid(pid, nullptr, 0);
  }
};

ExternalSystem::ExternalSystem(std::string command) : command_(std::move(command)) {}

ExternalSystem::~ExternalSystem() = default;

std::string ExternalSystem::spec() const { return "extern:" + command_; }

void ExternalSystem::ensure_child() const {
  if (child_) return;
  // a dying child must surface as a failed write, not kill this process
  std::signal(SIGPIPE, SIG_IGN);
  int to_child[2], from_child[2];
  if (pipe(to_child) != 0) throw TransportError("pipe failed");
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw TransportError("pipe failed");
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    throw TransportError("fork failed");
  }
  if (pid == 0) {
    dup2(to_child[0], 0);
    dup2(from_child[1], 1);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  auto child = std::make_unique<Child>();
  child->pid = pid;
  child->to = fdopen(to_child[1], "w");
  child->from = fdopen(from_child[0], "r");
  if (!child->to || !child->from) {
    if (!child->to) close(to_child[1]);
    if (!child->from) close(from_child[0]);
    throw TransportError("fdopen failed");
  }
  child_ = std::move(child);
}

DigitalSegment ExternalSystem::build(GridPoint p, GridPoint q) const {
  ensure_child();
  std::lock_guard<std::mutex> lock(child_->mu);
  if (std::fprintf(child_->to, "SEG %lld %lld %lld %lld\n",
                   static_cast<long long>(p.x), static_cast<long long>(p.y),
                   static_cast<long long>(q.x), static_cast<long long>(q.y)) < 0 ||
      std::fflush(child_->to) != 0)
    throw TransportError("cannot write to external oracle: " + command_);

  char* line = nullptr;
  std::size_t cap = 0;
  const ssize_t len = getline(&line, &cap, child_->from);
  if (len < 0) {
    std::free(line);
    throw TransportError("external oracle closed the stream: " + command_);
  }
  DigitalSegment seg;
  char* cursor = line;
  char* end = nullptr;
  errno = 0;
  const long long n = std::strtoll(cursor, &end, 10);
  bool ok = end != cursor && errno == 0 && n >= 1;
  if (ok) {
    cursor = end;
    seg.points.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n && ok; ++i) {
      const long long x = std::strtoll(cursor, &end, 10);
      ok = end != cursor;
      cursor = end;
      if (!ok) break;
      const long long y = std::strtoll(cursor, &end, 10);
      ok = end != cursor;
      cursor = end;
      if (ok) seg.points.push_back({x, y});
    }
    if (ok) {
      while (*cursor == ' ' || *cursor == '\n' || *cursor == '\r') ++cursor;
      ok = *cursor == '\0';
    }
  }
  std::free(line);
  if (!ok) throw TransportError("malformed oracle response: " + command_);
  return seg;
}

std::unique_ptr<SegmentSystem> system_from_spec(const std::string& spec) {
  if (spec.rfind("order:", 0) == 0)
    return std::make_unique<OrderDerivedSystem>(TotalOrder::from_spec(spec.substr(6)));
  if (spec == "box") return std::make_unique<BoxBoundarySystem>();
  if (spec == "waterline") return std::make_unique<WaterlineSystem>();
  if (spec.rfind("specialline:", 0) == 0)
    return std::make_unique<SpecialLineSystem>(MonotonePath::load(spec.substr(12)));
  if (spec.rfind("extern:", 0) == 0)
    return std::make_unique<ExternalSystem>(spec.substr(7));
  throw std::invalid_argument("unknown system spec: " + spec);
}

}  // namespace cdseg
