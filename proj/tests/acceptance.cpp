#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cdseg/conformance.hpp"
#include "cdseg/hausdorff.hpp"
#include "cdseg/highdim.hpp"
#include "cdseg/lines.hpp"
#include "cdseg/order.hpp"
#include "cdseg/segment.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

namespace {

using cdseg::BoxBoundarySystem;
using cdseg::DigitalSegment;
using cdseg::GridPoint;
using cdseg::IntegerInterval;
using cdseg::OrderDerivedSystem;
using cdseg::TotalOrder;
using cdseg::WaterlineSystem;
using cdseg::Window;

std::string g_cdseg;

bool chain_of_small_integers() {
  const TotalOrder pow2 = TotalOrder::pow2();
  const std::int64_t chain[] = {-1, -5, 3, -3, 5, 1, -2, 6, -6, 2, -4, 4, 0};
  for (std::size_t i = 0; i < std::size(chain); ++i)
    for (std::size_t j = i + 1; j < std::size(chain); ++j) {
      CHECK(pow2.precedes(chain[i], chain[j]));
      CHECK(pow2.compare(chain[i], chain[j]) < 0);
    }
  return true;
}

bool frozen_interval_listing() {
  std::vector<std::int64_t> listing =
      cdseg::sort_interval(TotalOrder::pow2(), IntegerInterval(5, 11));
  std::reverse(listing.begin(), listing.end());
  CHECK(listing == (std::vector<std::int64_t>{8, 10, 6, 9, 5, 11, 7}));
  return true;
}

bool van_der_corput_oracle() {
  const TotalOrder pow2 = TotalOrder::pow2();
  for (int n = 1; n <= 10; ++n) {
    const std::int64_t half = std::int64_t{1} << n;
    std::vector<std::int64_t> decreasing =
        cdseg::sort_interval(pow2, IntegerInterval(-half + 1, half - 1));
    std::reverse(decreasing.begin(), decreasing.end());
    CHECK(decreasing.size() == static_cast<std::size_t>(2 * half - 1));

    // the bit-reversal oracle fixes every rank without any comparisons
    for (std::size_t i = 0; i < decreasing.size(); ++i)
      CHECK(cdseg::vdc_index(decreasing[i], n) == static_cast<std::int64_t>(i) + 1);

    // mapped under 0.5 - x/2^(n+1), every dyadic level-prefix carries the
    // same values as the van der corput prefix of that length: the halves
    // before the quarters before the eighths, scaled here by 2^(n+1)
    std::vector<std::uint64_t> scaled;
    scaled.reserve(decreasing.size());
    for (std::int64_t x : decreasing)
      scaled.push_back(static_cast<std::uint64_t>(half - x));
    for (int j = 1; j <= n + 1; ++j) {
      const std::size_t prefix = (std::size_t{1} << j) - 1;
      std::vector<std::uint64_t> got(
          scaled.begin(), scaled.begin() + static_cast<std::ptrdiff_t>(prefix));
      std::sort(got.begin(), got.end());
      for (std::size_t k = 0; k < prefix; ++k)
        CHECK(got[k] == (k + 1) << (n + 1 - j));
    }
  }
  return true;
}

bool axioms_and_consequences_exhaustively() {
  const Window w{{-8, -8}, {8, 8}};
  const Window c3w{{-4, -4}, {4, 4}};
  std::vector<TotalOrder> orders = {TotalOrder::natural(), TotalOrder::pow2()};
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    orders.push_back(TotalOrder::permutation(seed, -32, 32));
  for (const TotalOrder& order : orders) {
    const OrderDerivedSystem sys(order);
    const cdseg::CheckResult axioms = cdseg::check_axioms(sys, w);
    CHECK(axioms.violations.empty());
    CHECK(axioms.s4_inconclusive.empty());
    const cdseg::CheckResult consequences = cdseg::check_consequences(sys, w, c3w);
    CHECK(consequences.violations.empty());
  }
  return true;
}

bool natural_walks_match_box_boundaries() {
  const OrderDerivedSystem natural((TotalOrder::natural()));
  CHECK(natural.segment({0, 0}, {2, 2}).points ==
        (std::vector<GridPoint>{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}));

  const BoxBoundarySystem box;
  for (std::int64_t px = -8; px <= 8; ++px)
    for (std::int64_t py = -8; py <= 8; ++py)
      for (std::int64_t qx = px; qx <= 8; ++qx)
        for (std::int64_t qy = -8; qy <= 8; ++qy) {
          const GridPoint p{px, py}, q{qx, qy};
          CHECK(natural.segment(p, q) == box.segment(p, q));
        }
  return true;
}

bool rounding_violates_subsegment_closure() {
  const cdseg_test::RoundingSystem sys;
  const cdseg::CheckResult r = cdseg::check_axioms(sys, Window{{0, 0}, {4, 1}});
  const std::vector<GridPoint> witness = {{0, 0}, {1, 0}, {4, 1}};
  const bool found = std::any_of(
      r.violations.begin(), r.violations.end(), [&](const cdseg::Violation& v) {
        return v.axiom == cdseg::Axiom::S3 && v.points == witness;
      });
  CHECK(found);
  return true;
}

bool hausdorff_stays_under_the_log_bound() {
  const TotalOrder pow2 = TotalOrder::pow2();

  cdseg::SweepConfig exhaustive;
  exhaustive.mode = cdseg::SweepConfig::Mode::exhaustive;
  exhaustive.window = 64;
  const cdseg::SweepSummary a = cdseg::sweep(pow2, exhaustive, {});
  CHECK(a.pairs == 8923200);
  CHECK(a.bound_violations == 0);
  CHECK(a.uncertified == 0);

  cdseg::SweepConfig random;
  random.mode = cdseg::SweepConfig::Mode::random;
  random.count = 10000;
  random.max_l = std::int64_t{1} << 16;
  random.seed = 1;
  const cdseg::SweepSummary b = cdseg::sweep(pow2, random, {});
  CHECK(b.pairs == 10000);
  CHECK(b.bound_violations == 0);
  CHECK(b.uncertified == 0);
  return true;
}

bool subsegments_at_most_double_the_distance() {
  const TotalOrder pow2 = TotalOrder::pow2();
  const OrderDerivedSystem sys(pow2);

  // distances repeat within diagonal translation classes, and mirrored
  // negative-slope pairs share them by isometry; one representative each
  std::map<std::array<std::int64_t, 3>, std::pair<GridPoint, GridPoint>> classes;
  for (std::int64_t px = 0; px <= 16; ++px)
    for (std::int64_t py = 0; py <= 16; ++py)
      for (std::int64_t qx = px; qx <= 16; ++qx)
        for (std::int64_t qy = 0; qy <= 16; ++qy) {
          const GridPoint p{px, py}, q{qx, qy};
          if (q.x == p.x && q.y <= p.y) continue;
          std::int64_t a = p.x + p.y;
          const std::int64_t dx = q.x - p.x;
          std::int64_t dy = q.y - p.y;
          if (dy < 0) {
            a = q.y - q.x;
            dy = -dy;
          }
          classes.try_emplace({a, dx, dy}, p, q);
        }

  for (const auto& [key, pair] : classes) {
    (void)key;
    const DigitalSegment seg = sys.segment(pair.first, pair.second);
    const cdseg::Distance full = cdseg::hausdorff_distance(seg);
    const std::size_t n = seg.points.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const DigitalSegment sub{std::vector<GridPoint>(
            seg.points.begin() + static_cast<std::ptrdiff_t>(i),
            seg.points.begin() + static_cast<std::ptrdiff_t>(j) + 1)};
        const cdseg::Distance d = cdseg::hausdorff_distance(sub);
        CHECK(d.sq_num * full.sq_den <= 4 * full.sq_num * d.sq_den);
      }
  }

  // the library entry point agrees on a sample segment and rejects strays
  const DigitalSegment sample = sys.segment({0, 0}, {11, 7});
  for (std::size_t i = 0; i < sample.points.size(); ++i)
    for (std::size_t j = i + 1; j < sample.points.size(); ++j)
      CHECK(cdseg::check_subsegment_inequality(pow2, {0, 0}, {11, 7},
                                               sample.points[i], sample.points[j]));
  CHECK_THROWS(
      cdseg::check_subsegment_inequality(pow2, {0, 0}, {11, 7}, {0, 0}, {11, 0}),
      std::domain_error);
  return true;
}

bool enumeration_alternates_around_midpoints() {
  const TotalOrder pow2 = TotalOrder::pow2();
  for (int k = 1; k <= 8; ++k) {
    const std::int64_t half = std::int64_t{1} << k;
    const std::int64_t reach = std::int64_t{1} << (k + 2);
    for (std::int64_t A = -reach; A <= reach; ++A) {
      const std::int64_t midpoint = A + half - 1;
      if (((midpoint % half) + half) % half != 0) continue;
      CHECK(cdseg::check_alternation(pow2, A, k));
    }
  }
  return true;
}

bool induced_orders_extract_and_recover() {
  const std::vector<TotalOrder> orders = {TotalOrder::pow2(), TotalOrder::natural(),
                                          TotalOrder::permutation(5, -64, 64),
                                          TotalOrder::permutation(12, -64, 64)};
  const IntegerInterval domains[] = {{0, 63}, {-32, 31}, {-5, 10}, {7, 7}};
  for (const TotalOrder& order : orders) {
    const OrderDerivedSystem sys(order);
    for (IntegerInterval domain : domains) {
      const cdseg::ExtractResult r =
          cdseg::extract_order(sys, {domain.lo, 0}, domain);
      CHECK(r.ok());
      CHECK(r.order->increasing == cdseg::sort_interval(order, domain));
      for (std::int64_t a = domain.lo; a <= domain.hi; ++a)
        for (std::int64_t b = domain.lo; b <= domain.hi; ++b)
          if (a != b) CHECK(r.order->precedes(a, b) == order.precedes(a, b));
    }
  }

  const WaterlineSystem water;
  const cdseg::ExtractResult shore =
      cdseg::extract_order(water, {0, -2}, IntegerInterval(-2, 5));
  CHECK(shore.ok());
  CHECK(shore.order->increasing ==
        (std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, -1, -2}));

  const Window w{{-4, -4}, {4, 4}};
  const IntegerInterval domain{0, 6};
  const cdseg::RecoverResult rejected = cdseg::recover_global_order(water, w, domain);
  CHECK(rejected.status == cdseg::RecoverResult::Status::invariance_violation);
  CHECK(rejected.invariance_witness.has_value());
  for (const TotalOrder& order :
       {TotalOrder::pow2(), TotalOrder::natural(), TotalOrder::permutation(3, -16, 16)}) {
    const OrderDerivedSystem sys(order);
    const cdseg::RecoverResult got = cdseg::recover_global_order(sys, w, domain);
    CHECK(got.ok());
    CHECK(got.order->increasing == cdseg::sort_interval(order, domain));
  }
  return true;
}

bool digital_lines_contain_their_segments() {
  const TotalOrder pow2 = TotalOrder::pow2();
  const cdseg::Slope proxy = cdseg::Slope::window_predicate(
      pow2, IntegerInterval(0, 32), {0, 8, 16, 24, 32});

  const cdseg::Slope plain[] = {
      cdseg::Slope::all(),
      cdseg::Slope::empty(),
      cdseg::Slope::rational_inclusive(0),
      cdseg::Slope::rational_exclusive(0),
      cdseg::Slope::rational_inclusive(3),
      cdseg::Slope::rational_exclusive(-5),
  };
  for (const cdseg::Slope& slope : plain)
    for (std::int64_t lo : {-16, -9, -4, 0, 3})
      for (std::int64_t len = 0; len <= 31; ++len) {
        const cdseg::LineWindow lw =
            cdseg::line_window(pow2, {lo, 0}, slope, IntegerInterval(lo, lo + len));
        CHECK(cdseg::contains_own_segments(pow2, lw));
      }
  for (std::int64_t lo : {0, 7})
    for (std::int64_t len = 0; len <= 31 && lo + len <= 32; ++len) {
      const cdseg::LineWindow lw =
          cdseg::line_window(pow2, {lo, 0}, proxy, IntegerInterval(lo, lo + len));
      CHECK(cdseg::contains_own_segments(pow2, lw));
    }

  const cdseg::LineWindow rational = cdseg::line_window(
      pow2, {0, 0}, cdseg::Slope::rational_inclusive(0), IntegerInterval(-2, 2));
  CHECK(cdseg::parallels_through(pow2, rational, {3, 0}).size() == 2);

  const cdseg::LineWindow proxied =
      cdseg::line_window(pow2, {8, 0}, proxy, IntegerInterval(5, 20));
  CHECK(cdseg::parallels_through(pow2, proxied, {12, 0}).size() == 1);
  return true;
}

bool three_dimensions_keep_the_axioms() {
  const cdseg::BoxD box{{0, 0, 0}, {5, 5, 5}};
  std::vector<TotalOrder> orders = {TotalOrder::pow2(), TotalOrder::natural()};
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    orders.push_back(TotalOrder::permutation(seed, -32, 32));
  for (const TotalOrder& order : orders)
    CHECK(cdseg::check_axioms_d(order, box).empty());

  const auto witness = cdseg::find_mixed_s3_violation(
      TotalOrder::pow2(), cdseg::BoxD{{-3, -3, -3}, {3, 3, 3}});
  CHECK(witness.has_value());
  CHECK((*witness)[0] == (cdseg::GridPointD{-3, -3, -1}));
  CHECK((*witness)[1] == (cdseg::GridPointD{-2, 1, -2}));
  CHECK((*witness)[2] == (cdseg::GridPointD{-2, 1, -1}));
  return true;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cdseg(const std::string& args) {
  const std::string command = "'" + g_cdseg + "' " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.out.append(buffer, got);
  const int status = pclose(pipe);
  if (status >= 0 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

bool cli_output_is_byte_deterministic() {
  const char* commands[] = {
      "render --system order:pow2 --fan 5",
      "render --system box --pair 0,0:7,3 --format ppm",
      "verify waterline all --window 5",
      "sweep pow2 --random 200 --max-l 4096 --seed 9",
      "extract waterline --point 0,-2 --domain -2,5",
      "lines pow2 --slope ratinc:0 --point 0,0 --diag -2,2 --parallels-through 3,0",
      "demo3d --window 2",
  };
  for (const char* command : commands) {
    const RunResult a = run_cdseg(command);
    const RunResult b = run_cdseg(command);
    CHECK(a.exit_code >= 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
  return true;
}

const cdseg_test::TestCase kCriteria[] = {
    {"criterion 1: small integers compare along the frozen chain",
     chain_of_small_integers},
    {"criterion 2: interval [5,11] sorts to the frozen listing",
     frozen_interval_listing},
    {"criterion 3: enumeration matches the van der corput oracle",
     van_der_corput_oracle},
    {"criterion 4: axioms and consequences hold exhaustively",
     axioms_and_consequences_exhaustively},
    {"criterion 5: natural order walks match box boundaries",
     natural_walks_match_box_boundaries},
    {"criterion 6: chord rounding violates subsegment closure",
     rounding_violates_subsegment_closure},
    {"criterion 7: hausdorff stays under the log bound",
     hausdorff_stays_under_the_log_bound},
    {"criterion 8: subsegments at most double the chord distance",
     subsegments_at_most_double_the_distance},
    {"criterion 9: enumeration alternates around midpoints",
     enumeration_alternates_around_midpoints},
    {"criterion 10: induced orders extract and recover",
     induced_orders_extract_and_recover},
    {"criterion 11: digital lines contain their segments",
     digital_lines_contain_their_segments},
    {"criterion 12: three dimensions keep the axioms",
     three_dimensions_keep_the_axioms},
    {"criterion 13: cli output is byte deterministic",
     cli_output_is_byte_deterministic},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <cdseg-binary>\n");
    return 2;
  }
  g_cdseg = argv[1];
  return cdseg_test::run_all(kCriteria);
}
