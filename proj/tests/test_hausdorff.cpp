#include "cdseg/hausdorff.hpp"

#include <cmath>
#include <tuple>
#include <vector>

#include "cdseg/order.hpp"
#include "cdseg/segment.hpp"
#include "test_util.hpp"

namespace {

using cdseg::DigitalSegment;
using cdseg::Distance;
using cdseg::GridPoint;
using cdseg::OrderDerivedSystem;
using cdseg::SweepConfig;
using cdseg::SweepRow;
using cdseg::SweepSummary;
using cdseg::TotalOrder;

constexpr double kEps = 1e-12;

bool point_distance_examples() {
  const Distance diag = cdseg::point_segment_distance({2, 0}, {0, 0}, {2, 2});
  CHECK(std::abs(diag.value - std::sqrt(2.0)) < kEps);
  CHECK(diag.sq_num == 2 * diag.sq_den);

  CHECK(cdseg::point_segment_distance({1, 1}, {0, 0}, {3, 3}).sq_num == 0);

  const Distance clamped = cdseg::point_segment_distance({-1, 0}, {0, 0}, {2, 0});
  CHECK(clamped.value == 1.0);
  CHECK(clamped.sq_num == 1 && clamped.sq_den == 1);

  const Distance point = cdseg::point_segment_distance({1, 2}, {3, 4}, {3, 4});
  CHECK(point.sq_num == 8 && point.sq_den == 1);
  return true;
}

bool exact_squared_comparisons() {
  const Distance root2 = cdseg::point_segment_distance({2, 0}, {0, 0}, {2, 2});
  const Distance one = cdseg::point_segment_distance({-1, 0}, {0, 0}, {2, 0});
  CHECK(cdseg::sq_less(one, root2));
  CHECK(!cdseg::sq_less(root2, one));
  CHECK(!cdseg::sq_less(root2, root2));

  // unreduced 16/8 against reduced 2/1 still compares equal
  Distance a;
  a.sq_num = 16;
  a.sq_den = 8;
  Distance b;
  b.sq_num = 2;
  b.sq_den = 1;
  CHECK(!cdseg::sq_less(a, b) && !cdseg::sq_less(b, a));
  return true;
}

bool natural_diagonal_distance() {
  const OrderDerivedSystem sys(TotalOrder::natural());
  const Distance h = cdseg::hausdorff_distance(sys.segment({0, 0}, {2, 2}));
  CHECK(std::abs(h.value - std::sqrt(2.0)) < kEps);
  CHECK(h.sq_num == 2 * h.sq_den);

  CHECK(cdseg::hausdorff_distance(sys.segment({0, 0}, {5, 0})).sq_num == 0);
  return true;
}

bool pow2_example_within_bound() {
  const OrderDerivedSystem sys(TotalOrder::pow2());
  const DigitalSegment seg = sys.segment({2, 3}, {7, 5});
  const Distance h = cdseg::hausdorff_distance(seg);
  CHECK(h.value <= std::sqrt(5.0) + kEps);
  const cdseg::BoundCheck bc = cdseg::check_bound(seg);
  CHECK(bc.holds && !bc.vacuous && bc.certified);
  return true;
}

bool chord_direction_sampling() {
  const OrderDerivedSystem natural(TotalOrder::natural());
  const OrderDerivedSystem pow2(TotalOrder::pow2());
  cdseg::hausdorff_distance(natural.segment({0, 0}, {2, 2}), true);
  cdseg::hausdorff_distance(pow2.segment({2, 3}, {7, 5}), true);
  cdseg::hausdorff_distance(pow2.segment({0, 0}, {0, 4}), true);
  cdseg::hausdorff_distance(pow2.segment({1, 1}, {1, 1}), true);
  cdseg::hausdorff_distance(pow2.segment({3, 5}, {11, -2}), true);
  return true;
}

// distance from a unit step's midpoint to a chord of integer slope x peaks at
// x = 2, which pins the constant sqrt(5)/2 in the bound
bool unit_step_midpoint_constant() {
  const double limit = std::sqrt(5.0) / 2.0;
  double best = 0.0;
  std::int64_t arg = -1;
  for (std::int64_t x = 0; x <= 4096; ++x) {
    const double f = (static_cast<double>(x) + 0.5) /
                     std::sqrt(static_cast<double>(x) * static_cast<double>(x) + 1.0);
    CHECK(f <= limit + kEps);
    if (f > best) {
      best = f;
      arg = x;
    }
  }
  CHECK(arg == 2);
  CHECK(std::abs(best - limit) < kEps);
  return true;
}

bool bound_tiers() {
  const OrderDerivedSystem pow2(TotalOrder::pow2());
  const OrderDerivedSystem natural(TotalOrder::natural());

  const cdseg::BoundCheck vac = cdseg::check_bound(pow2.segment({0, 0}, {1, 0}));
  CHECK(vac.vacuous && vac.holds && vac.certified);

  const cdseg::BoundCheck two = cdseg::check_bound(pow2.segment({0, 0}, {1, 1}));
  CHECK(!two.vacuous && two.holds && two.certified);

  // the natural order needs H = n/sqrt(2) on (0,0)-(n,n); the logarithmic
  // bound gives out between n = 8 and n = 16
  const cdseg::BoundCheck n8 = cdseg::check_bound(natural.segment({0, 0}, {8, 8}));
  CHECK(n8.holds && n8.certified);
  const cdseg::BoundCheck n16 = cdseg::check_bound(natural.segment({0, 0}, {16, 16}));
  CHECK(!n16.holds && n16.certified);
  const cdseg::BoundCheck n32 = cdseg::check_bound(natural.segment({0, 0}, {32, 32}));
  CHECK(!n32.holds && n32.certified);
  return true;
}

bool subsegment_inequality() {
  const TotalOrder pow2 = TotalOrder::pow2();
  const OrderDerivedSystem sys(pow2);
  const DigitalSegment seg = sys.segment({0, 0}, {13, 8});
  for (std::size_t i = 0; i < seg.size(); ++i)
    for (std::size_t j = i + 1; j < seg.size(); ++j)
      CHECK(cdseg::check_subsegment_inequality(pow2, {0, 0}, {13, 8}, seg.points[i],
                                               seg.points[j]));

  CHECK(seg.contains({0, 1}));  // 0 tops every interval, so the walk climbs first
  CHECK_THROWS(cdseg::check_subsegment_inequality(pow2, {0, 0}, {13, 8}, {-1, 0}, {13, 8}),
               std::domain_error);
  return true;
}

bool natural_sweep_finds_violations() {
  SweepConfig config;
  config.mode = SweepConfig::Mode::exhaustive;
  config.window = 16;
  const SweepSummary s = cdseg::sweep(TotalOrder::natural(), config);
  CHECK(s.pairs == 41616);  // C(289, 2)
  CHECK(s.bound_violations > 0);
  CHECK(std::abs(s.max_hausdorff - 8.0 * std::sqrt(2.0)) < kEps);
  CHECK(s.argmax_p == (GridPoint{0, 0}) && s.argmax_q == (GridPoint{16, 16}));
  return true;
}

bool pow2_sweep_is_clean() {
  SweepConfig config;
  config.mode = SweepConfig::Mode::exhaustive;
  config.window = 8;
  const SweepSummary s = cdseg::sweep(TotalOrder::pow2(), config);
  CHECK(s.bound_violations == 0);
  CHECK(s.uncertified == 0);
  CHECK(s.vacuous > 0);
  CHECK(s.max_ratio <= std::sqrt(5.0) + kEps);
  return true;
}

bool sweep_rows_match_direct_computation() {
  SweepConfig config;
  config.mode = SweepConfig::Mode::exhaustive;
  config.window = 5;
  std::vector<SweepRow> rows;
  cdseg::sweep(TotalOrder::pow2(), config,
               [&rows](const SweepRow& row) { rows.push_back(row); });

  const OrderDerivedSystem sys(TotalOrder::pow2());
  for (const SweepRow& row : rows) {
    const Distance direct = cdseg::hausdorff_distance(sys.segment(row.p, row.q));
    CHECK(row.hausdorff == direct.value);  // memoized classes share exact values
  }

  std::vector<SweepRow> again;
  cdseg::sweep(TotalOrder::pow2(), config,
               [&again](const SweepRow& row) { again.push_back(row); });
  CHECK(rows.size() == again.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].p == again[i].p && rows[i].q == again[i].q);
    CHECK(rows[i].hausdorff == again[i].hausdorff);
    CHECK(rows[i].bound == again[i].bound && rows[i].ratio == again[i].ratio);
  }
  return true;
}

bool random_sweep_is_deterministic() {
  SweepConfig config;
  config.mode = SweepConfig::Mode::random;
  config.count = 150;
  config.max_l = 256;
  config.seed = 7;

  const auto run = [&config]() {
    std::vector<std::tuple<GridPoint, GridPoint, double>> rows;
    cdseg::sweep(TotalOrder::pow2(), config, [&rows](const SweepRow& row) {
      rows.emplace_back(row.p, row.q, row.hausdorff);
    });
    return rows;
  };
  const auto first = run();
  const auto second = run();
  CHECK(first.size() == 150);
  CHECK(first == second);

  SweepConfig other = config;
  other.seed = 8;
  std::vector<std::tuple<GridPoint, GridPoint, double>> different;
  cdseg::sweep(TotalOrder::pow2(), other, [&different](const SweepRow& row) {
    different.emplace_back(row.p, row.q, row.hausdorff);
  });
  CHECK(different != first);

  const SweepSummary s = cdseg::sweep(TotalOrder::pow2(), config);
  CHECK(s.pairs == 150);
  CHECK(s.bound_violations == 0);
  return true;
}

bool sweep_validates_config() {
  SweepConfig bad;
  bad.mode = SweepConfig::Mode::exhaustive;
  bad.window = -1;
  CHECK_THROWS(cdseg::sweep(TotalOrder::pow2(), bad), std::invalid_argument);
  bad.window = std::int64_t{1} << 20;
  CHECK_THROWS(cdseg::sweep(TotalOrder::pow2(), bad), std::invalid_argument);

  SweepConfig zero;
  zero.mode = SweepConfig::Mode::random;
  zero.max_l = 0;
  CHECK_THROWS(cdseg::sweep(TotalOrder::pow2(), zero), std::invalid_argument);
  return true;
}

const cdseg_test::TestCase kTests[] = {
    {"point distance examples", point_distance_examples},
    {"exact squared comparisons", exact_squared_comparisons},
    {"natural diagonal distance", natural_diagonal_distance},
    {"pow2 example within bound", pow2_example_within_bound},
    {"chord direction sampling", chord_direction_sampling},
    {"unit step midpoint constant", unit_step_midpoint_constant},
    {"bound tiers", bound_tiers},
    {"subsegment inequality", subsegment_inequality},
    {"natural sweep finds violations", natural_sweep_finds_violations},
    {"pow2 sweep is clean", pow2_sweep_is_clean},
    {"sweep rows match direct computation", sweep_rows_match_direct_computation},
    {"random sweep is deterministic", random_sweep_is_deterministic},
    {"sweep validates config", sweep_validates_config},
};

}  // namespace

int main() { return cdseg_test::run_all(kTests); }
