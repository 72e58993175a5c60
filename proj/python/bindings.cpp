#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdseg/conformance.hpp"
#include "cdseg/hausdorff.hpp"
#include "cdseg/highdim.hpp"
#include "cdseg/lines.hpp"
#include "cdseg/order.hpp"
#include "cdseg/segment.hpp"

namespace py = pybind11;

namespace {

using cdseg::GridPoint;
using cdseg::IntegerInterval;
using cdseg::TotalOrder;
using cdseg::Window;
using PyPoint = std::pair<std::int64_t, std::int64_t>;

GridPoint to_point(PyPoint p) { return {p.first, p.second}; }

std::vector<PyPoint> from_points(const std::vector<GridPoint>& pts) {
  std::vector<PyPoint> out;
  out.reserve(pts.size());
  for (GridPoint p : pts) out.emplace_back(p.x, p.y);
  return out;
}

Window square_window(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("window size must be non-negative");
  return Window({-n, -n}, {n, n});
}

std::vector<std::string> violation_lines(const std::vector<cdseg::Violation>& vs) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (const cdseg::Violation& v : vs) out.push_back(cdseg::to_json_line(v));
  return out;
}

cdseg::Slope slope_from(const std::string& spec, const TotalOrder& order) {
  return cdseg::Slope::from_spec(spec, order);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "consistent digital line segments derived from total orders on the integers";

  py::class_<TotalOrder>(m, "TotalOrder")
      .def_static("natural", &TotalOrder::natural)
      .def_static("pow2", &TotalOrder::pow2)
      .def_static("permutation", &TotalOrder::permutation, py::arg("seed"),
                  py::arg("lo"), py::arg("hi"))
      .def_static("from_spec", &TotalOrder::from_spec, py::arg("spec"))
      .def("precedes", &TotalOrder::precedes, py::arg("a"), py::arg("b"))
      .def(
          "compare",
          [](const TotalOrder& order, std::int64_t a, std::int64_t b) {
            const auto c = order.compare(a, b);
            return c < 0 ? -1 : c > 0 ? 1 : 0;
          },
          py::arg("a"), py::arg("b"))
      .def("to_spec", &TotalOrder::to_spec)
      .def("__repr__", [](const TotalOrder& order) {
        return "TotalOrder(\"" + order.to_spec() + "\")";
      });

  m.def(
      "sort_interval",
      [](const TotalOrder& order, std::int64_t lo, std::int64_t hi) {
        return cdseg::sort_interval(order, IntegerInterval(lo, hi));
      },
      py::arg("order"), py::arg("lo"), py::arg("hi"),
      "The interval [lo, hi] listed smallest to largest under the order.");

  m.def("vdc_index", &cdseg::vdc_index, py::arg("x"), py::arg("n"),
        "1-based rank of x in the largest-to-smallest pow2 enumeration of "
        "(-2^n, 2^n), computed by bit reversal.");

  m.def(
      "segment",
      [](const TotalOrder& order, PyPoint p, PyPoint q) {
        const cdseg::OrderDerivedSystem sys(order);
        return from_points(sys.segment(to_point(p), to_point(q)).points);
      },
      py::arg("order"), py::arg("p"), py::arg("q"),
      "Digital segment between p and q in the system derived from the order.");

  m.def(
      "system_segment",
      [](const std::string& spec, PyPoint p, PyPoint q) {
        const auto sys = cdseg::system_from_spec(spec);
        return from_points(sys->segment(to_point(p), to_point(q)).points);
      },
      py::arg("system_spec"), py::arg("p"), py::arg("q"),
      "Digital segment in the system named by the spec (order:..., box, "
      "waterline, specialline:FILE, extern:COMMAND).");

  m.def(
      "check_axioms",
      [](const std::string& spec, std::int64_t window) {
        const auto sys = cdseg::system_from_spec(spec);
        const cdseg::CheckResult r = cdseg::check_axioms(*sys, square_window(window));
        py::dict out;
        out["violations"] = violation_lines(r.violations);
        std::vector<std::pair<PyPoint, PyPoint>> open;
        open.reserve(r.s4_inconclusive.size());
        for (const auto& [p, q] : r.s4_inconclusive)
          open.emplace_back(PyPoint{p.x, p.y}, PyPoint{q.x, q.y});
        out["s4_inconclusive"] = open;
        return out;
      },
      py::arg("system_spec"), py::arg("window"),
      "Axiom violations over the square window [-window, window]^2, as JSON "
      "lines, plus the prolongation pairs the window was too small to decide.");

  m.def(
      "check_consequences",
      [](const std::string& spec, std::int64_t window, std::int64_t c3_window) {
        const auto sys = cdseg::system_from_spec(spec);
        return violation_lines(
            cdseg::check_consequences(*sys, square_window(window),
                                      square_window(c3_window))
                .violations);
      },
      py::arg("system_spec"), py::arg("window"), py::arg("c3_window"));

  m.def(
      "check_translation_invariance",
      [](const std::string& spec, std::int64_t window) -> std::optional<std::string> {
        const auto sys = cdseg::system_from_spec(spec);
        const auto v = cdseg::check_translation_invariance(*sys, square_window(window));
        if (!v) return std::nullopt;
        return cdseg::to_json_line(*v);
      },
      py::arg("system_spec"), py::arg("window"),
      "JSON witness line when diagonal translation invariance fails, else None.");

  m.def(
      "hausdorff",
      [](const TotalOrder& order, PyPoint p, PyPoint q) {
        const cdseg::OrderDerivedSystem sys(order);
        return cdseg::hausdorff_distance(sys.segment(to_point(p), to_point(q))).value;
      },
      py::arg("order"), py::arg("p"), py::arg("q"),
      "Hausdorff distance between the digital segment and its straight chord.");

  m.def(
      "bound_check",
      [](const TotalOrder& order, PyPoint p, PyPoint q) {
        const cdseg::OrderDerivedSystem sys(order);
        const cdseg::DigitalSegment seg = sys.segment(to_point(p), to_point(q));
        const cdseg::BoundCheck b = cdseg::check_bound(seg);
        py::dict out;
        out["holds"] = b.holds;
        out["vacuous"] = b.vacuous;
        out["certified"] = b.certified;
        out["hausdorff"] = cdseg::hausdorff_distance(seg).value;
        return out;
      },
      py::arg("order"), py::arg("p"), py::arg("q"),
      "Whether the segment meets hausdorff <= sqrt(5) * log2(L1 length).");

  m.def(
      "extract_order",
      [](const std::string& spec, PyPoint p, std::int64_t lo, std::int64_t hi) {
        const auto sys = cdseg::system_from_spec(spec);
        const cdseg::ExtractResult r =
            cdseg::extract_order(*sys, to_point(p), IntegerInterval(lo, hi));
        if (!r.ok())
          throw std::invalid_argument(
              "order conflict between " + std::to_string(r.conflict->first) +
              " and " + std::to_string(r.conflict->second));
        return r.order->increasing;
      },
      py::arg("system_spec"), py::arg("p"), py::arg("lo"), py::arg("hi"),
      "The order the system's segments from p induce on [lo, hi], listed "
      "smallest to largest.");

  m.def(
      "recover_global_order",
      [](const std::string& spec, std::int64_t window, std::int64_t lo,
         std::int64_t hi) {
        const auto sys = cdseg::system_from_spec(spec);
        const cdseg::RecoverResult r = cdseg::recover_global_order(
            *sys, square_window(window), IntegerInterval(lo, hi));
        py::dict out;
        switch (r.status) {
          case cdseg::RecoverResult::Status::ok:
            out["status"] = "ok";
            break;
          case cdseg::RecoverResult::Status::invariance_violation:
            out["status"] = "invariance_violation";
            break;
          case cdseg::RecoverResult::Status::order_conflict:
            out["status"] = "order_conflict";
            break;
        }
        out["increasing"] =
            r.ok() ? py::cast(r.order->increasing) : py::none().cast<py::object>();
        return out;
      },
      py::arg("system_spec"), py::arg("window"), py::arg("lo"), py::arg("hi"),
      "Recovers one global order explaining every segment in the window, or "
      "reports why none exists.");

  m.def(
      "line_window",
      [](const TotalOrder& order, PyPoint p, const std::string& slope_spec,
         std::int64_t lo, std::int64_t hi) {
        const cdseg::LineWindow lw = cdseg::line_window(
            order, to_point(p), slope_from(slope_spec, order), IntegerInterval(lo, hi));
        return from_points(lw.points);
      },
      py::arg("order"), py::arg("p"), py::arg("slope_spec"), py::arg("lo"),
      py::arg("hi"),
      "Points of the digital line through p with the given slope, restricted "
      "to diagonal sums [lo, hi].");

  m.def(
      "contains_own_segments",
      [](const TotalOrder& order, PyPoint p, const std::string& slope_spec,
         std::int64_t lo, std::int64_t hi) {
        const cdseg::LineWindow lw = cdseg::line_window(
            order, to_point(p), slope_from(slope_spec, order), IntegerInterval(lo, hi));
        return cdseg::contains_own_segments(order, lw);
      },
      py::arg("order"), py::arg("p"), py::arg("slope_spec"), py::arg("lo"),
      py::arg("hi"));

  m.def(
      "parallels_through",
      [](const TotalOrder& order, PyPoint p, const std::string& slope_spec,
         std::int64_t lo, std::int64_t hi, PyPoint through) {
        const cdseg::LineWindow lw = cdseg::line_window(
            order, to_point(p), slope_from(slope_spec, order), IntegerInterval(lo, hi));
        const std::vector<cdseg::Slope> found =
            cdseg::parallels_through(order, lw, to_point(through));
        std::vector<std::string> specs;
        specs.reserve(found.size());
        for (const cdseg::Slope& s : found) specs.push_back(s.to_spec());
        return specs;
      },
      py::arg("order"), py::arg("p"), py::arg("slope_spec"), py::arg("lo"),
      py::arg("hi"), py::arg("through"),
      "Slope specs of the lines through the external point that never cross "
      "the given line inside the window.");

  m.def(
      "segment_d",
      [](const TotalOrder& order, cdseg::GridPointD p, cdseg::GridPointD q) {
        return cdseg::segment_mixed(order, std::move(p), std::move(q));
      },
      py::arg("order"), py::arg("p"), py::arg("q"),
      "Digital segment between d-dimensional endpoints, any slope type.");

  m.def(
      "check_axioms_d",
      [](const TotalOrder& order, cdseg::GridPointD lo, cdseg::GridPointD hi) {
        const std::vector<cdseg::ViolationD> vs =
            cdseg::check_axioms_d(order, {std::move(lo), std::move(hi)});
        std::vector<std::pair<std::string, std::vector<cdseg::GridPointD>>> out;
        out.reserve(vs.size());
        for (const cdseg::ViolationD& v : vs) out.emplace_back(v.axiom, v.points);
        return out;
      },
      py::arg("order"), py::arg("lo"), py::arg("hi"),
      "(axiom, witness points) pairs for every violation in the box.");

  m.def(
      "find_mixed_s3_violation",
      [](const TotalOrder& order, cdseg::GridPointD lo, cdseg::GridPointD hi)
          -> std::optional<std::array<cdseg::GridPointD, 3>> {
        return cdseg::find_mixed_s3_violation(order, {std::move(lo), std::move(hi)});
      },
      py::arg("order"), py::arg("lo"), py::arg("hi"),
      "First (p, q, r) with r on the mixed-slope segment p..q whose own "
      "segment p..r leaves it, or None.");
}
