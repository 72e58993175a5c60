#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdseg/conformance.hpp"
#include "cdseg/hausdorff.hpp"
#include "cdseg/highdim.hpp"
#include "cdseg/lines.hpp"
#include "cdseg/order.hpp"
#include "cdseg/render.hpp"
#include "cdseg/segment.hpp"

namespace {

using cdseg::GridPoint;
using cdseg::IntegerInterval;
using cdseg::Window;

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::vector<std::string>> named;
};

Args parse_args(int argc, char** argv, int from) {
  Args args;
  for (int i = from; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0) {
      args.positional.push_back(arg);
      continue;
    }
    std::string name = arg.substr(2), value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name.resize(eq);
    } else {
      if (++i >= argc) throw std::invalid_argument("missing value for --" + name);
      value = argv[i];
    }
    args.named[name].push_back(value);
  }
  return args;
}

void reject_unknown_flags(const Args& args, const std::set<std::string>& allowed) {
  for (const auto& [name, values] : args.named) {
    (void)values;
    if (!allowed.count(name)) throw std::invalid_argument("unknown flag --" + name);
  }
}

std::optional<std::string> flag(const Args& args, const std::string& name) {
  const auto it = args.named.find(name);
  if (it == args.named.end()) return std::nullopt;
  return it->second.back();
}

std::string require_flag(const Args& args, const std::string& name) {
  const auto value = flag(args, name);
  if (!value) throw std::invalid_argument("missing required flag --" + name);
  return *value;
}

std::int64_t parse_i64(const std::string& text) {
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

std::int64_t flag_i64(const Args& args, const std::string& name, std::int64_t fallback) {
  const auto value = flag(args, name);
  return value ? parse_i64(*value) : fallback;
}

GridPoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected a point \"x,y\", got \"" + text + "\"");
  return {parse_i64(text.substr(0, comma)), parse_i64(text.substr(comma + 1))};
}

std::pair<GridPoint, GridPoint> parse_point_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("expected a pair \"x,y:u,v\", got \"" + text + "\"");
  return {parse_point(text.substr(0, colon)), parse_point(text.substr(colon + 1))};
}

IntegerInterval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected an interval \"lo,hi\", got \"" + text + "\"");
  return IntegerInterval(parse_i64(text.substr(0, comma)), parse_i64(text.substr(comma + 1)));
}

Window square_window(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("window size must be non-negative");
  return Window({-n, -n}, {n, n});
}

void write_output(const Args& args, const std::string& content) {
  const auto path = flag(args, "out");
  if (!path) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("cannot write " + *path);
}

int usage() {
  std::fputs(
      "usage: cdseg <command> ...\n"
      "\n"
      "  render --system <spec> --pair x,y:u,v [--pair ...] [--fan N]\n"
      "         [--bounds x,y:u,v] [--cell N] [--format svg|ppm] [--out FILE]\n"
      "  verify <system-spec> [axioms|consequences|obs1|all]\n"
      "         [--window N] [--c3-window N]\n"
      "  sweep  <order-spec> (--exhaustive N | --random COUNT)\n"
      "         [--max-l L] [--seed S]\n"
      "  extract <system-spec> --point x,y --domain lo,hi\n"
      "  lines  <order-spec> --slope <spec> --point x,y --diag lo,hi\n"
      "         [--parallels-through x,y]\n"
      "  demo3d [--order <spec>] [--window N]\n"
      "\n"
      "system specs: order:<orderspec>, box, waterline, specialline:<file>,\n"
      "              extern:<command>\n"
      "order specs:  natural, pow2, perm:<seed>:<lo>:<hi>\n"
      "slope specs:  all, empty, ratinc:<c>, ratexc:<c>, pred:<file>\n"
      "\n"
      "exit codes: 0 clean, 1 violation or witness found, 2 config/transport error\n",
      stderr);
  return 2;
}

int cmd_render(const Args& args) {
  reject_unknown_flags(args, {"system", "pair", "fan", "bounds", "cell", "format", "out"});
  if (!args.positional.empty()) throw std::invalid_argument("render takes no positional arguments");

  const auto system = cdseg::system_from_spec(flag(args, "system").value_or("order:pow2"));

  std::vector<std::pair<GridPoint, GridPoint>> pairs;
  if (const auto it = args.named.find("pair"); it != args.named.end())
    for (const std::string& text : it->second) pairs.push_back(parse_point_pair(text));
  if (const auto fan = flag(args, "fan")) {
    const std::int64_t n = parse_i64(*fan);
    if (n < 1) throw std::invalid_argument("--fan needs a positive size");
    for (std::int64_t x = 0; x <= n; ++x)
      for (std::int64_t y = 0; y <= n; ++y)
        if ((x == 0 || y == 0 || x == n || y == n) && !(x == 0 && y == 0))
          pairs.push_back({{0, 0}, {x, y}});
  }
  if (pairs.empty()) throw std::invalid_argument("nothing to render: give --pair or --fan");

  std::vector<cdseg::RenderItem> items;
  items.reserve(pairs.size());
  for (const auto& [p, q] : pairs) items.push_back({system->segment(p, q), true});

  Window bounds = [&] {
    const auto text = flag(args, "bounds");
    if (!text) return cdseg::bounding_window(items, 1);
    const auto [lo, hi] = parse_point_pair(*text);
    return Window(lo, hi);
  }();
  for (const auto& [p, q] : pairs)
    if (!bounds.contains(p) || !bounds.contains(q))
      throw std::invalid_argument("bounds do not contain every endpoint");

  cdseg::RenderOptions opt(bounds);
  opt.cell = static_cast<int>(flag_i64(args, "cell", 16));
  const std::string format = flag(args, "format").value_or("svg");
  if (format == "svg")
    write_output(args, cdseg::render_svg(items, opt));
  else if (format == "ppm")
    write_output(args, cdseg::render_ppm(items, opt));
  else
    throw std::invalid_argument("unknown format \"" + format + "\"");
  return 0;
}

int cmd_verify(const Args& args) {
  reject_unknown_flags(args, {"window", "c3-window"});
  if (args.positional.empty() || args.positional.size() > 2)
    throw std::invalid_argument("verify needs a system spec and optionally a suite name");
  const auto system = cdseg::system_from_spec(args.positional[0]);
  const std::string which = args.positional.size() == 2 ? args.positional[1] : "all";

  const std::int64_t n = flag_i64(args, "window", 4);
  const Window w = square_window(n);
  const Window c3 = square_window(flag_i64(args, "c3-window", std::min<std::int64_t>(n, 4)));

  std::vector<cdseg::Violation> violations;
  std::vector<std::pair<GridPoint, GridPoint>> inconclusive;
  const bool all = which == "all";
  if (all || which == "axioms") {
    cdseg::CheckResult r = cdseg::check_axioms(*system, w);
    violations.insert(violations.end(), r.violations.begin(), r.violations.end());
    inconclusive.insert(inconclusive.end(), r.s4_inconclusive.begin(), r.s4_inconclusive.end());
  } else if (!all && which != "consequences" && which != "obs1") {
    throw std::invalid_argument("unknown suite \"" + which + "\"");
  }
  if (all || which == "consequences") {
    cdseg::CheckResult r = cdseg::check_consequences(*system, w, c3);
    violations.insert(violations.end(), r.violations.begin(), r.violations.end());
  }
  if (all || which == "obs1") {
    if (const auto v = cdseg::check_translation_invariance(*system, w)) violations.push_back(*v);
  }

  for (const cdseg::Violation& v : violations) std::printf("%s\n", cdseg::to_json_line(v).c_str());
  for (const auto& [p, q] : inconclusive)
    std::printf("{\"inconclusive\":\"S4\",\"pair\":[[%lld,%lld],[%lld,%lld]]}\n",
                static_cast<long long>(p.x), static_cast<long long>(p.y),
                static_cast<long long>(q.x), static_cast<long long>(q.y));
  return violations.empty() ? 0 : 1;
}

int cmd_sweep(const Args& args) {
  reject_unknown_flags(args, {"exhaustive", "random", "max-l", "seed"});
  if (args.positional.size() != 1) throw std::invalid_argument("sweep needs an order spec");
  const cdseg::TotalOrder order = cdseg::TotalOrder::from_spec(args.positional[0]);

  cdseg::SweepConfig config;
  const auto exhaustive = flag(args, "exhaustive");
  const auto random = flag(args, "random");
  if (exhaustive && !random) {
    config.mode = cdseg::SweepConfig::Mode::exhaustive;
    config.window = parse_i64(*exhaustive);
  } else if (random && !exhaustive) {
    config.mode = cdseg::SweepConfig::Mode::random;
    config.count = static_cast<std::uint64_t>(parse_i64(*random));
  } else {
    throw std::invalid_argument("sweep needs exactly one of --exhaustive or --random");
  }
  config.max_l = flag_i64(args, "max-l", 1 << 16);
  config.seed = static_cast<std::uint64_t>(flag_i64(args, "seed", 1));

  std::printf("px,py,qx,qy,L,hausdorff,bound,ratio\n");
  const cdseg::SweepSummary summary =
      cdseg::sweep(order, config, [](const cdseg::SweepRow& row) {
        std::printf("%lld,%lld,%lld,%lld,%lld,%.12g,%.12g,%.12g\n",
                    static_cast<long long>(row.p.x), static_cast<long long>(row.p.y),
                    static_cast<long long>(row.q.x), static_cast<long long>(row.q.y),
                    static_cast<long long>(row.l1), row.hausdorff, row.bound, row.ratio);
      });
  std::fprintf(stderr,
               "pairs=%llu vacuous=%llu violations=%llu uncertified=%llu "
               "max_hausdorff=%.12g at (%lld,%lld)-(%lld,%lld) max_ratio=%.12g\n",
               static_cast<unsigned long long>(summary.pairs),
               static_cast<unsigned long long>(summary.vacuous),
               static_cast<unsigned long long>(summary.bound_violations),
               static_cast<unsigned long long>(summary.uncertified), summary.max_hausdorff,
               static_cast<long long>(summary.argmax_p.x),
               static_cast<long long>(summary.argmax_p.y),
               static_cast<long long>(summary.argmax_q.x),
               static_cast<long long>(summary.argmax_q.y), summary.max_ratio);
  return summary.bound_violations == 0 ? 0 : 1;
}

int cmd_extract(const Args& args) {
  reject_unknown_flags(args, {"point", "domain"});
  if (args.positional.size() != 1) throw std::invalid_argument("extract needs a system spec");
  const auto system = cdseg::system_from_spec(args.positional[0]);
  const GridPoint p = parse_point(require_flag(args, "point"));
  const IntegerInterval domain = parse_interval(require_flag(args, "domain"));

  const cdseg::ExtractResult result = cdseg::extract_order(*system, p, domain);
  if (!result.ok()) {
    std::fprintf(stderr, "order conflict between %lld and %lld\n",
                 static_cast<long long>(result.conflict->first),
                 static_cast<long long>(result.conflict->second));
    return 1;
  }
  const std::vector<std::int64_t>& increasing = result.order->increasing;
  for (std::size_t i = 0; i < increasing.size(); ++i)
    std::printf("%s%lld", i ? " " : "", static_cast<long long>(increasing[i]));
  std::printf("\n");
  return 0;
}

int cmd_lines(const Args& args) {
  reject_unknown_flags(args, {"slope", "point", "diag", "parallels-through"});
  if (args.positional.size() != 1) throw std::invalid_argument("lines needs an order spec");
  const cdseg::TotalOrder order = cdseg::TotalOrder::from_spec(args.positional[0]);
  const cdseg::Slope slope = cdseg::Slope::from_spec(require_flag(args, "slope"), order);
  const GridPoint p = parse_point(require_flag(args, "point"));
  const IntegerInterval diag = parse_interval(require_flag(args, "diag"));

  const cdseg::LineWindow lw = cdseg::line_window(order, p, slope, diag);
  std::printf("line:");
  for (GridPoint r : lw.points)
    std::printf(" %lld,%lld", static_cast<long long>(r.x), static_cast<long long>(r.y));
  std::printf("\n");

  const bool closed = cdseg::contains_own_segments(order, lw);
  std::printf("contains_own_segments: %s\n", closed ? "true" : "false");

  if (const auto through = flag(args, "parallels-through")) {
    const std::vector<cdseg::Slope> parallels =
        cdseg::parallels_through(order, lw, parse_point(*through));
    std::printf("parallels:");
    for (const cdseg::Slope& s : parallels) std::printf(" %s", s.to_spec().c_str());
    std::printf("\n");
  }
  return closed ? 0 : 1;
}

int cmd_demo3d(const Args& args) {
  reject_unknown_flags(args, {"order", "window"});
  if (!args.positional.empty()) throw std::invalid_argument("demo3d takes no positional arguments");
  const cdseg::TotalOrder order =
      cdseg::TotalOrder::from_spec(flag(args, "order").value_or("pow2"));
  const std::int64_t n = flag_i64(args, "window", 3);
  if (n < 1) throw std::invalid_argument("window size must be positive");

  const std::vector<cdseg::ViolationD> violations =
      cdseg::check_axioms_d(order, cdseg::BoxD{{0, 0, 0}, {n, n, n}});
  std::printf("axioms3d violations over [0,%lld]^3: %zu\n", static_cast<long long>(n),
              violations.size());

  const auto witness =
      cdseg::find_mixed_s3_violation(order, cdseg::BoxD{{-n, -n, -n}, {n, n, n}});
  if (witness) {
    const auto point = [](const cdseg::GridPointD& r) {
      return "(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," +
             std::to_string(r[2]) + ")";
    };
    std::printf("mixed-s3-witness: p=%s q=%s r=%s\n", point((*witness)[0]).c_str(),
                point((*witness)[1]).c_str(), point((*witness)[2]).c_str());
  } else {
    std::printf("mixed-s3-witness: NONE\n");
  }
  return (witness || !violations.empty()) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  const std::string command = argv[1];
  try {
    const Args args = parse_args(argc, argv, 2);
    if (command == "render") return cmd_render(args);
    if (command == "verify") return cmd_verify(args);
    if (command == "sweep") return cmd_sweep(args);
    if (command == "extract") return cmd_extract(args);
    if (command == "lines") return cmd_lines(args);
    if (command == "demo3d") return cmd_demo3d(args);
    std::fprintf(stderr, "unknown command \"%s\"\n", command.c_str());
    return usage();
  } catch (const cdseg::TransportError& e) {
    std::fprintf(stderr, "transport error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
