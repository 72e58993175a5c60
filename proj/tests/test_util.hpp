#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

#include "cdseg/geometry.hpp"

namespace cdseg_test {

struct TestCase {
  const char* name;
  bool (*fn)();
};

#define CHECK(cond)                                                         \
  do {                                                                      \
    if (!(cond)) {                                                          \
      std::printf("  check failed at %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return false;                                                         \
    }                                                                       \
  } while (0)

#define CHECK_THROWS(expr, exception_type)                                  \
  do {                                                                      \
    bool caught_ = false;                                                   \
    try {                                                                   \
      (void)(expr);                                                         \
    } catch (const exception_type&) {                                       \
      caught_ = true;                                                       \
    }                                                                       \
    if (!caught_) {                                                         \
      std::printf("  expected %s from %s at %s:%d\n", #exception_type, #expr, \
                  __FILE__, __LINE__);                                      \
      return false;                                                         \
    }                                                                       \
  } while (0)

inline std::string str(cdseg::GridPoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

inline std::string str(const cdseg::DigitalSegment& seg) {
  std::string out;
  for (cdseg::GridPoint p : seg.points) {
    if (!out.empty()) out += " ";
    out += str(p);
  }
  return out;
}

template <std::size_t N>
int run_all(const TestCase (&tests)[N]) {
  int failed = 0;
  for (const TestCase& t : tests) {
    const bool ok = t.fn();
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", t.name);
    if (!ok) ++failed;
  }
  if (failed) {
    std::printf("%d of %zu tests failed\n", failed, N);
    return 1;
  }
  std::printf("all %zu tests passed\n", N);
  return 0;
}

}  // namespace cdseg_test
