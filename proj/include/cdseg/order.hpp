#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdseg {

// Exponent of the largest power of two dividing a value; infinite for zero.
struct ExtendedValuation {
  bool infinite = false;
  int exponent = 0;  // meaningless when infinite

  static ExtendedValuation infinity() { return {true, 0}; }
  static ExtendedValuation finite(int e) { return {false, e}; }

  friend bool operator==(const ExtendedValuation& a, const ExtendedValuation& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.exponent == b.exponent;
  }
  friend std::strong_ordering operator<=>(const ExtendedValuation& a,
                                          const ExtendedValuation& b) {
    if (a.infinite && b.infinite) return std::strong_ordering::equal;
    if (a.infinite) return std::strong_ordering::greater;
    if (b.infinite) return std::strong_ordering::less;
    return a.exponent <=> b.exponent;
  }
};

ExtendedValuation two_adic_valuation(std::int64_t k);

// Inclusive interval of integers, lo <= hi.
struct IntegerInterval {
  std::int64_t lo;
  std::int64_t hi;

  IntegerInterval(std::int64_t lo_, std::int64_t hi_);

  std::int64_t size() const { return hi - lo + 1; }
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  friend bool operator==(const IntegerInterval&, const IntegerInterval&) = default;
};

// Strict total order on the integers.
//
// natural      the usual order
// pow2         compares 2-adic valuations, decrementing both operands until
//              the valuations differ; the side with the smaller valuation is
//              the smaller element
// permutation  a seeded shuffle of a finite window; comparisons outside the
//              window are domain errors
class TotalOrder {
 public:
  enum class Kind { natural, pow2, permutation };

  static TotalOrder natural();
  static TotalOrder pow2();
  static TotalOrder permutation(std::uint64_t seed, std::int64_t lo, std::int64_t hi);
  // permutation order given explicitly: listing[0] is the least element;
  // the values must form a contiguous integer range
  static TotalOrder from_listing(const std::vector<std::int64_t>& increasing);

  Kind kind() const { return kind_; }
  // present for permutation kinds only
  std::optional<IntegerInterval> window() const;

  bool precedes(std::int64_t a, std::int64_t b) const;
  std::strong_ordering compare(std::int64_t a, std::int64_t b) const;
  // like compare; also reports how many valuation comparisons the pow2 loop
  // performed (1 for the other kinds)
  std::strong_ordering compare_counting(std::int64_t a, std::int64_t b,
                                        std::uint64_t* rounds) const;

  std::string to_spec() const;
  // accepts "natural", "pow2", "perm:<seed>:<lo>:<hi>"
  static TotalOrder from_spec(const std::string& spec);

 private:
  TotalOrder() = default;

  Kind kind_ = Kind::natural;
  std::uint64_t seed_ = 0;
  bool explicit_listing_ = false;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::vector<std::int64_t> rank_;  // rank_[v - lo_] = position from the bottom
};

// The interval listed smallest to largest under the order.
std::vector<std::int64_t> sort_interval(const TotalOrder& order, IntegerInterval iv);

// Is s one of the k largest elements of iv under the order?  s must lie in iv
// and 0 <= k <= iv.size().
bool is_among_k_greatest(const TotalOrder& order, std::int64_t s, IntegerInterval iv,
                         std::int64_t k);

// mask[i] == is_among_k_greatest(order, iv.lo + i, iv, k), computed in one
// pass over the interval
std::vector<char> top_k_mask(const TotalOrder& order, IntegerInterval iv, std::int64_t k);

// The low `bits` bits of value, mirrored.  value must fit in `bits` bits.
std::uint64_t bit_reverse(std::uint64_t value, int bits);

// 1-based position of x in the largest-to-smallest pow2 enumeration of
// (-2^n, 2^n), computed by bit reversal instead of comparisons.  n >= 1.
std::int64_t vdc_index(std::int64_t x, int n);

}  // namespace cdseg
