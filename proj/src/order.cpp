#include "cdseg/order.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace cdseg {

namespace {

// Fisher-Yates with an explicitly pinned draw rule so listings never depend
// on the standard library's shuffle implementation.
std::vector<std::int64_t> shuffled_range(std::uint64_t seed, std::int64_t lo,
                                         std::int64_t hi) {
  std::vector<std::int64_t> vals;
  vals.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t v = lo; v <= hi; ++v) vals.push_back(v);
  std::mt19937_64 gen(seed);
  for (std::size_t i = vals.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
    std::swap(vals[i], vals[j]);
  }
  return vals;
}

int finite_valuation(std::int64_t k) {
  return std::countr_zero(static_cast<std::uint64_t>(k));
}

}  // namespace

ExtendedValuation two_adic_valuation(std::int64_t k) {
  if (k == 0) return ExtendedValuation::infinity();
  return ExtendedValuation::finite(finite_valuation(k));
}

IntegerInterval::IntegerInterval(std::int64_t lo_, std::int64_t hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) throw std::invalid_argument("interval bounds out of order");
}

TotalOrder TotalOrder::natural() {
  TotalOrder o;
  o.kind_ = Kind::natural;
  return o;
}

TotalOrder TotalOrder::pow2() {
  TotalOrder o;
  o.kind_ = Kind::pow2;
  return o;
}

TotalOrder TotalOrder::permutation(std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("permutation window out of order");
  TotalOrder o;
  o.kind_ = Kind::permutation;
  o.seed_ = seed;
  o.lo_ = lo;
  o.hi_ = hi;
  const std::vector<std::int64_t> listing = shuffled_range(seed, lo, hi);
  o.rank_.assign(listing.size(), 0);
  for (std::size_t pos = 0; pos < listing.size(); ++pos)
    o.rank_[static_cast<std::size_t>(listing[pos] - lo)] = static_cast<std::int64_t>(pos);
  return o;
}

TotalOrder TotalOrder::from_listing(const std::vector<std::int64_t>& increasing) {
  if (increasing.empty()) throw std::invalid_argument("empty listing");
  const auto [mn, mx] = std::minmax_element(increasing.begin(), increasing.end());
  TotalOrder o;
  o.kind_ = Kind::permutation;
  o.explicit_listing_ = true;
  o.lo_ = *mn;
  o.hi_ = *mx;
  if (static_cast<std::uint64_t>(o.hi_ - o.lo_ + 1) != increasing.size())
    throw std::invalid_argument("listing is not a contiguous integer range");
  o.rank_.assign(increasing.size(), -1);
  for (std::size_t pos = 0; pos < increasing.size(); ++pos) {
    auto& slot = o.rank_[static_cast<std::size_t>(increasing[pos] - o.lo_)];
    if (slot != -1) throw std::invalid_argument("listing repeats a value");
    slot = static_cast<std::int64_t>(pos);
  }
  return o;
}

std::optional<IntegerInterval> TotalOrder::window() const {
  if (kind_ != Kind::permutation) return std::nullopt;
  return IntegerInterval(lo_, hi_);
}

bool TotalOrder::precedes(std::int64_t a, std::int64_t b) const {
  return compare(a, b) == std::strong_ordering::less;
}

std::strong_ordering TotalOrder::compare(std::int64_t a, std::int64_t b) const {
  return compare_counting(a, b, nullptr);
}

std::strong_ordering TotalOrder::compare_counting(std::int64_t a, std::int64_t b,
                                                  std::uint64_t* rounds) const {
  if (rounds) *rounds = 1;
  switch (kind_) {
    case Kind::natural:
      return a <=> b;
    case Kind::permutation: {
      if (a < lo_ || a > hi_ || b < lo_ || b > hi_)
        throw std::domain_error("comparison outside the permutation window");
      return rank_[static_cast<std::size_t>(a - lo_)] <=>
             rank_[static_cast<std::size_t>(b - lo_)];
    }
    case Kind::pow2:
      break;
  }
  if (a == b) return std::strong_ordering::equal;
  // The loop resolves: a and b differ, so once the decremented values reach a
  // multiple of 2^v (v the valuation of a - b) the valuations split.
  for (std::int64_t i = 0;; ++i) {
    if (rounds) *rounds = static_cast<std::uint64_t>(i) + 1;
    const ExtendedValuation va = two_adic_valuation(a - i);
    const ExtendedValuation vb = two_adic_valuation(b - i);
    if (va != vb) return va < vb ? std::strong_ordering::less : std::strong_ordering::greater;
  }
}

std::string TotalOrder::to_spec() const {
  switch (kind_) {
    case Kind::natural:
      return "natural";
    case Kind::pow2:
      return "pow2";
    case Kind::permutation:
      break;
  }
  if (explicit_listing_) return "listing";
  return "perm:" + std::to_string(seed_) + ":" + std::to_string(lo_) + ":" +
         std::to_string(hi_);
}

TotalOrder TotalOrder::from_spec(const std::string& spec) {
  if (spec == "natural") return natural();
  if (spec == "pow2") return pow2();
  if (spec.rfind("perm:", 0) == 0) {
    const std::string rest = spec.substr(5);
    const std::size_t c1 = rest.find(':');
    const std::size_t c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("permutation spec needs perm:<seed>:<lo>:<hi>");
    try {
      const std::uint64_t seed = std::stoull(rest.substr(0, c1));
      const std::int64_t lo = std::stoll(rest.substr(c1 + 1, c2 - c1 - 1));
      const std::int64_t hi = std::stoll(rest.substr(c2 + 1));
      return permutation(seed, lo, hi);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("malformed permutation spec: " + spec);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("malformed permutation spec: " + spec);
    }
  }
  throw std::invalid_argument("unknown order spec: " + spec);
}

std::vector<std::int64_t> sort_interval(const TotalOrder& order, IntegerInterval iv) {
  std::vector<std::int64_t> vals;
  vals.reserve(static_cast<std::size_t>(iv.size()));
  for (std::int64_t v = iv.lo; v <= iv.hi; ++v) vals.push_back(v);
  std::sort(vals.begin(), vals.end(),
            [&order](std::int64_t a, std::int64_t b) { return order.precedes(a, b); });
  return vals;
}

bool is_among_k_greatest(const TotalOrder& order, std::int64_t s, IntegerInterval iv,
                         std::int64_t k) {
  if (!iv.contains(s)) throw std::domain_error("element outside the interval");
  if (k < 0 || k > iv.size()) throw std::domain_error("k outside 0..interval size");
  if (k == 0) return false;
  // s ranks among the top k iff fewer than k elements lie above it
  std::int64_t above = 0;
  for (std::int64_t t = iv.lo; t <= iv.hi; ++t) {
    if (t == s) continue;
    if (order.precedes(s, t) && ++above >= k) return false;
  }
  return true;
}

std::vector<char> top_k_mask(const TotalOrder& order, IntegerInterval iv, std::int64_t k) {
  const std::size_t n = static_cast<std::size_t>(iv.size());
  if (k < 0 || k > iv.size()) throw std::domain_error("k outside 0..interval size");
  if (k == 0) return std::vector<char>(n, 0);
  if (k == iv.size()) return std::vector<char>(n, 1);

  std::vector<char> mask(n, 0);
  switch (order.kind()) {
    case TotalOrder::Kind::natural: {
      for (std::size_t i = n - static_cast<std::size_t>(k); i < n; ++i) mask[i] = 1;
      return mask;
    }
    case TotalOrder::Kind::pow2: {
      // Within a window of span below 2^m the order inverts the bit-reversed
      // low m bits, so the k largest are the k smallest reversed keys.
      const int m = std::bit_width(static_cast<std::uint64_t>(iv.size() - 1));
      const std::uint64_t low = (m >= 64) ? ~0ull : ((1ull << m) - 1);
      std::vector<std::uint64_t> keys(n);
      for (std::size_t i = 0; i < n; ++i)
        keys[i] = bit_reverse(static_cast<std::uint64_t>(iv.lo + static_cast<std::int64_t>(i)) & low, m);
      std::vector<std::uint64_t> sel = keys;
      std::nth_element(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k - 1), sel.end());
      const std::uint64_t cutoff = sel[static_cast<std::size_t>(k - 1)];
      for (std::size_t i = 0; i < n; ++i) mask[i] = keys[i] <= cutoff;
      return mask;
    }
    case TotalOrder::Kind::permutation: {
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return order.precedes(iv.lo + static_cast<std::int64_t>(b),
                              iv.lo + static_cast<std::int64_t>(a));
      });
      for (std::int64_t j = 0; j < k; ++j) mask[idx[static_cast<std::size_t>(j)]] = 1;
      return mask;
    }
  }
  throw std::logic_error("unhandled order kind");
}

std::uint64_t bit_reverse(std::uint64_t value, int bits) {
  if (bits < 0 || bits > 64) throw std::domain_error("bit count outside 0..64");
  if (bits < 64 && (value >> bits) != 0)
    throw std::domain_error("value does not fit in the given bits");
  std::uint64_t out = 0;
  for (int i = 0; i < bits; ++i) {
    out = (out << 1) | (value & 1);
    value >>= 1;
  }
  return out;
}

std::int64_t vdc_index(std::int64_t x, int n) {
  if (n < 1 || n > 62) throw std::domain_error("n outside 1..62");
  const std::int64_t bound = std::int64_t{1} << n;
  if (x <= -bound || x >= bound) throw std::domain_error("x outside (-2^n, 2^n)");
  const std::uint64_t modulus_mask = (std::uint64_t{1} << (n + 1)) - 1;
  const std::uint64_t r = static_cast<std::uint64_t>(x) & modulus_mask;
  const std::int64_t idx = static_cast<std::int64_t>(bit_reverse(r, n + 1));
  return idx > 1 ? idx : 1;
}

}  // namespace cdseg
