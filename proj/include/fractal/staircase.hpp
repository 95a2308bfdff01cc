#pragma once

/// Triadic Cantor set, its integral staircase S(x) and the quantile inverse.
///
/// All evaluations run on exact digit expansions: a double is a dyadic
/// rational m / 2^K and is expanded in base 3 with integer arithmetic, so
/// no rounding happens before the last step. ExactRational covers inputs
/// such as 1/3 that a double cannot hold.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fractal {

__extension__ using u128 = unsigned __int128;

/// Non-negative rational num / den with den > 0, used for exact inputs.
struct ExactRational {
  u128 num = 0;
  u128 den = 1;

  [[nodiscard]] double to_double() const {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
};

enum class ExtensionRule { UnitInterval, SelfSimilarTiling };

/// Which map plays the role of S. Identity gives ordinary calculus (alpha = 1).
enum class MeasureKind { Cantor, Identity };

struct CantorSpec {
  int digit_depth = 53;
  ExtensionRule extension_rule = ExtensionRule::SelfSimilarTiling;
};

namespace detail {

inline constexpr int max_digit_depth = 64;

/// Base-3 digits of a fraction in [0, 1) held as an exact fixed-point
/// binary number with K fractional bits.
class DyadicTernaryDigits {
 public:
  explicit DyadicTernaryDigits(double frac) {
    if (frac == 0.0) {
      return;
    }
    int exp = 0;
    const double mant = std::frexp(frac, &exp);  // frac = mant * 2^exp, mant in [0.5, 1)
    auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));
    int bits = 53 - exp;
    while ((m & 1U) == 0U) {
      m >>= 1U;
      --bits;
    }
    bits_ = bits;
    if (bits_ <= 62) {
      mode_ = Mode::Small;
      small_ = m;
    } else if (bits_ <= 125) {
      mode_ = Mode::Wide;
      wide_ = m;
    } else {
      mode_ = Mode::Multi;
      words_.assign(static_cast<std::size_t>((bits_ + 2) / 64 + 1), 0);
      words_[0] = m;
    }
  }

  [[nodiscard]] bool exhausted() const {
    switch (mode_) {
      case Mode::Zero:
        return true;
      case Mode::Small:
        return small_ == 0;
      case Mode::Wide:
        return wide_ == 0;
      case Mode::Multi:
        for (auto w : words_) {
          if (w != 0) return false;
        }
        return true;
    }
    return true;
  }

  int next() {
    switch (mode_) {
      case Mode::Zero:
        return 0;
      case Mode::Small: {
        small_ *= 3;
        const auto d = static_cast<int>(small_ >> bits_);
        small_ &= (std::uint64_t{1} << bits_) - 1;
        return d;
      }
      case Mode::Wide: {
        wide_ *= 3;
        const auto d = static_cast<int>(wide_ >> bits_);
        wide_ &= (u128{1} << bits_) - 1;
        return d;
      }
      case Mode::Multi:
        return next_multi();
    }
    return 0;
  }

 private:
  enum class Mode { Zero, Small, Wide, Multi };

  int next_multi() {
    std::uint64_t carry = 0;
    for (auto& w : words_) {
      const u128 v = static_cast<u128>(w) * 3U + carry;
      w = static_cast<std::uint64_t>(v);
      carry = static_cast<std::uint64_t>(v >> 64U);
    }
    const auto word = static_cast<std::size_t>(bits_ / 64);
    const int shift = bits_ % 64;
    u128 top = words_[word] >> shift;
    if (word + 1 < words_.size() && shift != 0) {
      top |= static_cast<u128>(words_[word + 1]) << (64 - shift);
    }
    words_[word] &= shift == 0 ? 0 : ((std::uint64_t{1} << shift) - 1);
    for (auto i = word + 1; i < words_.size(); ++i) {
      words_[i] = 0;
    }
    return static_cast<int>(top);
  }

  Mode mode_ = Mode::Zero;
  int bits_ = 0;
  std::uint64_t small_ = 0;
  u128 wide_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Base-3 digits of num/den in [0, 1). Requires 3 * den < 2^128.
class RationalTernaryDigits {
 public:
  RationalTernaryDigits(u128 num, u128 den) : num_(num), den_(den) {}

  [[nodiscard]] bool exhausted() const { return num_ == 0; }

  int next() {
    num_ *= 3U;
    const auto d = static_cast<int>(num_ / den_);
    num_ %= den_;
    return d;
  }

 private:
  u128 num_;
  u128 den_;
};

/// Digit algorithm: ternary 0 -> 0, 2 -> 1, first 1 -> emit 1 and stop.
template <class Digits>
double staircase_of_fraction(Digits digits, int depth) {
  std::uint64_t bits = 0;
  int used = 0;
  for (; used < depth && !digits.exhausted(); ++used) {
    const int d = digits.next();
    bits = (bits << 1U) | (d == 0 ? 0U : 1U);
    if (d == 1) {
      ++used;
      break;
    }
  }
  return static_cast<double>(std::ldexp(static_cast<long double>(bits), -used));
}

template <class Digits>
bool fraction_in_cantor_set(Digits digits, int depth) {
  for (int i = 0; i < depth && !digits.exhausted(); ++i) {
    if (digits.next() == 1) {
      // 0.x..x1 terminating is rewritten as 0.x..x0222...
      return digits.exhausted();
    }
  }
  return true;
}

inline u128 pow3(int n) {
  u128 r = 1;
  for (int i = 0; i < n; ++i) r *= 3U;
  return r;
}

inline u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace detail

/// The integral staircase of the triadic Cantor set (or the identity map).
class StaircaseFn {
 public:
  /// Classical Cantor function normalised to S(0) = 0, S(1) = 1.
  static StaircaseFn cantor(int digit_depth = 53,
                            ExtensionRule rule = ExtensionRule::SelfSimilarTiling) {
    return StaircaseFn(CantorSpec{digit_depth, rule}, MeasureKind::Cantor);
  }

  /// S(x) = x; every fractal operator then reduces to its classical form.
  static StaircaseFn identity(ExtensionRule rule = ExtensionRule::SelfSimilarTiling) {
    return StaircaseFn(CantorSpec{53, rule}, MeasureKind::Identity);
  }

  [[nodiscard]] const CantorSpec& spec() const { return spec_; }
  [[nodiscard]] MeasureKind kind() const { return kind_; }
  [[nodiscard]] bool is_identity() const { return kind_ == MeasureKind::Identity; }

  /// gamma-dimension: ln2/ln3 for the triadic set, 1 for the identity map.
  [[nodiscard]] double alpha() const {
    return is_identity() ? 1.0 : std::numbers::ln2 / std::log(3.0);
  }

  /// Interval of u = S(x) values covered by the domain.
  [[nodiscard]] std::pair<double, double> u_range() const {
    if (spec_.extension_rule == ExtensionRule::UnitInterval) return {0.0, 1.0};
    return {-HUGE_VAL, HUGE_VAL};
  }

 private:
  StaircaseFn(CantorSpec spec, MeasureKind kind) : spec_(spec), kind_(kind) {
    if (spec_.digit_depth < 1 || spec_.digit_depth > detail::max_digit_depth) {
      throw std::invalid_argument("digit_depth must be in [1, 64], got " +
                                  std::to_string(spec_.digit_depth));
    }
  }

  CantorSpec spec_;
  MeasureKind kind_;
};

namespace detail {

inline void check_domain(const StaircaseFn& sf, double x, const char* what) {
  if (std::isnan(x)) {
    throw std::domain_error(std::string(what) + ": NaN argument");
  }
  if (sf.spec().extension_rule == ExtensionRule::UnitInterval && (x < 0.0 || x > 1.0)) {
    throw std::domain_error(std::string(what) + ": argument " + std::to_string(x) +
                            " outside [0, 1]");
  }
}

}  // namespace detail

/// S(x). Under SelfSimilarTiling S(x + n) = S(x) + n for x >= 0 and
/// S(-x) = -S(x).
inline double cantor_eval(const StaircaseFn& sf, double x) {
  detail::check_domain(sf, x, "cantor_eval");
  if (sf.is_identity()) return x;
  if (x < 0.0) return -cantor_eval(sf, -x);
  if (std::isinf(x)) return x;
  const double whole = std::floor(x);
  const double frac = x - whole;
  return whole + detail::staircase_of_fraction(detail::DyadicTernaryDigits(frac),
                                               sf.spec().digit_depth);
}

/// S(num/den) with no rounding of the argument.
inline double cantor_eval(const StaircaseFn& sf, ExactRational x) {
  if (x.den == 0) throw std::domain_error("cantor_eval: zero denominator");
  const u128 whole = x.num / x.den;
  if (sf.spec().extension_rule == ExtensionRule::UnitInterval &&
      (whole > 1 || (whole == 1 && x.num % x.den != 0))) {
    throw std::domain_error("cantor_eval: argument outside [0, 1]");
  }
  if (sf.is_identity()) return x.to_double();
  if (x.den > (~u128{0}) / 4) throw std::domain_error("cantor_eval: denominator too large");
  return static_cast<double>(whole) +
         detail::staircase_of_fraction(detail::RationalTernaryDigits(x.num % x.den, x.den),
                                       sf.spec().digit_depth);
}

/// Ternary digits a double can resolve: gaps of level > 30 are narrower
/// than 3^-30 ~ 5e-15, and the rounding of a computed Cantor point (a
/// quantile, say) corrupts the digits beyond that.
inline constexpr int double_resolvable_depth = 30;

/// Depth-truncated membership in the Cantor set (extended periodically
/// and symmetrically under SelfSimilarTiling). Double arguments are tested
/// to min(digit_depth, double_resolvable_depth) digits.
inline bool cantor_membership(const StaircaseFn& sf, double x) {
  if (std::isnan(x)) return false;
  if (sf.is_identity()) return true;
  if (sf.spec().extension_rule == ExtensionRule::UnitInterval && (x < 0.0 || x > 1.0)) {
    return false;
  }
  x = std::fabs(x);
  if (std::isinf(x)) return false;
  const double frac = x - std::floor(x);
  return detail::fraction_in_cantor_set(
      detail::DyadicTernaryDigits(frac),
      std::min(sf.spec().digit_depth, double_resolvable_depth));
}

inline bool cantor_membership(const StaircaseFn& sf, ExactRational x) {
  if (sf.is_identity()) return true;
  return detail::fraction_in_cantor_set(detail::RationalTernaryDigits(x.num % x.den, x.den),
                                        sf.spec().digit_depth);
}

/// Cantor point t in [0, 1] with S(t) = u, as an exact rational N / 3^depth.
/// Binary digit b becomes ternary digit 2b; dyadic u uses its terminating
/// expansion (right endpoint of the gap at level u).
inline ExactRational cantor_quantile_exact(const StaircaseFn& sf, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("cantor_quantile_exact: u outside [0, 1]");
  }
  const int depth = sf.spec().digit_depth;
  if (u == 1.0) return {1, 1};
  const auto scaled = static_cast<u128>(std::floor(std::ldexp(static_cast<long double>(u), depth)));
  u128 num = 0;
  for (int i = depth - 1; i >= 0; --i) {
    num = num * 3U + (((scaled >> static_cast<unsigned>(i)) & 1U) != 0 ? 2U : 0U);
  }
  return {num, detail::pow3(depth)};
}

/// Inverse of the staircase on the Cantor set, extended like cantor_eval.
inline double cantor_quantile(const StaircaseFn& sf, double u) {
  if (std::isnan(u)) throw std::domain_error("cantor_quantile: NaN argument");
  if (sf.spec().extension_rule == ExtensionRule::UnitInterval && (u < 0.0 || u > 1.0)) {
    throw std::domain_error("cantor_quantile: u outside [0, 1]");
  }
  if (sf.is_identity()) return u;
  if (u < 0.0) return -cantor_quantile(sf, -u);
  if (std::isinf(u)) return u;
  const double whole = std::floor(u);
  return whole + cantor_quantile_exact(sf, u - whole).to_double();
}

/// Closed intervals of the depth-th middle-third construction stage.
inline std::vector<std::pair<double, double>> prefractal_intervals(int depth) {
  if (depth < 0 || depth > 20) {
    throw std::invalid_argument("prefractal_intervals: depth must be in [0, 20]");
  }
  std::vector<std::pair<double, double>> out;
  const std::uint64_t count = std::uint64_t{1} << static_cast<unsigned>(depth);
  const double len = std::pow(3.0, -depth);
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    // left endpoint = sum of 2 * 3^-(i+1) over the set bits of k (msb first)
    std::uint64_t num = 0;
    for (int i = depth - 1; i >= 0; --i) {
      num = num * 3 + (((k >> static_cast<unsigned>(i)) & 1U) != 0 ? 2 : 0);
    }
    const double left = static_cast<double>(num) * len;
    out.emplace_back(left, left + len);
  }
  return out;
}

inline ExactRational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  const u128 g = detail::gcd(num, den);
  return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

}  // namespace fractal
