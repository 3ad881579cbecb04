#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cayfire/rational.hpp"

namespace cayfire {

/// Per-turn protection budget f(n), n >= 1.
///
/// Closed variants evaluate exactly in integer arithmetic:
///   Constant(k)              f(n) = k
///   Polynomial(c, d)         f(n) = c * n^d
///   Exponential(c, num, den) f(n) = floor(c * (num/den)^(n/2)),
///                            realized as isqrt((c^2 * num^n) div den^n);
///                            the standard exponential budget is
///                            Exponential(2, 2, 1) = floor(2^((n+2)/2)).
///   Table(values)            explicit per-turn list; out-of-range turns
///                            repeat the final value only when flagged.
class BudgetFn {
 public:
  enum class Kind { kConstant, kPolynomial, kExponential, kTable };

  static BudgetFn constant(int64_t k);
  static BudgetFn polynomial(int64_t coeff, int degree);
  static BudgetFn exponential(int64_t scale, int64_t num, int64_t den);
  /// floor(2^((n+2)/2)): exactly 2^((n+2)/2) for even n.
  static BudgetFn half_power_of_two() { return exponential(2, 2, 1); }
  static BudgetFn table(std::vector<int64_t> values, bool repeat_last = false);

  Kind kind() const { return kind_; }
  BigInt eval(int n) const;

  /// Budget admissibility |W_n| <= f(n). For the exponential variant the
  /// comparison is count^2 * den^n <= scale^2 * num^n, so the real-valued
  /// bound c*(num/den)^(n/2) is enforced without rounding.
  bool allows(int n, uint64_t count) const;

  std::string to_string() const;
  /// "const:K" | "poly:C,D" | "exp:C,NUM,DEN" | "2^((n+2)/2)" | "table:a,b,c[+]"
  static BudgetFn parse(std::string_view text);

  int64_t scale() const { return scale_; }
  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  int degree() const { return degree_; }
  const std::vector<int64_t>& table_values() const { return table_; }
  bool repeats_last() const { return repeat_last_; }

 private:
  BudgetFn() = default;
  Kind kind_ = Kind::kConstant;
  int64_t scale_ = 0;   // constant k / polynomial coefficient / exponential c
  int64_t num_ = 0, den_ = 1;
  int degree_ = 0;
  std::vector<int64_t> table_;
  bool repeat_last_ = false;
};

}  // namespace cayfire
