#include "cayfire/budget.hpp"

#include <boost/multiprecision/integer.hpp>

#include "cayfire/error.hpp"

namespace cayfire {

BudgetFn BudgetFn::constant(int64_t k) {
  if (k < 0) throw Error("budget must be non-negative");
  BudgetFn b;
  b.kind_ = Kind::kConstant;
  b.scale_ = k;
  return b;
}

BudgetFn BudgetFn::polynomial(int64_t coeff, int degree) {
  if (coeff < 0 || degree < 0) throw Error("polynomial budget requires coeff, degree >= 0");
  BudgetFn b;
  b.kind_ = Kind::kPolynomial;
  b.scale_ = coeff;
  b.degree_ = degree;
  return b;
}

BudgetFn BudgetFn::exponential(int64_t scale, int64_t num, int64_t den) {
  if (scale < 0 || num < 1 || den < 1) throw Error("exponential budget requires scale >= 0, num/den >= 1");
  BudgetFn b;
  b.kind_ = Kind::kExponential;
  b.scale_ = scale;
  b.num_ = num;
  b.den_ = den;
  return b;
}

BudgetFn BudgetFn::table(std::vector<int64_t> values, bool repeat_last) {
  for (int64_t v : values)
    if (v < 0) throw Error("budget must be non-negative");
  BudgetFn b;
  b.kind_ = Kind::kTable;
  b.table_ = std::move(values);
  b.repeat_last_ = repeat_last;
  return b;
}

BigInt BudgetFn::eval(int n) const {
  if (n < 1) throw Error("budget evaluated at n < 1");
  switch (kind_) {
    case Kind::kConstant:
      return scale_;
    case Kind::kPolynomial: {
      BigInt p = 1;
      for (int i = 0; i < degree_; ++i) p *= n;
      return p * scale_;
    }
    case Kind::kExponential: {
      BigInt num_pow = 1, den_pow = 1;
      for (int i = 0; i < n; ++i) {
        num_pow *= num_;
        den_pow *= den_;
      }
      return boost::multiprecision::sqrt(BigInt(scale_) * scale_ * num_pow / den_pow);
    }
    case Kind::kTable: {
      size_t i = static_cast<size_t>(n) - 1;
      if (i < table_.size()) return table_[i];
      if (repeat_last_ && !table_.empty()) return table_.back();
      throw Error("table budget has no value for turn " + std::to_string(n));
    }
  }
  throw Error("corrupt budget kind");
}

bool BudgetFn::allows(int n, uint64_t count) const {
  if (kind_ == Kind::kExponential) {
    BigInt num_pow = 1, den_pow = 1;
    for (int i = 0; i < n; ++i) {
      num_pow *= num_;
      den_pow *= den_;
    }
    return BigInt(count) * count * den_pow <= BigInt(scale_) * scale_ * num_pow;
  }
  return BigInt(count) <= eval(n);
}

std::string BudgetFn::to_string() const {
  switch (kind_) {
    case Kind::kConstant:
      return "const:" + std::to_string(scale_);
    case Kind::kPolynomial:
      return "poly:" + std::to_string(scale_) + "," + std::to_string(degree_);
    case Kind::kExponential:
      if (scale_ == 2 && num_ == 2 && den_ == 1) return "2^((n+2)/2)";
      return "exp:" + std::to_string(scale_) + "," + std::to_string(num_) + "," + std::to_string(den_);
    case Kind::kTable: {
      std::string s = "table:";
      for (size_t i = 0; i < table_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(table_[i]);
      }
      if (repeat_last_) s += "+";
      return s;
    }
  }
  throw Error("corrupt budget kind");
}

namespace {

std::vector<int64_t> parse_int_list(std::string_view text) {
  std::vector<int64_t> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string tok(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (tok.empty()) throw ParseError("empty number in budget specifier");
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ParseError("bad number '" + tok + "' in budget specifier");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

BudgetFn BudgetFn::parse(std::string_view text) {
  if (text == "2^((n+2)/2)" || text == "shield") return half_power_of_two();
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("bad budget specifier '" + std::string(text) + "'");
  std::string_view head = text.substr(0, colon), tail = text.substr(colon + 1);
  if (head == "const") {
    auto v = parse_int_list(tail);
    if (v.size() != 1) throw ParseError("const budget takes one value");
    return constant(v[0]);
  }
  if (head == "poly") {
    auto v = parse_int_list(tail);
    if (v.size() != 2) throw ParseError("poly budget takes coeff,degree");
    return polynomial(v[0], static_cast<int>(v[1]));
  }
  if (head == "exp") {
    auto v = parse_int_list(tail);
    if (v.size() != 3) throw ParseError("exp budget takes scale,num,den");
    return exponential(v[0], v[1], v[2]);
  }
  if (head == "table") {
    bool repeat = !tail.empty() && tail.back() == '+';
    if (repeat) tail.remove_suffix(1);
    return table(parse_int_list(tail), repeat);
  }
  throw ParseError("unknown budget kind '" + std::string(head) + "'");
}

}  // namespace cayfire
