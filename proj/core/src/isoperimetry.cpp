#include "cayfire/isoperimetry.hpp"

#include <cmath>

#include "cayfire/detail/varint.hpp"

namespace cayfire {

ScalarField constant_field(std::shared_ptr<const Ball> ball, const Rational& value) {
  ScalarField f;
  f.values.assign(ball->size(), value);
  f.ball = std::move(ball);
  return f;
}

ScalarField indicator_field(std::shared_ptr<const Ball> ball, const IdSet& a) {
  ScalarField f;
  f.values.assign(ball->size(), Rational(0));
  a.for_each([&](uint32_t id) { f.values[id] = 1; });
  f.ball = std::move(ball);
  return f;
}

Rational gradient_l1(const ScalarField& field, int sub_radius) {
  const Ball& ball = *field.ball;
  if (sub_radius < 0 || sub_radius > ball.radius()) throw Error("gradient_l1 radius outside ball");
  const uint64_t vol = ball.volume(sub_radius);
  Rational total = 0;
  for (uint32_t id = 0; id < vol; ++id) {
    ball.for_each_neighbor(id, [&](uint32_t nb) {
      if (nb < vol) total += abs(field.values[nb] - field.values[id]);
    });
  }
  return total;
}

Rational deviation_l1(const ScalarField& field, int radius) {
  const Ball& ball = *field.ball;
  if (radius < 0 || radius > ball.radius()) throw Error("deviation_l1 radius outside ball");
  const uint64_t vol = ball.volume(radius);
  Rational sum = 0;
  for (uint32_t id = 0; id < vol; ++id) sum += field.values[id];
  Rational mean = sum / vol;
  Rational total = 0;
  for (uint32_t id = 0; id < vol; ++id) total += abs(field.values[id] - mean);
  return total;
}

PoincareResult check_poincare(const ScalarField& field, int radius) {
  const Ball& ball = *field.ball;
  if (radius < 1) throw Error("check_poincare requires R >= 1");
  if (3 * radius > ball.radius()) {
    throw Error("check_poincare needs the field on B_{3R}; ball radius " +
                std::to_string(ball.radius()) + " < " + std::to_string(3 * radius));
  }
  PoincareResult r;
  r.lhs = deviation_l1(field, radius);
  r.rhs = Rational(2 * radius) * Rational(ball.volume(2 * radius), ball.volume(radius)) *
          gradient_l1(field, 3 * radius);
  r.slack = r.rhs - r.lhs;
  r.holds = r.lhs <= r.rhs;
  return r;
}

IsoperimetryResult check_isoperimetry(const Ball& ball, int radius, const IdSet& a) {
  if (radius < 1) throw Error("check_isoperimetry requires R >= 1");
  if (3 * radius > ball.radius()) {
    throw Error("check_isoperimetry needs B_{3R} enumerated; ball radius " +
                std::to_string(ball.radius()) + " < " + std::to_string(3 * radius));
  }
  const uint64_t vol3 = ball.volume(3 * radius);
  const uint64_t vol1 = ball.volume(radius);
  uint64_t in_b1 = 0;
  bool outside = false;
  a.for_each([&](uint32_t id) {
    if (id >= vol3) outside = true;
    if (id < vol1) ++in_b1;
  });
  if (outside) throw Error("check_isoperimetry: A is not contained in B_{3R}");

  uint64_t boundary_in_b3 = 0;
  for (uint32_t id : outer_boundary(ball, a)) boundary_in_b3 += id < vol3;

  IsoperimetryResult r;
  r.boundary_count = boundary_in_b3;
  r.lhs = boundary_in_b3;
  const int degree = ball.group().generator_count();
  Rational product = Rational(vol1 - in_b1) * Rational(in_b1);
  r.rhs = product / (Rational(2 * degree) * Rational(radius) * Rational(ball.volume(2 * radius)));
  r.holds = r.lhs >= r.rhs;
  r.empirical_constant =
      product == 0 ? Rational(0)
                   : r.lhs * Rational(radius) * Rational(ball.volume(2 * radius)) / product;
  return r;
}

IdSet random_subset(const Ball& ball, int max_radius, double p, std::mt19937_64& rng) {
  if (max_radius < 0 || max_radius > ball.radius()) throw Error("random_subset radius outside ball");
  IdSet a(ball.size());
  // threshold compare on raw 64-bit draws keeps the stream portable
  const uint64_t threshold =
      p >= 1.0 ? ~0ull : static_cast<uint64_t>(std::ldexp(p, 64));
  const uint64_t vol = ball.volume(max_radius);
  for (uint32_t id = 0; id < vol; ++id) {
    if (rng() < threshold) a.insert(id);
  }
  return a;
}

ScalarField random_sign_field(std::shared_ptr<const Ball> ball, std::mt19937_64& rng) {
  ScalarField f;
  f.values.reserve(ball->size());
  for (uint64_t i = 0; i < ball->size(); ++i) {
    f.values.push_back((rng() & 1) ? Rational(1) : Rational(-1));
  }
  f.ball = std::move(ball);
  return f;
}

std::vector<IdSet> structured_subsets(const Ball& ball, int radius) {
  if (3 * radius > ball.radius()) throw Error("structured_subsets needs B_{3R}");
  std::vector<IdSet> out;
  for (int r = 0; r <= 3 * radius; ++r) {
    IdSet sub(ball.size());
    for (uint32_t id = 0; id < ball.volume(r); ++id) sub.insert(id);
    out.push_back(std::move(sub));
  }
  if (ball.descriptor().kind() == GroupKind::kZPower) {
    for (int64_t cut : {0, 1}) {
      IdSet half(ball.size());
      for (uint32_t id = 0; id < ball.volume(3 * radius); ++id) {
        detail::ByteReader r{ball.element_view(id)};
        if (r.varint() >= cut) half.insert(id);
      }
      out.push_back(std::move(half));
    }
  }
  return out;
}

}  // namespace cayfire
