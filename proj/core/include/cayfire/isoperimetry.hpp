#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "cayfire/ball.hpp"
#include "cayfire/id_set.hpp"
#include "cayfire/rational.hpp"

namespace cayfire {

/// An exact-rational function on the elements of a ball (dense by id).
/// All norms below are computed in exact rational arithmetic; floating
/// point appears only in rendered reports.
struct ScalarField {
  std::shared_ptr<const Ball> ball;
  std::vector<Rational> values;  // size == ball->size()
};

ScalarField constant_field(std::shared_ptr<const Ball> ball, const Rational& value);
ScalarField indicator_field(std::shared_ptr<const Ball> ball, const IdSet& a);

/// Sum over oriented edges with both endpoints in B_{sub_radius} of
/// |f(head) - f(tail)|; every unordered edge contributes twice.
Rational gradient_l1(const ScalarField& field, int sub_radius);

/// Sum over B_radius of |f(x) - mean_{B_radius} f|.
Rational deviation_l1(const ScalarField& field, int radius);

struct PoincareResult {
  bool holds = false;
  Rational lhs;    // ||f - f_R||_{L1(B_R)}
  Rational rhs;    // 2R * (v(2R)/v(R)) * ||grad f||_{L1(B_3R)}
  Rational slack;  // rhs - lhs
};

/// The ball-restricted L1 Poincare inequality; `holds` must come back true
/// for every field (false indicates an implementation bug).
/// Requires field.ball radius >= 3R.
PoincareResult check_poincare(const ScalarField& field, int radius);

struct IsoperimetryResult {
  bool holds = false;
  Rational lhs;                  // |B_{3R} cap boundary(A)|
  Rational rhs;                  // (1/(2|S|)) * (1/(R v(2R))) * |B_R \ A| * |A cap B_R|
  Rational empirical_constant;   // largest c with lhs = c/(R v(2R)) * product; 0 if product 0
  uint64_t boundary_count = 0;
};

/// The ball-restricted isoperimetric inequality with the explicit constant
/// 1/(2|S|) (stronger than merely existential; recorded alongside the best
/// per-run empirical constant). Requires ball radius >= 3R and A inside
/// B_{3R}.
IsoperimetryResult check_isoperimetry(const Ball& ball, int radius, const IdSet& a);

/// Each element of B_{3R} kept independently with probability `p`
/// (deterministic given the generator state).
IdSet random_subset(const Ball& ball, int max_radius, double p, std::mt19937_64& rng);

/// +/-1-valued field, fair coin per element.
ScalarField random_sign_field(std::shared_ptr<const Ball> ball, std::mt19937_64& rng);

/// Deterministic structured test subsets inside B_{3R}: sub-balls of every
/// radius and, on Z^d, half-spaces {x1 >= c}.
std::vector<IdSet> structured_subsets(const Ball& ball, int radius);

}  // namespace cayfire
