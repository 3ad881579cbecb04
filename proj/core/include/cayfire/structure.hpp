#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cayfire/element.hpp"
#include "cayfire/group.hpp"

namespace cayfire {

/// Structured view of a wreath-product element: base position plus the
/// finitely supported lamp map (keys in canonical byte order, values in
/// [1, modulus)).
struct WreathParts {
  Element position;
  std::vector<std::pair<Element, int>> lamps;
};

/// These accessors throw Error unless the handle is of the matching kind.
WreathParts wreath_decompose(const Group& wreath, const Element& e);
Element wreath_compose(const Group& wreath, const Element& position,
                       std::vector<std::pair<Element, int>> lamps);
int wreath_lamp_modulus(const Group& wreath);
GroupPtr wreath_base(const Group& wreath);

/// Decomposes a wreath generator index into its switch-walk-switch parts:
/// lamp-generator slots (-1 = no switch) around a base-generator index.
struct SwsParts {
  int switch_before;  // lamp generator index or -1
  int base_step;      // base group generator index
  int switch_after;   // lamp generator index or -1
};
SwsParts wreath_generator_parts(const Group& wreath, int generator_index);
int wreath_generator_index(const Group& wreath, const SwsParts& parts);
int wreath_lamp_generator_count(const Group& wreath);
/// Lamp value in [1, modulus) applied by lamp generator `i`.
int wreath_lamp_generator_value(const Group& wreath, int i);

std::pair<GroupPtr, GroupPtr> product_factors(const Group& product);

}  // namespace cayfire
