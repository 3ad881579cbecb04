#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace cayfire {

enum class GroupKind {
  kZPower,         // Z^d, signed unit-vector generators
  kFreeGroup,      // F_k, reduced words
  kHeisenberg,     // integer upper-triangular 3x3 presentation, generators x,y
  kCyclic,         // Z_m, the lamp-group sub-variant (m >= 2)
  kDirectProduct,  // componentwise generators
  kWreathProduct,  // lamp wr base, switch-walk-switch generators
};

/// An immutable description of a finitely generated group with its canonical
/// symmetric generating set. Cheap to copy.
///
/// Text form (also the CLI specifier grammar):
///   "Z"    integers            "Z^d"  rank-d lattice
///   "Fk"   free group, rank k  "H3"   Heisenberg
///   "Zm"   cyclic of order m (m >= 2), used as wreath lamp group
///   "AwrB" wreath product A wr B (lamp A must be cyclic)
///   "AxB"  direct product, left-associative; "wr" binds tighter than "x"
class GroupDescriptor {
 public:
  static GroupDescriptor z_power(int dim);
  static GroupDescriptor free_group(int rank);
  static GroupDescriptor heisenberg();
  static GroupDescriptor cyclic(int modulus);
  static GroupDescriptor direct_product(GroupDescriptor left, GroupDescriptor right);
  static GroupDescriptor wreath_product(GroupDescriptor lamp, GroupDescriptor base);

  GroupKind kind() const;
  int dim() const;      // kZPower
  int rank() const;     // kFreeGroup
  int modulus() const;  // kCyclic
  const GroupDescriptor& left() const;   // kDirectProduct
  const GroupDescriptor& right() const;  // kDirectProduct
  const GroupDescriptor& lamp() const;   // kWreathProduct
  const GroupDescriptor& base() const;   // kWreathProduct

  /// Canonical text form; parse(to_string()) round-trips.
  std::string to_string() const;

  /// Parses the specifier grammar above. Throws ParseError with a
  /// description of the offending token.
  static GroupDescriptor parse(std::string_view text);

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.to_string() == b.to_string();
  }

 private:
  struct Node;
  explicit GroupDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace cayfire
