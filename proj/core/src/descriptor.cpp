#include "cayfire/descriptor.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "cayfire/error.hpp"

namespace cayfire {

struct GroupDescriptor::Node {
  GroupKind kind;
  int param = 0;  // dim / rank / modulus
  std::optional<GroupDescriptor> a, b;
};

GroupDescriptor GroupDescriptor::z_power(int dim) {
  if (dim < 1) throw ParseError("Z^d requires d >= 1");
  return GroupDescriptor(std::make_shared<Node>(Node{GroupKind::kZPower, dim, {}, {}}));
}

GroupDescriptor GroupDescriptor::free_group(int rank) {
  if (rank < 1) throw ParseError("free group requires rank >= 1");
  return GroupDescriptor(std::make_shared<Node>(Node{GroupKind::kFreeGroup, rank, {}, {}}));
}

GroupDescriptor GroupDescriptor::heisenberg() {
  return GroupDescriptor(std::make_shared<Node>(Node{GroupKind::kHeisenberg, 0, {}, {}}));
}

GroupDescriptor GroupDescriptor::cyclic(int modulus) {
  if (modulus < 2) throw ParseError("cyclic group requires modulus >= 2");
  return GroupDescriptor(std::make_shared<Node>(Node{GroupKind::kCyclic, modulus, {}, {}}));
}

GroupDescriptor GroupDescriptor::direct_product(GroupDescriptor left, GroupDescriptor right) {
  return GroupDescriptor(std::make_shared<Node>(
      Node{GroupKind::kDirectProduct, 0, std::move(left), std::move(right)}));
}

GroupDescriptor GroupDescriptor::wreath_product(GroupDescriptor lamp, GroupDescriptor base) {
  if (lamp.kind() != GroupKind::kCyclic) {
    throw ParseError("wreath lamp group must be cyclic (Zm with m >= 2); got " + lamp.to_string());
  }
  return GroupDescriptor(std::make_shared<Node>(
      Node{GroupKind::kWreathProduct, 0, std::move(lamp), std::move(base)}));
}

GroupKind GroupDescriptor::kind() const { return node_->kind; }
int GroupDescriptor::dim() const { return node_->param; }
int GroupDescriptor::rank() const { return node_->param; }
int GroupDescriptor::modulus() const { return node_->param; }

const GroupDescriptor& GroupDescriptor::left() const { return *node_->a; }
const GroupDescriptor& GroupDescriptor::right() const { return *node_->b; }
const GroupDescriptor& GroupDescriptor::lamp() const { return *node_->a; }
const GroupDescriptor& GroupDescriptor::base() const { return *node_->b; }

std::string GroupDescriptor::to_string() const {
  switch (node_->kind) {
    case GroupKind::kZPower:
      return node_->param == 1 ? "Z" : "Z^" + std::to_string(node_->param);
    case GroupKind::kFreeGroup:
      return "F" + std::to_string(node_->param);
    case GroupKind::kHeisenberg:
      return "H3";
    case GroupKind::kCyclic:
      return "Z" + std::to_string(node_->param);
    case GroupKind::kDirectProduct:
      return left().to_string() + "x" + right().to_string();
    case GroupKind::kWreathProduct:
      return lamp().to_string() + "wr" + base().to_string();
  }
  throw ParseError("corrupt descriptor node");
}

namespace {

// Splits "AxBxC" at top level; "wr" is parsed inside each factor.
std::vector<std::string_view> split_token(std::string_view text, std::string_view sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (size_t i = 0; i + sep.size() <= text.size();) {
    if (text.substr(i, sep.size()) == sep) {
      parts.push_back(text.substr(start, i - start));
      i += sep.size();
      start = i;
    } else {
      ++i;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

GroupDescriptor parse_atom(std::string_view text) {
  if (text.empty()) throw ParseError("empty group specifier");
  if (text == "Z") return GroupDescriptor::z_power(1);
  if (text == "H3") return GroupDescriptor::heisenberg();
  auto parse_int = [&](std::string_view digits) -> int {
    if (digits.empty()) throw ParseError("missing number in group specifier '" + std::string(text) + "'");
    long v = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("bad number in group specifier '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
      if (v > 1000000) throw ParseError("number too large in group specifier");
    }
    return static_cast<int>(v);
  };
  if (text.size() >= 3 && text.substr(0, 2) == "Z^") return GroupDescriptor::z_power(parse_int(text.substr(2)));
  if (text[0] == 'F') return GroupDescriptor::free_group(parse_int(text.substr(1)));
  if (text[0] == 'Z') return GroupDescriptor::cyclic(parse_int(text.substr(1)));
  throw ParseError("unrecognized group specifier '" + std::string(text) + "'");
}

GroupDescriptor parse_factor(std::string_view text) {
  auto parts = split_token(text, "wr");
  if (parts.size() == 1) return parse_atom(parts[0]);
  // right-associative: "AwrBwrC" = A wr (B wr C)
  GroupDescriptor acc = parse_atom(parts.back());
  for (size_t i = parts.size() - 1; i-- > 0;) {
    acc = GroupDescriptor::wreath_product(parse_atom(parts[i]), acc);
  }
  return acc;
}

}  // namespace

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  auto parts = split_token(text, "x");
  GroupDescriptor acc = parse_factor(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) {
    acc = direct_product(acc, parse_factor(parts[i]));
  }
  return acc;
}

}  // namespace cayfire
