#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayfire/descriptor.hpp"
#include "cayfire/detail/varint.hpp"
#include "cayfire/element.hpp"

namespace cayfire {

/// Group arithmetic over canonically encoded elements.
///
/// Elements are opaque byte strings produced and consumed by the owning
/// handle; all operations return canonical encodings, so equality is byte
/// equality and byte-lexicographic order is the canonical total order.
class Group {
 public:
  virtual ~Group() = default;

  const GroupDescriptor& descriptor() const { return descriptor_; }
  std::string spec_string() const { return descriptor_.to_string(); }

  const Element& identity() const { return identity_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  const Element& generator(int i) const { return generators_[static_cast<size_t>(i)]; }
  /// Index j with generator(j) == invert(generator(i)).
  int generator_inverse(int i) const { return inverse_index_[static_cast<size_t>(i)]; }

  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;

  /// Right multiplication by generator i, bytes in / bytes out. This is the
  /// hot path for ball enumeration; `out` is reused across calls.
  virtual void mul_gen(std::string_view a, int i, std::string& out) const;

  Element multiply_by_generator(const Element& a, int i) const {
    Element out;
    std::string buf;
    mul_gen(a.view(), i, buf);
    return Element(std::move(buf));
  }

  /// Throws ParseError unless the bytes are a well-formed canonical encoding.
  void validate(const Element& e) const;
  bool contains(const Element& e) const noexcept;

  /// Consumes exactly one canonically encoded element from the reader,
  /// validating canonicity. Used by composite groups to delimit payloads.
  virtual void consume(detail::ByteReader& r) const = 0;

  /// Human-readable rendering, for logs and error messages only.
  virtual std::string render(const Element& e) const = 0;

  /// Exact word length w.r.t. the canonical generators when a closed form
  /// exists for the variant; nullopt otherwise (use a Ball).
  virtual std::optional<int64_t> closed_form_word_length(const Element& e) const {
    (void)e;
    return std::nullopt;
  }

  /// Bytes-level arithmetic; trusts that inputs are canonical (elements
  /// previously produced by this handle).
  virtual void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const = 0;
  virtual void invert_bytes(std::string_view a, std::string& out) const = 0;

 protected:
  explicit Group(GroupDescriptor descriptor) : descriptor_(std::move(descriptor)) {}

  // Populated by concrete constructors.
  GroupDescriptor descriptor_;
  Element identity_;
  std::vector<Element> generators_;
  std::vector<int> inverse_index_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Builds a handle for a well-formed descriptor; throws ParseError otherwise.
GroupPtr make_group(const GroupDescriptor& descriptor);
GroupPtr make_group(std::string_view spec);

}  // namespace cayfire
