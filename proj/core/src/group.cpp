#include "cayfire/group.hpp"

#include <algorithm>
#include <cstdlib>

#include "cayfire/error.hpp"
#include "cayfire/structure.hpp"

namespace cayfire {

using detail::ByteReader;
using detail::put_uvarint;
using detail::put_varint;

Element Group::multiply(const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  std::string out;
  multiply_bytes(a.view(), b.view(), out);
  return Element(std::move(out));
}

Element Group::invert(const Element& a) const {
  validate(a);
  std::string out;
  invert_bytes(a.view(), out);
  return Element(std::move(out));
}

void Group::mul_gen(std::string_view a, int i, std::string& out) const {
  multiply_bytes(a, generators_[static_cast<size_t>(i)].view(), out);
}

void Group::validate(const Element& e) const {
  ByteReader r{e.view()};
  consume(r);
  if (!r.done()) throw ParseError("trailing bytes after element payload");
}

bool Group::contains(const Element& e) const noexcept {
  try {
    validate(e);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

namespace {

// ---------------------------------------------------------------------------
// Z^d: payload is d zigzag varints.

class ZPowerGroup final : public Group {
 public:
  explicit ZPowerGroup(GroupDescriptor d) : Group(std::move(d)), dim_(descriptor_.dim()) {
    std::string buf;
    std::vector<int64_t> coords(static_cast<size_t>(dim_), 0);
    identity_ = Element(encode(coords));
    for (int i = 0; i < dim_; ++i) {
      coords.assign(static_cast<size_t>(dim_), 0);
      coords[static_cast<size_t>(i)] = 1;
      generators_.push_back(Element(encode(coords)));
      coords[static_cast<size_t>(i)] = -1;
      generators_.push_back(Element(encode(coords)));
      inverse_index_.push_back(2 * i + 1);
      inverse_index_.push_back(2 * i);
    }
  }

  void consume(ByteReader& r) const override {
    for (int i = 0; i < dim_; ++i) r.varint();
  }

  void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const override {
    ByteReader ra{a}, rb{b};
    out.clear();
    for (int i = 0; i < dim_; ++i) put_varint(out, ra.varint() + rb.varint());
  }

  void invert_bytes(std::string_view a, std::string& out) const override {
    ByteReader ra{a};
    out.clear();
    for (int i = 0; i < dim_; ++i) put_varint(out, -ra.varint());
  }

  std::string render(const Element& e) const override {
    ByteReader r{e.view()};
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += std::to_string(r.varint());
    }
    return s + ")";
  }

  std::optional<int64_t> closed_form_word_length(const Element& e) const override {
    ByteReader r{e.view()};
    int64_t sum = 0;
    for (int i = 0; i < dim_; ++i) sum += std::llabs(r.varint());
    return sum;
  }

 private:
  static std::string encode(const std::vector<int64_t>& coords) {
    std::string out;
    for (int64_t c : coords) put_varint(out, c);
    return out;
  }

  int dim_;
};

// ---------------------------------------------------------------------------
// Free group F_k: payload is a length-prefixed reduced word. Letter byte
// 2i encodes a_i, 2i+1 encodes its inverse, so inversion is `letter ^ 1`.

class FreeGroupImpl final : public Group {
 public:
  explicit FreeGroupImpl(GroupDescriptor d) : Group(std::move(d)), rank_(descriptor_.rank()) {
    identity_ = Element(encode({}));
    for (int i = 0; i < 2 * rank_; ++i) {
      generators_.push_back(Element(encode({static_cast<uint8_t>(i)})));
      inverse_index_.push_back(i ^ 1);
    }
  }

  void consume(ByteReader& r) const override {
    uint64_t len = r.uvarint();
    int prev = -1;
    for (uint64_t i = 0; i < len; ++i) {
      uint8_t l = r.byte();
      if (l >= 2 * rank_) throw ParseError("free-group letter out of range");
      if (prev >= 0 && (prev ^ 1) == l) throw ParseError("free-group word not reduced");
      prev = l;
    }
  }

  void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const override {
    ByteReader ra{a}, rb{b};
    uint64_t la = ra.uvarint(), lb = rb.uvarint();
    std::vector<uint8_t> word;
    word.reserve(la + lb);
    for (uint64_t i = 0; i < la; ++i) word.push_back(ra.byte());
    for (uint64_t i = 0; i < lb; ++i) {
      uint8_t l = rb.byte();
      if (!word.empty() && (word.back() ^ 1) == l) {
        word.pop_back();
      } else {
        word.push_back(l);
      }
    }
    out = encode(word);
  }

  void invert_bytes(std::string_view a, std::string& out) const override {
    ByteReader ra{a};
    uint64_t la = ra.uvarint();
    std::vector<uint8_t> word(la);
    for (uint64_t i = 0; i < la; ++i) word[la - 1 - i] = ra.byte() ^ 1;
    out = encode(word);
  }

  std::string render(const Element& e) const override {
    ByteReader r{e.view()};
    uint64_t len = r.uvarint();
    if (len == 0) return "e";
    std::string s;
    for (uint64_t i = 0; i < len; ++i) {
      uint8_t l = r.byte();
      if (rank_ <= 26) {
        s.push_back(static_cast<char>('a' + (l >> 1)));
      } else {
        s += "g" + std::to_string(l >> 1);
      }
      if (l & 1) s.push_back('\'');
    }
    return s;
  }

  std::optional<int64_t> closed_form_word_length(const Element& e) const override {
    ByteReader r{e.view()};
    return static_cast<int64_t>(r.uvarint());
  }

 private:
  static std::string encode(const std::vector<uint8_t>& word) {
    std::string out;
    put_uvarint(out, word.size());
    out.append(word.begin(), word.end());
    return out;
  }

  int rank_;
};

// ---------------------------------------------------------------------------
// Heisenberg group: triples (a,b,c) standing for [[1,a,c],[0,1,b],[0,0,1]],
// product (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').

class HeisenbergGroup final : public Group {
 public:
  explicit HeisenbergGroup(GroupDescriptor d) : Group(std::move(d)) {
    identity_ = Element(encode(0, 0, 0));
    generators_ = {Element(encode(1, 0, 0)), Element(encode(-1, 0, 0)),
                   Element(encode(0, 1, 0)), Element(encode(0, -1, 0))};
    inverse_index_ = {1, 0, 3, 2};
  }

  void consume(ByteReader& r) const override {
    r.varint();
    r.varint();
    r.varint();
  }

  void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const override {
    ByteReader ra{a}, rb{b};
    int64_t a1 = ra.varint(), b1 = ra.varint(), c1 = ra.varint();
    int64_t a2 = rb.varint(), b2 = rb.varint(), c2 = rb.varint();
    out = encode(a1 + a2, b1 + b2, c1 + c2 + a1 * b2);
  }

  void invert_bytes(std::string_view a, std::string& out) const override {
    ByteReader ra{a};
    int64_t a1 = ra.varint(), b1 = ra.varint(), c1 = ra.varint();
    out = encode(-a1, -b1, a1 * b1 - c1);
  }

  std::string render(const Element& e) const override {
    ByteReader r{e.view()};
    int64_t a = r.varint(), b = r.varint(), c = r.varint();
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }

 private:
  static std::string encode(int64_t a, int64_t b, int64_t c) {
    std::string out;
    put_varint(out, a);
    put_varint(out, b);
    put_varint(out, c);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Cyclic Z_m: payload is the residue in [0, m).

class CyclicGroup final : public Group {
 public:
  explicit CyclicGroup(GroupDescriptor d) : Group(std::move(d)), m_(descriptor_.modulus()) {
    identity_ = Element(encode(0));
    if (m_ == 2) {
      generators_ = {Element(encode(1))};
      inverse_index_ = {0};
    } else {
      generators_ = {Element(encode(1)), Element(encode(static_cast<uint64_t>(m_) - 1))};
      inverse_index_ = {1, 0};
    }
  }

  void consume(ByteReader& r) const override {
    if (r.uvarint() >= static_cast<uint64_t>(m_)) throw ParseError("cyclic residue out of range");
  }

  void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const override {
    ByteReader ra{a}, rb{b};
    out = encode((ra.uvarint() + rb.uvarint()) % static_cast<uint64_t>(m_));
  }

  void invert_bytes(std::string_view a, std::string& out) const override {
    ByteReader ra{a};
    uint64_t r = ra.uvarint();
    out = encode(r == 0 ? 0 : static_cast<uint64_t>(m_) - r);
  }

  std::string render(const Element& e) const override {
    ByteReader r{e.view()};
    return std::to_string(r.uvarint());
  }

  std::optional<int64_t> closed_form_word_length(const Element& e) const override {
    ByteReader r{e.view()};
    int64_t v = static_cast<int64_t>(r.uvarint());
    return std::min(v, m_ - v);
  }

 private:
  static std::string encode(uint64_t r) {
    std::string out;
    put_uvarint(out, r);
    return out;
  }

  int64_t m_;
};

// ---------------------------------------------------------------------------
// Direct product: payload is the concatenation of the two component
// payloads; generators act componentwise (left factor first).

class ProductGroup final : public Group {
 public:
  ProductGroup(GroupDescriptor d, GroupPtr left, GroupPtr right)
      : Group(std::move(d)), left_(std::move(left)), right_(std::move(right)) {
    identity_ = Element(left_->identity().bytes() + right_->identity().bytes());
    for (int i = 0; i < left_->generator_count(); ++i) {
      generators_.push_back(Element(left_->generator(i).bytes() + right_->identity().bytes()));
      inverse_index_.push_back(left_->generator_inverse(i));
    }
    for (int i = 0; i < right_->generator_count(); ++i) {
      generators_.push_back(Element(left_->identity().bytes() + right_->generator(i).bytes()));
      inverse_index_.push_back(left_->generator_count() + right_->generator_inverse(i));
    }
  }

  void consume(ByteReader& r) const override {
    left_->consume(r);
    right_->consume(r);
  }

  void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const override {
    auto [al, ar] = split(a);
    auto [bl, br] = split(b);
    std::string l, r;
    left_->multiply_bytes(al, bl, l);
    right_->multiply_bytes(ar, br, r);
    out = l + r;
  }

  void invert_bytes(std::string_view a, std::string& out) const override {
    auto [al, ar] = split(a);
    std::string l, r;
    left_->invert_bytes(al, l);
    right_->invert_bytes(ar, r);
    out = l + r;
  }

  void mul_gen(std::string_view a, int i, std::string& out) const override {
    auto [al, ar] = split(a);
    if (i < left_->generator_count()) {
      std::string l;
      left_->mul_gen(al, i, l);
      out.assign(l).append(ar);
    } else {
      std::string r;
      right_->mul_gen(ar, i - left_->generator_count(), r);
      out.assign(al).append(r);
    }
  }

  std::string render(const Element& e) const override {
    auto [al, ar] = split(e.view());
    return "(" + left_->render(Element(std::string(al))) + "," +
           right_->render(Element(std::string(ar))) + ")";
  }

  std::optional<int64_t> closed_form_word_length(const Element& e) const override {
    auto [al, ar] = split(e.view());
    auto l = left_->closed_form_word_length(Element(std::string(al)));
    auto r = right_->closed_form_word_length(Element(std::string(ar)));
    if (!l || !r) return std::nullopt;
    return *l + *r;
  }

  GroupPtr left_, right_;

 private:
  std::pair<std::string_view, std::string_view> split(std::string_view a) const {
    ByteReader r{a};
    left_->consume(r);
    return {a.substr(0, r.pos), a.substr(r.pos)};
  }
};

// ---------------------------------------------------------------------------
// Wreath product Z_m wr B with switch-walk-switch generators. Payload:
// base position, lamp count, then (base key, value) pairs with keys strictly
// increasing in byte order and values in [1, m).

struct LampEntry {
  std::string key;
  uint32_t value;
};

class WreathGroup final : public Group {
 public:
  WreathGroup(GroupDescriptor d, GroupPtr base)
      : Group(std::move(d)), base_(std::move(base)), m_(descriptor_.lamp().modulus()) {
    lamp_values_ = (m_ == 2) ? std::vector<uint32_t>{1}
                             : std::vector<uint32_t>{1, static_cast<uint32_t>(m_ - 1)};
    {
      std::string id;
      id.append(base_->identity().bytes());
      put_uvarint(id, 0);
      identity_ = Element(std::move(id));
    }
    const int L = static_cast<int>(lamp_values_.size());
    const int W = base_->generator_count();
    for (int s1 = -1; s1 < L; ++s1) {
      for (int w = 0; w < W; ++w) {
        for (int s2 = -1; s2 < L; ++s2) {
          generators_.push_back(Element(make_sws(s1, w, s2)));
          int is1 = lamp_inverse(s2), is2 = lamp_inverse(s1);
          int iw = base_->generator_inverse(w);
          inverse_index_.push_back(((is1 + 1) * W + iw) * (L + 1) + (is2 + 1));
        }
      }
    }
  }

  int lamp_modulus() const { return static_cast<int>(m_); }
  const GroupPtr& base_group() const { return base_; }
  int lamp_generator_count() const { return static_cast<int>(lamp_values_.size()); }
  int lamp_generator_value(int i) const { return static_cast<int>(lamp_values_[static_cast<size_t>(i)]); }

  SwsParts generator_parts(int index) const {
    const int L = static_cast<int>(lamp_values_.size());
    const int W = base_->generator_count();
    int s2 = index % (L + 1) - 1;
    index /= (L + 1);
    int w = index % W;
    int s1 = index / W - 1;
    return SwsParts{s1, w, s2};
  }

  int generator_index(const SwsParts& p) const {
    const int L = static_cast<int>(lamp_values_.size());
    const int W = base_->generator_count();
    return ((p.switch_before + 1) * W + p.base_step) * (L + 1) + (p.switch_after + 1);
  }

  struct Parts {
    std::string position;
    std::vector<LampEntry> lamps;
  };

  Parts decode(std::string_view a) const {
    ByteReader r{a};
    Parts p;
    size_t start = r.pos;
    base_->consume(r);
    p.position = std::string(a.substr(start, r.pos - start));
    uint64_t n = r.uvarint();
    std::string prev;
    for (uint64_t i = 0; i < n; ++i) {
      size_t ks = r.pos;
      base_->consume(r);
      std::string key(a.substr(ks, r.pos - ks));
      if (i > 0 && key <= prev) throw ParseError("lamp keys out of canonical order");
      uint64_t v = r.uvarint();
      if (v == 0 || v >= m_) throw ParseError("lamp value out of range");
      p.lamps.push_back(LampEntry{key, static_cast<uint32_t>(v)});
      prev = std::move(key);
    }
    return p;
  }

  static std::string encode(const Parts& p) {
    std::string out = p.position;
    put_uvarint(out, p.lamps.size());
    for (const auto& e : p.lamps) {
      out.append(e.key);
      put_uvarint(out, e.value);
    }
    return out;
  }

  void consume(ByteReader& r) const override {
    base_->consume(r);
    uint64_t n = r.uvarint();
    std::string_view prev;
    bool have_prev = false;
    for (uint64_t i = 0; i < n; ++i) {
      size_t ks = r.pos;
      base_->consume(r);
      std::string_view key = r.data.substr(ks, r.pos - ks);
      if (have_prev && key <= prev) throw ParseError("lamp keys out of canonical order");
      prev = key;
      have_prev = true;
      uint64_t v = r.uvarint();
      if (v == 0 || v >= m_) throw ParseError("lamp value out of range");
    }
  }

  // (g1,L1)(g2,L2) = (g1 g2, s -> L1(s) * L2(g1^-1 s)): translate L2 keys by
  // g1 on the left and merge values mod m.
  void multiply_bytes(std::string_view a, std::string_view b, std::string& out) const override {
    Parts pa = decode(a), pb = decode(b);
    Parts res;
    base_->multiply_bytes(pa.position, pb.position, res.position);
    res.lamps = pa.lamps;
    std::string tkey;
    for (const auto& e : pb.lamps) {
      base_->multiply_bytes(pa.position, e.key, tkey);
      add_lamp(res.lamps, tkey, e.value);
    }
    out = encode(res);
  }

  // (g,L)^-1 = (g^-1, s -> L(g s)^-1): keys map through g^-1 on the left.
  void invert_bytes(std::string_view a, std::string& out) const override {
    Parts pa = decode(a);
    Parts res;
    base_->invert_bytes(pa.position, res.position);
    std::string tkey;
    for (const auto& e : pa.lamps) {
      base_->multiply_bytes(res.position, e.key, tkey);
      add_lamp(res.lamps, tkey, static_cast<uint32_t>(m_ - e.value));
    }
    out = encode(res);
  }

  void mul_gen(std::string_view a, int i, std::string& out) const override {
    SwsParts sws = generator_parts(i);
    Parts p = decode(a);
    if (sws.switch_before >= 0) {
      add_lamp(p.lamps, p.position, lamp_values_[static_cast<size_t>(sws.switch_before)]);
    }
    std::string npos;
    base_->mul_gen(p.position, sws.base_step, npos);
    p.position = std::move(npos);
    if (sws.switch_after >= 0) {
      add_lamp(p.lamps, p.position, lamp_values_[static_cast<size_t>(sws.switch_after)]);
    }
    out = encode(p);
  }

  std::string render(const Element& e) const override {
    Parts p = decode(e.view());
    std::string s = "(pos=" + base_->render(Element(p.position)) + ", lamps={";
    bool first = true;
    for (const auto& l : p.lamps) {
      if (!first) s += ",";
      first = false;
      s += base_->render(Element(l.key));
      if (m_ != 2) s += ":" + std::to_string(l.value);
    }
    return s + "})";
  }

  // Closed form for the standard lamplighter Z2 wr Z: shortest walk from 0
  // to the position that visits every lit lamp, with the one special case
  // of a lamp at the origin and no movement (a switch needs a step).
  std::optional<int64_t> closed_form_word_length(const Element& e) const override {
    if (m_ != 2 || base_->descriptor().kind() != GroupKind::kZPower ||
        base_->descriptor().dim() != 1) {
      return std::nullopt;
    }
    Parts p = decode(e.view());
    auto as_int = [](std::string_view bytes) {
      ByteReader r{bytes};
      return r.varint();
    };
    int64_t k = as_int(p.position);
    int64_t lo = std::min<int64_t>(0, k), hi = std::max<int64_t>(0, k);
    for (const auto& l : p.lamps) {
      int64_t q = as_int(l.key);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    int64_t left_first = -lo + (hi - lo) + (hi - k);
    int64_t right_first = hi + (hi - lo) + (k - lo);
    int64_t d = std::min(left_first, right_first);
    if (d == 0 && !p.lamps.empty()) return 2;
    return d;
  }

  GroupPtr base_;

 private:
  int lamp_inverse(int s) const {
    if (s < 0) return -1;
    if (m_ == 2) return 0;
    return s ^ 1;
  }

  std::string make_sws(int s1, int w, int s2) const {
    Parts p;
    p.position = base_->generator(w).bytes();
    if (s1 >= 0) add_lamp(p.lamps, base_->identity().bytes(), lamp_values_[static_cast<size_t>(s1)]);
    if (s2 >= 0) add_lamp(p.lamps, p.position, lamp_values_[static_cast<size_t>(s2)]);
    return encode(p);
  }

  void add_lamp(std::vector<LampEntry>& lamps, std::string_view key, uint32_t delta) const {
    auto it = std::lower_bound(lamps.begin(), lamps.end(), key,
                               [](const LampEntry& e, std::string_view k) { return e.key < k; });
    if (it != lamps.end() && it->key == key) {
      it->value = (it->value + delta) % static_cast<uint32_t>(m_);
      if (it->value == 0) lamps.erase(it);
    } else {
      uint32_t v = delta % static_cast<uint32_t>(m_);
      if (v != 0) lamps.insert(it, LampEntry{std::string(key), v});
    }
  }

  uint64_t m_;
  std::vector<uint32_t> lamp_values_;
};

}  // namespace

GroupPtr make_group(const GroupDescriptor& d) {
  switch (d.kind()) {
    case GroupKind::kZPower:
      if (d.dim() < 1 || d.dim() > 256) throw ParseError("Z^d supports 1 <= d <= 256");
      return std::make_shared<ZPowerGroup>(d);
    case GroupKind::kFreeGroup:
      if (d.rank() < 1 || d.rank() > 128) throw ParseError("free group supports 1 <= rank <= 128");
      return std::make_shared<FreeGroupImpl>(d);
    case GroupKind::kHeisenberg:
      return std::make_shared<HeisenbergGroup>(d);
    case GroupKind::kCyclic:
      if (d.modulus() < 2) throw ParseError("cyclic group requires modulus >= 2");
      return std::make_shared<CyclicGroup>(d);
    case GroupKind::kDirectProduct:
      return std::make_shared<ProductGroup>(d, make_group(d.left()), make_group(d.right()));
    case GroupKind::kWreathProduct: {
      if (d.lamp().kind() != GroupKind::kCyclic || d.lamp().modulus() < 2) {
        throw ParseError("wreath lamp group must be a nontrivial cyclic group");
      }
      return std::make_shared<WreathGroup>(d, make_group(d.base()));
    }
  }
  throw ParseError("unknown group kind");
}

GroupPtr make_group(std::string_view spec) { return make_group(GroupDescriptor::parse(spec)); }

// --- structure.hpp accessors ------------------------------------------------

namespace {
const WreathGroup& as_wreath(const Group& g) {
  const auto* w = dynamic_cast<const WreathGroup*>(&g);
  if (!w) throw Error("group is not a wreath product: " + g.spec_string());
  return *w;
}
}  // namespace

WreathParts wreath_decompose(const Group& wreath, const Element& e) {
  const auto& w = as_wreath(wreath);
  wreath.validate(e);
  auto parts = w.decode(e.view());
  WreathParts out;
  out.position = Element(std::move(parts.position));
  out.lamps.reserve(parts.lamps.size());
  for (auto& l : parts.lamps) {
    out.lamps.emplace_back(Element(std::move(l.key)), static_cast<int>(l.value));
  }
  return out;
}

Element wreath_compose(const Group& wreath, const Element& position,
                       std::vector<std::pair<Element, int>> lamps) {
  const auto& w = as_wreath(wreath);
  const int m = w.lamp_modulus();
  w.base_group()->validate(position);
  std::sort(lamps.begin(), lamps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out = position.bytes();
  put_uvarint(out, lamps.size());
  const Element* prev = nullptr;
  for (const auto& [key, value] : lamps) {
    w.base_group()->validate(key);
    if (prev && !(*prev < key)) throw Error("duplicate lamp key in wreath_compose");
    if (value <= 0 || value >= m) throw Error("lamp value out of range in wreath_compose");
    out.append(key.bytes());
    put_uvarint(out, static_cast<uint64_t>(value));
    prev = &key;
  }
  return Element(std::move(out));
}

int wreath_lamp_modulus(const Group& wreath) { return as_wreath(wreath).lamp_modulus(); }

GroupPtr wreath_base(const Group& wreath) { return as_wreath(wreath).base_group(); }

SwsParts wreath_generator_parts(const Group& wreath, int generator_index) {
  return as_wreath(wreath).generator_parts(generator_index);
}

int wreath_generator_index(const Group& wreath, const SwsParts& parts) {
  return as_wreath(wreath).generator_index(parts);
}

int wreath_lamp_generator_count(const Group& wreath) {
  return as_wreath(wreath).lamp_generator_count();
}

int wreath_lamp_generator_value(const Group& wreath, int i) {
  return as_wreath(wreath).lamp_generator_value(i);
}

std::pair<GroupPtr, GroupPtr> product_factors(const Group& product) {
  const auto* p = dynamic_cast<const ProductGroup*>(&product);
  if (!p) throw Error("group is not a direct product: " + product.spec_string());
  return {p->left_, p->right_};
}

}  // namespace cayfire
