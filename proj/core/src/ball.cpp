#include "cayfire/ball.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

namespace cayfire {

namespace {

constexpr char kMagic[4] = {'C', 'A', 'Y', 'B'};
constexpr uint32_t kFormatVersion = 1;

// Streaming FNV-1a over everything written/read before the trailer.
struct Fnv64 {
  uint64_t h = 0xcbf29ce484222325ull;
  void update(const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ull;
    }
  }
};

struct HashedWriter {
  std::ostream& os;
  Fnv64 fnv;
  void write(const void* data, size_t n) {
    os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    fnv.update(data, n);
  }
  void u32(uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    write(b, 4);
  }
  void u64(uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write(b, 8);
  }
};

}  // namespace

uint64_t Ball::volume(int r) const {
  if (r < 0 || r > radius()) throw Error("volume radius out of range");
  return layer_begin_[static_cast<size_t>(r) + 1];
}

int Ball::word_length(uint32_t id) const {
  auto it = std::upper_bound(layer_begin_.begin(), layer_begin_.end(), static_cast<uint64_t>(id));
  return static_cast<int>(it - layer_begin_.begin()) - 1;
}

GrowthTable Ball::growth_table() const {
  GrowthTable t;
  t.v.reserve(static_cast<size_t>(radius()) + 1);
  for (int r = 0; r <= radius(); ++r) t.v.push_back(volume(r));
  return t;
}

Ball Ball::enumerate(GroupPtr group, int radius, const MemoryBudget& budget) {
  return enumerate_up_to(std::move(group), radius, radius, budget);
}

Ball Ball::enumerate_up_to(GroupPtr group, int min_radius, int max_radius,
                           const MemoryBudget& budget) {
  if (min_radius < 0 || max_radius < min_radius) throw Error("bad ball radius bounds");
  Ball ball(std::move(group));
  const Group& g = ball.group();

  ball.arena_.add(g.identity().view());
  ball.index_.insert(ball.arena_, g.identity().view(), 0);
  ball.layer_begin_ = {0, 1};

  detail::ByteArena staging;
  std::string buf;
  for (int layer = 1; layer <= max_radius; ++layer) {
    staging.clear();
    detail::ByteIndex staged;
    uint64_t prev_begin = ball.layer_begin_[static_cast<size_t>(layer) - 1];
    uint64_t prev_end = ball.layer_begin_[static_cast<size_t>(layer)];
    bool over_budget = false;
    for (uint64_t id = prev_begin; id < prev_end && !over_budget; ++id) {
      for (int gi = 0; gi < g.generator_count(); ++gi) {
        g.mul_gen(ball.arena_.view(static_cast<uint32_t>(id)), gi, buf);
        if (ball.index_.find(ball.arena_, buf) || staged.find(staging, buf)) continue;
        uint32_t sid = staging.add(buf);
        staged.insert(staging, buf, sid);
        uint64_t projected = ball.arena_.byte_size() + ball.index_.byte_size() +
                             staging.byte_size() + staged.byte_size() +
                             16 * (ball.arena_.count() + staging.count());
        if (projected > budget.bytes) {
          over_budget = true;
          break;
        }
      }
    }
    if (over_budget) {
      if (layer - 1 >= min_radius) return ball;  // largest complete radius
      throw BudgetExceeded("memory budget exceeded enumerating " + g.spec_string() +
                               " at radius " + std::to_string(layer) +
                               "; largest feasible radius is " + std::to_string(layer - 1),
                           layer - 1);
    }
    // canonical layer order: sort the new layer by byte encoding
    std::vector<uint32_t> order(staging.count());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return staging.view(a) < staging.view(b); });
    for (uint32_t sid : order) {
      uint32_t id = ball.arena_.add(staging.view(sid));
      ball.index_.insert(ball.arena_, ball.arena_.view(id), id);
    }
    ball.layer_begin_.push_back(ball.arena_.count());
  }
  return ball;
}

GrowthTable growth_table(GroupPtr group, int r_max, const MemoryBudget& budget) {
  return Ball::enumerate(std::move(group), r_max, budget).growth_table();
}

std::vector<uint32_t> outer_boundary(const Ball& ball, const IdSet& a) {
  IdSet seen(ball.size());
  a.for_each([&](uint32_t id) {
    ball.for_each_neighbor(id, [&](uint32_t nb) {
      if (!a.contains(nb)) seen.insert(nb);
    });
  });
  return seen.to_vector();
}

std::vector<uint32_t> inner_boundary(const Ball& ball, const IdSet& a) {
  std::vector<uint32_t> out;
  a.for_each([&](uint32_t id) {
    bool exposed = false;
    ball.for_each_neighbor(id, [&](uint32_t nb) {
      if (!a.contains(nb)) exposed = true;
    });
    if (exposed) out.push_back(id);
  });
  return out;
}

void Ball::save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open ball cache for writing: " + path.string());
  HashedWriter w{os};
  w.write(kMagic, 4);
  w.u32(kFormatVersion);
  std::string spec = group_->spec_string();
  w.u32(static_cast<uint32_t>(spec.size()));
  w.write(spec.data(), spec.size());
  w.u32(static_cast<uint32_t>(radius()));
  for (int k = 0; k <= radius(); ++k) w.u64(layer_end(k) - layer_begin(k));
  for (uint32_t id = 0; id < size(); ++id) {
    auto v = arena_.view(id);
    w.write(v.data(), v.size());
  }
  uint64_t checksum = w.fnv.h;
  w.u64(checksum);
  os.flush();
  if (!os) throw Error("write failure on ball cache: " + path.string());
}

Ball Ball::load(GroupPtr group, const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open ball cache: " + path.string());
  std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

  if (data.size() < 4 + 4 + 4 + 4 + 8 || std::memcmp(data.data(), kMagic, 4) != 0) {
    throw CacheError(CacheError::Kind::kFormat, "not a ball cache file: " + path.string());
  }
  Fnv64 fnv;
  fnv.update(data.data(), data.size() - 8);
  auto rd_u32 = [&](size_t at) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(data[at + i])) << (8 * i);
    return v;
  };
  auto rd_u64 = [&](size_t at) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(data[at + i])) << (8 * i);
    return v;
  };
  if (rd_u64(data.size() - 8) != fnv.h) {
    throw CacheError(CacheError::Kind::kChecksum, "ball cache checksum mismatch: " + path.string());
  }

  size_t pos = 4;
  uint32_t version = rd_u32(pos);
  pos += 4;
  if (version != kFormatVersion) {
    throw CacheError(CacheError::Kind::kVersion,
                     "ball cache format version " + std::to_string(version) + " unsupported");
  }
  uint32_t spec_len = rd_u32(pos);
  pos += 4;
  if (pos + spec_len + 4 > data.size()) {
    throw CacheError(CacheError::Kind::kFormat, "descriptor length corrupt");
  }
  std::string spec = data.substr(pos, spec_len);
  pos += spec_len;
  if (spec != group->spec_string()) {
    throw CacheError(CacheError::Kind::kDescriptor, "ball cache descriptor mismatch: file has '" +
                                                        spec + "', expected '" +
                                                        group->spec_string() + "'");
  }
  uint32_t radius = rd_u32(pos);
  pos += 4;
  if (radius > (1u << 20) || pos + 8ull * (radius + 1) > data.size() - 8) {
    throw CacheError(CacheError::Kind::kFormat, "radius or layer counts corrupt");
  }
  std::vector<uint64_t> counts(radius + 1);
  for (auto& c : counts) {
    c = rd_u64(pos);
    pos += 8;
  }

  Ball ball(group);
  ball.layer_begin_ = {0};
  detail::ByteReader reader{std::string_view(data).substr(pos, data.size() - 8 - pos)};
  for (uint32_t layer = 0; layer <= radius; ++layer) {
    std::string_view prev;
    for (uint64_t i = 0; i < counts[layer]; ++i) {
      size_t start = reader.pos;
      try {
        ball.group_->consume(reader);
      } catch (const ParseError& e) {
        throw CacheError(CacheError::Kind::kFormat,
                         std::string("undecodable element in ball cache: ") + e.what());
      }
      std::string_view bytes = reader.data.substr(start, reader.pos - start);
      if (i > 0 && !(prev < bytes)) {
        throw CacheError(CacheError::Kind::kFormat, "layer elements out of canonical order");
      }
      prev = bytes;
      uint32_t id = ball.arena_.add(bytes);
      ball.index_.insert(ball.arena_, ball.arena_.view(id), id);
    }
    ball.layer_begin_.push_back(ball.arena_.count());
  }
  if (!reader.done()) {
    throw CacheError(CacheError::Kind::kFormat, "trailing bytes in ball cache element region");
  }
  if (counts[0] != 1 || ball.arena_.view(0) != group->identity().view()) {
    throw CacheError(CacheError::Kind::kFormat, "ball cache layer 0 is not the identity");
  }
  return ball;
}

}  // namespace cayfire
