#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "bdtsp/types.hpp"

namespace bdtsp {

/// Fixed-capacity bitset over working-graph vertex ids.
class VertexSet {
 public:
  static constexpr int kCapacity = 256;

  VertexSet() = default;
  explicit VertexSet(const std::vector<VertexId>& vs) {
    for (VertexId v : vs) insert(v);
  }

  void insert(VertexId v) { words_[word(v)] |= bit(v); }
  void erase(VertexId v) { words_[word(v)] &= ~bit(v); }
  bool contains(VertexId v) const { return (words_[word(v)] & bit(v)) != 0; }

  int size() const {
    int s = 0;
    for (auto w : words_) s += std::popcount(w);
    return s;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  VertexId first() const { return next(0); }
  // Smallest member >= from, or kNoVertex.
  VertexId next(VertexId from) const {
    if (from >= kCapacity) return kNoVertex;
    int wi = from / 64;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (w != 0) return wi * 64 + std::countr_zero(w);
      if (++wi == kWords) return kNoVertex;
      w = words_[wi];
    }
  }

  std::vector<VertexId> to_vector() const {
    std::vector<VertexId> out;
    for (VertexId v = first(); v != kNoVertex; v = next(v + 1)) out.push_back(v);
    return out;
  }

  VertexSet operator|(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }
  VertexSet operator&(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  VertexSet minus(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }
  bool intersects(const VertexSet& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  static constexpr int kWords = kCapacity / 64;
  static int word(VertexId v) { return v / 64; }
  static std::uint64_t bit(VertexId v) { return std::uint64_t{1} << (v % 64); }

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace bdtsp
