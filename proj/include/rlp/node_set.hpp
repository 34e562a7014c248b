#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace rlp {

/// Fixed-universe set of node ids backed by 64-bit words.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int universe) : n_(universe), words_(static_cast<std::size_t>((universe + 63) / 64), 0) {}
  NodeSet(int universe, std::initializer_list<int> ids) : NodeSet(universe) {
    for (int v : ids) insert(v);
  }
  static NodeSet from_ids(int universe, const std::vector<int>& ids) {
    NodeSet s(universe);
    for (int v : ids) s.insert(v);
    return s;
  }
  static NodeSet full(int universe) {
    NodeSet s(universe);
    for (int v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  [[nodiscard]] int universe() const { return n_; }
  [[nodiscard]] bool contains(int v) const { return (words_[word(v)] >> bit(v)) & 1U; }
  void insert(int v) { words_[word(v)] |= std::uint64_t{1} << bit(v); }
  void erase(int v) { words_[word(v)] &= ~(std::uint64_t{1} << bit(v)); }

  [[nodiscard]] int size() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  [[nodiscard]] bool empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  [[nodiscard]] bool intersects(const NodeSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }
  [[nodiscard]] bool is_subset_of(const NodeSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  NodeSet& operator|=(const NodeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  NodeSet& operator&=(const NodeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  NodeSet& subtract(const NodeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  [[nodiscard]] NodeSet complement() const {
    NodeSet s(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.trim();
    return s;
  }

  /// Smallest member >= from, or -1.
  [[nodiscard]] int next(int from) const {
    if (from >= n_) return -1;
    std::size_t i = word(from);
    std::uint64_t w = words_[i] & (~std::uint64_t{0} << bit(from));
    while (true) {
      if (w != 0) return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      if (++i >= words_.size()) return -1;
      w = words_[i];
    }
  }
  [[nodiscard]] int first() const { return next(0); }

  [[nodiscard]] std::vector<int> ids() const {
    std::vector<int> out;
    for (int v = first(); v >= 0; v = next(v + 1)) out.push_back(v);
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "{";
    bool first_item = true;
    for (int v : ids()) {
      if (!first_item) s += ",";
      s += std::to_string(v);
      first_item = false;
    }
    return s + "}";
  }

  /// Compare as ascending id sequences; a proper prefix orders first.
  [[nodiscard]] static bool lex_less(const NodeSet& a, const NodeSet& b) {
    int x = a.first();
    int y = b.first();
    while (x >= 0 && y >= 0) {
      if (x != y) return x < y;
      x = a.next(x + 1);
      y = b.next(y + 1);
    }
    return x < 0 && y >= 0;
  }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  static std::size_t word(int v) { return static_cast<std::size_t>(v) / 64; }
  static unsigned bit(int v) { return static_cast<unsigned>(v) % 64; }
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rlp
