#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace kfactor {

// Fixed-universe bitset over [0, n).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), w_((n + 63) / 64, 0) {}
  VertexSet(int n, std::initializer_list<int> members) : VertexSet(n) {
    for (int v : members) insert(v);
  }
  static VertexSet full(int n) {
    VertexSet s(n);
    for (auto& x : s.w_) x = ~uint64_t{0};
    s.trim();
    return s;
  }
  static VertexSet of(int n, const std::vector<int>& members) {
    VertexSet s(n);
    for (int v : members) s.insert(v);
    return s;
  }

  int universe() const { return n_; }
  int words() const { return static_cast<int>(w_.size()); }
  const uint64_t* data() const { return w_.data(); }
  uint64_t* data() { return w_.data(); }

  bool contains(int v) const { return (w_[v >> 6] >> (v & 63)) & 1; }
  void insert(int v) { w_[v >> 6] |= uint64_t{1} << (v & 63); }
  void erase(int v) { w_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
  void clear() {
    for (auto& x : w_) x = 0;
  }
  // Drop every member <= v.
  void erase_upto(int v) {
    if (v < 0) return;
    int i = v >> 6;
    for (int j = 0; j < i && j < static_cast<int>(w_.size()); ++j) w_[j] = 0;
    if (i < static_cast<int>(w_.size()))
      w_[i] &= (v & 63) == 63 ? 0 : (~uint64_t{0} << ((v & 63) + 1));
  }

  int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  bool empty() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  // Lowest member at or after v, or -1.
  int next(int v) const {
    if (v >= n_) return -1;
    int i = v >> 6;
    uint64_t x = w_[i] & (~uint64_t{0} << (v & 63));
    while (true) {
      if (x) return (i << 6) + std::countr_zero(x);
      if (++i >= static_cast<int>(w_.size())) return -1;
      x = w_[i];
    }
  }
  int first() const { return next(0); }

  VertexSet& operator&=(const VertexSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  VertexSet complement() const {
    VertexSet s(n_);
    for (size_t i = 0; i < w_.size(); ++i) s.w_[i] = ~w_[i];
    s.trim();
    return s;
  }

  int intersection_count(const VertexSet& o) const {
    int c = 0;
    for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }
  bool intersects(const VertexSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const VertexSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool operator==(const VertexSet& o) const = default;

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int v = first(); v >= 0; v = next(v + 1)) out.push_back(v);
    return out;
  }

  class iterator {
   public:
    iterator(const VertexSet* s, int v) : s_(s), v_(v) {}
    int operator*() const { return v_; }
    iterator& operator++() {
      v_ = s_->next(v_ + 1);
      return *this;
    }
    bool operator!=(const iterator& o) const { return v_ != o.v_; }

   private:
    const VertexSet* s_;
    int v_;
  };
  iterator begin() const { return iterator(this, first()); }
  iterator end() const { return iterator(this, -1); }

 private:
  void trim() {
    if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
  }
  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace kfactor
