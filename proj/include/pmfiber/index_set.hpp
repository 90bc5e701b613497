#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pmfiber {

// Subset of {0, ..., n-1} stored as a bitmask (n <= 32). Indices are 0-based
// in code; anything user-facing prints them 1-based.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr IndexSet all(int n) {
    return IndexSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }
  static constexpr IndexSet single(int k) { return IndexSet(std::uint32_t{1} << k); }
  static IndexSet from_elements(const std::vector<int>& elems) {
    IndexSet s;
    for (int e : elems) s = s.with(e);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int k) const { return ((bits_ >> k) & 1U) != 0; }

  constexpr IndexSet with(int k) const { return IndexSet(bits_ | (std::uint32_t{1} << k)); }
  constexpr IndexSet without(int k) const { return IndexSet(bits_ & ~(std::uint32_t{1} << k)); }
  constexpr IndexSet complement(int n) const { return IndexSet(all(n).bits_ & ~bits_); }
  constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }

  // Smallest element, or -1 when empty.
  constexpr int min() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  // Sum of the 1-based labels.
  int label_sum() const {
    int s = 0;
    for (int e : elements()) s += e + 1;
    return s;
  }

  // 1-based rendering, e.g. "{1,3}".
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) out += ',';
      out += std::to_string(e + 1);
      first = false;
    }
    return out + "}";
  }

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;

 private:
  std::uint32_t bits_ = 0;
};

// Lexicographic order on the sorted element lists.
inline bool lex_less(IndexSet a, IndexSet b) { return a.elements() < b.elements(); }

// Calls fn(S) for every subset S of `universe`, in increasing bitmask order.
template <typename Fn>
void for_each_subset(IndexSet universe, Fn&& fn) {
  const std::uint32_t u = universe.bits();
  std::uint32_t s = 0;
  while (true) {
    fn(IndexSet(s));
    if (s == u) break;
    s = (s - u) & u;
  }
}

}  // namespace pmfiber
