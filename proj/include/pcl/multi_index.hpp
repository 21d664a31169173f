#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcl {

// Exponent tuple with entries in [0, p), indexing p-monomials b^I and
// lambda components. Compared lexicographically, leftmost entry most
// significant, which is also the enumeration order of all_multi_indices.
struct MultiIndex {
  std::vector<std::uint32_t> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::uint32_t operator[](std::size_t i) const { return entries[i]; }

  friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
  friend bool operator==(const MultiIndex &, const MultiIndex &) = default;

  // Position in the enumeration order: sum of entries[i] * p^(len-1-i).
  std::size_t linear(std::uint32_t p) const {
    std::size_t r = 0;
    for (auto e : entries)
      r = r * p + e;
    return r;
  }

  static MultiIndex from_linear(std::size_t idx, std::uint32_t p, std::size_t len) {
    MultiIndex m;
    m.entries.assign(len, 0);
    for (std::size_t i = len; i-- > 0;) {
      m.entries[i] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    return m;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i)
        s += " ";
      s += std::to_string(entries[i]);
    }
    return s + ")";
  }
};

inline std::size_t multi_index_count(std::uint32_t p, std::size_t len) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < len; ++i)
    n *= p;
  return n;
}

inline std::vector<MultiIndex> all_multi_indices(std::uint32_t p, std::size_t len) {
  std::vector<MultiIndex> out;
  const std::size_t n = multi_index_count(p, len);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(MultiIndex::from_linear(i, p, len));
  return out;
}

} // namespace pcl
