#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace waveharm {

// Index (l,m), |m| <= l, enumerated as
//   (0,0), (1,0), (1,-1), (1,1), (2,0), (2,-1), (2,1), (2,-2), (2,2), (3,0), ...
// i.e. sorted by l, then |m|, with -|m| before +|m|.
struct AngularIndex {
  int l = 0;
  int m = 0;

  bool operator==(const AngularIndex&) const = default;
};

bool is_valid(AngularIndex idx);

// 0-based position in the enumeration above. Throws on |m| > l.
int rank(AngularIndex idx);

// Inverse of rank.
AngularIndex unrank(int r);

// (l,m) -> (l,-m).
inline AngularIndex conjugate(AngularIndex idx) { return {idx.l, -idx.m}; }

// Strict order predicate matching the enumeration.
bool index_less(AngularIndex a, AngularIndex b);

std::string to_string(AngularIndex idx);

// Finitely supported map AngularIndex -> positive multiplicity, stored as
// (rank, multiplicity) pairs sorted by rank.
class MultiIndex {
 public:
  MultiIndex() = default;

  // Adds `count` to the multiplicity of `idx`.
  void add(AngularIndex idx, int count = 1);

  int multiplicity(AngularIndex idx) const;

  // |d| = sum of multiplicities.
  int capacity() const;

  // Largest index with nonzero multiplicity. Throws if empty.
  AngularIndex support() const;

  bool empty() const { return entries_.empty(); }

  const std::vector<std::pair<int, int>>& entries() const { return entries_; }

  bool operator==(const MultiIndex&) const = default;

  // Deterministic key for caching.
  std::string key() const;

 private:
  std::vector<std::pair<int, int>> entries_;  // (rank, multiplicity), sorted
};

// C^d = |d|! / prod d(l)!, exact. Throws on overflow past 128-bit intermediate
// or a 2^63-1 result.
std::uint64_t multinomial(const MultiIndex& d);

// All d with |d| = capacity and supp d <= support_bound, in lexicographic
// order of the multiplicity vector over slots rank 0 .. rank(support_bound).
std::vector<MultiIndex> enumerate_multi_indices(int capacity,
                                                AngularIndex support_bound);

// Stars-and-bars count of the enumeration above; throws on overflow.
std::uint64_t multi_index_count(int capacity, AngularIndex support_bound);

}  // namespace waveharm
