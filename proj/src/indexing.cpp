#include "waveharm/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace waveharm {

bool is_valid(AngularIndex idx) {
  return idx.l >= 0 && std::abs(idx.m) <= idx.l;
}

int rank(AngularIndex idx) {
  if (!is_valid(idx))
    throw std::invalid_argument("AngularIndex " + to_string(idx) +
                                ": |m| > l");
  // Level l occupies ranks [l^2, (l+1)^2). Within the level: m=0 first,
  // then -1, +1, -2, +2, ...
  const int am = std::abs(idx.m);
  int within = 0;
  if (am > 0) within = 2 * am - (idx.m < 0 ? 1 : 0);
  return idx.l * idx.l + within;
}

AngularIndex unrank(int r) {
  if (r < 0) throw std::invalid_argument("rank must be non-negative");
  int l = static_cast<int>(std::sqrt(static_cast<double>(r)));
  while ((l + 1) * (l + 1) <= r) ++l;
  while (l * l > r) --l;
  const int within = r - l * l;
  int m = 0;
  if (within > 0) m = (within % 2 == 1) ? -(within + 1) / 2 : within / 2;
  return {l, m};
}

bool index_less(AngularIndex a, AngularIndex b) { return rank(a) < rank(b); }

std::string to_string(AngularIndex idx) {
  return "(" + std::to_string(idx.l) + "," + std::to_string(idx.m) + ")";
}

void MultiIndex::add(AngularIndex idx, int count) {
  if (count <= 0) throw std::invalid_argument("multiplicity must be positive");
  const int r = rank(idx);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), r,
      [](const std::pair<int, int>& e, int key) { return e.first < key; });
  if (it != entries_.end() && it->first == r)
    it->second += count;
  else
    entries_.insert(it, {r, count});
}

int MultiIndex::multiplicity(AngularIndex idx) const {
  const int r = rank(idx);
  for (const auto& [slot, count] : entries_)
    if (slot == r) return count;
  return 0;
}

int MultiIndex::capacity() const {
  int total = 0;
  for (const auto& [slot, count] : entries_) total += count;
  return total;
}

AngularIndex MultiIndex::support() const {
  if (entries_.empty())
    throw std::logic_error("support of an empty multi-index");
  return unrank(entries_.back().first);
}

std::string MultiIndex::key() const {
  std::string out;
  for (const auto& [slot, count] : entries_) {
    out += std::to_string(slot);
    out += ':';
    out += std::to_string(count);
    out += ';';
  }
  return out;
}

namespace {

unsigned __int128 checked_mul(unsigned __int128 a, std::uint64_t b) {
  if (a != 0 && b != 0) {
    unsigned __int128 r = a * b;
    if (r / b != a) throw std::overflow_error("multinomial overflow");
    return r;
  }
  return 0;
}

}  // namespace

std::uint64_t multinomial(const MultiIndex& d) {
  // Incremental product of binomials: C^d = prod_j C(s_j, d_j) where s_j is
  // the running capacity. Each binomial is evaluated without forming large
  // factorials.
  unsigned __int128 result = 1;
  std::uint64_t running = 0;
  for (const auto& [slot, count] : d.entries()) {
    (void)slot;
    for (int t = 1; t <= count; ++t) {
      ++running;
      result = checked_mul(result, running);
      result /= static_cast<std::uint64_t>(t);
    }
  }
  if (result > static_cast<unsigned __int128>(UINT64_MAX) ||
      static_cast<std::uint64_t>(result) > INT64_MAX)
    throw std::overflow_error("multinomial exceeds 2^63-1");
  return static_cast<std::uint64_t>(result);
}

std::vector<MultiIndex> enumerate_multi_indices(int capacity,
                                                AngularIndex support_bound) {
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  const int slots = rank(support_bound) + 1;
  std::vector<MultiIndex> out;
  std::vector<int> mult(slots, 0);
  // Weak compositions in lexicographic order of the multiplicity vector.
  auto emit = [&] {
    MultiIndex d;
    for (int s = 0; s < slots; ++s)
      if (mult[s] > 0) d.add(unrank(s), mult[s]);
    out.push_back(std::move(d));
  };
  auto recurse = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == slots - 1) {
      mult[slot] = remaining;
      emit();
      mult[slot] = 0;
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      mult[slot] = take;
      self(self, slot + 1, remaining - take);
    }
    mult[slot] = 0;
  };
  recurse(recurse, 0, capacity);
  return out;
}

std::uint64_t multi_index_count(int capacity, AngularIndex support_bound) {
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  const int slots = rank(support_bound) + 1;
  // C(capacity + slots - 1, slots - 1)
  unsigned __int128 result = 1;
  for (int t = 1; t <= slots - 1; ++t) {
    result = checked_mul(result, static_cast<std::uint64_t>(capacity + t));
    result /= static_cast<std::uint64_t>(t);
  }
  if (result > static_cast<unsigned __int128>(UINT64_MAX))
    throw std::overflow_error("multi-index count overflow");
  return static_cast<std::uint64_t>(result);
}

}  // namespace waveharm
