#include "deltaideal/partitions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace deltaideal {

Partition::Partition(int ambient_dimension, std::vector<int> parts)
    : n_(ambient_dimension), parts_(std::move(parts)) {
  if (n_ < 2) throw DimensionError("ambient dimension must be >= 2, got " + std::to_string(n_));
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
  int sum = 0;
  for (int p : parts_) {
    if (p < 2) throw RankError("tuple part " + std::to_string(p) + " is below 2");
    if (p > n_ - 1) {
      throw RankError("tuple part " + std::to_string(p) + " exceeds n-1 = " +
                      std::to_string(n_ - 1));
    }
    sum += p;
  }
  if (sum > n_) {
    throw DimensionError("tuple parts sum to " + std::to_string(sum) +
                         " > n = " + std::to_string(n_));
  }
}

Partition Partition::empty(int ambient_dimension) {
  return Partition(ambient_dimension, {});
}

int Partition::part_sum() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

std::vector<Partition> enumerate_tuples(int n) {
  if (n < 2) throw DimensionError("tuple enumeration needs n >= 2, got " + std::to_string(n));
  std::vector<Partition> out;
  out.push_back(Partition::empty(n));

  // Each tuple is built directly in canonical (non-increasing) form. Tuples
  // are grouped by length and, within a length, emitted in lexicographic
  // ascending order of the canonical form.
  std::vector<int> parts;
  std::function<void(int, int, int)> extend = [&](int remaining_slots, int budget, int max_part) {
    if (remaining_slots == 0) {
      out.emplace_back(n, parts);
      return;
    }
    // Each of the remaining slots still needs at least 2.
    int highest = std::min(max_part, budget - 2 * (remaining_slots - 1));
    for (int p = 2; p <= highest; ++p) {
      parts.push_back(p);
      extend(remaining_slots - 1, budget - p, p);
      parts.pop_back();
    }
  };
  for (int k = 1; 2 * k <= n; ++k) extend(k, n, n - 1);
  return out;
}

double c_coefficient(const Partition& p) {
  const double n = p.ambient_dimension();
  const double k = p.tuple_length();
  const double s = p.part_sum();
  return n * n * (n + k - 1.0 - s) / (2.0 * (n + k - s));
}

}  // namespace deltaideal
