#pragma once

#include <string>
#include <vector>

#include "deltaideal/errors.hpp"

namespace deltaideal {

/// An unordered tuple (n_1,...,n_k) of subspace dimensions attached to an
/// ambient dimension n. Parts satisfy 2 <= n_j <= n-1 and sum to at most n;
/// the empty tuple (k = 0) is admissible. Parts are kept sorted
/// non-increasing as the canonical form.
class Partition {
 public:
  /// Canonicalizes (sorts) and validates the parts.
  Partition(int ambient_dimension, std::vector<int> parts);

  /// The empty tuple for dimension n.
  static Partition empty(int ambient_dimension);

  int ambient_dimension() const { return n_; }
  const std::vector<int>& parts() const { return parts_; }
  int tuple_length() const { return static_cast<int>(parts_.size()); }
  bool is_empty() const { return parts_.empty(); }
  int part_sum() const;

  /// "(3,2)" for display; "()" for the empty tuple.
  std::string to_string() const;

  bool operator==(const Partition& other) const {
    return n_ == other.n_ && parts_ == other.parts_;
  }

 private:
  int n_;
  std::vector<int> parts_;
};

/// All admissible tuples for dimension n, in deterministic order: the empty
/// tuple first, then by tuple length, then lexicographically. Throws
/// DimensionError if n < 2.
std::vector<Partition> enumerate_tuples(int n);

/// The sharp coefficient n^2 (n + k - 1 - sum n_j) / (2 (n + k - sum n_j)).
/// Strictly positive for every admissible tuple; for the empty tuple it
/// equals n(n-1)/2.
double c_coefficient(const Partition& p);

}  // namespace deltaideal
