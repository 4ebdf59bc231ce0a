#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tailspace {

/// A multi-index alpha = (alpha_1, ..., alpha_n) of nonnegative integers.
/// Ordered graded-lexicographically: first by |alpha|, then entrywise.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zero(int dim);
  static MultiIndex unit(int dim, int j, int power = 1);

  int dim() const { return static_cast<int>(entries_.size()); }
  int order() const { return order_; }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }

  /// alpha! = prod_j alpha_j!
  double factorial() const;

  /// alpha with entry j shifted by delta; the caller guarantees the result
  /// stays nonnegative.
  MultiIndex shifted(int j, int delta) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a,
                                          const MultiIndex& b);

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// All multi-indices in dimension n with low <= |alpha| <= high, in graded
/// lexicographic order.
std::vector<MultiIndex> indices_between(int dim, int low, int high);

double factorial(int k);

}  // namespace tailspace
