#include "multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace tailspace {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    require(e >= 0, ErrorCode::invalid_argument,
            "multi-index entries must be nonnegative");
  order_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(int dim) {
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

MultiIndex MultiIndex::unit(int dim, int j, int power) {
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(j)] = power;
  return MultiIndex(std::move(e));
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : entries_) f *= tailspace::factorial(e);
  return f;
}

MultiIndex MultiIndex::shifted(int j, int delta) const {
  std::vector<int> e = entries_;
  e[static_cast<std::size_t>(j)] += delta;
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) os << ',';
    os << entries_[j];
  }
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.order_ <=> b.order_; c != 0) return c;
  if (auto c = a.entries_.size() <=> b.entries_.size(); c != 0) return c;
  // Higher weight on the first coordinate comes first within a level, so
  // (d,0,...) precedes (0,...,d).
  for (std::size_t j = 0; j < a.entries_.size(); ++j)
    if (a.entries_[j] != b.entries_[j])
      return b.entries_[j] <=> a.entries_[j];
  return std::strong_ordering::equal;
}

namespace {

void fill_level(int dim, int level, std::size_t pos, std::vector<int>& cur,
                std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(dim)) {
    cur[pos] = level;
    out.emplace_back(cur);
    return;
  }
  for (int k = level; k >= 0; --k) {
    cur[pos] = k;
    fill_level(dim, level - k, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_between(int dim, int low, int high) {
  require(dim >= 1, ErrorCode::invalid_argument, "dimension must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(dim), 0);
  for (int level = std::max(low, 0); level <= high; ++level)
    fill_level(dim, level, 0, cur, out);
  return out;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace tailspace
