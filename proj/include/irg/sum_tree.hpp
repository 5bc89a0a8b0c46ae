#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace irg {

/// Dynamic weighted sampler over a fixed index set.
///
/// Implicit complete binary tree of partial sums. Interior nodes are always
/// recomputed as left + right, so zeroing a leaf leaves no floating-point
/// residue and a removed index can never be drawn. Update and draw are
/// O(log n).
class SumTree {
 public:
  SumTree() = default;

  explicit SumTree(std::span<const double> values) { assign(values); }

  void assign(std::span<const double> values) {
    size_ = values.size();
    leaves_ = 1;
    while (leaves_ < size_) leaves_ <<= 1;
    tree_.assign(2 * leaves_, 0.0);
    for (std::size_t i = 0; i < size_; ++i) {
      if (!(values[i] >= 0.0)) throw std::invalid_argument("SumTree: negative or NaN value");
      tree_[leaves_ + i] = values[i];
    }
    for (std::size_t k = leaves_ - 1; k >= 1; --k) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
  }

  std::size_t size() const { return size_; }
  double total() const { return tree_.size() > 1 ? tree_[1] : 0.0; }
  double value(std::size_t i) const { return tree_[leaves_ + i]; }

  void set(std::size_t i, double v) {
    std::size_t k = leaves_ + i;
    tree_[k] = v;
    for (k >>= 1; k >= 1; k >>= 1) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
  }

  /// Index whose cumulative interval contains u * total(), for u in [0, 1).
  /// Requires total() > 0. Never returns a zero-valued leaf.
  std::size_t find(double u) const {
    double target = u * tree_[1];
    std::size_t k = 1;
    while (k < leaves_) {
      const double left = tree_[2 * k];
      const double right = tree_[2 * k + 1];
      if (target < left || right <= 0.0) {
        k = 2 * k;
      } else {
        target -= left;
        k = 2 * k + 1;
      }
    }
    return k - leaves_;
  }

 private:
  std::size_t size_ = 0;
  std::size_t leaves_ = 1;
  std::vector<double> tree_ = std::vector<double>(2, 0.0);
};

}  // namespace irg
