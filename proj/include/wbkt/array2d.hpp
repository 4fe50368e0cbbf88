#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace wbkt {

// Dense 2D array over the signed index box [j0, j1) x [k0, k1), x index fastest.
template <class T>
class Array2D {
 public:
  Array2D() = default;
  Array2D(int j0, int j1, int k0, int k1, const T& init = T{})
      : j0_(j0), j1_(j1), k0_(k0), k1_(k1),
        data_(static_cast<std::size_t>(j1 - j0) * static_cast<std::size_t>(k1 - k0), init) {
    assert(j1 >= j0 && k1 >= k0);
  }

  int j_begin() const { return j0_; }
  int j_end() const { return j1_; }
  int k_begin() const { return k0_; }
  int k_end() const { return k1_; }

  bool contains(int j, int k) const { return j >= j0_ && j < j1_ && k >= k0_ && k < k1_; }

  T& operator()(int j, int k) {
    assert(contains(j, k));
    return data_[index(j, k)];
  }
  const T& operator()(int j, int k) const {
    assert(contains(j, k));
    return data_[index(j, k)];
  }

 private:
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(k - k0_) * static_cast<std::size_t>(j1_ - j0_) +
           static_cast<std::size_t>(j - j0_);
  }

  int j0_ = 0, j1_ = 0, k0_ = 0, k1_ = 0;
  std::vector<T> data_;
};

}  // namespace wbkt
