#pragma once

#include <cstddef>
#include <vector>

namespace gds {

/// Dense n x n matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Dense n x n x n array indexed (a, b, c). Used for the metric's first
/// derivatives, dg(k, i, j) = d_k g_ij, and for Christoffel symbols,
/// gamma(rho, mu, nu) = Gamma^rho_{mu nu}.
template <class T>
class Rank3 {
 public:
  Rank3() = default;
  explicit Rank3(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n * n, fill) {}

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t a, std::size_t b, std::size_t c) { return data_[(a * n_ + b) * n_ + c]; }
  const T& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * n_ + b) * n_ + c];
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Dense n^4 array indexed (a, b, c, d). Holds second metric derivatives
/// ddg(k, l, i, j) = d_k d_l g_ij and derivatives of Christoffel symbols
/// dgamma(k, rho, mu, nu) = d_k Gamma^rho_{mu nu}.
template <class T>
class Rank4 {
 public:
  Rank4() = default;
  explicit Rank4(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n * n * n, fill) {}

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }
  const T& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data_[((a * n_ + b) * n_ + c) * n_ + d];
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace gds
