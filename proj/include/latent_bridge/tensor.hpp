#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <vector>

namespace lb {

/// Dense row-major array of doubles. Images are stored NCHW.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s, double fill = 0.0)
      : shape(std::move(s)), data(count(shape), fill) {}

  static std::size_t count(const std::vector<std::size_t>& s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{1},
                           [](std::size_t a, std::size_t b) { return a * b; });
  }

  std::size_t size() const { return data.size(); }
  std::size_t dim(std::size_t i) const { return shape.at(i); }
  std::size_t rank() const { return shape.size(); }
  /// Elements per leading-index slice.
  std::size_t stride0() const { return shape.empty() ? 0 : data.size() / shape[0]; }

  std::span<double> row(std::size_t i) { return {data.data() + i * stride0(), stride0()}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * stride0(), stride0()};
  }

  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }
};

}  // namespace lb
