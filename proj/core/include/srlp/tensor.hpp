#ifndef SRLP_TENSOR_HPP
#define SRLP_TENSOR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "srlp/rng.hpp"

namespace srlp {

#ifdef SRLP_FLOAT32
using real_t = float;
#else
using real_t = double;
#endif

// Dense row-major tensor. Rank is 1 or 2 everywhere in this project.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<real_t> data;

  Tensor() = default;
  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor vec(std::vector<real_t> values);
  static Tensor scalar(real_t value);

  std::size_t numel() const { return data.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  std::size_t cols() const { return shape.size() > 1 ? shape[1] : 1; }

  real_t& at(std::size_t i) { return data[i]; }
  real_t at(std::size_t i) const { return data[i]; }
  real_t& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
  real_t at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
  std::string shape_str() const;
  bool all_finite() const;

  // In-place a += b (shapes must match; callers check).
  void add_inplace(const Tensor& o);
  void fill(real_t v);
};

// Uniform Glorot-style range from fan-in/fan-out.
Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng);
Tensor uniform_tensor(std::vector<std::size_t> shape, double lo, double hi, Rng& rng);

}  // namespace srlp

#endif
