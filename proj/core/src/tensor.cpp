#include "srlp/tensor.hpp"

#include <cmath>

#include "srlp/error.hpp"

namespace srlp {

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  Tensor t;
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  t.shape = std::move(shape);
  t.data.assign(n, 0.0);
  return t;
}

Tensor Tensor::vec(std::vector<real_t> values) {
  Tensor t;
  t.shape = {values.size()};
  t.data = std::move(values);
  return t;
}

Tensor Tensor::scalar(real_t value) {
  Tensor t;
  t.shape = {1};
  t.data = {value};
  return t;
}

std::string Tensor::shape_str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

bool Tensor::all_finite() const {
  for (real_t v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

void Tensor::add_inplace(const Tensor& o) {
  if (!same_shape(o))
    fail("tensor add: shape mismatch %s vs %s", shape_str().c_str(),
         o.shape_str().c_str());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
}

void Tensor::fill(real_t v) {
  for (real_t& x : data) x = v;
}

Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
  double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  return uniform_tensor({rows, cols}, -limit, limit, rng);
}

Tensor uniform_tensor(std::vector<std::size_t> shape, double lo, double hi, Rng& rng) {
  Tensor t = Tensor::zeros(std::move(shape));
  for (real_t& v : t.data) v = static_cast<real_t>(rng.uniform(lo, hi));
  return t;
}

}  // namespace srlp
