#ifndef SRLP_TAPE_HPP
#define SRLP_TAPE_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "srlp/tensor.hpp"

namespace srlp {

using VarId = std::size_t;

// Record-and-replay reverse-mode differentiation. Each operation appends a
// node whose inputs precede it, so one reverse sweep over the node list is a
// valid topological order. Tapes are single-use: build a forward pass, call
// backward() once, read gradients, discard.
class Tape {
 public:
  VarId leaf(Tensor value);
  VarId constant_vec(const std::vector<real_t>& values);
  VarId zeros(std::vector<std::size_t> shape);

  VarId add(VarId a, VarId b);
  VarId sub(VarId a, VarId b);
  VarId mul(VarId a, VarId b);  // elementwise
  VarId scale(VarId a, real_t c);
  VarId matvec(VarId m, VarId v);  // [r x c] * [c] -> [r]
  VarId dot(VarId a, VarId b);     // -> scalar
  VarId sum(VarId a);              // -> scalar
  VarId sigmoid(VarId a);
  VarId tanh(VarId a);
  VarId relu(VarId a);
  VarId concat(std::span<const VarId> parts);
  VarId concat2(VarId a, VarId b);
  VarId slice(VarId a, std::size_t offset, std::size_t len);
  VarId row(VarId matrix, std::size_t r);  // embedding lookup

  // Cross-entropy with softmax, stabilized by max subtraction. Returns the
  // scalar loss node; *probs_out (optional) receives the softmax vector.
  VarId softmax_xent(VarId logits, int gold_index, std::vector<real_t>* probs_out = nullptr);
  // Binary cross-entropy on a scalar logit with label y in {0, 1}.
  VarId logistic_xent(VarId logit, int y);

  // Reverse sweep from a scalar root. A second call without re-recording is
  // an error, as is a non-scalar root.
  void backward(VarId root);

  const Tensor& value(VarId v) const { return nodes_[v].value; }
  const Tensor& grad(VarId v) const { return nodes_[v].grad; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::function<void(Tape&, VarId self)> backward_fn;  // empty for leaves
  };

  VarId push(Tensor value, std::function<void(Tape&, VarId)> backward_fn);
  Tensor& grad_ref(VarId v) { return nodes_[v].grad; }
  void check_same_shape(VarId a, VarId b, const char* op) const;

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

// Standalone stabilized softmax cross-entropy (no tape).
struct SoftmaxXent {
  real_t loss;
  std::vector<real_t> probs;
};
SoftmaxXent softmax_xent_value(const std::vector<real_t>& logits, int gold_index);

}  // namespace srlp

#endif
