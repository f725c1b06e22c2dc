#include "srlp/tape.hpp"

#include <algorithm>
#include <cmath>

#include "srlp/error.hpp"

namespace srlp {

VarId Tape::push(Tensor value, std::function<void(Tape&, VarId)> backward_fn) {
#ifndef NDEBUG
  if (!value.all_finite()) fail("tape: non-finite value produced by an operation");
#endif
  Node node;
  node.grad = Tensor::zeros(value.shape);
  node.value = std::move(value);
  node.backward_fn = std::move(backward_fn);
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

void Tape::check_same_shape(VarId a, VarId b, const char* op) const {
  if (!nodes_[a].value.same_shape(nodes_[b].value))
    fail("%s: shape mismatch %s vs %s", op, nodes_[a].value.shape_str().c_str(),
         nodes_[b].value.shape_str().c_str());
}

VarId Tape::leaf(Tensor value) { return push(std::move(value), {}); }

VarId Tape::constant_vec(const std::vector<real_t>& values) {
  return leaf(Tensor::vec(values));
}

VarId Tape::zeros(std::vector<std::size_t> shape) {
  return leaf(Tensor::zeros(std::move(shape)));
}

VarId Tape::add(VarId a, VarId b) {
  check_same_shape(a, b, "add");
  Tensor out = nodes_[a].value;
  out.add_inplace(nodes_[b].value);
  return push(std::move(out), [a, b](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    t.grad_ref(a).add_inplace(g);
    t.grad_ref(b).add_inplace(g);
  });
}

VarId Tape::sub(VarId a, VarId b) {
  check_same_shape(a, b, "sub");
  Tensor out = nodes_[a].value;
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] -= nodes_[b].value.data[i];
  return push(std::move(out), [a, b](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    t.grad_ref(a).add_inplace(g);
    Tensor& gb = t.grad_ref(b);
    for (std::size_t i = 0; i < gb.data.size(); ++i) gb.data[i] -= g.data[i];
  });
}

VarId Tape::mul(VarId a, VarId b) {
  check_same_shape(a, b, "mul");
  Tensor out = nodes_[a].value;
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] *= nodes_[b].value.data[i];
  return push(std::move(out), [a, b](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    const Tensor& va = t.nodes_[a].value;
    const Tensor& vb = t.nodes_[b].value;
    Tensor& ga = t.grad_ref(a);
    Tensor& gb = t.grad_ref(b);
    for (std::size_t i = 0; i < g.data.size(); ++i) {
      ga.data[i] += g.data[i] * vb.data[i];
      gb.data[i] += g.data[i] * va.data[i];
    }
  });
}

VarId Tape::scale(VarId a, real_t c) {
  Tensor out = nodes_[a].value;
  for (real_t& v : out.data) v *= c;
  return push(std::move(out), [a, c](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    Tensor& ga = t.grad_ref(a);
    for (std::size_t i = 0; i < g.data.size(); ++i) ga.data[i] += c * g.data[i];
  });
}

VarId Tape::matvec(VarId m, VarId v) {
  const Tensor& mv = nodes_[m].value;
  const Tensor& vv = nodes_[v].value;
  if (mv.shape.size() != 2 || vv.shape.size() != 1 || mv.shape[1] != vv.shape[0])
    fail("matvec: shape mismatch %s vs %s", mv.shape_str().c_str(),
         vv.shape_str().c_str());
  std::size_t r = mv.shape[0], c = mv.shape[1];
  Tensor out = Tensor::zeros({r});
  for (std::size_t i = 0; i < r; ++i) {
    real_t acc = 0;
    const real_t* row = &mv.data[i * c];
    for (std::size_t j = 0; j < c; ++j) acc += row[j] * vv.data[j];
    out.data[i] = acc;
  }
  return push(std::move(out), [m, v, r, c](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    const Tensor& mv2 = t.nodes_[m].value;
    const Tensor& vv2 = t.nodes_[v].value;
    Tensor& gm = t.grad_ref(m);
    Tensor& gv = t.grad_ref(v);
    for (std::size_t i = 0; i < r; ++i) {
      real_t gi = g.data[i];
      if (gi == 0) continue;
      real_t* gmrow = &gm.data[i * c];
      const real_t* mrow = &mv2.data[i * c];
      for (std::size_t j = 0; j < c; ++j) {
        gmrow[j] += gi * vv2.data[j];
        gv.data[j] += gi * mrow[j];
      }
    }
  });
}

VarId Tape::dot(VarId a, VarId b) {
  check_same_shape(a, b, "dot");
  const Tensor& va = nodes_[a].value;
  const Tensor& vb = nodes_[b].value;
  real_t acc = 0;
  for (std::size_t i = 0; i < va.data.size(); ++i) acc += va.data[i] * vb.data[i];
  return push(Tensor::scalar(acc), [a, b](Tape& t, VarId self) {
    real_t g = t.nodes_[self].grad.data[0];
    const Tensor& va2 = t.nodes_[a].value;
    const Tensor& vb2 = t.nodes_[b].value;
    Tensor& ga = t.grad_ref(a);
    Tensor& gb = t.grad_ref(b);
    for (std::size_t i = 0; i < va2.data.size(); ++i) {
      ga.data[i] += g * vb2.data[i];
      gb.data[i] += g * va2.data[i];
    }
  });
}

VarId Tape::sum(VarId a) {
  const Tensor& va = nodes_[a].value;
  real_t acc = 0;
  for (real_t v : va.data) acc += v;
  return push(Tensor::scalar(acc), [a](Tape& t, VarId self) {
    real_t g = t.nodes_[self].grad.data[0];
    Tensor& ga = t.grad_ref(a);
    for (real_t& v : ga.data) v += g;
  });
}

VarId Tape::sigmoid(VarId a) {
  Tensor out = nodes_[a].value;
  for (real_t& v : out.data) v = 1.0 / (1.0 + std::exp(-v));
  return push(std::move(out), [a](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    const Tensor& y = t.nodes_[self].value;
    Tensor& ga = t.grad_ref(a);
    for (std::size_t i = 0; i < g.data.size(); ++i)
      ga.data[i] += g.data[i] * y.data[i] * (1.0 - y.data[i]);
  });
}

VarId Tape::tanh(VarId a) {
  Tensor out = nodes_[a].value;
  for (real_t& v : out.data) v = std::tanh(v);
  return push(std::move(out), [a](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    const Tensor& y = t.nodes_[self].value;
    Tensor& ga = t.grad_ref(a);
    for (std::size_t i = 0; i < g.data.size(); ++i)
      ga.data[i] += g.data[i] * (1.0 - y.data[i] * y.data[i]);
  });
}

VarId Tape::relu(VarId a) {
  Tensor out = nodes_[a].value;
  for (real_t& v : out.data) v = v > 0 ? v : 0;
  return push(std::move(out), [a](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    const Tensor& x = t.nodes_[a].value;
    Tensor& ga = t.grad_ref(a);
    for (std::size_t i = 0; i < g.data.size(); ++i)
      if (x.data[i] > 0) ga.data[i] += g.data[i];
  });
}

VarId Tape::concat(std::span<const VarId> parts) {
  if (parts.empty()) fail("concat: no inputs");
  std::size_t total = 0;
  for (VarId p : parts) {
    if (nodes_[p].value.shape.size() != 1)
      fail("concat: operand %s is not a vector", nodes_[p].value.shape_str().c_str());
    total += nodes_[p].value.numel();
  }
  Tensor out = Tensor::zeros({total});
  std::size_t off = 0;
  for (VarId p : parts) {
    const Tensor& v = nodes_[p].value;
    std::copy(v.data.begin(), v.data.end(), out.data.begin() + static_cast<long>(off));
    off += v.numel();
  }
  std::vector<VarId> owned(parts.begin(), parts.end());
  return push(std::move(out), [owned](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    std::size_t off2 = 0;
    for (VarId p : owned) {
      Tensor& gp = t.grad_ref(p);
      for (std::size_t i = 0; i < gp.data.size(); ++i) gp.data[i] += g.data[off2 + i];
      off2 += gp.data.size();
    }
  });
}

VarId Tape::concat2(VarId a, VarId b) {
  VarId parts[2] = {a, b};
  return concat(parts);
}

VarId Tape::slice(VarId a, std::size_t offset, std::size_t len) {
  const Tensor& va = nodes_[a].value;
  if (va.shape.size() != 1 || offset + len > va.numel())
    fail("slice: [%zu, %zu) out of range for %s", offset, offset + len,
         va.shape_str().c_str());
  Tensor out = Tensor::zeros({len});
  std::copy(va.data.begin() + static_cast<long>(offset),
            va.data.begin() + static_cast<long>(offset + len), out.data.begin());
  return push(std::move(out), [a, offset, len](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    Tensor& ga = t.grad_ref(a);
    for (std::size_t i = 0; i < len; ++i) ga.data[offset + i] += g.data[i];
  });
}

VarId Tape::row(VarId matrix, std::size_t r) {
  const Tensor& mv = nodes_[matrix].value;
  if (mv.shape.size() != 2 || r >= mv.shape[0])
    fail("row: index %zu out of range for %s", r, mv.shape_str().c_str());
  std::size_t c = mv.shape[1];
  Tensor out = Tensor::zeros({c});
  std::copy(mv.data.begin() + static_cast<long>(r * c),
            mv.data.begin() + static_cast<long>((r + 1) * c), out.data.begin());
  return push(std::move(out), [matrix, r, c](Tape& t, VarId self) {
    const Tensor& g = t.nodes_[self].grad;
    Tensor& gm = t.grad_ref(matrix);
    for (std::size_t i = 0; i < c; ++i) gm.data[r * c + i] += g.data[i];
  });
}

VarId Tape::softmax_xent(VarId logits, int gold_index, std::vector<real_t>* probs_out) {
  const Tensor& lv = nodes_[logits].value;
  if (lv.shape.size() != 1) fail("softmax_xent: logits must be a vector");
  SoftmaxXent sx = softmax_xent_value(lv.data, gold_index);
  if (probs_out) *probs_out = sx.probs;
  std::vector<real_t> probs = std::move(sx.probs);
  return push(Tensor::scalar(sx.loss),
              [logits, gold_index, probs](Tape& t, VarId self) {
                real_t g = t.nodes_[self].grad.data[0];
                Tensor& gl = t.grad_ref(logits);
                for (std::size_t i = 0; i < probs.size(); ++i) {
                  real_t onehot = (static_cast<int>(i) == gold_index) ? 1.0 : 0.0;
                  gl.data[i] += g * (probs[i] - onehot);
                }
              });
}

VarId Tape::logistic_xent(VarId logit, int y) {
  const Tensor& lv = nodes_[logit].value;
  if (lv.numel() != 1) fail("logistic_xent: logit must be a scalar");
  if (y != 0 && y != 1) fail("logistic_xent: label must be 0 or 1, got %d", y);
  real_t x = lv.data[0];
  // softplus(x) - y*x, computed stably
  real_t loss = (x > 0 ? x : 0) + std::log1p(std::exp(-std::abs(x))) -
                static_cast<real_t>(y) * x;
  return push(Tensor::scalar(loss), [logit, y, x](Tape& t, VarId self) {
    real_t g = t.nodes_[self].grad.data[0];
    real_t s = 1.0 / (1.0 + std::exp(-x));
    t.grad_ref(logit).data[0] += g * (s - static_cast<real_t>(y));
  });
}

void Tape::backward(VarId root) {
  if (backward_done_)
    fail("backward: tape already consumed; re-record the forward pass");
  if (nodes_[root].value.numel() != 1) fail("backward: root is not a scalar");
  backward_done_ = true;
  nodes_[root].grad.data[0] = 1.0;
  for (std::size_t i = nodes_.size(); i-- > 0;)
    if (nodes_[i].backward_fn) nodes_[i].backward_fn(*this, i);
}

SoftmaxXent softmax_xent_value(const std::vector<real_t>& logits, int gold_index) {
  if (logits.empty()) fail("softmax_xent: empty logits");
  if (gold_index < 0 || gold_index >= static_cast<int>(logits.size()))
    fail("softmax_xent: gold index %d out of range for %zu classes", gold_index,
         logits.size());
  real_t mx = logits[0];
  for (real_t v : logits) mx = std::max(mx, v);
  std::vector<real_t> probs(logits.size());
  real_t z = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - mx);
    z += probs[i];
  }
  for (real_t& p : probs) p /= z;
  real_t loss = -(logits[static_cast<size_t>(gold_index)] - mx - std::log(z));
  return SoftmaxXent{loss, std::move(probs)};
}

}  // namespace srlp
