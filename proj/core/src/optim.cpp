#include "srlp/optim.hpp"

#include <cmath>

#include "srlp/error.hpp"

namespace srlp {

Tensor& ParamStore::create(const std::string& name, Tensor init, bool trainable) {
  if (params_.count(name)) fail("parameter \"%s\" already exists", name.c_str());
  Entry e;
  e.m = Tensor::zeros(init.shape);
  e.v = Tensor::zeros(init.shape);
  e.value = std::move(init);
  e.trainable = trainable;
  return params_.emplace(name, std::move(e)).first->second.value;
}

Tensor& ParamStore::get(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) fail("unknown parameter \"%s\"", name.c_str());
  return it->second.value;
}

const Tensor& ParamStore::get(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) fail("unknown parameter \"%s\"", name.c_str());
  return it->second.value;
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : params_) out.push_back(k);
  return out;
}

VarId Binder::operator()(const std::string& name) {
  auto it = bound_.find(name);
  if (it != bound_.end()) return it->second;
  VarId v = tape_.leaf(store_.get(name));
  bound_.emplace(name, v);
  return v;
}

void Binder::accumulate_grads(GradientMap& grads) const {
  for (const auto& [name, var] : bound_) {
    const Tensor& g = tape_.grad(var);
    auto it = grads.find(name);
    if (it == grads.end()) grads.emplace(name, g);
    else it->second.add_inplace(g);
  }
}

void adam_step(ParamStore& store, const GradientMap& grads, double lr, double beta1,
               double beta2, double eps) {
  for (const auto& [name, g] : grads) {
    auto it = store.params_.find(name);
    if (it == store.params_.end()) fail("adam: gradient for unknown parameter \"%s\"", name.c_str());
    if (!g.same_shape(it->second.value))
      fail("adam: gradient shape %s does not match parameter \"%s\" %s",
           g.shape_str().c_str(), name.c_str(), it->second.value.shape_str().c_str());
  }
  std::uint64_t t = ++store.step_;
  double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  for (auto& [name, e] : store.params_) {
    if (!e.trainable) continue;
    auto git = grads.find(name);
    const Tensor* g = git != grads.end() ? &git->second : nullptr;
    for (std::size_t i = 0; i < e.value.data.size(); ++i) {
      double gi = g ? g->data[i] : 0.0;
      e.m.data[i] = beta1 * e.m.data[i] + (1.0 - beta1) * gi;
      e.v.data[i] = beta2 * e.v.data[i] + (1.0 - beta2) * gi * gi;
      double mhat = e.m.data[i] / bc1;
      double vhat = e.v.data[i] / bc2;
      e.value.data[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

}  // namespace srlp
