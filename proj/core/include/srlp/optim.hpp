#ifndef SRLP_OPTIM_HPP
#define SRLP_OPTIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srlp/tape.hpp"
#include "srlp/tensor.hpp"

namespace srlp {

// Named trainable tensors plus per-parameter Adam state. The step count is
// shared across all parameters and incremented once per adam_step call.
class ParamStore {
 public:
  struct Entry {
    Tensor value;
    Tensor m;  // first moment
    Tensor v;  // second moment
    bool trainable = true;
  };

  Tensor& create(const std::string& name, Tensor init, bool trainable = true);
  Tensor& get(const std::string& name);
  const Tensor& get(const std::string& name) const;
  bool has(const std::string& name) const { return params_.count(name) > 0; }
  std::vector<std::string> names() const;  // sorted

  std::map<std::string, Entry>& entries() { return params_; }
  const std::map<std::string, Entry>& entries() const { return params_; }

  std::uint64_t step() const { return step_; }
  void set_step(std::uint64_t s) { step_ = s; }

 private:
  std::map<std::string, Entry> params_;
  std::uint64_t step_ = 0;

  friend void adam_step(ParamStore&, const std::map<std::string, Tensor>&, double,
                        double, double, double);
};

using GradientMap = std::map<std::string, Tensor>;

// Per-tape parameter leaves: the first use of a name creates one leaf, so all
// uses of a parameter within a pass accumulate into a single gradient node.
class Binder {
 public:
  Binder(Tape& tape, const ParamStore& store) : tape_(tape), store_(store) {}

  VarId operator()(const std::string& name);

  // After tape.backward(): adds each bound parameter's tape gradient into
  // the map (creating zero entries as needed).
  void accumulate_grads(GradientMap& grads) const;

  const std::map<std::string, VarId>& bound() const { return bound_; }

 private:
  Tape& tape_;
  const ParamStore& store_;
  std::map<std::string, VarId> bound_;
};

// Adam with bias correction: m^ = m/(1-b1^t), v^ = v/(1-b2^t),
// theta -= lr * m^ / (sqrt(v^) + eps). Parameters without a gradient entry
// still decay their moments (dense update); frozen parameters are skipped.
void adam_step(ParamStore& store, const GradientMap& grads, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

}  // namespace srlp

#endif
