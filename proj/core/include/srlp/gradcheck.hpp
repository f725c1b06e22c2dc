#ifndef SRLP_GRADCHECK_HPP
#define SRLP_GRADCHECK_HPP

#include <functional>

#include "srlp/optim.hpp"

namespace srlp {

struct GradCheckOptions {
  double eps = 1e-5;
  // Coordinates checked per parameter: the ones with the largest analytic
  // magnitude. A 64-bit central difference at eps carries truncation and
  // rounding error around 1e-10 absolute, so coordinates far below the
  // model's dominant gradient scale are not measurable and are skipped:
  // only coordinates with |analytic| >= min_grad_ratio * max|analytic| are
  // sampled.
  std::size_t samples_per_param = 8;
  double min_grad_ratio = 1e-4;
};

// The loss function must be deterministic in the store contents. When the
// gradient map pointer is null, only the loss value is needed.
using LossFn = std::function<double(const ParamStore&, GradientMap*)>;

// Central-difference check over sampled coordinates of every trainable
// parameter. Returns max |analytic - numeric| / max(1e-8, |analytic| + |numeric|).
double grad_check(const LossFn& loss, ParamStore& store,
                  const GradCheckOptions& options = {});

}  // namespace srlp

#endif
