#include "srlp/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace srlp {

double grad_check(const LossFn& loss, ParamStore& store, const GradCheckOptions& opt) {
  GradientMap analytic;
  loss(store, &analytic);

  double gmax = 0.0;
  for (const auto& [name, g] : analytic)
    for (real_t v : g.data) gmax = std::max(gmax, std::abs(static_cast<double>(v)));
  double cutoff = opt.min_grad_ratio * std::max(gmax, 1e-12);

  double max_rel = 0.0;
  for (auto& [name, entry] : store.entries()) {
    if (!entry.trainable) continue;
    std::size_t n = entry.value.numel();
    if (n == 0) continue;
    auto ait = analytic.find(name);
    if (ait == analytic.end()) continue;
    const Tensor& g = ait->second;

    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), 0);
    std::stable_sort(coords.begin(), coords.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(g.data[a]) > std::abs(g.data[b]);
    });
    if (coords.size() > opt.samples_per_param) coords.resize(opt.samples_per_param);

    for (std::size_t idx : coords) {
      double a = g.data[idx];
      if (std::abs(a) < cutoff) break;  // sorted: the rest are unmeasurable too
      real_t saved = entry.value.data[idx];
      entry.value.data[idx] = saved + static_cast<real_t>(opt.eps);
      double up = loss(store, nullptr);
      entry.value.data[idx] = saved - static_cast<real_t>(opt.eps);
      double down = loss(store, nullptr);
      entry.value.data[idx] = saved;
      double numeric = (up - down) / (2.0 * opt.eps);
      double rel = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
      max_rel = std::max(max_rel, rel);
    }
  }
  return max_rel;
}

}  // namespace srlp
