#pragma once

#include <cmath>
#include <limits>

#include "sycos/core_types.hpp"
#include "sycos/ksg_mi.hpp"

namespace sycos {

struct NoiseVerdict {
  bool is_noise = false;
  double i_candidate = std::numeric_limits<double>::quiet_NaN();
  double i_base = std::numeric_limits<double>::quiet_NaN();
  double i_mixture = std::numeric_limits<double>::quiet_NaN();
  double tau = 0.0;
};

// Noise predicate on normalized MI values.
inline bool noise_predicate(double i_candidate, double i_base, double i_mixture, double tau) {
  return i_candidate < tau && i_mixture < i_base && i_base > tau;
}

// Windows must be adjacent (in either order) and disjoint.
Window concatenate(const Window& base, const Window& ext);

NoiseVerdict check_noise(const TimeSeriesPair& pair, const Window& base, const Window& ext,
                         double tau, int k);

// Lazy variant: `eval(Window)` yields normalized MI. The extension is scored
// first, or the base when `base_first`, and the rest only while the verdict
// still depends on them.
template <class Eval>
NoiseVerdict check_noise_lazy(const Window& base, const Window& ext, double tau, Eval&& eval,
                              bool base_first = false) {
  const Window mix = concatenate(base, ext);
  NoiseVerdict v;
  v.tau = tau;
  if (base_first) {
    v.i_base = eval(base);
    if (!(v.i_base > tau)) return v;
    v.i_candidate = eval(ext);
    if (!(v.i_candidate < tau)) return v;
  } else {
    v.i_candidate = eval(ext);
    if (!(v.i_candidate < tau)) return v;
    v.i_base = eval(base);
    if (!(v.i_base > tau)) return v;
  }
  v.i_mixture = eval(mix);
  v.is_noise = noise_predicate(v.i_candidate, v.i_base, v.i_mixture, tau);
  return v;
}

// Mutual information of a theta/eta mixture with independent contaminants.
double mixture_mi_prediction(double i_xy, double theta, double eta);

}  // namespace sycos
