#include "sycos/noise.hpp"

namespace sycos {

Window concatenate(const Window& base, const Window& ext) {
  if (base.end == ext.start) return {base.start, ext.end};
  if (ext.end == base.start) return {ext.start, base.end};
  throw ContractError("windows " + to_string(base) + " and " + to_string(ext) + " are not adjacent");
}

NoiseVerdict check_noise(const TimeSeriesPair& pair, const Window& base, const Window& ext,
                         double tau, int k) {
  const Window mix = concatenate(base, ext);
  auto score = [&](const Window& w) { return estimate_mi(pair.x(w), pair.y(w), k).normalized; };
  NoiseVerdict v;
  v.tau = tau;
  v.i_candidate = score(ext);
  v.i_base = score(base);
  v.i_mixture = score(mix);
  v.is_noise = noise_predicate(v.i_candidate, v.i_base, v.i_mixture, tau);
  return v;
}

double mixture_mi_prediction(double i_xy, double theta, double eta) {
  if (!(theta >= 0.0 && theta <= 1.0) || !(eta >= 0.0 && eta <= 1.0))
    throw DomainError("mixture weights must lie in [0, 1]");
  return theta * eta * i_xy;
}

}  // namespace sycos
