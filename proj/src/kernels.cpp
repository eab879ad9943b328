#include "salvo/kernels.hpp"

#include <cstdint>
#include <exception>

namespace salvo {

AttackerRates attacker_rates(const RateInputs& in, std::span<const double> perceived_phi,
                             std::size_t i) {
  AttackerRates out;
  if (!in.active[i]) return out;

  const EngagementSnapshot snap{in.perceived, perceived_phi, in.speeds, in.V_T};
  const GuidanceParams& p = *in.params;
  const RelativeState& truth = in.truth[i];

  if (in.mode == GuidanceMode::known_accel) {
    const LosAccel seen = decompose_target_accel(in.A_T, perceived_phi[i]);
    out.control = law_known(i, snap, *in.graph, p, seen, in.r_min);
  } else {
    out.control = law_observer(i, snap, *in.graph, p, in.z[i], in.r_min);
    const ObserverCoefficients sigma = observer_coefficients(i, snap, *in.graph, p.R0);
    out.dz = observer_rate(in.z[i], p.s, sigma.sigma1, sigma.sigma2, snap.rel[i].V_lambda,
                           snap.rel[i].V_r);
  }

  const LosAccel actual = decompose_target_accel(in.A_T, target_bearing(truth.lambda, in.gamma_T));
  const RelativeRates d =
      relative_derivatives(truth, {out.control.A_Mr, out.control.A_Mlambda}, actual, in.r_min);
  out.dR = truth.V_r;
  out.dlambda = truth.V_lambda / truth.R;
  out.dV_r = d.dV_r;
  out.dV_lambda = d.dV_lambda;
  out.dmu = adaptive_rate(in.mu[i], truth.R, truth.V_r, p.c);
  return out;
}

void attacker_rates_serial(const RateInputs& in, std::span<double> phi_scratch,
                           std::span<AttackerRates> out) {
  const std::size_t n = in.truth.size();
  for (std::size_t i = 0; i < n; ++i)
    phi_scratch[i] = target_bearing(in.perceived[i].lambda, in.gamma_T);
  for (std::size_t i = 0; i < n; ++i) out[i] = attacker_rates(in, phi_scratch, i);
}

void attacker_rates_parallel(const RateInputs& in, std::span<double> phi_scratch,
                             std::span<AttackerRates> out) {
  const auto n = static_cast<std::int64_t>(in.truth.size());
  std::exception_ptr error;
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      phi_scratch[i] = target_bearing(in.perceived[i].lambda, in.gamma_T);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        out[i] = attacker_rates(in, phi_scratch, static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(salvo_kernel_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace salvo
