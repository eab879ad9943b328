#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "salvo/engagement.hpp"
#include "salvo/guidance.hpp"
#include "salvo/topology.hpp"

namespace salvo {

enum class GuidanceMode { known_accel, observer };

/// Serial reference or OpenMP loop over attackers. Both produce bit-identical
/// results: each attacker's rates depend only on the immutable inputs.
enum class ExecPolicy { serial, parallel };

/// One stage evaluation of the closed loop.
struct RateInputs {
  GuidanceMode mode = GuidanceMode::known_accel;
  const CommGraph* graph = nullptr;  // sources that have intercepted already removed
  const GuidanceParams* params = nullptr;
  std::span<const double> speeds;
  double V_T = 1.0;
  double A_T = 0.0;      // true target lateral acceleration at the stage time
  double gamma_T = 0.0;  // true target heading
  std::span<const RelativeState> truth;      // integrated states, drive the plant
  std::span<const RelativeState> perceived;  // what each attacker's law reads
  std::span<const double> mu;
  std::span<const double> z;
  std::span<const std::uint8_t> active;
  double r_min = 0.0;
};

struct AttackerRates {
  double dR = 0.0;
  double dlambda = 0.0;
  double dV_r = 0.0;
  double dV_lambda = 0.0;
  double dmu = 0.0;
  double dz = 0.0;
  ControlOutput control;
};

/// Rates for attacker i; inactive attackers get all-zero rates and controls.
/// `perceived_phi` must hold target_bearing(perceived[k].lambda, gamma_T).
AttackerRates attacker_rates(const RateInputs& in, std::span<const double> perceived_phi,
                             std::size_t i);

void attacker_rates_serial(const RateInputs& in, std::span<double> phi_scratch,
                           std::span<AttackerRates> out);
void attacker_rates_parallel(const RateInputs& in, std::span<double> phi_scratch,
                             std::span<AttackerRates> out);

inline void attacker_rates(const RateInputs& in, ExecPolicy policy, std::span<double> phi_scratch,
                           std::span<AttackerRates> out) {
  if (policy == ExecPolicy::parallel)
    attacker_rates_parallel(in, phi_scratch, out);
  else
    attacker_rates_serial(in, phi_scratch, out);
}

}  // namespace salvo
