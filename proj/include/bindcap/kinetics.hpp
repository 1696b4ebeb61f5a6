#pragma once

namespace bindcap {

/// Per-receptor rate constants in Hz. alpha_l and alpha_h are the binding
/// rates at the lowest and highest ligand concentration (k_on times
/// concentration); beta is the concentration-independent unbinding rate.
struct ReceptorKinetics {
  double alpha_l = 0.0;
  double alpha_h = 0.0;
  double beta = 0.0;
};

/// Throws ValidationError unless 0 <= alpha_l <= alpha_h, beta > 0, all finite.
void validate(const ReceptorKinetics& kin);

}  // namespace bindcap
