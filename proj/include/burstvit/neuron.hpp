#pragma once

#include "burstvit/energy.hpp"
#include "burstvit/tensor.hpp"

namespace burstvit {

enum class SpikeKind { Binary, Burst };

enum class SurrogateKind { Rectangular, Arctan };

// Backward stand-in for the spike threshold. Nonnegative, bounded, maximal
// at the crossing.
struct SurrogateSpec {
  SurrogateKind kind = SurrogateKind::Rectangular;
  double width = 1.0;
};

// Effective (already squashed) per-layer neuron constants.
struct NeuronParams {
  double beta = 0.5;    // decay on the carried membrane
  double alpha = 1.0;   // soft reset factor
  double v_theta = 1.0; // threshold interval, > 0
  int n_max = 20;       // burst cap, >= 1

  void validate() const;
};

// Persistent per-layer state across one timestep sequence.
struct MembraneState {
  Tensor potential;       // U[t-1]
  IntTensor prev_spikes;  // S[t-1]

  void reset(const Shape& shape);
  bool matches(const Shape& shape) const;
};

// One timestep of the leaky integrate-and-fire dynamics:
//   r    = clamp(1 - alpha * S[t-1], 0, 1)
//   U[t] = r * beta * U[t-1] + input
// Binary emission: S[t] = 1 iff U[t] > v_theta (strict).
IntTensor binary_lif_step(MembraneState& state, const Tensor& input, const NeuronParams& params);

// Burst emission: S[t] = clamp(floor(U[t] / v_theta), 0, n_max).
// Level 1 fires at U[t] >= v_theta (floor semantics), unlike the binary
// neuron's strict threshold.
IntTensor burst_lif_step(MembraneState& state, const Tensor& input, const NeuronParams& params);

// A neuron layer: kind, fixed threshold geometry, learnable raw decay/reset
// scalars squashed through a sigmoid at use time.
struct NeuronLayer {
  SpikeKind kind = SpikeKind::Burst;
  double v_theta = 1.0;
  int n_max = 20;
  double raw_beta = 0.0;   // sigmoid(0)   = 0.5
  double raw_alpha = 8.0;  // sigmoid(8)  ~= 0.99966, effectively full reset

  NeuronParams effective() const;
};

// Applies the step across t = 0..T-1 on a fresh state. inputs shape is
// (T, ...); returns spikes of the same shape. Each (t, unit) pair with a
// nonzero emission adds one sign event to `counts`.
IntTensor run_neuron_sequence(const NeuronLayer& layer, const Tensor& inputs, OpCounts* counts);

double sigmoid(double x);

// Surrogate gradient evaluated at u - theta (binary neurons). Rectangular:
// 1/width inside |x| < width/2. Arctan: width / (2 * (1 + (pi*width*x/2)^2)).
double surrogate_grad1(double u_minus_theta, const SurrogateSpec& spec);
Tensor surrogate_grad(const Tensor& u_minus_theta, const SurrogateSpec& spec);

// Straight-through gradient of the burst floor: 1/v_theta wherever
// 0 < U/v_theta < n_max, else 0.
double burst_ste_grad(double u, double v_theta, int n_max);

}  // namespace burstvit
