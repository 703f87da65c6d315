#include "burstvit/neuron.hpp"

#include <cmath>

namespace burstvit {

void NeuronParams::validate() const {
  if (v_theta <= 0.0) throw ContractError("neuron: v_theta must be > 0");
  if (n_max < 1) throw ContractError("neuron: n_max must be >= 1");
}

void MembraneState::reset(const Shape& shape) {
  potential = Tensor::zeros(shape);
  prev_spikes = IntTensor::zeros(shape);
}

bool MembraneState::matches(const Shape& shape) const {
  return potential.shape == shape && prev_spikes.shape == shape;
}

namespace {

// r * beta * U_prev + input, with the reset factor clamped to [0,1] so a
// burst of alpha*S > 1 means "full reset", never a sign flip.
inline double membrane_update(double u_prev, int32_t s_prev, double input, double beta,
                              double alpha) {
  double r = 1.0 - alpha * static_cast<double>(s_prev);
  if (r < 0.0) r = 0.0;
  if (r > 1.0) r = 1.0;
  return r * beta * u_prev + input;
}

}  // namespace

IntTensor binary_lif_step(MembraneState& state, const Tensor& input, const NeuronParams& params) {
  params.validate();
  if (!state.matches(input.shape))
    throw ShapeError("binary_lif_step: state " + shape_str(state.potential.shape) +
                     " vs input " + shape_str(input.shape));
  const long n = input.numel();
  IntTensor spikes(input.shape);
  for (long i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    const double u = membrane_update(state.potential.data[ii], state.prev_spikes.data[ii],
                                     input.data[ii], params.beta, params.alpha);
    state.potential.data[ii] = u;
    spikes.data[ii] = u > params.v_theta ? 1 : 0;
  }
  state.prev_spikes = spikes;
  return spikes;
}

IntTensor burst_lif_step(MembraneState& state, const Tensor& input, const NeuronParams& params) {
  params.validate();
  if (!state.matches(input.shape))
    throw ShapeError("burst_lif_step: state " + shape_str(state.potential.shape) + " vs input " +
                     shape_str(input.shape));
  const long n = input.numel();
  IntTensor spikes(input.shape);
  for (long i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    const double u = membrane_update(state.potential.data[ii], state.prev_spikes.data[ii],
                                     input.data[ii], params.beta, params.alpha);
    state.potential.data[ii] = u;
    double level = std::floor(u / params.v_theta);
    if (level < 0.0) level = 0.0;
    if (level > static_cast<double>(params.n_max)) level = static_cast<double>(params.n_max);
    spikes.data[ii] = static_cast<int32_t>(level);
  }
  state.prev_spikes = spikes;
  return spikes;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

NeuronParams NeuronLayer::effective() const {
  NeuronParams p;
  p.beta = sigmoid(raw_beta);
  p.alpha = sigmoid(raw_alpha);
  p.v_theta = v_theta;
  p.n_max = n_max;
  return p;
}

IntTensor run_neuron_sequence(const NeuronLayer& layer, const Tensor& inputs, OpCounts* counts) {
  if (inputs.rank() < 2)
    throw ShapeError("run_neuron_sequence: need (T, ...) input, got " + shape_str(inputs.shape));
  const long t_steps = inputs.dim(0);
  const long per_step = inputs.numel() / t_steps;
  Shape step_shape(inputs.shape.begin() + 1, inputs.shape.end());

  const NeuronParams params = layer.effective();
  MembraneState state;
  state.reset(step_shape);

  IntTensor out(inputs.shape);
  Tensor step_in(step_shape);
  unsigned long long signs = 0;
  for (long t = 0; t < t_steps; ++t) {
    std::copy(inputs.data.begin() + t * per_step, inputs.data.begin() + (t + 1) * per_step,
              step_in.data.begin());
    IntTensor s = layer.kind == SpikeKind::Binary ? binary_lif_step(state, step_in, params)
                                                  : burst_lif_step(state, step_in, params);
    for (long i = 0; i < per_step; ++i) {
      out.data[static_cast<size_t>(t * per_step + i)] = s.data[static_cast<size_t>(i)];
      if (s.data[static_cast<size_t>(i)] != 0) ++signs;
    }
  }
  if (counts) counts->sign += signs;
  return out;
}

double surrogate_grad1(double x, const SurrogateSpec& spec) {
  switch (spec.kind) {
    case SurrogateKind::Rectangular:
      return std::fabs(x) < spec.width * 0.5 ? 1.0 / spec.width : 0.0;
    case SurrogateKind::Arctan: {
      const double t = 1.5707963267948966 * spec.width * x;  // pi*width*x/2
      return spec.width / (2.0 * (1.0 + t * t));
    }
  }
  return 0.0;
}

Tensor surrogate_grad(const Tensor& u_minus_theta, const SurrogateSpec& spec) {
  Tensor out(u_minus_theta.shape);
  for (long i = 0; i < out.numel(); ++i)
    out.data[static_cast<size_t>(i)] = surrogate_grad1(u_minus_theta.data[static_cast<size_t>(i)], spec);
  return out;
}

double burst_ste_grad(double u, double v_theta, int n_max) {
  const double x = u / v_theta;
  return (x > 0.0 && x < static_cast<double>(n_max)) ? 1.0 / v_theta : 0.0;
}

}  // namespace burstvit
