#pragma once

#include <optional>
#include <string>

#include "burstvit/adjacency.hpp"
#include "burstvit/energy.hpp"
#include "burstvit/neuron.hpp"
#include "burstvit/tensor.hpp"

namespace burstvit {

// Inference-side projection weights, BN already folded in.
struct QkvProjection {
  Tensor w_q, w_k, w_vp, w_vm;  // D x D
  Tensor b_q, b_k, b_vp, b_vm;  // D
  NeuronLayer n_q, n_k, n_vp, n_vm;
  bool dual_v = true;
};

struct QkvSpikes {
  IntTensor q;   // binary
  IntTensor k;   // burst levels (binary when the layer is configured so)
  IntTensor vp;  // binary
  IntTensor vm;  // binary, kept unsigned; the sign is applied at aggregation
};

// x (T x N x D) nonnegative integer spikes -> four spike tensors. All four
// projections route through matmul_addonly. When dual_v is off, vm is a
// zero tensor and the aggregation's subtrahend vanishes.
QkvSpikes project_qkv(const IntTensor& x, const QkvProjection& proj, EnergyLedger* ledger,
                      const std::string& prefix);

// Dual-channel spiking attention, integer additions only inside the
// similarity and aggregation kernels (both run under a multiply TrapScope):
//   Attn = Q K^T per timestep and head, masked immediately when a mask is
//   given; Out = Attn Vp - Attn Vm; membrane = Out * scale; spikes from
//   out_neuron. Masked-out rows never reach the aggregation loop.
IntTensor dbssa_forward(const IntTensor& q, const IntTensor& k, const IntTensor& vp,
                        const IntTensor& vm, const AdjacencyMask* mask, double scale,
                        const NeuronLayer& out_neuron, int heads, EnergyLedger* ledger,
                        const std::string& prefix);

// Single-channel binary attention stage (the ablation baseline): all of
// Q, K, V binary, no mask, no subtraction.
IntTensor ssa_attend(const IntTensor& q, const IntTensor& k, const IntTensor& v, double scale,
                     const NeuronLayer& out_neuron, int heads, EnergyLedger* ledger,
                     const std::string& prefix);

// Full baseline path: binary projections then ssa_attend.
IntTensor ssa_forward(const IntTensor& x, const QkvProjection& proj, double scale,
                      const NeuronLayer& out_neuron, int heads, EnergyLedger* ledger,
                      const std::string& prefix);

// Conventional float attention, softmax(Q K^T / sqrt(d)) V. Reference for
// tests and benchmarks only; never part of the spiking path.
Tensor vsa_oracle(const Tensor& x, const Tensor& w_q, const Tensor& w_k, const Tensor& w_v);

}  // namespace burstvit
