#pragma once

#include "burstvit/energy.hpp"
#include "burstvit/tensor.hpp"

namespace burstvit {

// Standard float matrix product, (M x K) * (K x P). Every multiply routes
// through prof::traced_mul.
Tensor matmul_float(const Tensor& a, const Tensor& b);

// Event-driven product of integer spikes (M x K) with float weights (K x P).
// Each spike entry s contributes s sequential accumulations of the matching
// weight row; no multiply instruction touches the accumulators. Increments
// counts->sop by (sum of spikes) * P.
Tensor matmul_addonly(const IntTensor& spikes, const Tensor& weights, OpCounts* counts);

void add_bias_rows(Tensor& mat, const Tensor& bias);  // mat (M x P) += bias (P)

// Cross-correlation, input (B x C x H x W), kernel (OC x C x KH x KW).
// Symmetric zero padding. counts->mac += rows * K * OC when counts given.
Tensor conv2d(const Tensor& input, const Tensor& kernel, long stride, long pad,
              OpCounts* counts = nullptr);

// Same geometry driven by integer spikes: im2col then matmul_addonly.
Tensor conv2d_addonly(const IntTensor& input, const Tensor& kernel, long stride, long pad,
                      OpCounts* counts);

Shape conv2d_out_shape(const Shape& input, const Shape& kernel, long stride, long pad);

Tensor maxpool2x2(const Tensor& input);       // (B x C x H x W), H and W even
IntTensor maxpool2x2(const IntTensor& input);

// Batch normalization over every axis except `channel_axis`.
struct BnStats {
  Tensor gamma, beta, running_mean, running_var;  // all shape (C)
  double eps = 1e-5;
  double momentum = 0.1;

  static BnStats identity(long channels);
};

enum class BnMode { Train, Infer };

// Train mode normalizes with batch statistics and updates the running
// estimates (biased batch variance in the transform, unbiased in the
// running update). Infer mode is the frozen affine transform.
Tensor batchnorm(const Tensor& x, BnStats& stats, BnMode mode, int channel_axis);

// Per-channel scale/shift equivalent to infer-mode BN, for folding into a
// preceding linear or conv.
struct BnAffine {
  Tensor scale;  // gamma / sqrt(var + eps)
  Tensor shift;  // beta - mean * scale
};
BnAffine bn_affine(const BnStats& stats);

// Folded weights: linear (K x P) with BN over P -> W' and bias.
void fold_bn_linear(const Tensor& w, const BnStats& stats, Tensor& w_out, Tensor& bias_out);
// Folded conv (OC x C x KH x KW) with BN over OC.
void fold_bn_conv(const Tensor& kernel, const BnStats& stats, Tensor& k_out, Tensor& bias_out);

}  // namespace burstvit
