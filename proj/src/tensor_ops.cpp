#include "burstvit/tensor_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace burstvit {

namespace {

void require_rank(const Shape& s, int rank, const char* what) {
  if (static_cast<int>(s.size()) != rank)
    throw ShapeError(std::string(what) + ": expected rank " + std::to_string(rank) +
                     ", got shape " + shape_str(s));
}

}  // namespace

Tensor matmul_float(const Tensor& a, const Tensor& b) {
  require_rank(a.shape, 2, "matmul_float lhs");
  require_rank(b.shape, 2, "matmul_float rhs");
  const long m = a.dim(0), k = a.dim(1), k2 = b.dim(0), p = b.dim(1);
  if (k != k2)
    throw ShapeError("matmul_float: inner dimensions disagree, " + shape_str(a.shape) + " vs " +
                     shape_str(b.shape));
  Tensor out({m, p});
  const double* ap = a.ptr();
  const double* bp = b.ptr();
  double* op = out.ptr();
  for (long i = 0; i < m; ++i) {
    for (long kk = 0; kk < k; ++kk) {
      const double av = ap[i * k + kk];
      if (av == 0.0) continue;
      const double* brow = bp + kk * p;
      double* orow = op + i * p;
      for (long j = 0; j < p; ++j) orow[j] += prof::traced_mul(av, brow[j]);
    }
  }
  return out;
}

Tensor matmul_addonly(const IntTensor& spikes, const Tensor& weights, OpCounts* counts) {
  require_rank(spikes.shape, 2, "matmul_addonly spikes");
  require_rank(weights.shape, 2, "matmul_addonly weights");
  const long m = spikes.dim(0), k = spikes.dim(1), k2 = weights.dim(0), p = weights.dim(1);
  if (k != k2)
    throw ShapeError("matmul_addonly: inner dimensions disagree, " + shape_str(spikes.shape) +
                     " vs " + shape_str(weights.shape));
  Tensor out({m, p});
  const int32_t* sp = spikes.ptr();
  const double* wp = weights.ptr();
  double* op = out.ptr();
  unsigned long long total_spikes = 0;
  for (long i = 0; i < m; ++i) {
    double* orow = op + i * p;
    for (long kk = 0; kk < k; ++kk) {
      const int32_t s = sp[i * k + kk];
      if (s == 0) continue;
      if (s < 0)
        throw ContractError("matmul_addonly: negative spike count " + std::to_string(s) +
                            " at row " + std::to_string(i) + ", col " + std::to_string(kk));
      total_spikes += static_cast<unsigned long long>(s);
      const double* wrow = wp + kk * p;
      for (int32_t rep = 0; rep < s; ++rep)
        for (long j = 0; j < p; ++j) orow[j] += wrow[j];
    }
  }
  if (counts) counts->sop += total_spikes * static_cast<unsigned long long>(p);
  return out;
}

void add_bias_rows(Tensor& mat, const Tensor& bias) {
  require_rank(mat.shape, 2, "add_bias_rows mat");
  const long m = mat.dim(0), p = mat.dim(1);
  if (bias.numel() != p)
    throw ShapeError("add_bias_rows: bias " + shape_str(bias.shape) + " vs width " +
                     std::to_string(p));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < p; ++j) mat.data[static_cast<size_t>(i * p + j)] += bias.data[static_cast<size_t>(j)];
}

Shape conv2d_out_shape(const Shape& input, const Shape& kernel, long stride, long pad) {
  if (input.size() != 4 || kernel.size() != 4)
    throw ShapeError("conv2d: need 4-d input and kernel, got " + shape_str(input) + " and " +
                     shape_str(kernel));
  const long c = input[1], h = input[2], w = input[3];
  const long kc = kernel[1], kh = kernel[2], kw = kernel[3];
  if (c != kc)
    throw ShapeError("conv2d: channel mismatch, input " + shape_str(input) + " vs kernel " +
                     shape_str(kernel));
  if (stride < 1) throw ShapeError("conv2d: stride must be >= 1");
  const long oh = (h + 2 * pad - kh) / stride + 1;
  const long ow = (w + 2 * pad - kw) / stride + 1;
  if (oh < 1 || ow < 1 || h + 2 * pad < kh || w + 2 * pad < kw)
    throw ShapeError("conv2d: kernel " + shape_str(kernel) + " does not fit input " +
                     shape_str(input) + " with stride " + std::to_string(stride) + ", pad " +
                     std::to_string(pad));
  return {input[0], kernel[0], oh, ow};
}

namespace {

// Gathers one output row's receptive field. Returns number of taps written.
template <typename T>
void im2col(const T* in, long c, long h, long w, long oh, long ow, long kh, long kw, long stride,
            long pad, long b, long oy, long ox, T* col) {
  long idx = 0;
  for (long ch = 0; ch < c; ++ch) {
    for (long ky = 0; ky < kh; ++ky) {
      const long iy = oy * stride + ky - pad;
      for (long kx = 0; kx < kw; ++kx) {
        const long ix = ox * stride + kx - pad;
        if (iy >= 0 && iy < h && ix >= 0 && ix < w)
          col[idx] = in[((b * c + ch) * h + iy) * w + ix];
        else
          col[idx] = T(0);
        ++idx;
      }
    }
  }
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& kernel, long stride, long pad, OpCounts* counts) {
  const Shape os = conv2d_out_shape(input.shape, kernel.shape, stride, pad);
  const long bsz = input.dim(0), c = input.dim(1), h = input.dim(2), w = input.dim(3);
  const long oc = os[1], oh = os[2], ow = os[3];
  const long kh = kernel.dim(2), kw = kernel.dim(3);
  const long taps = c * kh * kw;
  Tensor out(os);
  std::vector<double> col(static_cast<size_t>(taps));
  const double* kp = kernel.ptr();
  for (long b = 0; b < bsz; ++b) {
    for (long oy = 0; oy < oh; ++oy) {
      for (long ox = 0; ox < ow; ++ox) {
        im2col(input.ptr(), c, h, w, oh, ow, kh, kw, stride, pad, b, oy, ox, col.data());
        for (long o = 0; o < oc; ++o) {
          const double* krow = kp + o * taps;
          double acc = 0.0;
          for (long t = 0; t < taps; ++t) acc += prof::traced_mul(col[static_cast<size_t>(t)], krow[t]);
          out.data[static_cast<size_t>(((b * oc + o) * oh + oy) * ow + ox)] = acc;
        }
      }
    }
  }
  if (counts)
    counts->mac += static_cast<unsigned long long>(bsz * oh * ow) *
                   static_cast<unsigned long long>(taps) * static_cast<unsigned long long>(oc);
  return out;
}

Tensor conv2d_addonly(const IntTensor& input, const Tensor& kernel, long stride, long pad,
                      OpCounts* counts) {
  const Shape os = conv2d_out_shape(input.shape, kernel.shape, stride, pad);
  const long bsz = input.dim(0), c = input.dim(1), h = input.dim(2), w = input.dim(3);
  const long oc = os[1], oh = os[2], ow = os[3];
  const long kh = kernel.dim(2), kw = kernel.dim(3);
  const long taps = c * kh * kw;
  // weights transposed to (taps x oc) so each spike walks one weight row
  Tensor wt({taps, oc});
  for (long o = 0; o < oc; ++o)
    for (long t = 0; t < taps; ++t)
      wt.data[static_cast<size_t>(t * oc + o)] = kernel.data[static_cast<size_t>(o * taps + t)];
  Tensor out(os);
  IntTensor col({1, taps});
  for (long b = 0; b < bsz; ++b) {
    for (long oy = 0; oy < oh; ++oy) {
      for (long ox = 0; ox < ow; ++ox) {
        im2col(input.ptr(), c, h, w, oh, ow, kh, kw, stride, pad, b, oy, ox, col.ptr());
        Tensor row = matmul_addonly(col, wt, counts);
        for (long o = 0; o < oc; ++o)
          out.data[static_cast<size_t>(((b * oc + o) * oh + oy) * ow + ox)] =
              row.data[static_cast<size_t>(o)];
      }
    }
  }
  return out;
}

Tensor maxpool2x2(const Tensor& input) {
  require_rank(input.shape, 4, "maxpool2x2");
  const long b = input.dim(0), c = input.dim(1), h = input.dim(2), w = input.dim(3);
  if (h % 2 || w % 2)
    throw ShapeError("maxpool2x2: spatial dims must be even, got " + shape_str(input.shape));
  Tensor out({b, c, h / 2, w / 2});
  for (long i = 0; i < b * c; ++i) {
    const double* in = input.ptr() + i * h * w;
    double* op = out.ptr() + i * (h / 2) * (w / 2);
    for (long y = 0; y < h / 2; ++y)
      for (long x = 0; x < w / 2; ++x) {
        const double a0 = in[(2 * y) * w + 2 * x], a1 = in[(2 * y) * w + 2 * x + 1];
        const double a2 = in[(2 * y + 1) * w + 2 * x], a3 = in[(2 * y + 1) * w + 2 * x + 1];
        op[y * (w / 2) + x] = std::max(std::max(a0, a1), std::max(a2, a3));
      }
  }
  return out;
}

IntTensor maxpool2x2(const IntTensor& input) {
  require_rank(input.shape, 4, "maxpool2x2");
  const long b = input.dim(0), c = input.dim(1), h = input.dim(2), w = input.dim(3);
  if (h % 2 || w % 2)
    throw ShapeError("maxpool2x2: spatial dims must be even, got " + shape_str(input.shape));
  IntTensor out({b, c, h / 2, w / 2});
  for (long i = 0; i < b * c; ++i) {
    const int32_t* in = input.ptr() + i * h * w;
    int32_t* op = out.ptr() + i * (h / 2) * (w / 2);
    for (long y = 0; y < h / 2; ++y)
      for (long x = 0; x < w / 2; ++x) {
        const int32_t a0 = in[(2 * y) * w + 2 * x], a1 = in[(2 * y) * w + 2 * x + 1];
        const int32_t a2 = in[(2 * y + 1) * w + 2 * x], a3 = in[(2 * y + 1) * w + 2 * x + 1];
        op[y * (w / 2) + x] = std::max(std::max(a0, a1), std::max(a2, a3));
      }
  }
  return out;
}

BnStats BnStats::identity(long channels) {
  BnStats s;
  s.gamma = Tensor::full({channels}, 1.0);
  s.beta = Tensor::zeros({channels});
  s.running_mean = Tensor::zeros({channels});
  s.running_var = Tensor::full({channels}, 1.0);
  return s;
}

Tensor batchnorm(const Tensor& x, BnStats& stats, BnMode mode, int channel_axis) {
  if (channel_axis < 0) channel_axis += x.rank();
  if (channel_axis < 0 || channel_axis >= x.rank())
    throw ShapeError("batchnorm: channel axis out of range for " + shape_str(x.shape));
  const long c = x.dim(channel_axis);
  if (stats.gamma.numel() != c)
    throw ShapeError("batchnorm: stats have " + std::to_string(stats.gamma.numel()) +
                     " channels, input " + shape_str(x.shape) + " axis " +
                     std::to_string(channel_axis));
  long outer = 1, inner = 1;
  for (int i = 0; i < channel_axis; ++i) outer *= x.dim(i);
  for (int i = channel_axis + 1; i < x.rank(); ++i) inner *= x.dim(i);
  const long per_channel = outer * inner;

  Tensor mean({c}), var({c});
  if (mode == BnMode::Train) {
    for (long ch = 0; ch < c; ++ch) {
      double m = 0.0;
      for (long o = 0; o < outer; ++o) {
        const double* base = x.ptr() + (o * c + ch) * inner;
        for (long i = 0; i < inner; ++i) m += base[i];
      }
      m /= static_cast<double>(per_channel);
      double v = 0.0;
      for (long o = 0; o < outer; ++o) {
        const double* base = x.ptr() + (o * c + ch) * inner;
        for (long i = 0; i < inner; ++i) {
          const double d = base[i] - m;
          v += d * d;
        }
      }
      v /= static_cast<double>(per_channel);
      mean.data[static_cast<size_t>(ch)] = m;
      var.data[static_cast<size_t>(ch)] = v;
      const double unbiased =
          per_channel > 1 ? v * static_cast<double>(per_channel) / static_cast<double>(per_channel - 1) : v;
      stats.running_mean.data[static_cast<size_t>(ch)] =
          (1.0 - stats.momentum) * stats.running_mean.data[static_cast<size_t>(ch)] + stats.momentum * m;
      stats.running_var.data[static_cast<size_t>(ch)] =
          (1.0 - stats.momentum) * stats.running_var.data[static_cast<size_t>(ch)] + stats.momentum * unbiased;
    }
  } else {
    mean = stats.running_mean;
    var = stats.running_var;
  }

  Tensor out(x.shape);
  for (long ch = 0; ch < c; ++ch) {
    const double inv = 1.0 / std::sqrt(var.data[static_cast<size_t>(ch)] + stats.eps);
    const double g = stats.gamma.data[static_cast<size_t>(ch)];
    const double b = stats.beta.data[static_cast<size_t>(ch)];
    const double m = mean.data[static_cast<size_t>(ch)];
    for (long o = 0; o < outer; ++o) {
      const double* src = x.ptr() + (o * c + ch) * inner;
      double* dst = out.ptr() + (o * c + ch) * inner;
      for (long i = 0; i < inner; ++i) dst[i] = prof::traced_mul(src[i] - m, g * inv) + b;
    }
  }
  return out;
}

BnAffine bn_affine(const BnStats& stats) {
  const long c = stats.gamma.numel();
  BnAffine a{Tensor({c}), Tensor({c})};
  for (long ch = 0; ch < c; ++ch) {
    const double s = stats.gamma.data[static_cast<size_t>(ch)] /
                     std::sqrt(stats.running_var.data[static_cast<size_t>(ch)] + stats.eps);
    a.scale.data[static_cast<size_t>(ch)] = s;
    a.shift.data[static_cast<size_t>(ch)] =
        stats.beta.data[static_cast<size_t>(ch)] - stats.running_mean.data[static_cast<size_t>(ch)] * s;
  }
  return a;
}

void fold_bn_linear(const Tensor& w, const BnStats& stats, Tensor& w_out, Tensor& bias_out) {
  const long k = w.dim(0), p = w.dim(1);
  if (stats.gamma.numel() != p)
    throw ShapeError("fold_bn_linear: BN channels " + std::to_string(stats.gamma.numel()) +
                     " vs linear width " + std::to_string(p));
  const BnAffine a = bn_affine(stats);
  w_out = Tensor({k, p});
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < p; ++j)
      w_out.data[static_cast<size_t>(i * p + j)] =
          w.data[static_cast<size_t>(i * p + j)] * a.scale.data[static_cast<size_t>(j)];
  bias_out = a.shift;
}

void fold_bn_conv(const Tensor& kernel, const BnStats& stats, Tensor& k_out, Tensor& bias_out) {
  const long oc = kernel.dim(0);
  if (stats.gamma.numel() != oc)
    throw ShapeError("fold_bn_conv: BN channels " + std::to_string(stats.gamma.numel()) +
                     " vs conv out channels " + std::to_string(oc));
  const BnAffine a = bn_affine(stats);
  const long per = kernel.numel() / oc;
  k_out = Tensor(kernel.shape);
  for (long o = 0; o < oc; ++o)
    for (long t = 0; t < per; ++t)
      k_out.data[static_cast<size_t>(o * per + t)] =
          kernel.data[static_cast<size_t>(o * per + t)] * a.scale.data[static_cast<size_t>(o)];
  bias_out = a.shift;
}

}  // namespace burstvit
