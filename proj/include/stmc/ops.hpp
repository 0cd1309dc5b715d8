#pragma once

#include <cmath>
#include <cstdint>

#include "stmc/tensor.hpp"

namespace stmc {

enum class Activation { linear, relu, sigmoid, tanh };

inline float apply_act(Activation a, float x) {
  switch (a) {
    case Activation::linear: return x;
    case Activation::relu: return x > 0.0f ? x : 0.0f;
    case Activation::sigmoid: return 1.0f / (1.0f + std::exp(-x));
    case Activation::tanh: return std::tanh(x);
  }
  return x;
}

enum class TimePad { valid, causal_left };

// Frequency is always zero-padded "same" (output ceil(f/stride_f) bins);
// only the time axis has a padding choice.
struct PaddingMode {
  TimePad time = TimePad::causal_left;
};

enum class PoolKind { max, avg };

// Multiply-accumulate tally for one execution context. Never shared across
// concurrent streams.
struct MacCounter {
  uint64_t macs = 0;
};

// 2-D convolution over (time x freq) with per-channel dot products.
// causal-left pads (kt-1)*dilation zero frames on the past side, so output
// frame i depends only on input frames <= i*stride_t; valid keeps only fully
// covered windows. Accumulation order is fixed (time tap, freq tap, channel)
// so chunked streaming can reproduce results bit-for-bit.
Tensor conv_forward(const Tensor& x, const Kernel& k, int stride_t, int stride_f,
                    Activation act, PaddingMode pad, int dilation_t = 1,
                    MacCounter* counter = nullptr);

// Transposed convolution realized as scatter (stride_t-1 zero frames between
// inputs, stride_f-1 zero bins between bins), pad, convolve. Output keeps the
// full (x.t-1)*stride_t + kt frames; causal_shift delays content by that many
// frames (dropping the trailing partial windows), turning the anti-causal
// dependence of the raw transpose into a causal one.
// Structural scatter zeros are skipped, not multiplied, so the tally reflects
// work actually done. out_f == 0 means the default x.f*stride_f bins.
Tensor tconv_forward(const Tensor& x, const Kernel& k, int stride_t, int stride_f,
                     Activation act, int causal_shift, int out_f = 0,
                     MacCounter* counter = nullptr);

// Valid time-axis pooling; frequency and channels pass through.
Tensor pool_forward(const Tensor& x, int window_t, int stride_t, PoolKind kind);

// Elementwise activation over a whole tensor.
Tensor apply_activation(const Tensor& x, Activation act);

namespace detail {

int64_t floor_div(int64_t a, int64_t b);
int64_t ceil_div(int64_t a, int64_t b);

// "same" padding on the freq axis for a given input width.
struct FreqGeom {
  int out_f = 0;
  int pad_lo = 0;
};
FreqGeom conv_freq_geom(int f, int kf, int sf);

// Shared conv core. Computes output rows for global output indices [i0, i1).
// The tap for output i at kernel position mt sits at global frame
// g = i*stride_t + base + mt*dilation; `window` holds frames for globals
// [g0, g0 + window.t) and anything outside contributes zero (time padding /
// not-yet-streamed context). Used by both the offline executor and the
// streaming runtime so the arithmetic per output element is identical.
Tensor conv_positions(const Tensor& window, int64_t g0, const Kernel& k,
                      int stride_t, int stride_f, int dilation_t, int64_t base,
                      Activation act, int64_t i0, int64_t i1, MacCounter* counter);

// Raw (pre-bias, pre-activation) transposed-conv accumulations for scattered
// time positions [q0, q1). `x` holds the real (unscattered) frames for input
// indices [u_base, u_base + x.t). crop centering on the freq axis follows
// floor((full - out_f)/2).
Tensor tconv_raw(const Tensor& x, int64_t u_base, const Kernel& k, int stride_t,
                 int stride_f, int out_f, int64_t q0, int64_t q1, MacCounter* counter);

// Pooling core over global output indices [i0, i1); all taps must lie inside
// the window (valid pooling never reads padding).
Tensor pool_positions(const Tensor& window, int64_t g0, int window_t, int stride_t,
                      PoolKind kind, int64_t i0, int64_t i1);

} // namespace detail

} // namespace stmc
