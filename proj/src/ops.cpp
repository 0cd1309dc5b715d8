#include "stmc/ops.hpp"

#include <algorithm>

namespace stmc {
namespace detail {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t ceil_div(int64_t a, int64_t b) {
  return -floor_div(-a, b);
}

FreqGeom conv_freq_geom(int f, int kf, int sf) {
  FreqGeom g;
  g.out_f = (f + sf - 1) / sf;
  const int pad_total = std::max((g.out_f - 1) * sf + kf - f, 0);
  g.pad_lo = pad_total / 2;
  return g;
}

Tensor conv_positions(const Tensor& window, int64_t g0, const Kernel& k,
                      int stride_t, int stride_f, int dilation_t, int64_t base,
                      Activation act, int64_t i0, int64_t i1, MacCounter* counter) {
  const int f = window.f;
  const int cin = k.c_in;
  const int cout = k.c_out;
  const FreqGeom fg = conv_freq_geom(f, k.kf, stride_f);
  const int64_t n = std::max<int64_t>(i1 - i0, 0);

  Tensor out(static_cast<int>(n), fg.out_f, cout);
  if (counter)
    counter->macs += static_cast<uint64_t>(n) * fg.out_f * cout * k.kt * k.kf * cin;

  for (int64_t i = i0; i < i1; ++i) {
    float* orow = out.frame(static_cast<int>(i - i0));
    for (int fo = 0; fo < fg.out_f; ++fo) {
      for (int co = 0; co < cout; ++co) {
        float acc = 0.0f;
        for (int mt = 0; mt < k.kt; ++mt) {
          const int64_t local = i * stride_t + base + static_cast<int64_t>(mt) * dilation_t - g0;
          if (local < 0 || local >= window.t) continue; // zero padding / pre-stream
          const float* fr = window.frame(static_cast<int>(local));
          for (int mf = 0; mf < k.kf; ++mf) {
            const int fi = fo * stride_f + mf - fg.pad_lo;
            if (fi < 0 || fi >= f) continue;
            const float* xv = fr + static_cast<size_t>(fi) * cin;
            const float* wv = k.tap(mt, mf, co);
            for (int ci = 0; ci < cin; ++ci) acc += xv[ci] * wv[ci];
          }
        }
        orow[static_cast<size_t>(fo) * cout + co] = apply_act(act, acc + k.bias[co]);
      }
    }
  }
  return out;
}

Tensor tconv_raw(const Tensor& x, int64_t u_base, const Kernel& k, int stride_t,
                 int stride_f, int out_f, int64_t q0, int64_t q1, MacCounter* counter) {
  const int cin = k.c_in;
  const int cout = k.c_out;
  const int full_f = (x.f > 0 ? (x.f - 1) * stride_f + k.kf : 0);
  const int64_t crop_lo = floor_div(full_f - out_f, 2);
  const int64_t n = std::max<int64_t>(q1 - q0, 0);

  Tensor out(static_cast<int>(n), out_f, cout);
  for (int64_t q = q0; q < q1; ++q) {
    float* orow = out.frame(static_cast<int>(q - q0));
    for (int fo = 0; fo < out_f; ++fo) {
      for (int co = 0; co < cout; ++co) {
        float acc = 0.0f;
        for (int jt = 0; jt < k.kt; ++jt) {
          const int64_t s = q - jt;
          if (s < 0 || s % stride_t != 0) continue; // structural scatter zero
          const int64_t u = s / stride_t;
          if (u < u_base || u >= u_base + x.t) continue;
          const float* fr = x.frame(static_cast<int>(u - u_base));
          for (int mf = 0; mf < k.kf; ++mf) {
            const int64_t num = fo + crop_lo - mf;
            if (num < 0 || num % stride_f != 0) continue;
            const int64_t v = num / stride_f;
            if (v >= x.f) continue;
            if (counter) counter->macs += cin;
            const float* xv = fr + static_cast<size_t>(v) * cin;
            const float* wv = k.tap(jt, mf, co);
            for (int ci = 0; ci < cin; ++ci) acc += xv[ci] * wv[ci];
          }
        }
        orow[static_cast<size_t>(fo) * cout + co] = acc;
      }
    }
  }
  return out;
}

Tensor pool_positions(const Tensor& window, int64_t g0, int window_t, int stride_t,
                      PoolKind kind, int64_t i0, int64_t i1) {
  const int f = window.f, c = window.c;
  const int64_t n = std::max<int64_t>(i1 - i0, 0);
  const float inv_w = 1.0f / static_cast<float>(window_t);

  Tensor out(static_cast<int>(n), f, c);
  for (int64_t i = i0; i < i1; ++i) {
    float* orow = out.frame(static_cast<int>(i - i0));
    const int64_t local0 = i * stride_t - g0;
    for (size_t e = 0; e < out.frame_floats(); ++e) {
      const float* first = window.frame(static_cast<int>(local0)) + e;
      float acc = *first;
      for (int j = 1; j < window_t; ++j) {
        const float v = window.frame(static_cast<int>(local0 + j))[e];
        acc = (kind == PoolKind::max) ? std::max(acc, v) : acc + v;
      }
      orow[e] = (kind == PoolKind::avg) ? acc * inv_w : acc;
    }
  }
  return out;
}

} // namespace detail

Tensor conv_forward(const Tensor& x, const Kernel& k, int stride_t, int stride_f,
                    Activation act, PaddingMode pad, int dilation_t, MacCounter* counter) {
  if (x.c != k.c_in)
    throw shape_error("conv_forward: input has " + std::to_string(x.c) +
                      " channels, kernel expects " + std::to_string(k.c_in));
  if (stride_t < 1 || stride_f < 1 || dilation_t < 1)
    throw config_error("conv_forward: strides and dilation must be >= 1");

  const int kt_eff = (k.kt - 1) * dilation_t + 1;
  int64_t out_t = 0;
  int64_t base = 0;
  if (pad.time == TimePad::valid) {
    if (x.t < kt_eff)
      throw insufficient_context_error("conv_forward: input t=" + std::to_string(x.t) +
                                       " shorter than kernel span " + std::to_string(kt_eff));
    out_t = (x.t - kt_eff) / stride_t + 1;
  } else {
    out_t = detail::ceil_div(x.t, stride_t);
    base = -static_cast<int64_t>(k.kt - 1) * dilation_t;
  }
  return detail::conv_positions(x, 0, k, stride_t, stride_f, dilation_t, base, act,
                                0, out_t, counter);
}

Tensor tconv_forward(const Tensor& x, const Kernel& k, int stride_t, int stride_f,
                     Activation act, int causal_shift, int out_f, MacCounter* counter) {
  if (x.c != k.c_in)
    throw shape_error("tconv_forward: input has " + std::to_string(x.c) +
                      " channels, kernel expects " + std::to_string(k.c_in));
  if (stride_t < 1 || stride_f < 1)
    throw config_error("tconv_forward: strides must be >= 1");
  if (causal_shift < 0)
    throw config_error("tconv_forward: causal_shift must be >= 0");
  if (out_f == 0) out_f = x.f * stride_f;

  const int64_t full_t = (x.t > 0) ? static_cast<int64_t>(x.t - 1) * stride_t + k.kt : 0;
  const Tensor raw = detail::tconv_raw(x, 0, k, stride_t, stride_f, out_f, 0, full_t, counter);

  Tensor out(static_cast<int>(full_t), out_f, k.c_out);
  for (int64_t p = 0; p < full_t; ++p) {
    float* orow = out.frame(static_cast<int>(p));
    const int64_t q = p - causal_shift;
    const float* rrow = (q >= 0) ? raw.frame(static_cast<int>(q)) : nullptr;
    for (int fo = 0; fo < out_f; ++fo)
      for (int co = 0; co < k.c_out; ++co) {
        const float a = rrow ? rrow[static_cast<size_t>(fo) * k.c_out + co] : 0.0f;
        orow[static_cast<size_t>(fo) * k.c_out + co] = apply_act(act, a + k.bias[co]);
      }
  }
  return out;
}

Tensor pool_forward(const Tensor& x, int window_t, int stride_t, PoolKind kind) {
  if (window_t < 1 || stride_t < 1)
    throw config_error("pool_forward: window and stride must be >= 1");
  if (x.t < window_t)
    throw insufficient_context_error("pool_forward: input t=" + std::to_string(x.t) +
                                     " shorter than window " + std::to_string(window_t));
  const int64_t out_t = (x.t - window_t) / stride_t + 1;
  return detail::pool_positions(x, 0, window_t, stride_t, kind, 0, out_t);
}

Tensor apply_activation(const Tensor& x, Activation act) {
  Tensor out = x;
  for (auto& v : out.data) v = apply_act(act, v);
  return out;
}

} // namespace stmc
