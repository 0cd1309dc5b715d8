#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stmc/errors.hpp"

namespace stmc {

// Dense (time x frequency x channels) float32 tensor, time-major: one time
// frame is a contiguous block of f*c floats. Treated as an immutable value
// once filled in; a zero-length time axis is a legal empty tensor.
struct Tensor {
  int t = 0, f = 0, c = 0;
  std::vector<float> data;

  Tensor() = default;
  Tensor(int t_, int f_, int c_);

  size_t frame_floats() const { return static_cast<size_t>(f) * c; }
  size_t size() const { return data.size(); }

  float& at(int ti, int fi, int ci) {
    return data[(static_cast<size_t>(ti) * f + fi) * c + ci];
  }
  float at(int ti, int fi, int ci) const {
    return data[(static_cast<size_t>(ti) * f + fi) * c + ci];
  }
  float* frame(int ti) { return data.data() + ti * frame_floats(); }
  const float* frame(int ti) const { return data.data() + ti * frame_floats(); }

  bool same_shape(const Tensor& o) const { return t == o.t && f == o.f && c == o.c; }
};

// Frames [start, start+len) of x; f and c unchanged.
Tensor slice_time(const Tensor& x, int start, int len);

// a followed by b along the time axis; frame order preserved.
Tensor concat_time(const Tensor& a, const Tensor& b);

// x with `left`/`right` extra frames filled with `value`.
Tensor pad_time(const Tensor& x, int left, int right, float value = 0.0f);

// True iff |a_i - b_i| <= atol + rtol*|b_i| for every element.
bool allclose(const Tensor& a, const Tensor& b, float atol = 1e-5f, float rtol = 1e-5f);

// Largest |a_i - b_i| over all elements (0 for empty tensors).
float max_abs_diff(const Tensor& a, const Tensor& b);

bool bit_equal(const Tensor& a, const Tensor& b);

// Seeded uniform fill, used for synthetic inputs and test weights.
Tensor random_tensor(int t, int f, int c, uint64_t seed, float lo = -1.0f, float hi = 1.0f);

// Binary tensor file: magic "STMC", u32 version=1, u32 t, u32 f, u32 c,
// then t*f*c little-endian float32 values, time-major.
void write_tensor(std::ostream& out, const Tensor& x);
Tensor read_tensor(std::istream& in);
void save_tensor(const std::string& path, const Tensor& x);
Tensor load_tensor(const std::string& path);

// Per-output-channel weights for a 2-D (time x freq) convolution.
// Logical index (mt, mf, ci, co); stored co-major then ci so the channel dot
// product is contiguous.
struct Kernel {
  int kt = 1, kf = 1, c_in = 1, c_out = 1;
  std::vector<float> w;
  std::vector<float> bias;

  Kernel() = default;
  Kernel(int kt_, int kf_, int ci_, int co_);

  float& at(int mt, int mf, int ci, int co) {
    return w[((static_cast<size_t>(mt) * kf + mf) * c_out + co) * c_in + ci];
  }
  float at(int mt, int mf, int ci, int co) const {
    return w[((static_cast<size_t>(mt) * kf + mf) * c_out + co) * c_in + ci];
  }
  const float* tap(int mt, int mf, int co) const {
    return w.data() + ((static_cast<size_t>(mt) * kf + mf) * c_out + co) * c_in;
  }

  static Kernel random(int kt, int kf, int ci, int co, uint64_t seed);
};

} // namespace stmc
