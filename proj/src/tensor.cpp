#include "stmc/tensor.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

#include "stmc/rng.hpp"

namespace stmc {

Tensor::Tensor(int t_, int f_, int c_) : t(t_), f(f_), c(c_) {
  if (t < 0 || f < 0 || c < 0)
    throw shape_error("tensor dimensions must be non-negative");
  data.assign(static_cast<size_t>(t) * f * c, 0.0f);
}

Tensor slice_time(const Tensor& x, int start, int len) {
  if (start < 0 || len < 0 || start + len > x.t)
    throw std::out_of_range("slice_time: range [" + std::to_string(start) + ", " +
                            std::to_string(start + len) + ") outside t=" + std::to_string(x.t));
  Tensor out(len, x.f, x.c);
  std::memcpy(out.data.data(), x.frame(start), out.size() * sizeof(float));
  return out;
}

Tensor concat_time(const Tensor& a, const Tensor& b) {
  if (a.t == 0 && a.f == 0 && a.c == 0) return b;
  if (b.t == 0 && b.f == 0 && b.c == 0) return a;
  if (a.f != b.f || a.c != b.c)
    throw shape_error("concat_time: frame shapes differ");
  Tensor out(a.t + b.t, a.f, a.c);
  std::memcpy(out.data.data(), a.data.data(), a.size() * sizeof(float));
  std::memcpy(out.data.data() + a.size(), b.data.data(), b.size() * sizeof(float));
  return out;
}

Tensor pad_time(const Tensor& x, int left, int right, float value) {
  if (left < 0 || right < 0)
    throw std::out_of_range("pad_time: negative padding");
  Tensor out(x.t + left + right, x.f, x.c);
  if (value != 0.0f)
    std::fill(out.data.begin(), out.data.end(), value);
  if (x.size() > 0)
    std::memcpy(out.frame(left), x.data.data(), x.size() * sizeof(float));
  return out;
}

bool allclose(const Tensor& a, const Tensor& b, float atol, float rtol) {
  if (!a.same_shape(b))
    throw shape_error("allclose: shapes differ");
  for (size_t i = 0; i < a.size(); ++i) {
    const float d = std::fabs(a.data[i] - b.data[i]);
    if (!(d <= atol + rtol * std::fabs(b.data[i])))
      return false;
  }
  return true;
}

float max_abs_diff(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b))
    throw shape_error("max_abs_diff: shapes differ");
  float m = 0.0f;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a.data[i] - b.data[i]));
  return m;
}

bool bit_equal(const Tensor& a, const Tensor& b) {
  return a.same_shape(b) &&
         (a.size() == 0 ||
          std::memcmp(a.data.data(), b.data.data(), a.size() * sizeof(float)) == 0);
}

Tensor random_tensor(int t, int f, int c, uint64_t seed, float lo, float hi) {
  Tensor out(t, f, c);
  Rng rng(seed);
  for (auto& v : out.data) v = rng.uniform(lo, hi);
  return out;
}

namespace {

constexpr char kMagic[4] = {'S', 'T', 'M', 'C'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw io_error("tensor file: truncated header");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

} // namespace

void write_tensor(std::ostream& out, const Tensor& x) {
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<uint32_t>(x.t));
  put_u32(out, static_cast<uint32_t>(x.f));
  put_u32(out, static_cast<uint32_t>(x.c));
  for (float v : x.data) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
  }
  if (!out) throw io_error("tensor file: write failed");
}

Tensor read_tensor(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw io_error("tensor file: bad magic");
  const uint32_t version = get_u32(in);
  if (version != kVersion)
    throw io_error("tensor file: unsupported version " + std::to_string(version));
  const uint32_t t = get_u32(in), f = get_u32(in), c = get_u32(in);
  constexpr uint32_t kDimLimit = 1u << 24;
  if (t > kDimLimit || f > kDimLimit || c > kDimLimit)
    throw io_error("tensor file: implausible dimensions");
  Tensor x(static_cast<int>(t), static_cast<int>(f), static_cast<int>(c));
  for (auto& v : x.data) {
    const uint32_t bits = get_u32(in);
    std::memcpy(&v, &bits, 4);
  }
  return x;
}

void save_tensor(const std::string& path, const Tensor& x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for write: " + path);
  write_tensor(out, x);
}

Tensor load_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open: " + path);
  return read_tensor(in);
}

Kernel::Kernel(int kt_, int kf_, int ci_, int co_) : kt(kt_), kf(kf_), c_in(ci_), c_out(co_) {
  if (kt < 1 || kf < 1 || c_in < 1 || c_out < 1)
    throw shape_error("kernel dimensions must be >= 1");
  w.assign(static_cast<size_t>(kt) * kf * c_in * c_out, 0.0f);
  bias.assign(static_cast<size_t>(c_out), 0.0f);
}

Kernel Kernel::random(int kt, int kf, int ci, int co, uint64_t seed) {
  Kernel k(kt, kf, ci, co);
  Rng rng(seed);
  for (auto& v : k.w) v = rng.uniform(-0.5f, 0.5f);
  for (auto& v : k.bias) v = rng.uniform(-0.5f, 0.5f);
  return k;
}

} // namespace stmc
