#include "c2mabv/kernels.hpp"

#include <algorithm>
#include <cstdlib>

namespace c2mabv::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
    acc2 += a[i + 2] * b[i + 2];
    acc3 += a[i + 3] * b[i + 3];
  }
  double r = (acc0 + acc1) + (acc2 + acc3);
  for (std::size_t i = main; i < n; ++i) r += a[i] * b[i];
  return r;
}

double sum(const double* a, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    acc0 += a[i];
    acc1 += a[i + 1];
    acc2 += a[i + 2];
    acc3 += a[i + 3];
  }
  double r = (acc0 + acc1) + (acc2 + acc3);
  for (std::size_t i = main; i < n; ++i) r += a[i];
  return r;
}

double complement_product(const double* a, const double* b, std::size_t n) {
  double acc0 = 1.0, acc1 = 1.0, acc2 = 1.0, acc3 = 1.0;
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    acc0 *= 1.0 - a[i] * b[i];
    acc1 *= 1.0 - a[i + 1] * b[i + 1];
    acc2 *= 1.0 - a[i + 2] * b[i + 2];
    acc3 *= 1.0 - a[i + 3] * b[i + 3];
  }
  double r = (acc0 * acc1) * (acc2 * acc3);
  for (std::size_t i = main; i < n; ++i) r *= 1.0 - a[i] * b[i];
  return r;
}

void add_scaled_clamp_hi(const double* base, const double* add, double scale, double hi,
                         double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::min(base[i] + scale * add[i], hi);
}

void sub_scaled_clamp_lo(const double* base, const double* sub, double scale, double lo,
                         double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(base[i] - scale * sub[i], lo);
}

}  // namespace scalar

const Ops& scalar_ops() {
  static const Ops ops{scalar::dot,
                       scalar::sum,
                       scalar::complement_product,
                       scalar::add_scaled_clamp_hi,
                       scalar::sub_scaled_clamp_lo,
                       "scalar"};
  return ops;
}

namespace {

const Ops& resolve() {
#if defined(C2MABV_HAVE_AVX2)
  const char* force = std::getenv("C2MABV_FORCE_SCALAR");
  const bool forced_scalar = force != nullptr && force[0] == '1';
  if (!forced_scalar && __builtin_cpu_supports("avx2")) return avx2_ops();
#endif
  return scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& ops = resolve();
  return ops;
}

std::string_view active_name() { return active_ops().name; }

}  // namespace c2mabv::kernels
