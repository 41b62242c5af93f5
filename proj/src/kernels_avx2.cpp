#include "c2mabv/kernels.hpp"

#if defined(C2MABV_HAVE_AVX2)

#include <immintrin.h>

// Each lane mirrors one scalar accumulator; combines use the same
// (l0 op l1) op (l2 op l3) tree as the scalar reference. No FMA, so every
// intermediate is rounded exactly like the scalar path.
namespace c2mabv::kernels::avx2 {

namespace {

inline double reduce_add(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double reduce_mul(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] * lane[1]) * (lane[2] * lane[3]);
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
  }
  double r = reduce_add(acc);
  for (std::size_t i = main; i < n; ++i) r += a[i] * b[i];
  return r;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  }
  double r = reduce_add(acc);
  for (std::size_t i = main; i < n; ++i) r += a[i];
  return r;
}

double complement_product(const double* a, const double* b, std::size_t n) {
  const __m256d ones = _mm256_set1_pd(1.0);
  __m256d acc = ones;
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_mul_pd(acc, _mm256_sub_pd(ones, _mm256_mul_pd(va, vb)));
  }
  double r = reduce_mul(acc);
  for (std::size_t i = main; i < n; ++i) r *= 1.0 - a[i] * b[i];
  return r;
}

void add_scaled_clamp_hi(const double* base, const double* add, double scale, double hi,
                         double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vh = _mm256_set1_pd(hi);
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    const __m256d vb = _mm256_loadu_pd(base + i);
    const __m256d va = _mm256_loadu_pd(add + i);
    const __m256d v = _mm256_add_pd(vb, _mm256_mul_pd(vs, va));
    _mm256_storeu_pd(out + i, _mm256_min_pd(v, vh));
  }
  for (std::size_t i = main; i < n; ++i) {
    const double v = base[i] + scale * add[i];
    out[i] = v < hi ? v : hi;
  }
}

void sub_scaled_clamp_lo(const double* base, const double* sub, double scale, double lo,
                         double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vl = _mm256_set1_pd(lo);
  const std::size_t main = n & ~std::size_t{3};
  for (std::size_t i = 0; i < main; i += 4) {
    const __m256d vb = _mm256_loadu_pd(base + i);
    const __m256d vx = _mm256_loadu_pd(sub + i);
    const __m256d v = _mm256_sub_pd(vb, _mm256_mul_pd(vs, vx));
    _mm256_storeu_pd(out + i, _mm256_max_pd(v, vl));
  }
  for (std::size_t i = main; i < n; ++i) {
    const double v = base[i] - scale * sub[i];
    out[i] = v > lo ? v : lo;
  }
}

}  // namespace c2mabv::kernels::avx2

namespace c2mabv::kernels {

const Ops& avx2_ops() {
  static const Ops ops{avx2::dot,
                       avx2::sum,
                       avx2::complement_product,
                       avx2::add_scaled_clamp_hi,
                       avx2::sub_scaled_clamp_lo,
                       "avx2"};
  return ops;
}

}  // namespace c2mabv::kernels

#endif  // C2MABV_HAVE_AVX2
