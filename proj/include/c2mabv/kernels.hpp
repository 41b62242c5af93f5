#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops over per-arm vectors. Every kernel is defined by
// a fixed 4-lane strided reduction order (lane j accumulates elements
// j, j+4, j+8, ...; lanes combine as (l0 op l1) op (l2 op l3); the tail folds
// sequentially afterwards). The scalar reference and the AVX2 variant both
// implement that exact order, so their results are bit-identical and runtime
// dispatch cannot perturb golden outputs.
namespace c2mabv::kernels {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  // prod_k (1 - a_k * b_k)
  double (*complement_product)(const double*, const double*, std::size_t);
  // out = min(base + scale * add, hi)
  void (*add_scaled_clamp_hi)(const double*, const double*, double, double, double*, std::size_t);
  // out = max(base - scale * sub, lo)
  void (*sub_scaled_clamp_lo)(const double*, const double*, double, double, double*, std::size_t);
  const char* name;
};

const Ops& scalar_ops();
#if defined(C2MABV_HAVE_AVX2)
const Ops& avx2_ops();
#endif

// Active implementation: AVX2 when the CPU supports it (override with
// C2MABV_FORCE_SCALAR=1 in the environment), scalar otherwise.
const Ops& active_ops();
std::string_view active_name();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_ops().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return active_ops().sum(a.data(), a.size()); }
inline double complement_product(std::span<const double> a, std::span<const double> b) {
  return active_ops().complement_product(a.data(), b.data(), a.size());
}
inline void add_scaled_clamp_hi(std::span<const double> base, std::span<const double> add,
                                double scale, double hi, std::span<double> out) {
  active_ops().add_scaled_clamp_hi(base.data(), add.data(), scale, hi, out.data(), base.size());
}
inline void sub_scaled_clamp_lo(std::span<const double> base, std::span<const double> sub,
                                double scale, double lo, std::span<double> out) {
  active_ops().sub_scaled_clamp_lo(base.data(), sub.data(), scale, lo, out.data(), base.size());
}

}  // namespace c2mabv::kernels
