// Compiled with -ffast-math so the loops below vectorise through libmvec.
// Reductions are not performed here: each block of contributions is handed
// to pairwise_sum_inplace, which lives in a strict-IEEE translation unit.
// cos and sin are taken in separate loops; GCC otherwise fuses them into a
// scalar sincos call and the loop stays scalar.
#include <array>
#include <cmath>
#include <vector>

#include "lunarbeam/diffraction.hpp"
#include "lunarbeam/summation.hpp"

namespace lunarbeam::detail {

namespace {

constexpr std::size_t kBlock = 256;

}  // namespace

std::complex<double> sum_node_contributions(const KernelRow& row, double x, double y) {
  const std::size_t n = row.node_x.size();
  const double d = row.distance;
  const double d2 = d * d;
  const double* __restrict nx = row.node_x.data();
  const double* __restrict ny = row.node_y.data();
  const double* __restrict amp = row.amp.data();

  alignas(64) std::array<double, kBlock> re{};
  alignas(64) std::array<double, kBlock> im{};
  alignas(64) std::array<double, kBlock> ph{};
  alignas(64) std::array<double, kBlock> mag{};
  thread_local std::vector<double> block_re;
  thread_local std::vector<double> block_im;
  block_re.clear();
  block_im.clear();

  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t len = std::min(kBlock, n - start);
    if (row.dusty) {
      const double* __restrict kk = row.wavenumber.data() + start;
      const double* __restrict p0 = row.phase0.data() + start;
      const double* __restrict ext = row.extinction.data() + start;
#pragma omp simd
      for (std::size_t j = 0; j < len; ++j) {
        const double dx = x - nx[start + j];
        const double dy = y - ny[start + j];
        const double rho2 = dx * dx + dy * dy;
        const double r = std::sqrt(d2 + rho2);
        const double excess = rho2 / (r + d);
        const double phase = kk[j] * excess + p0[j];
        const double a = amp[start + j] * std::exp(-ext[j] * excess) / r;
        ph[j] = phase;
        mag[j] = a;
      }
    } else {
      const double k = row.wavenumber_vacuum;
#pragma omp simd
      for (std::size_t j = 0; j < len; ++j) {
        const double dx = x - nx[start + j];
        const double dy = y - ny[start + j];
        const double rho2 = dx * dx + dy * dy;
        const double r = std::sqrt(d2 + rho2);
        const double phase = k * (rho2 / (r + d));
        const double a = amp[start + j] / r;
        ph[j] = phase;
        mag[j] = a;
      }
    }
#pragma omp simd
    for (std::size_t j = 0; j < len; ++j) re[j] = mag[j] * std::cos(ph[j]);
#pragma omp simd
    for (std::size_t j = 0; j < len; ++j) im[j] = -mag[j] * std::sin(ph[j]);
    block_re.push_back(pairwise_sum_inplace(std::span<double>(re.data(), len)));
    block_im.push_back(pairwise_sum_inplace(std::span<double>(im.data(), len)));
  }
  return {pairwise_sum_inplace(block_re), pairwise_sum_inplace(block_im)};
}

}  // namespace lunarbeam::detail
