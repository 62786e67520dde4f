#pragma once
// Dense double-precision inner loops used by the linear algebra and the
// spectral operators.  Each kernel has a portable scalar reference version and
// an AVX2+FMA version; the active set is picked once at startup from CPUID and
// can be pinned (tests, reproducibility runs) with set_isa() or the
// PAMPAC_ISA=scalar environment variable.

#include <cstddef>
#include <span>
#include <string_view>

namespace pampac::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  // y[i] = sum_j a[i * lda + j] * x[j] for i < rows, j < cols (row-major)
  void (*gemv)(const double* a, std::size_t lda, std::size_t rows, std::size_t cols,
               const double* x, double* y);
};

const KernelTable& scalar_table() noexcept;
/// Null when the binary was built without AVX2 support.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;
Isa active_isa() noexcept;
/// Pins the kernel set.  Requesting avx2 on a CPU without it is ignored and
/// returns false.  Not synchronised: call before starting worker threads.
bool set_isa(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

const KernelTable& active() noexcept;

inline double dot(std::span<const double> x, std::span<const double> y) noexcept {
  return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(a, x.data(), y.data(), x.size());
}

inline void scale(double a, std::span<double> x) noexcept {
  active().scale(a, x.data(), x.size());
}

double nrm2(std::span<const double> x) noexcept;

}  // namespace pampac::kernels
