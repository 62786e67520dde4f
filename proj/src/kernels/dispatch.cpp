#include <cmath>
#include <cstdlib>
#include <string_view>

#include "pampac/kernels.hpp"

namespace pampac::kernels {

#ifndef PAMPAC_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

bool cpu_has_avx2() noexcept {
#if defined(PAMPAC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("PAMPAC_ISA"); env != nullptr && std::string_view(env) == "scalar") {
    return Isa::scalar;
  }
  return cpu_has_avx2() && avx2_table() != nullptr ? Isa::avx2 : Isa::scalar;
}

struct Selection {
  Isa isa = initial_isa();
  const KernelTable* table = isa == Isa::avx2 ? avx2_table() : &scalar_table();
};

Selection& selection() {
  static Selection s;
  return s;
}

}  // namespace

Isa active_isa() noexcept { return selection().isa; }

bool set_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && (!cpu_has_avx2() || avx2_table() == nullptr)) return false;
  selection().isa = isa;
  selection().table = isa == Isa::avx2 ? avx2_table() : &scalar_table();
  return true;
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& active() noexcept { return *selection().table; }

double nrm2(std::span<const double> x) noexcept {
  return std::sqrt(dot(x, x));
}

}  // namespace pampac::kernels
