#include <cstdlib>
#include <string>

#include "orbit/kernels.hpp"

namespace orbit::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(ORBIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* forced = std::getenv("ORBIT_SIMD"); forced && std::string(forced) == "scalar") {
    return Isa::scalar;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

double entropy_bits(std::span<const double> p) {
#ifdef ORBIT_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::entropy_bits(p);
#endif
  return scalar::entropy_bits(p);
}

void log2(std::span<const double> in, std::span<double> out) {
#ifdef ORBIT_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::log2(in, out);
#endif
  scalar::log2(in, out);
}

void classical_qmi(const CandidateView& candidates, std::span<const double> lambda, double h_lambda,
                   std::span<double> out) {
#ifdef ORBIT_HAVE_AVX2
  if (active_isa() == Isa::avx2) return avx2::classical_qmi(candidates, lambda, h_lambda, out);
#endif
  scalar::classical_qmi(candidates, lambda, h_lambda, out);
}

}  // namespace orbit::kernels
