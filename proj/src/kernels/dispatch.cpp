#include <cstdlib>
#include <string_view>

#include "entweb/error.hpp"
#include "entweb/kernels.hpp"

namespace entweb::kernels {

bool isa_available(Isa isa) {
  switch (isa) {
  case Isa::scalar:
    return true;
  case Isa::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char *env = std::getenv("ENTWEB_KERNEL"); env && std::string_view(env) == "scalar") return Isa::scalar;
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

const char *isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void triplet_charpoly(Isa isa, const TripletBlock &block, std::span<const double> x, std::span<const double> y,
                      std::span<const double> z, std::span<double> c2, std::span<double> c1, std::span<double> c0) {
  const std::size_t n = x.size();
  if (y.size() != n || z.size() != n || c2.size() != n || c1.size() != n || c0.size() != n) {
    throw InputError("triplet_charpoly: batch spans differ in length");
  }
  if (!isa_available(isa)) throw InputError("triplet_charpoly: requested ISA is not available on this CPU");
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) {
    detail::triplet_charpoly_avx2(block, x.data(), y.data(), z.data(), c2.data(), c1.data(), c0.data(), n);
    return;
  }
#endif
  detail::triplet_charpoly_scalar(block, x.data(), y.data(), z.data(), c2.data(), c1.data(), c0.data(), n);
}

void hermitian_gram(Isa isa, std::span<const cplx> g, std::size_t rows, std::size_t cols, std::span<cplx> out) {
  if (g.size() != rows * cols || out.size() != rows * rows) throw InputError("hermitian_gram: span sizes do not match");
  if (!isa_available(isa)) throw InputError("hermitian_gram: requested ISA is not available on this CPU");
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) {
    detail::hermitian_gram_avx2(g.data(), rows, cols, out.data());
    return;
  }
#endif
  detail::hermitian_gram_scalar(g.data(), rows, cols, out.data());
}

} // namespace entweb::kernels
