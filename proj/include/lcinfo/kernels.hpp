#ifndef LCINFO_KERNELS_HPP
#define LCINFO_KERNELS_HPP

#include <cstddef>

namespace lcinfo::kern {

// Array kernels behind the grid quadrature, density convolution and the
// Blahut-Arimoto matrix sweeps. A scalar reference implementation always
// exists; an AVX2+FMA variant is selected at runtime when the CPU supports
// it. Set LCINFO_SIMD=scalar|avx2|auto to force a variant.
//
// Accumulation order differs between variants (vector lanes are reduced at
// the end), so results agree to rounding, not bit-for-bit. The equivalence
// tests pin the tolerance.
struct Ops {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // full linear convolution, out must have na+nb-1 zero-initialized slots
  void (*conv_full)(const double* a, std::size_t na, const double* b, std::size_t nb,
                    double* out);
  // y = M x   (M row-major, rows x cols)
  void (*matvec)(const double* m, std::size_t rows, std::size_t cols, const double* x,
                 double* y);
  // y = M^T x
  void (*matvec_t)(const double* m, std::size_t rows, std::size_t cols, const double* x,
                   double* y);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when the build or CPU lacks AVX2
const Ops& active();

}  // namespace lcinfo::kern

#endif
