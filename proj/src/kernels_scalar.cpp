#include "lcinfo/kernels.hpp"

namespace lcinfo::kern {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void conv_full_scalar(const double* a, std::size_t na, const double* b, std::size_t nb,
                      double* out) {
  for (std::size_t i = 0; i < na; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    double* o = out + i;
    for (std::size_t j = 0; j < nb; ++j) o[j] += ai * b[j];
  }
}

void matvec_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_scalar(m + i * cols, x, cols);
}

void matvec_t_scalar(const double* m, std::size_t rows, std::size_t cols, const double* x,
                     double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) axpy_scalar(x[i], m + i * cols, y, cols);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar",         sum_scalar,    dot_scalar, axpy_scalar,
                       conv_full_scalar, matvec_scalar, matvec_t_scalar};
  return ops;
}

}  // namespace lcinfo::kern
