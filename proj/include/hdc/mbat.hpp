#pragma once

#include <cblas.h>
#include <lapacke.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/rng.hpp"

namespace hdc {

// Row-major square matrix.
struct SquareMatrix {
  std::uint32_t n = 0;
  std::vector<double> a;  // n*n, row-major

  double at(std::uint32_t i, std::uint32_t j) const { return a[i * n + j]; }
};

namespace detail {

// Orthonormalizes X (n x n, row-major) to its polar factor U * V^T via SVD.
inline SquareMatrix orthonormalize_svd(std::vector<double> x, std::uint32_t n) {
  std::vector<double> s(n), u(std::size_t(n) * n), vt(std::size_t(n) * n);
  const lapack_int info = LAPACKE_dgesdd(
      LAPACK_ROW_MAJOR, 'A', lapack_int(n), lapack_int(n), x.data(),
      lapack_int(n), s.data(), u.data(), lapack_int(n), vt.data(),
      lapack_int(n));
  if (info != 0) {
    throw Error("SVD failed with info=" + std::to_string(info));
  }
  SquareMatrix m;
  m.n = n;
  m.a.assign(std::size_t(n) * n, 0.0);
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, blasint(n),
              blasint(n), blasint(n), 1.0, u.data(), blasint(n), vt.data(),
              blasint(n), 0.0, m.a.data(), blasint(n));
  return m;
}

}  // namespace detail

// Process-wide MBAT base matrix: U(0,1) entries orthonormalized by SVD,
// cached per (seed, dim). Shared read-only once built.
class MbatBasis {
 public:
  static const SquareMatrix& get(std::uint64_t seed, std::uint32_t dim) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::uint32_t>,
                    std::unique_ptr<SquareMatrix>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(seed, dim);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    SeededRng rng(seed, {0x4d424154ULL, dim});  // "MBAT" stream
    std::vector<double> x(std::size_t(dim) * dim);
    for (double& v : x) v = rng.uniform();
    auto m = std::make_unique<SquareMatrix>(
        detail::orthonormalize_svd(std::move(x), dim));
    return *cache.emplace(key, std::move(m)).first->second;
  }
};

// y = M x  (row-major dgemv)
inline void matvec(const SquareMatrix& m, const double* x, double* y,
                   bool transpose = false) {
  cblas_dgemv(CblasRowMajor, transpose ? CblasTrans : CblasNoTrans,
              blasint(m.n), blasint(m.n), 1.0, m.a.data(), blasint(m.n), x, 1,
              0.0, y, 1);
}

}  // namespace hdc
