#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace hdc::fft {

namespace detail {

// FFTW plan creation is not thread-safe; execution on private buffers is.
// Plans use FFTW_ESTIMATE so planning is deterministic and cheap.
class Plans {
 public:
  static Plans& instance() {
    static Plans p;
    return p;
  }

  struct SizePlans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
  };

  SizePlans& get(std::uint32_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    SizePlans sp;
    std::vector<double> re(n);
    std::vector<fftw_complex> cx(n / 2 + 1);
    sp.r2c = fftw_plan_dft_r2c_1d(int(n), re.data(), cx.data(),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    sp.c2r = fftw_plan_dft_c2r_1d(int(n), cx.data(), re.data(),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(n, sp).first->second;
  }

 private:
  Plans() = default;
  std::mutex mu_;
  std::map<std::uint32_t, SizePlans> plans_;
};

}  // namespace detail

inline std::vector<std::complex<double>> forward(const std::vector<double>& x) {
  const auto n = std::uint32_t(x.size());
  auto& sp = detail::Plans::instance().get(n);
  std::vector<double> in(x);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(sp.r2c, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

inline std::vector<double> inverse(std::vector<std::complex<double>> spec,
                                   std::uint32_t n) {
  auto& sp = detail::Plans::instance().get(n);
  std::vector<double> out(n);
  fftw_execute_dft_c2r(sp.c2r, reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  for (double& v : out) v /= double(n);
  return out;
}

// Circular convolution: c_j = sum_k b_k * a_{(j-k) mod n}.
inline std::vector<double> circular_convolve(const std::vector<double>& a,
                                             const std::vector<double>& b) {
  auto fa = forward(a);
  const auto fb = forward(b);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  return inverse(std::move(fa), std::uint32_t(a.size()));
}

// Circular correlation: a_j = sum_k b_k * c_{(k+j) mod n}.
inline std::vector<double> circular_correlate(const std::vector<double>& b,
                                              const std::vector<double>& c) {
  auto fb = forward(b);
  const auto fc = forward(c);
  for (std::size_t i = 0; i < fb.size(); ++i) fb[i] = std::conj(fb[i]) * fc[i];
  return inverse(std::move(fb), std::uint32_t(b.size()));
}

// Phase angles of the full DFT spectrum of a real signal (length n).
inline std::vector<double> dft_phases(const std::vector<double>& x) {
  const auto n = std::uint32_t(x.size());
  const auto half = forward(x);
  std::vector<double> phases(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    const std::complex<double> v =
        k <= n / 2 ? half[k] : std::conj(half[n - k]);
    phases[k] = std::atan2(v.imag(), v.real());
  }
  return phases;
}

}  // namespace hdc::fft
