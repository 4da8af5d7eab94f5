#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nsb/errors.hpp"

namespace nsb {

/// Complex 1-D DFT of fixed length backed by FFTW.
///
/// Forward uses exp(-2 pi i j k / n) and no scaling; `inverse` divides by n so
/// that inverse(forward(x)) == x. Plans are created with FFTW_ESTIMATE, which
/// keeps results deterministic run to run. Plan creation is not thread-safe;
/// execution on distinct objects is.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    if (n == 0) throw InputError("FFT length must be positive");
    in_.reset(fftw_alloc_complex(n));
    out_.reset(fftw_alloc_complex(n));
    forward_.reset(fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_FORWARD,
                                    FFTW_ESTIMATE));
    backward_.reset(fftw_plan_dft_1d(static_cast<int>(n), in_.get(), out_.get(),
                                     FFTW_BACKWARD, FFTW_ESTIMATE));
  }

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const {
    run(forward_.get(), x, y, 1.0);
  }

  void inverse(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const {
    run(backward_.get(), x, y, 1.0 / static_cast<double>(n_));
  }

 private:
  struct FreeBuffer {
    void operator()(fftw_complex* p) const { fftw_free(p); }
  };
  struct DestroyPlan {
    void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
  };
  using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, DestroyPlan>;

  void run(fftw_plan plan, std::span<const std::complex<double>> x,
           std::span<std::complex<double>> y, double scale) const {
    if (x.size() != n_ || y.size() != n_) throw InputError("FFT length mismatch");
    auto* in = reinterpret_cast<std::complex<double>*>(in_.get());
    auto* out = reinterpret_cast<std::complex<double>*>(out_.get());
    std::copy(x.begin(), x.end(), in);
    fftw_execute(plan);
    for (std::size_t i = 0; i < n_; ++i) y[i] = scale * out[i];
  }

  std::size_t n_;
  std::unique_ptr<fftw_complex, FreeBuffer> in_;
  std::unique_ptr<fftw_complex, FreeBuffer> out_;
  Plan forward_;
  Plan backward_;
};

/// Signed wavenumber index of DFT bin j: 0, 1, ..., n/2, -(n/2 - 1), ..., -1.
inline long long signed_mode_index(std::size_t j, std::size_t n) {
  const auto jj = static_cast<long long>(j);
  const auto nn = static_cast<long long>(n);
  return jj <= nn / 2 ? jj : jj - nn;
}

}  // namespace nsb
