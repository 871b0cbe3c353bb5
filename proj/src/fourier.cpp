#include "flavors/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <utility>

#include "flavors/errors.hpp"

namespace flavors {

namespace {

// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
    if (n == 0) throw InvalidArgument("transform length must be positive");
    std::lock_guard lock(planner_mutex());
    real_ = fftw_alloc_real(n);
    auto* spectrum = fftw_alloc_complex(n / 2 + 1);
    spectrum_ = spectrum;
    const int len = static_cast<int>(n);
    forward_plan_ = fftw_plan_dft_r2c_1d(len, real_, spectrum, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_1d(len, spectrum, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      spectrum_(std::exchange(other.spectrum_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
    if (this != &other) {
        release();
        n_ = std::exchange(other.n_, 0);
        real_ = std::exchange(other.real_, nullptr);
        spectrum_ = std::exchange(other.spectrum_, nullptr);
        forward_plan_ = std::exchange(other.forward_plan_, nullptr);
        inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
    }
    return *this;
}

void RealFft::release() noexcept {
    if (!real_) return;
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
    fftw_free(real_);
    fftw_free(spectrum_);
    real_ = nullptr;
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
    if (in.size() != n_ || out.size() != n_ / 2 + 1) throw InvalidArgument("RealFft::forward size mismatch");
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(static_cast<fftw_plan>(forward_plan_));
    const auto* spec = static_cast<const fftw_complex*>(spectrum_);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = {spec[m][0] * scale, spec[m][1] * scale};
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
    if (in.size() != n_ / 2 + 1 || out.size() != n_) throw InvalidArgument("RealFft::inverse size mismatch");
    auto* spec = static_cast<fftw_complex*>(spectrum_);
    for (std::size_t m = 0; m < in.size(); ++m) {
        spec[m][0] = in[m].real();
        spec[m][1] = in[m].imag();
    }
    fftw_execute(static_cast<fftw_plan>(inverse_plan_));
    std::copy(real_, real_ + n_, out.begin());
}

std::vector<double> low_pass(std::span<const double> values, std::size_t max_mode) {
    RealFft fft(values.size());
    std::vector<std::complex<double>> modes(values.size() / 2 + 1);
    fft.forward(values, modes);
    for (std::size_t m = max_mode + 1; m < modes.size(); ++m) modes[m] = 0.0;
    std::vector<double> out(values.size());
    fft.inverse(modes, out);
    return out;
}

}  // namespace flavors
