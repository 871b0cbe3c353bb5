#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace flavors {

/// Real-to-complex DFT of fixed length backed by FFTW.
///
/// forward() returns the N/2 + 1 non-negative modes of a_m = (1/N) sum_j v_j e^{-2 pi i m j / N},
/// so that v_j = sum_m a_m e^{2 pi i m j / N} with a_{N-m} = conj(a_m). inverse()
/// undoes it. Not safe to share one instance across threads; separate
/// instances are.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();

    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    RealFft(RealFft&& other) noexcept;
    RealFft& operator=(RealFft&& other) noexcept;

    std::size_t size() const { return n_; }

    void forward(std::span<const double> in, std::span<std::complex<double>> out);
    void inverse(std::span<const std::complex<double>> in, std::span<double> out);

private:
    void release() noexcept;

    std::size_t n_ = 0;
    double* real_ = nullptr;
    void* spectrum_ = nullptr;  // fftw_complex*
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

/// Keeps Fourier modes |m| <= max_mode of a periodic sample vector.
std::vector<double> low_pass(std::span<const double> values, std::size_t max_mode);

}  // namespace flavors
