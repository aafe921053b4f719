#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace effidx::fft {

namespace detail {

// FFTW's planner is not re-entrant; plan execution is.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

}  // namespace detail

/// Unnormalized forward DFT, X_k = sum_t x_t exp(-2 pi i k t / n).
inline std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(x.size());
    if (x.empty()) return out;
    detail::Plan plan;
    {
        std::lock_guard lock(detail::planner_mutex());
        plan.reset(fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                    FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    return out;
}

/// Forward DFT of real input; returns bins 0..n/2.
inline std::vector<std::complex<double>> forward_real(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(x.size() / 2 + 1);
    if (x.empty()) return {};
    detail::Plan plan;
    {
        std::lock_guard lock(detail::planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    return out;
}

}  // namespace effidx::fft
