#pragma once

#include <vector>

#include "core.hpp"

namespace halfspace {

// Iterative radix-2 complex FFT (power-of-two sizes only).
// fft_pow2(v, -1): X_k = sum_n v_n e^{-2pi i k n / N}   (no scaling)
// fft_pow2(v, +1): X_k = sum_n v_n e^{+2pi i k n / N}
class FftPlan {
  public:
    explicit FftPlan(int n) : n_(n) {
        if (!is_pow2(n)) throw structural_error("fft: size must be a power of two");
        tw_.resize(n / 2);
        for (int k = 0; k < n / 2; ++k) {
            double a = -2.0 * pi * k / n;
            tw_[k] = cx{std::cos(a), std::sin(a)};
        }
        rev_.resize(n);
        int lg = 0;
        while ((1 << lg) < n) ++lg;
        for (int i = 0; i < n; ++i) {
            unsigned r = 0;
            for (int b = 0; b < lg; ++b)
                if (i & (1 << b)) r |= 1u << (lg - 1 - b);
            rev_[i] = static_cast<int>(r);
        }
    }

    int size() const { return n_; }

    void run(cx* v, int sign) const {
        const int n = n_;
        for (int i = 0; i < n; ++i) {
            int j = rev_[i];
            if (i < j) std::swap(v[i], v[j]);
        }
        for (int len = 2; len <= n; len <<= 1) {
            const int half = len >> 1;
            const int step = n / len;
            for (int i = 0; i < n; i += len) {
                for (int k = 0; k < half; ++k) {
                    cx w = tw_[k * step];
                    if (sign > 0) w = std::conj(w);
                    cx u = v[i + k];
                    cx t = v[i + k + half] * w;
                    v[i + k] = u + t;
                    v[i + k + half] = u - t;
                }
            }
        }
    }

  private:
    int n_;
    std::vector<cx> tw_;
    std::vector<int> rev_;
};

namespace detail {
// Per-thread plan cache keyed by size (few distinct sizes in practice).
inline const FftPlan& plan_for(int n) {
    thread_local std::vector<std::unique_ptr<FftPlan>> cache;
    for (const auto& p : cache)
        if (p->size() == n) return *p;
    cache.emplace_back(std::make_unique<FftPlan>(n));
    return *cache.back();
}
}  // namespace detail

inline void fft_pow2(cx* v, int n, int sign) { detail::plan_for(n).run(v, sign); }

}  // namespace halfspace
