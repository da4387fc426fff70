#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace halfspace {

using cx = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr cx iu{0.0, 1.0};

// Structural problems: shape mismatches, malformed files, bad indices.
struct structural_error : std::runtime_error {
    explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A solver precondition (compatibility, data class) failed.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Boundary symbol is singular (Kreiss-Lopatinskii failure) at some point.
struct singular_symbol_error : std::runtime_error {
    explicit singular_symbol_error(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature or iteration failed to reach its accuracy target.
struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// Picard iteration did not contract.
struct non_contraction_error : std::runtime_error {
    double factor;
    non_contraction_error(const std::string& what, double f)
        : std::runtime_error(what), factor(f) {}
};

struct unsupported_symbol_error : std::runtime_error {
    explicit unsupported_symbol_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Pairwise (cascade) summation: fixed order, error O(log n) ulps.
// Used for every norm reduction so results do not depend on chunking.
template <class T>
T pairwise_sum(const T* v, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

namespace detail {
inline int& thread_cap_ref() {
    static int cap = 1;
    return cap;
}
}  // namespace detail

// Worker cap for internal parallel loops (CLI --threads). Default 1.
inline void set_thread_cap(int n) { detail::thread_cap_ref() = n < 1 ? 1 : n; }
inline int thread_cap() { return detail::thread_cap_ref(); }

// Chunked parallel loop. Results must not depend on the schedule, so
// callers reduce per-index into preallocated slots and combine serially.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    int nt = thread_cap();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    nt = static_cast<int>(std::min<std::size_t>(nt, n));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace halfspace
