#pragma once

#include <functional>
#include <optional>
#include <random>

#include "roots.hpp"
#include "transform.hpp"

namespace halfspace {

enum class TimeDirection { forward, backward };

// Boundary operator symbol B(a,b) ~ b1(xi,tau) a^ + b2(xi,tau) b^ with the
// anisotropic homogeneity b1(l xi, l^2 tau) = b1, b2(l xi, l^2 tau) = b2 / l.
// Symbols in this class depend on xi through |xi|; evaluators receive |xi|.
struct BoundarySymbol {
    std::string name;
    std::function<cx(double xi_abs, cx tau)> b1;
    std::function<cx(double xi_abs, cx tau)> b2;

    static BoundarySymbol dirichlet() {
        return {"dirichlet", [](double, cx) { return cx{1.0, 0.0}; },
                [](double, cx) { return cx{0.0, 0.0}; }};
    }
    static BoundarySymbol neumann() {
        return {"neumann", [](double, cx) { return cx{0.0, 0.0}; },
                [](double xi, cx tau) { return 1.0 / sqrt_minus(xi * xi - iu * tau); }};
    }
    static BoundarySymbol transparent() {
        return {"transparent", [](double, cx) { return cx{1.0, 0.0}; },
                [](double xi, cx tau) { return -1.0 / sqrt_minus(xi * xi - iu * tau); }};
    }
};

// Stable eigenvector V- = (1, -sqrt(|xi|^2 - i tau)); the backward problem
// uses the sqrt_plus branch.
inline std::pair<cx, cx> stable_eigenvector(double xi_abs, cx tau,
                                            TimeDirection dir = TimeDirection::forward) {
    if (dir == TimeDirection::forward && tau.real() < 0.0)
        throw domain_error("stable_eigenvector: forward direction needs Re tau >= 0");
    if (dir == TimeDirection::backward && tau.real() > 0.0)
        throw domain_error("stable_eigenvector: backward direction needs Re tau <= 0");
    cx z = xi_abs * xi_abs - iu * tau;
    cx r = dir == TimeDirection::forward ? sqrt_minus(z) : sqrt_plus(z);
    return {cx{1.0, 0.0}, -r};
}

// b . V- at a sample point; nullopt marks an excluded (singular) evaluation.
inline std::optional<cx> symbol_dot_stable(const BoundarySymbol& b, double xi_abs, cx tau,
                                           TimeDirection dir) {
    cx z = xi_abs * xi_abs - iu * tau;
    cx root = dir == TimeDirection::forward ? sqrt_minus(z) : sqrt_plus(z);
    cx b1, b2;
    try {
        b1 = b.b1(xi_abs, tau);
        b2 = b.b2(xi_abs, tau);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    cx v = b1 - b2 * root;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
    return v;
}

struct KLSampleSpec {
    int n_log_xi = 40;         // log-uniform |xi| in [1e-3, 1e3]
    int n_delta_ratio = 81;    // delta/|xi|^2 in [-1e3, 1e3], symmetric log spacing
    std::vector<double> gamma_ratios{0.0, 1e-3, 1.0, 1e3};  // gamma/|xi|^2
    int n_random = 10000;
    std::uint64_t seed = 20250809;
    bool include_xi_zero = true;
};

struct KLWitness {
    double xi_abs = 0, delta = 0, gamma = 0;
};

// Sampled two-sided Kreiss-Lopatinskii margin of |b . V-|.
struct KLReport {
    double alpha_hat = 0;  // estimated infimum
    double beta_hat = 0;   // estimated supremum
    KLWitness witness_min;
    std::size_t n_samples = 0;
    std::size_t n_excluded = 0;
    bool excluded_flag = false;  // more than 1% exclusions
    TimeDirection direction = TimeDirection::forward;
};

inline KLReport kl_margin(const BoundarySymbol& sym, const KLSampleSpec& spec,
                          TimeDirection dir = TimeDirection::forward) {
    KLReport rep;
    rep.direction = dir;
    rep.alpha_hat = std::numeric_limits<double>::infinity();
    rep.beta_hat = 0.0;
    const double gsign = dir == TimeDirection::forward ? 1.0 : -1.0;

    auto probe = [&](double xi_abs, double delta, double gamma) {
        ++rep.n_samples;
        auto v = symbol_dot_stable(sym, xi_abs, cx{gamma, delta}, dir);
        if (!v) {
            ++rep.n_excluded;
            return;
        }
        double a = std::abs(*v);
        if (a < rep.alpha_hat) {
            rep.alpha_hat = a;
            rep.witness_min = {xi_abs, delta, gamma};
        }
        rep.beta_hat = std::max(rep.beta_hat, a);
    };

    // Structured scan in the reduced variables (delta/|xi|^2, gamma/|xi|^2),
    // symmetric log spacing over +-[1e-3, 1e3] plus the ratio 0.
    const int half = spec.n_delta_ratio / 2;
    auto delta_ratio = [&](int j) {
        if (j == half) return 0.0;
        int k = (j < half ? half - j : j - half) - 1;
        double mag = std::pow(10.0, -3.0 + 6.0 * k / std::max(1, half - 1));
        return j < half ? -mag : mag;
    };
    for (int i = 0; i < spec.n_log_xi; ++i) {
        double xi = std::pow(10.0, -3.0 + 6.0 * i / std::max(1, spec.n_log_xi - 1));
        double xi2 = xi * xi;
        for (int j = 0; j < 2 * half + 1; ++j)
            for (double gr : spec.gamma_ratios) probe(xi, delta_ratio(j) * xi2, gsign * gr * xi2);
    }
    if (spec.include_xi_zero) {
        for (int j = 1; j <= 64; ++j) {
            double mag = std::pow(10.0, -4.0 + 8.0 * (j - 1) / 63.0);
            for (double g : {0.0, 1e-3, 1.0}) {
                probe(0.0, mag, gsign * g);
                probe(0.0, -mag, gsign * g);
            }
        }
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < spec.n_random; ++i) {
        double xi = std::pow(10.0, -3.0 + 6.0 * u01(rng));
        double dr = (u01(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -3.0 + 6.0 * u01(rng));
        double gr = u01(rng) < 0.25 ? 0.0 : std::pow(10.0, -3.0 + 6.0 * u01(rng));
        probe(xi, dr * xi * xi, gsign * gr * xi * xi);
    }
    rep.excluded_flag = rep.n_excluded * 100 > rep.n_samples;
    if (!std::isfinite(rep.alpha_hat)) rep.alpha_hat = 0.0;
    return rep;
}

// Divisor (b . V-)(xi_k, i delta_m) on the offset grid, gamma -> 0+ limit.
inline cx lopatinskii_divisor(const BoundarySymbol& sym, double xi_abs, double delta,
                              TimeDirection dir = TimeDirection::forward) {
    cx tau{0.0, delta};
    cx b1 = sym.b1(xi_abs, tau);
    cx b2 = sym.b2(xi_abs, tau);
    double w = xi_abs * xi_abs + delta;
    cx root = dir == TimeDirection::forward ? sqrt_symbol_limit(w) : sqrt_symbol_limit_backward(w);
    return b1 - b2 * root;
}

// |xi|^2 of the tangential multi-index behind a flat x-mode index.
inline double xi_norm2_of_flat(const Grid& g, std::size_t kf) {
    double xi2 = 0.0;
    std::size_t rem = kf;
    for (int a = g.n_tangential() - 1; a >= 0; --a) {
        int u = static_cast<int>(rem % g.Nx);
        rem /= g.Nx;
        double x = g.xi(u);
        xi2 += x * x;
    }
    return xi2;
}

// g^ -> g^ / (b . V-) pointwise on the offset frequency grid.
inline BoundaryField divide_by_lopatinskii(const BoundaryField& g, const BoundarySymbol& sym,
                                           TimeDirection dir = TimeDirection::forward) {
    if (g.rep != Rep::frequency)
        throw structural_error("divide_by_lopatinskii: expects frequency representation");
    BoundaryField out = g;
    const Grid& gr = g.grid;
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        double xi_abs = std::sqrt(xi_norm2_of_flat(gr, kf));
        for (int m = 0; m < gr.Nt; ++m) {
            cx q = lopatinskii_divisor(sym, xi_abs, gr.delta(m), dir);
            if (std::abs(q) < 1e-10)
                throw singular_symbol_error("divide_by_lopatinskii: |b.V-| < 1e-10 at xi=" +
                                            std::to_string(xi_abs) + ", delta=" +
                                            std::to_string(gr.delta(m)));
            out.at(kf, m) /= q;
        }
    }
    return out;
}

// Inverse of divide_by_lopatinskii (round-trip checks).
inline BoundaryField multiply_by_lopatinskii(const BoundaryField& g, const BoundarySymbol& sym,
                                             TimeDirection dir = TimeDirection::forward) {
    if (g.rep != Rep::frequency)
        throw structural_error("multiply_by_lopatinskii: expects frequency representation");
    BoundaryField out = g;
    const Grid& gr = g.grid;
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        double xi_abs = std::sqrt(xi_norm2_of_flat(gr, kf));
        for (int m = 0; m < gr.Nt; ++m)
            out.at(kf, m) *= lopatinskii_divisor(sym, xi_abs, gr.delta(m), dir);
    }
    return out;
}

}  // namespace halfspace
