#pragma once

#include "boundary.hpp"

namespace halfspace {

enum class NormVariant { hs_boundary, hs_dual, h12_00, besov_time, lebesgue, sobolev_volume };

// Norm selector used by the report files.
struct NormSpec {
    double s = 0.0;
    NormVariant variant = NormVariant::hs_boundary;
    double p = 2.0;  // besov-time / lebesgue outer exponent
    double q = 2.0;  // lebesgue inner exponent

    void validate() const {
        if (s < 0.0 || s > 2.0) throw domain_error("NormSpec: s must lie in [0,2]");
        if (variant == NormVariant::h12_00 && s != 0.5)
            throw domain_error("NormSpec: H12-00 requires s = 1/2");
    }
};

namespace detail {

// Fixed-order weighted frequency sum over the boundary grid:
// sum_{k,m} weight(|xi|^2, delta) |g^|^2 * dxi^{d-1} ddelta.
template <class W>
double boundary_weighted_sum(const BoundaryField& ghat, W&& weight) {
    const Grid& gr = ghat.grid;
    const std::size_t nx = gr.n_xmodes();
    std::vector<double> partial(nx);
    for (std::size_t kf = 0; kf < nx; ++kf) {
        double xi2 = xi_norm2_of_flat(gr, kf);
        std::vector<double> line(gr.Nt);
        for (int m = 0; m < gr.Nt; ++m)
            line[m] = weight(xi2, gr.delta(m)) * std::norm(ghat.at(kf, m));
        partial[kf] = pairwise_sum(line);
    }
    double cell = gr.ddelta();
    for (int a = 0; a < gr.n_tangential(); ++a) cell *= gr.dxi();
    return pairwise_sum(partial) * cell;
}

inline BoundaryField as_frequency(const BoundaryField& g) {
    if (g.rep == Rep::frequency) return g;
    if (g.rep == Rep::physical) return transformed(g, Direction::forward);
    return semidiscrete_to_frequency(g);
}

}  // namespace detail

// H^s boundary norm: weight (1 + |xi|^2 + |delta|)^s sqrt||xi|^2 + delta|,
// evaluated on the offset grid (never on the paraboloid).
inline double hs_boundary_norm(const BoundaryField& g, double s) {
    g.require_finite("hs_boundary_norm");
    BoundaryField ghat = detail::as_frequency(g);
    double v = detail::boundary_weighted_sum(ghat, [s](double xi2, double d) {
        return std::pow(1.0 + xi2 + std::abs(d), s) * std::sqrt(std::abs(xi2 + d));
    });
    return std::sqrt(v);
}

// Dual norm: weight (1 + |xi|^2 + |delta|)^{-s} / sqrt||xi|^2 + delta|.
inline double hs_dual_norm(const BoundaryField& g, double s) {
    g.require_finite("hs_dual_norm");
    BoundaryField ghat = detail::as_frequency(g);
    double v = detail::boundary_weighted_sum(ghat, [s](double xi2, double d) {
        return std::pow(1.0 + xi2 + std::abs(d), -s) / std::sqrt(std::abs(xi2 + d));
    });
    return std::sqrt(v);
}

// Equivalent Bourgain-type norm: weight sqrt||xi|^2+delta| (1+|delta|^s+|xi|^{2s}).
// The ratio to hs_boundary_norm stays within [1/4, 4] for s in [0,2].
inline double bourgain_norm(const BoundaryField& g, double s) {
    g.require_finite("bourgain_norm");
    BoundaryField ghat = detail::as_frequency(g);
    double v = detail::boundary_weighted_sum(ghat, [s](double xi2, double d) {
        return std::sqrt(std::abs(xi2 + d)) *
               (1.0 + std::pow(std::abs(d), s) + std::pow(xi2, s));
    });
    return std::sqrt(v);
}

// L2 duality pairing <g, g'> = iint g^ conj(g'^) ddelta dxi.
inline cx duality_pairing(const BoundaryField& g, const BoundaryField& gp) {
    require_same_grid(g.grid, gp.grid, "duality_pairing");
    BoundaryField a = detail::as_frequency(g), b = detail::as_frequency(gp);
    const Grid& gr = g.grid;
    std::vector<cx> partial(gr.n_xmodes());
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        cx s{};
        for (int m = 0; m < gr.Nt; ++m) s += a.at(kf, m) * std::conj(b.at(kf, m));
        partial[kf] = s;
    }
    double cell = gr.ddelta();
    for (int ax = 0; ax < gr.n_tangential(); ++ax) cell *= gr.dxi();
    return pairwise_sum(partial) * cell;
}

// H^sigma norm of a function of x given by frequency coefficients over the
// tangential modes (Plancherel measure dxi/(2pi) per axis).
inline double hsigma_x_norm(const Grid& g, const std::vector<cx>& xhat, double sigma) {
    if (xhat.size() != g.n_xmodes()) throw structural_error("hsigma_x_norm: size mismatch");
    std::vector<double> terms(xhat.size());
    for (std::size_t kf = 0; kf < xhat.size(); ++kf) {
        double xi2 = xi_norm2_of_flat(g, kf);
        terms[kf] = std::pow(1.0 + xi2, sigma) * std::norm(xhat[kf]);
    }
    double cell = 1.0;
    for (int a = 0; a < g.n_tangential(); ++a) cell *= g.dxi() / (2.0 * pi);
    return std::sqrt(pairwise_sum(terms) * cell);
}

inline double l2_x_norm(const Grid& g, const std::vector<cx>& xhat) {
    return hsigma_x_norm(g, xhat, 0.0);
}

// Mixed norm ||u||_{L^p_t L^q_{x,y}} with cell measures; p or q = inf -> max.
inline double lpq_norm(const SampledField& u, double p, double q) {
    u.require_tag(DomainTag::volume_spacetime, "lpq_norm");
    if (u.rep != Rep::physical) throw structural_error("lpq_norm: expects physical representation");
    const Grid& g = u.grid;
    const bool pinf = std::isinf(p), qinf = std::isinf(q);
    if (!pinf && p < 1.0) throw domain_error("lpq_norm: p >= 1 required");
    if (!qinf && q < 1.0) throw domain_error("lpq_norm: q >= 1 required");
    double cell_xy = g.dy();
    for (int a = 0; a < g.n_tangential(); ++a) cell_xy *= g.dx();
    const std::size_t nxy = g.n_snapshot();
    std::vector<double> slice(g.Nt, 0.0);
    std::vector<double> acc(nxy);
    for (int n = 0; n < g.Nt; ++n) {
        for (std::size_t s = 0; s < nxy; ++s) {
            double a = std::abs(u.v[s * g.Nt + n]);
            acc[s] = qinf ? a : std::pow(a, q);
        }
        slice[n] = qinf ? *std::max_element(acc.begin(), acc.end())
                        : std::pow(pairwise_sum(acc) * cell_xy, 1.0 / q);
    }
    if (pinf) return *std::max_element(slice.begin(), slice.end());
    for (double& v : slice) v = std::pow(v, p);
    return std::pow(pairwise_sum(slice) * g.dt(), 1.0 / p);
}

// L^q norm over (x, y) of one time slice.
inline double lq_slice_norm(const SampledField& u, int n, double q) {
    const Grid& g = u.grid;
    double cell_xy = g.dy();
    for (int a = 0; a < g.n_tangential(); ++a) cell_xy *= g.dx();
    const std::size_t nxy = g.n_snapshot();
    std::vector<double> acc(nxy);
    if (std::isinf(q)) {
        double m = 0;
        for (std::size_t s = 0; s < nxy; ++s) m = std::max(m, std::abs(u.v[s * g.Nt + n]));
        return m;
    }
    for (std::size_t s = 0; s < nxy; ++s) acc[s] = std::pow(std::abs(u.v[s * g.Nt + n]), q);
    return std::pow(pairwise_sum(acc) * cell_xy, 1.0 / q);
}

// Full-space Sobolev norm of a designated extension given by its (x, y_full)
// frequency coefficients: (1 + |xi|^2 + eta^2)^s weight.
inline double sobolev_full_norm(const Grid& g, const std::vector<cx>& full_hat, double s) {
    const std::size_t nx = g.n_xmodes();
    const int nyf = g.ny_full();
    if (full_hat.size() != nx * static_cast<std::size_t>(nyf))
        throw structural_error("sobolev_full_norm: size mismatch");
    std::vector<double> partial(nx);
    for (std::size_t kf = 0; kf < nx; ++kf) {
        double xi2 = xi_norm2_of_flat(g, kf);
        std::vector<double> line(nyf);
        for (int r = 0; r < nyf; ++r) {
            double eta = g.eta(r);
            line[r] = std::pow(1.0 + xi2 + eta * eta, s) * std::norm(full_hat[kf * nyf + r]);
        }
        partial[kf] = pairwise_sum(line);
    }
    double cell = (2.0 * pi / (2.0 * g.Ly)) / (2.0 * pi);
    for (int a = 0; a < g.n_tangential(); ++a) cell *= g.dxi() / (2.0 * pi);
    return std::sqrt(pairwise_sum(partial) * cell);
}

}  // namespace halfspace
