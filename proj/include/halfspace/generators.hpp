#pragma once

#include <random>

#include "field.hpp"

namespace halfspace {

// Gaussian factor a(x) = exp(i k (x - c)) exp(-(x - c)^2 / (2 sigma^2)).
struct Gaussian1D {
    double center = 0.0;
    double sigma = 1.0;
    double momentum = 0.0;

    cx sample(double x) const {
        double u = x - center;
        return std::exp(cx{-u * u / (2.0 * sigma * sigma), momentum * u});
    }
    // int a(x) e^{-i k x} dx
    cx transform(double k) const {
        double km = k - momentum;
        return sigma * std::sqrt(2.0 * pi) *
               std::exp(cx{-sigma * sigma * km * km / 2.0, -k * center});
    }
    // rescale x -> lambda x (one power of the anisotropic scaling)
    Gaussian1D scaled(double lambda) const {
        return {center / lambda, sigma / lambda, momentum * lambda};
    }
};

// Separable space-time boundary packet g(x, t) = amp prod_a gx[a](x_a) gt(t).
struct BoundaryPacket {
    cx amp{1.0, 0.0};
    std::array<Gaussian1D, 2> gx{};
    Gaussian1D gt{};

    BoundaryField sample(const Grid& g) const {
        BoundaryField f(g, Rep::physical);
        const int nxa = g.n_tangential();
        std::vector<cx> tvals(g.Nt);
        for (int n = 0; n < g.Nt; ++n) tvals[n] = gt.sample(g.t_pos(n));
        std::array<int, 2> ix{0, 0};
        for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf) {
            std::size_t rem = kf;
            for (int a = nxa - 1; a >= 0; --a) {
                ix[a] = static_cast<int>(rem % g.Nx);
                rem /= g.Nx;
            }
            cx xv = amp;
            for (int a = 0; a < nxa; ++a) xv *= gx[a].sample(g.x_pos(ix[a]));
            for (int n = 0; n < g.Nt; ++n) f.at(kf, n) = xv * tvals[n];
        }
        return f;
    }

    // anisotropic rescaling g_lambda(x,t) = lambda^{d/2} g(lambda x, lambda^2 t)
    BoundaryPacket scaled(double lambda, int d) const {
        BoundaryPacket p = *this;
        p.amp = amp * std::pow(lambda, 0.5 * d);
        for (auto& a : p.gx) a = a.scaled(lambda);
        p.gt = gt.scaled(lambda * lambda);
        return p;
    }
};

// Volume packet u(x, y[, t]) = amp prod gx[a](x_a) gy(y) [gt(t)].
struct VolumePacket {
    cx amp{1.0, 0.0};
    std::array<Gaussian1D, 2> gx{};
    Gaussian1D gy{};
    Gaussian1D gt{};

    SampledField snapshot(const Grid& g, YExtension ext = YExtension::zero) const {
        SampledField f(g, DomainTag::volume_snapshot);
        f.ext = ext;
        const int nxa = g.n_tangential();
        std::array<int, 2> ix{0, 0};
        for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf) {
            std::size_t rem = kf;
            for (int a = nxa - 1; a >= 0; --a) {
                ix[a] = static_cast<int>(rem % g.Nx);
                rem /= g.Nx;
            }
            cx xv = amp;
            for (int a = 0; a < nxa; ++a) xv *= gx[a].sample(g.x_pos(ix[a]));
            for (int j = 0; j < g.Ny; ++j) f.ats(kf, j) = xv * gy.sample(g.y_pos(j));
        }
        return f;
    }

    SampledField spacetime(const Grid& g) const {
        SampledField f(g, DomainTag::volume_spacetime);
        const int nxa = g.n_tangential();
        std::array<int, 2> ix{0, 0};
        std::vector<cx> tv(g.Nt), yv(g.Ny);
        for (int n = 0; n < g.Nt; ++n) tv[n] = gt.sample(g.t_pos(n));
        for (int j = 0; j < g.Ny; ++j) yv[j] = gy.sample(g.y_pos(j));
        for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf) {
            std::size_t rem = kf;
            for (int a = nxa - 1; a >= 0; --a) {
                ix[a] = static_cast<int>(rem % g.Nx);
                rem /= g.Nx;
            }
            cx xv = amp;
            for (int a = 0; a < nxa; ++a) xv *= gx[a].sample(g.x_pos(ix[a]));
            for (int j = 0; j < g.Ny; ++j)
                for (int n = 0; n < g.Nt; ++n) f.at(kf, j, n) = xv * yv[j] * tv[n];
        }
        return f;
    }

    VolumePacket scaled(double lambda, int d) const {
        VolumePacket p = *this;
        p.amp = amp * std::pow(lambda, 0.5 * d);
        for (auto& a : p.gx) a = a.scaled(lambda);
        p.gy = gy.scaled(lambda);
        p.gt = gt.scaled(lambda * lambda);
        return p;
    }
};

// Unit coefficient on a single frequency slot (boundary data).
inline BoundaryField single_mode_boundary(const Grid& g, std::size_t xflat, int m_slot,
                                          cx coeff = cx{1.0, 0.0}) {
    if (xflat >= g.n_xmodes() || m_slot < 0 || m_slot >= g.Nt)
        throw structural_error("single_mode_boundary: slot out of range");
    BoundaryField f(g, Rep::frequency);
    f.at(xflat, m_slot) = coeff;
    return f;
}

// Nearest frequency slots to (xi0, delta0).
inline std::pair<int, int> nearest_mode(const Grid& g, double xi0, double delta0) {
    int k = static_cast<int>(std::lround(xi0 / g.dxi() - g.offset_x)) + g.Nx / 2;
    int m = static_cast<int>(std::lround(delta0 / g.ddelta() - g.offset_t)) + g.Nt / 2;
    k = std::clamp(k, 0, g.Nx - 1);
    m = std::clamp(m, 0, g.Nt - 1);
    return {k, m};
}

// Random mixture of boundary packets whose traces and tails stay inside the
// window: moderate widths, centers in the first half of the t >= 0 range.
inline std::vector<BoundaryPacket> random_boundary_mixture(const Grid& g, int count,
                                                           std::uint64_t seed) {
    std::mt19937_64 r(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<BoundaryPacket> out;
    for (int i = 0; i < count; ++i) {
        BoundaryPacket p;
        p.amp = std::polar(0.5 + u01(r), 2.0 * pi * u01(r));
        for (int a = 0; a < g.n_tangential(); ++a) {
            p.gx[a].center = (u01(r) - 0.5) * 0.2 * g.Lx;
            p.gx[a].sigma = 0.6 + 0.9 * u01(r);
            p.gx[a].momentum = (u01(r) - 0.5) * 3.0;
        }
        p.gt.center = 0.15 * g.Lt + 0.15 * g.Lt * u01(r);
        p.gt.sigma = 0.5 + 0.6 * u01(r);
        p.gt.momentum = (u01(r) - 0.5) * 4.0;
        out.push_back(p);
    }
    return out;
}

inline BoundaryField sample_mixture(const Grid& g, const std::vector<BoundaryPacket>& ps) {
    BoundaryField f(g, Rep::physical);
    for (const auto& p : ps) {
        BoundaryField s = p.sample(g);
        for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] += s.v[i];
    }
    return f;
}

// Random mixture of directed volume packets (snapshots): every packet moves
// toward the boundary with sigma * |momentum| large enough that its trace
// decays superalgebraically inside the window.
inline std::vector<VolumePacket> random_directed_snapshots(const Grid& g, int count,
                                                           std::uint64_t seed) {
    std::mt19937_64 r(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<VolumePacket> out;
    for (int i = 0; i < count; ++i) {
        VolumePacket p;
        p.amp = std::polar(0.5 + u01(r), 2.0 * pi * u01(r));
        for (int a = 0; a < g.n_tangential(); ++a) {
            p.gx[a].center = (u01(r) - 0.5) * 0.15 * g.Lx;
            p.gx[a].sigma = 0.8 + 0.8 * u01(r);
            p.gx[a].momentum = (u01(r) - 0.5) * 2.0;
        }
        p.gy.sigma = 0.7 + 0.4 * u01(r);
        p.gy.center = 0.35 * g.Ly + 0.15 * g.Ly * u01(r);
        p.gy.momentum = -(6.5 + 2.0 * u01(r)) / p.gy.sigma;  // toward the wall
        out.push_back(p);
    }
    return out;
}

inline SampledField sample_snapshot_mixture(const Grid& g, const std::vector<VolumePacket>& ps,
                                            YExtension ext = YExtension::zero) {
    SampledField f(g, DomainTag::volume_snapshot);
    f.ext = ext;
    for (const auto& p : ps) {
        SampledField s = p.snapshot(g);
        for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] += s.v[i];
    }
    return f;
}

}  // namespace halfspace
