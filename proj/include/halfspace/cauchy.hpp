#pragma once

#include "timeops.hpp"

namespace halfspace {

// Snapshot on the doubled periodic y-grid [-Ly, Ly), index (x..., y_full),
// y fastest. Workhorse for designated extensions and free propagation.
struct FullSnapshot {
    Grid grid;
    Rep rep = Rep::physical;  // physical or fully transformed (x and y)
    std::vector<cx> v;

    FullSnapshot() = default;
    explicit FullSnapshot(const Grid& g, Rep r = Rep::physical)
        : grid(g), rep(r), v(g.n_xmodes() * static_cast<std::size_t>(g.ny_full()), cx{}) {}

    cx& at(std::size_t xflat, int jfull) { return v[xflat * grid.ny_full() + jfull]; }
    const cx& at(std::size_t xflat, int jfull) const { return v[xflat * grid.ny_full() + jfull]; }
};

namespace detail {

inline void full_snapshot_transform(FullSnapshot& f, Direction dir) {
    const Grid& g = f.grid;
    const auto& ctxy = y_full_ctx(g);
    std::size_t nx = g.n_xmodes();
    apply_axis(f.v, ctxy, nx, 1, [&](std::size_t l) { return l * g.ny_full(); }, dir);
    transform_x_axes(f.v, g, static_cast<std::size_t>(g.ny_full()), dir);
    f.rep = dir == Direction::forward ? Rep::frequency : Rep::physical;
}

}  // namespace detail

// Designated extension of a half-space snapshot to the full line:
//   zero: 0 for y < 0 (data supported in y >= ymin > 0)
//   odd : u(-y) = -u(y) (Dirichlet flow), forces u(0) = 0
//   even: u(-y) = +u(y)
inline FullSnapshot make_full_snapshot(const SampledField& u0) {
    u0.require_tag(DomainTag::volume_snapshot, "make_full_snapshot");
    if (u0.rep != Rep::physical) throw structural_error("make_full_snapshot: physical rep expected");
    const Grid& g = u0.grid;
    FullSnapshot out(g);
    const int ny = g.Ny, nyf = g.ny_full();
    for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf) {
        const cx* half = u0.v.data() + kf * ny;
        cx* full = out.v.data() + kf * nyf;
        for (int j = 0; j < ny; ++j) full[ny + j] = half[j];
        switch (u0.ext) {
            case YExtension::zero:
                break;
            case YExtension::odd:
                full[ny] = cx{};  // y = 0 must vanish
                for (int j = 1; j < ny; ++j) full[ny - j] = -half[j];
                full[0] = cx{};  // y = -Ly wrap point
                break;
            case YExtension::even:
                for (int j = 1; j < ny; ++j) full[ny - j] = half[j];
                break;
        }
    }
    return out;
}

inline SampledField restrict_half(const FullSnapshot& f) {
    if (f.rep != Rep::physical) throw structural_error("restrict_half: physical rep expected");
    const Grid& g = f.grid;
    SampledField out(g, DomainTag::volume_snapshot);
    for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf)
        for (int j = 0; j < g.Ny; ++j) out.ats(kf, j) = f.at(kf, g.Ny + j);
    return out;
}

// e^{it Delta} on the full-space grid: multiplier e^{-it(|xi|^2 + eta^2)}.
inline FullSnapshot propagate_full(const FullSnapshot& u0, double t) {
    FullSnapshot hat = u0;
    if (hat.rep == Rep::physical) detail::full_snapshot_transform(hat, Direction::forward);
    const Grid& g = u0.grid;
    const int nyf = g.ny_full();
    for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf) {
        double xi2 = xi_norm2_of_flat(g, kf);
        cx* line = hat.v.data() + kf * nyf;
        for (int r = 0; r < nyf; ++r) {
            double eta = g.eta(r);
            double ph = -t * (xi2 + eta * eta);
            line[r] *= cx{std::cos(ph), std::sin(ph)};
        }
    }
    detail::full_snapshot_transform(hat, Direction::inverse);
    return hat;
}

// Free propagation sampled on the grid times: u(x, y, t_n) = e^{i t_n Delta} u0,
// restricted to the half space. Unitary in L2 mode by mode.
inline SampledField cauchy_propagate(const FullSnapshot& u0) {
    const Grid& g = u0.grid;
    FullSnapshot hat = u0;
    if (hat.rep == Rep::physical) detail::full_snapshot_transform(hat, Direction::forward);
    SampledField out(g, DomainTag::volume_spacetime);

    const int nyf = g.ny_full(), ny = g.Ny, nt = g.Nt;
    const auto& ctxy = detail::y_full_ctx(g);
    parallel_for(g.n_xmodes(), [&](std::size_t kf) {
        thread_local std::vector<cx> line, scratch;
        line.resize(nyf);
        scratch.resize(nyf);
        double xi2 = xi_norm2_of_flat(g, kf);
        const cx* src = hat.v.data() + kf * nyf;
        for (int n = 0; n < nt; ++n) {
            double t = g.t_pos(n);
            for (int r = 0; r < nyf; ++r) {
                double eta = g.eta(r);
                double ph = -t * (xi2 + eta * eta);
                line[r] = src[r] * cx{std::cos(ph), std::sin(ph)};
            }
            ctxy.inverse(line.data(), scratch.data());
            for (int j = 0; j < ny; ++j) out.at(kf, j, n) = line[ny + j];
        }
    });
    // x back to physical: all (y, t) lines
    detail::transform_x_axes(out.v, g, static_cast<std::size_t>(ny) * nt, Direction::inverse);
    return out;
}

inline SampledField cauchy_propagate(const SampledField& u0) {
    return cauchy_propagate(make_full_snapshot(u0));
}

// Snapshot of e^{it Delta} u0 at one time, restricted to the half space.
inline SampledField cauchy_snapshot(const FullSnapshot& u0, double t) {
    FullSnapshot s = propagate_full(u0, t);
    return restrict_half(s);
}

// Solution operator for the pure forcing problem
//   i du/dt + Delta u = f,  u(., 0) = 0,
// i.e. u(t) = -i int_0^t e^{i(t-s) Delta} f(s) ds. Per-mode cumulative
// trapezoid of the interaction-picture integrand from t = 0 (which lies half
// a cell between samples); f is extended to y < 0 by its designated tag.
inline SampledField duhamel(const SampledField& f, YExtension ext = YExtension::zero) {
    f.require_tag(DomainTag::volume_spacetime, "duhamel");
    if (f.rep != Rep::physical) throw structural_error("duhamel: physical rep expected");
    const Grid& g = f.grid;
    const int ny = g.Ny, nyf = g.ny_full(), nt = g.Nt;
    const std::size_t nx = g.n_xmodes();

    // full-line buffer (x, y_full, t), t fastest
    std::vector<cx> buf(nx * static_cast<std::size_t>(nyf) * nt, cx{});
    for (std::size_t kf = 0; kf < nx; ++kf) {
        for (int j = 0; j < ny; ++j) {
            const cx* src = &f.at(kf, j, 0);
            cx* dst = &buf[(kf * nyf + ny + j) * nt];
            std::copy_n(src, nt, dst);
            if (j >= 1 && ext != YExtension::zero) {
                cx* mir = &buf[(kf * nyf + ny - j) * nt];
                double sgn = ext == YExtension::odd ? -1.0 : 1.0;
                for (int n = 0; n < nt; ++n) mir[n] = sgn * src[n];
            }
        }
        if (ext == YExtension::odd) {
            cx* b0 = &buf[(kf * nyf + ny) * nt];
            std::fill_n(b0, nt, cx{});
        }
    }

    // spatial transform of the whole space-time block
    const auto& ctxy = detail::y_full_ctx(g);
    detail::apply_axis(
        buf, ctxy, nx * nt, nt,
        [&](std::size_t l) {
            std::size_t kf = l / nt, n = l % nt;
            return kf * (static_cast<std::size_t>(nyf) * nt) + n;
        },
        Direction::forward);
    detail::transform_x_axes(buf, g, static_cast<std::size_t>(nyf) * nt, Direction::forward);

    // per-mode cumulative trapezoid in the interaction picture
    const int n0 = nt / 2;  // first sample with t > 0 (t = dt/2)
    parallel_for(nx, [&](std::size_t kf) {
        std::vector<cx> gprod(nt), S(nt);
        double xi2 = xi_norm2_of_flat(g, kf);
        for (int r = 0; r < nyf; ++r) {
            double eta = g.eta(r);
            double om = xi2 + eta * eta;
            cx* line = &buf[(kf * nyf + r) * nt];
            for (int n = 0; n < nt; ++n) {
                double ph = om * g.t_pos(n);
                gprod[n] = line[n] * cx{std::cos(ph), std::sin(ph)};
            }
            // value of the integrand at t = 0 by 4-point interpolation
            cx g0 = (-gprod[n0 - 2] + 9.0 * gprod[n0 - 1] + 9.0 * gprod[n0] - gprod[n0 + 1]) / 16.0;
            S[n0] = 0.5 * (g0 + gprod[n0]) * (0.5 * g.dt());
            for (int n = n0 + 1; n < nt; ++n)
                S[n] = S[n - 1] + 0.5 * (gprod[n - 1] + gprod[n]) * g.dt();
            S[n0 - 1] = -0.5 * (g0 + gprod[n0 - 1]) * (0.5 * g.dt());
            for (int n = n0 - 2; n >= 0; --n)
                S[n] = S[n + 1] - 0.5 * (gprod[n] + gprod[n + 1]) * g.dt();
            for (int n = 0; n < nt; ++n) {
                double ph = -om * g.t_pos(n);
                line[n] = -iu * S[n] * cx{std::cos(ph), std::sin(ph)};
            }
        }
    });

    detail::transform_x_axes(buf, g, static_cast<std::size_t>(nyf) * nt, Direction::inverse);
    detail::apply_axis(
        buf, ctxy, nx * nt, nt,
        [&](std::size_t l) {
            std::size_t kf = l / nt, n = l % nt;
            return kf * (static_cast<std::size_t>(nyf) * nt) + n;
        },
        Direction::inverse);

    SampledField out(g, DomainTag::volume_spacetime);
    for (std::size_t kf = 0; kf < nx; ++kf)
        for (int j = 0; j < ny; ++j)
            std::copy_n(&buf[(kf * nyf + ny + j) * nt], nt, &out.at(kf, j, 0));
    return out;
}

}  // namespace halfspace
