#pragma once

#include <functional>
#include <memory>

#include "fft.hpp"
#include "field.hpp"

namespace halfspace {

enum class Direction { forward, inverse };

namespace detail {

// Offset-aware unitary-normalized DFT along one axis.
//
// positions   p_i = P0 + (i + b) * step
// frequencies f_u = (2pi/L) * (u - n/2 + b),  centered slot u
// forward     out_u = step * sum_i in_i e^{-i f_u p_i}
// inverse     in_i  = (1/L) * sum_u out_u e^{+i f_u p_i}
//
// Forward followed by inverse is the identity up to rounding; Parseval holds
// with the physical cell measure `step` against the frequency measure
// (2pi/L)/(2pi).
struct AxisCtx {
    int n;
    double step, length, origin, offset;
    std::vector<cx> pre_f, post_f, pre_i, post_i;

    AxisCtx(int n_, double length_, double origin_, double offset_)
        : n(n_), step(length_ / n_), length(length_), origin(origin_), offset(offset_) {
        pre_f.resize(n);
        post_f.resize(n);
        pre_i.resize(n);
        post_i.resize(n);
        for (int i = 0; i < n; ++i) {
            double a = -2.0 * pi * offset * i / n;
            pre_f[i] = cx{std::cos(a), std::sin(a)};
            pre_i[i] = std::conj(pre_f[i]);
        }
        for (int u = 0; u < n; ++u) {
            double f = (2.0 * pi / length) * (u - n / 2 + offset);
            double a = -(f * origin + 2.0 * pi * (u - n / 2 + offset) * offset / n);
            cx ph{std::cos(a), std::sin(a)};
            post_f[u] = step * ph;
            post_i[u] = std::conj(ph) / length;
        }
    }

    // line[i], i = 0..n-1 contiguous in scratch
    void forward(cx* line, cx* scratch) const {
        for (int i = 0; i < n; ++i) scratch[i] = line[i] * pre_f[i];
        fft_pow2(scratch, n, -1);
        const int half = n / 2;
        for (int u = 0; u < n; ++u) line[u] = post_f[u] * scratch[(u + half) & (n - 1)];
    }

    void inverse(cx* line, cx* scratch) const {
        const int half = n / 2;
        for (int u = 0; u < n; ++u) scratch[(u + half) & (n - 1)] = line[u] * std::conj(post_f[u]);
        fft_pow2(scratch, n, +1);
        const double s = 1.0 / (step * length);  // undo step^2 folded via conj(post_f)
        for (int i = 0; i < n; ++i) line[i] = scratch[i] * pre_i[i] * s;
    }
};

inline const AxisCtx& axis_ctx(int n, double length, double origin, double offset) {
    thread_local std::vector<std::unique_ptr<AxisCtx>> cache;
    for (const auto& c : cache)
        if (c->n == n && c->length == length && c->origin == origin && c->offset == offset)
            return *c;
    cache.emplace_back(std::make_unique<AxisCtx>(n, length, origin, offset));
    return *cache.back();
}

inline const AxisCtx& x_ctx(const Grid& g) {
    return axis_ctx(g.Nx, g.Lx, -g.Lx / 2, g.offset_x);
}
inline const AxisCtx& t_ctx(const Grid& g) {
    return axis_ctx(g.Nt, g.Lt, -g.Lt / 2, g.offset_t);
}
inline const AxisCtx& y_full_ctx(const Grid& g) {
    return axis_ctx(2 * g.Ny, 2 * g.Ly, -g.Ly, 0.0);
}

// Apply ctx along an axis of a flattened array: the axis has extent ctx.n and
// stride `stride`; `nlines` lines start at base indices given by line_base.
template <class BaseFn>
void apply_axis(std::vector<cx>& v, const AxisCtx& ctx, std::size_t nlines, std::size_t stride,
                BaseFn&& line_base, Direction dir) {
    parallel_for(nlines, [&](std::size_t l) {
        thread_local std::vector<cx> line, scratch;
        line.resize(ctx.n);
        scratch.resize(ctx.n);
        std::size_t b = line_base(l);
        if (stride == 1) {
            std::copy_n(v.data() + b, ctx.n, line.data());
        } else {
            for (int i = 0; i < ctx.n; ++i) line[i] = v[b + i * stride];
        }
        if (dir == Direction::forward)
            ctx.forward(line.data(), scratch.data());
        else
            ctx.inverse(line.data(), scratch.data());
        if (stride == 1) {
            std::copy_n(line.data(), ctx.n, v.data() + b);
        } else {
            for (int i = 0; i < ctx.n; ++i) v[b + i * stride] = line[i];
        }
    });
}

// Transform along every tangential axis of a boundary-shaped or
// volume-shaped array (t fastest, y between for volumes).
inline void transform_x_axes(std::vector<cx>& v, const Grid& g, std::size_t inner, Direction dir) {
    const auto& ctx = x_ctx(g);
    const int nxa = g.n_tangential();
    // axes ordered x0 (slowest) .. x_{nxa-1}, then inner block of size `inner`
    for (int a = 0; a < nxa; ++a) {
        std::size_t stride = inner;
        for (int b = a + 1; b < nxa; ++b) stride *= g.Nx;
        std::size_t nlines = v.size() / g.Nx;
        std::size_t block = stride * g.Nx;  // size of one full axis block
        apply_axis(
            v, ctx, nlines, stride,
            [&](std::size_t l) {
                std::size_t outer = l / stride, off = l % stride;
                return outer * block + off;
            },
            dir);
    }
}

inline void transform_t_axis(std::vector<cx>& v, const Grid& g, Direction dir) {
    const auto& ctx = t_ctx(g);
    std::size_t nlines = v.size() / g.Nt;
    apply_axis(v, ctx, nlines, 1, [&](std::size_t l) { return l * g.Nt; }, dir);
}

}  // namespace detail

// Discrete Fourier transform along all periodic axes (tangential + time for
// space-time data, tangential only for snapshots). Unitary in the sense that
// Parseval holds between the physical cell measure and d(xi) d(delta)/(2pi)^k.
inline void transform_inplace(BoundaryField& f, Direction dir) {
    f.require_finite("transform");
    if (dir == Direction::forward && f.rep != Rep::physical)
        throw structural_error("transform: forward expects physical representation");
    if (dir == Direction::inverse && f.rep != Rep::frequency)
        throw structural_error("transform: inverse expects frequency representation");
    detail::transform_t_axis(f.v, f.grid, dir);
    detail::transform_x_axes(f.v, f.grid, static_cast<std::size_t>(f.grid.Nt), dir);
    f.rep = dir == Direction::forward ? Rep::frequency : Rep::physical;
}

inline BoundaryField transformed(const BoundaryField& f, Direction dir) {
    BoundaryField out = f;
    transform_inplace(out, dir);
    return out;
}

inline void transform_inplace(SampledField& f, Direction dir) {
    f.require_finite("transform");
    if (dir == Direction::forward && f.rep != Rep::physical)
        throw structural_error("transform: forward expects physical representation");
    if (dir == Direction::inverse && f.rep != Rep::frequency)
        throw structural_error("transform: inverse expects frequency representation");
    if (f.tag == DomainTag::volume_spacetime) {
        detail::transform_t_axis(f.v, f.grid, dir);
        detail::transform_x_axes(f.v, f.grid,
                                 static_cast<std::size_t>(f.grid.Ny) * f.grid.Nt, dir);
    } else if (f.tag == DomainTag::volume_snapshot) {
        detail::transform_x_axes(f.v, f.grid, static_cast<std::size_t>(f.grid.Ny), dir);
    } else {
        detail::transform_t_axis(f.v, f.grid, dir);
        detail::transform_x_axes(f.v, f.grid, static_cast<std::size_t>(f.grid.Nt), dir);
    }
    f.rep = dir == Direction::forward ? Rep::frequency : Rep::physical;
}

inline SampledField transformed(const SampledField& f, Direction dir) {
    SampledField out = f;
    transform_inplace(out, dir);
    return out;
}

// x-transform only: physical -> semidiscrete (frequency in x, physical in t).
inline BoundaryField to_semidiscrete(const BoundaryField& f) {
    if (f.rep == Rep::semidiscrete) return f;
    BoundaryField out = f;
    if (f.rep == Rep::physical) {
        detail::transform_x_axes(out.v, out.grid, static_cast<std::size_t>(out.grid.Nt),
                                 Direction::forward);
    } else {
        detail::transform_t_axis(out.v, out.grid, Direction::inverse);
    }
    out.rep = Rep::semidiscrete;
    return out;
}

inline BoundaryField semidiscrete_to_frequency(const BoundaryField& f) {
    if (f.rep != Rep::semidiscrete) throw structural_error("semidiscrete_to_frequency: wrong rep");
    BoundaryField out = f;
    detail::transform_t_axis(out.v, out.grid, Direction::forward);
    out.rep = Rep::frequency;
    return out;
}

namespace detail {
inline double cell_physical(const Grid& g, DomainTag tag) {
    double c = 1.0;
    for (int a = 0; a < g.n_tangential(); ++a) c *= g.dx();
    if (tag != DomainTag::volume_snapshot) c *= g.dt();
    if (tag != DomainTag::boundary_spacetime) c *= g.dy();
    return c;
}
inline double cell_frequency(const Grid& g, DomainTag tag) {
    double c = 1.0;
    for (int a = 0; a < g.n_tangential(); ++a) c *= g.dxi() / (2.0 * pi);
    if (tag != DomainTag::volume_snapshot) c *= g.ddelta() / (2.0 * pi);
    if (tag != DomainTag::boundary_spacetime) c *= g.dy();  // y stays physical
    return c;
}

inline double sum_abs2(const std::vector<cx>& v) {
    std::vector<double> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::norm(v[i]);
    return pairwise_sum(a);
}
}  // namespace detail

// Grid L2 norm in the current representation (Parseval-consistent pair).
inline double l2_norm(const BoundaryField& f) {
    double cell = f.rep == Rep::frequency ? detail::cell_frequency(f.grid, DomainTag::boundary_spacetime)
                                          : detail::cell_physical(f.grid, DomainTag::boundary_spacetime);
    return std::sqrt(detail::sum_abs2(f.v) * cell);
}

inline double l2_norm(const SampledField& f) {
    double cell = f.rep == Rep::frequency ? detail::cell_frequency(f.grid, f.tag)
                                          : detail::cell_physical(f.grid, f.tag);
    return std::sqrt(detail::sum_abs2(f.v) * cell);
}

// Exact semidiscrete time transform of sampled boundary data at an arbitrary
// real frequency: sum_n g(xi_k, t_n) e^{-i delta t_n} dt. No interpolation.
inline cx resample_parabolic(const BoundaryField& g, std::size_t xi_flat, double delta) {
    if (g.rep != Rep::semidiscrete)
        throw structural_error("resample_parabolic: expects semidiscrete representation");
    if (xi_flat >= g.grid.n_xmodes()) throw structural_error("resample_parabolic: xi index out of range");
    const Grid& gr = g.grid;
    const cx* line = g.v.data() + xi_flat * gr.Nt;
    const double t0 = gr.t_pos(0);
    cx w = cx{std::cos(-delta * t0), std::sin(-delta * t0)};
    const double a = -delta * gr.dt();
    const cx step{std::cos(a), std::sin(a)};
    cx acc{};
    for (int n = 0; n < gr.Nt; ++n) {
        acc += line[n] * w;
        w *= step;
        if ((n & 31) == 31) w *= (1.5 - 0.5 * std::norm(w));  // keep |w| = 1
    }
    return acc * gr.dt();
}

// Measure identity behind the parabolic change of variables:
//   int_0^inf F(-|xi|^2 - eta^2) 2 eta d eta  =  int_{-inf}^{-|xi|^2} F(delta) d delta.
// Returns both quadratures (composite Simpson, truncated at eta_max).
inline std::pair<double, double> jacobian_identity_check(const std::function<double(double)>& F,
                                                         double xi_norm2, double eta_max = 20.0,
                                                         int n = 1 << 18) {
    if (n % 2) ++n;
    auto simpson = [&](auto&& f, double a, double b) {
        const double h = (b - a) / n;
        double s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    double lhs = simpson([&](double e) { return F(-xi_norm2 - e * e) * 2.0 * e; }, 0.0, eta_max);
    double rhs = simpson([&](double d) { return F(d); }, -xi_norm2 - eta_max * eta_max, -xi_norm2);
    return {lhs, rhs};
}

}  // namespace halfspace
