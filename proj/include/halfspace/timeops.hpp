#pragma once

#include "norms.hpp"

namespace halfspace {

namespace detail {

template <class Field>
std::size_t t_lines(const Field& f) {
    return f.v.size() / f.grid.Nt;
}

// Circular shift by whole cells along the (fastest) time axis; tails of the
// data classes used here vanish at the window edge, so wrap error is moot.
template <class Field>
Field time_shift_cells(const Field& f, int cells) {
    Field out = f;
    const int nt = f.grid.Nt;
    int s = ((cells % nt) + nt) % nt;
    for (std::size_t l = 0; l < t_lines(f); ++l) {
        const cx* in = f.v.data() + l * nt;
        cx* o = out.v.data() + l * nt;
        for (int n = 0; n < nt; ++n) o[n] = in[(n + s) % nt];
    }
    return out;
}

// t -> -t on the symmetric half-cell grid maps samples to samples.
template <class Field>
Field time_reflect(const Field& f) {
    Field out = f;
    const int nt = f.grid.Nt;
    for (std::size_t l = 0; l < t_lines(f); ++l) {
        const cx* in = f.v.data() + l * nt;
        cx* o = out.v.data() + l * nt;
        for (int n = 0; n < nt; ++n) o[n] = in[nt - 1 - n];
    }
    return out;
}

template <class Field>
Field conj_field(const Field& f) {
    Field out = f;
    for (auto& z : out.v) z = std::conj(z);
    return out;
}

}  // namespace detail

// L^p in t of a per-slice norm (p = inf -> max over slices).
template <class Field, class SliceNorm>
double lp_time_norm(const Field& f, double p, SliceNorm&& slice) {
    const Grid& g = f.grid;
    std::vector<double> s(g.Nt);
    for (int n = 0; n < g.Nt; ++n) s[n] = slice(f, n);
    if (std::isinf(p)) return *std::max_element(s.begin(), s.end());
    for (double& v : s) v = std::pow(v, p);
    return std::pow(pairwise_sum(s) * g.dt(), 1.0 / p);
}

// L^q over x of one time slice of boundary data.
inline double boundary_lq_slice(const BoundaryField& f, int n, double q) {
    const Grid& g = f.grid;
    double cell = 1.0;
    for (int a = 0; a < g.n_tangential(); ++a) cell *= g.dx();
    std::vector<double> acc(g.n_xmodes());
    for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf)
        acc[kf] = std::pow(std::abs(f.at(kf, n)), q);
    return std::pow(pairwise_sum(acc) * cell, 1.0 / q);
}

struct BesovParts {
    double seminorm2 = 0.0;  // dyadic difference part, squared
    double lp = 0.0;         // L^p_t A part
    double norm() const { return std::sqrt(seminorm2 + lp * lp); }
};

// Fractional time-Besov norm by dyadic finite differences:
//   ||u||^2 = int_0^inf (||u(.+h) - u||_{L^p A} / h^theta)^2 dh/h + ||u||^2_{L^p A}
// evaluated at shifts h = dt 2^j up to Lt/4, trapezoid in log h, and a
// power-law head below h = dt (difference norms scale like h for resolved
// data). Shifts wrap periodically; the data classes here vanish at the
// window edges. slice(f, n) supplies the A-norm of slice n.
template <class Field, class SliceNorm>
BesovParts besov_time_parts(const Field& u, double theta, double p, SliceNorm&& slice) {
    if (!(theta > 0.0 && theta < 1.0)) throw domain_error("besov_time_norm: theta in (0,1)");
    if (u.rep != Rep::physical) throw structural_error("besov_time_norm: physical rep expected");
    const Grid& g = u.grid;
    std::vector<double> hs, Ds;
    for (int j = 0;; ++j) {
        int cells = 1 << j;
        double h = cells * g.dt();
        if (h > g.Lt / 4.0) break;
        Field diff = detail::time_shift_cells(u, cells);
        for (std::size_t i = 0; i < diff.v.size(); ++i) diff.v[i] -= u.v[i];
        hs.push_back(h);
        Ds.push_back(lp_time_norm(diff, p, slice));
    }
    BesovParts parts;
    if (hs.size() >= 2) {
        std::vector<double> f(hs.size());
        for (std::size_t j = 0; j < hs.size(); ++j)
            f[j] = std::pow(Ds[j] / std::pow(hs[j], theta), 2.0);
        for (std::size_t j = 0; j + 1 < hs.size(); ++j)
            parts.seminorm2 += 0.5 * (f[j] + f[j + 1]) * std::log(hs[j + 1] / hs[j]);
        double expo = 2.0 * (1.0 - theta);
        if (f[0] > 0) parts.seminorm2 += f[0] / expo;
    }
    parts.lp = lp_time_norm(u, p, slice);
    return parts;
}

template <class Field, class SliceNorm>
double besov_time_norm(const Field& u, double theta, double p, SliceNorm&& slice) {
    return besov_time_parts(u, theta, p, slice).norm();
}

// Smooth cutoff chi in C_c^inf([0,1)), chi(0) = 1.
inline double standard_chi(double s) {
    if (s <= 0.0) return s == 0.0 ? 1.0 : 0.0;
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

// Extension operator P_T = D_{1/T} P_1 D_T: data on [0,T] extends to
// [-T, 2T] by reflection and cutoff,
//   u(t),              0 <= t <= T
//   u(2T - t) chi((t-T)/T),  T < t <= 2T
//   u(-t) chi(-t/T),  -T <= t < 0
// T must sit on the cell lattice so both mirrors map samples to samples.
template <class Field>
Field extend_PT(const Field& u, double T,
                const std::function<double(double)>& chi = standard_chi) {
    if (u.rep != Rep::physical) throw structural_error("extend_PT: physical rep expected");
    const Grid& g = u.grid;
    if (!(T > 0.0 && T <= 1.0 + 1e-12)) throw domain_error("extend_PT: T must lie in (0,1]");
    double cellsd = T / g.dt();
    int K = static_cast<int>(std::lround(cellsd));
    if (std::abs(cellsd - K) > 1e-9 || K < 1)
        throw domain_error("extend_PT: T must be a positive multiple of dt");
    if (2.0 * T >= g.Lt / 2.0 || -T <= -g.Lt / 2.0)
        throw domain_error("extend_PT: window does not contain [-T, 2T]");

    const int nt = g.Nt;
    auto index_of = [&](double t) {
        return static_cast<int>(std::lround((t - g.t_pos(0)) / g.dt()));
    };
    Field out = u;
    // Build the per-slice source index and scale once, apply to every line.
    std::vector<int> src(nt, -1);
    std::vector<double> scl(nt, 0.0);
    for (int n = 0; n < nt; ++n) {
        double t = g.t_pos(n);
        if (t >= 0.0 && t < T) {
            src[n] = n;
            scl[n] = 1.0;
        } else if (t >= T && t <= 2.0 * T) {
            src[n] = index_of(2.0 * T - t);
            scl[n] = chi((t - T) / T);
        } else if (t >= -T && t < 0.0) {
            src[n] = index_of(-t);
            scl[n] = chi(-t / T);
        }
    }
    const int ntc = nt;
    for (std::size_t l = 0; l < detail::t_lines(u); ++l) {
        const cx* in = u.v.data() + l * ntc;
        cx* o = out.v.data() + l * ntc;
        for (int n = 0; n < ntc; ++n) o[n] = src[n] >= 0 ? in[src[n]] * scl[n] : cx{};
    }
    return out;
}

// Zero extension P_0: keep t >= 0 samples, zero the rest.
template <class Field>
Field extend_zero(const Field& g) {
    if (g.rep != Rep::physical) throw structural_error("extend_zero: physical rep expected");
    Field out = g;
    const int nt = g.grid.Nt;
    for (std::size_t l = 0; l < detail::t_lines(g); ++l) {
        cx* o = out.v.data() + l * nt;
        for (int n = 0; n < nt; ++n)
            if (g.grid.t_pos(n) < 0.0) o[n] = cx{};
    }
    return out;
}

// Restriction to a time interval [a, b): zero outside.
template <class Field>
Field restrict_time(const Field& g, double a, double b) {
    if (g.rep != Rep::physical) throw structural_error("restrict_time: physical rep expected");
    Field out = g;
    const int nt = g.grid.Nt;
    for (std::size_t l = 0; l < detail::t_lines(g); ++l) {
        cx* o = out.v.data() + l * nt;
        for (int n = 0; n < nt; ++n) {
            double t = g.grid.t_pos(n);
            if (t < a || t >= b) o[n] = cx{};
        }
    }
    return out;
}

// Reflection operator S g(t) = g(t) - 3 g(-t) + 2 g(-2t) for t > 0 (zero for
// t <= 0). -t is an exact sample on the symmetric grid; -2t falls between
// samples and is read by 4-point Lagrange interpolation (exact on cubics, so
// the polynomial identities S1 = 0, St = 0, St^2 = 6t^2 hold on the grid);
// points outside the window count as 0.
inline BoundaryField reflect_S(const BoundaryField& g) {
    if (g.rep != Rep::physical) throw structural_error("reflect_S: physical rep expected");
    const Grid& gr = g.grid;
    const int nt = gr.Nt;
    BoundaryField out(gr, Rep::physical);
    auto sample_interp = [&](const cx* line, double t) -> cx {
        double pos = (t - gr.t_pos(0)) / gr.dt();
        if (pos < 0.0 || pos > nt - 1) return cx{};
        int j0 = std::clamp(static_cast<int>(std::floor(pos)) - 1, 0, nt - 4);
        double x = pos - j0;
        double w0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
        double w1 = x * (x - 2) * (x - 3) / 2.0;
        double w2 = -x * (x - 1) * (x - 3) / 2.0;
        double w3 = x * (x - 1) * (x - 2) / 6.0;
        return w0 * line[j0] + w1 * line[j0 + 1] + w2 * line[j0 + 2] + w3 * line[j0 + 3];
    };
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        const cx* in = g.v.data() + kf * nt;
        cx* o = out.v.data() + kf * nt;
        for (int n = 0; n < nt; ++n) {
            double t = gr.t_pos(n);
            if (t <= 0.0) continue;
            cx gm = in[nt - 1 - n];  // g(-t), exact mirror sample
            cx gm2 = sample_interp(in, -2.0 * t);
            o[n] = in[n] - 3.0 * gm + 2.0 * gm2;
        }
    }
    return out;
}

}  // namespace halfspace
