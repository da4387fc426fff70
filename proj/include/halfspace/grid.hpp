#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "core.hpp"

namespace halfspace {

// Truncated space-time grid for the half space R^{d-1} x R+ x R_t.
//
// Conventions (fixed throughout):
//   tangential axes: x_i = (i - Nx/2) * dx,        xi_k  = (2pi/Lx) * (k - Nx/2 + offset_x)
//   time axis:       t_n = (n + offset_t - Nt/2)*dt, delta_m = (2pi/Lt) * (m - Nt/2 + offset_t)
//   normal axis:     y_j = j * dy on [0, Ly), never transformed on the half grid.
//
// The default half-cell offset on the t axis shifts both the samples (so no
// sample sits at t = 0) and the frequencies (so no pair (xi_k, delta_m) sits
// on the paraboloid delta = -|xi|^2).
//
// Frequency-ordered arrays are stored in centered order: slot u holds index
// u - N/2.
struct Grid {
    int d = 2;              // spatial dimension, 1..3 (d-1 tangential axes)
    double Lx = 16.0;       // box length per tangential axis
    int Nx = 64;            // modes per tangential axis
    double Ly = 16.0;       // normal-direction truncation length
    int Ny = 64;            // normal sample count
    double Lt = 16.0;       // time-window length, window [-Lt/2, Lt/2)
    int Nt = 64;            // time sample count
    double offset_x = 0.0;  // half-cell shift, tangential axes
    double offset_t = 0.5;  // half-cell shift, time axis

    void validate() const {
        if (d < 1 || d > 3) throw structural_error("grid: d must be 1, 2 or 3");
        if (!(Lx > 0 && Ly > 0 && Lt > 0)) throw structural_error("grid: lengths must be positive");
        if (!is_pow2(Nx) || !is_pow2(Ny) || !is_pow2(Nt))
            throw structural_error("grid: sample counts must be powers of two");
    }

    int n_tangential() const { return d - 1; }

    double dx() const { return Lx / Nx; }
    double dy() const { return Ly / Ny; }
    double dt() const { return Lt / Nt; }
    double dxi() const { return 2.0 * pi / Lx; }
    double ddelta() const { return 2.0 * pi / Lt; }

    double x_pos(int i) const { return (i - Nx / 2 + offset_x) * dx(); }
    double y_pos(int j) const { return j * dy(); }
    double t_pos(int n) const { return (n + offset_t - Nt / 2) * dt(); }

    // Slot u in centered order -> frequency value.
    double xi(int u) const { return dxi() * (u - Nx / 2 + offset_x); }
    double delta(int u) const { return ddelta() * (u - Nt / 2 + offset_t); }

    // Doubled (periodic, full-line) normal grid used by Cauchy extensions:
    // y_j = (j - Ny) * dy for j in [0, 2Ny), eta in centered order, no offset.
    int ny_full() const { return 2 * Ny; }
    double y_full_pos(int j) const { return (j - Ny) * dy(); }
    double eta(int u) const { return (2.0 * pi / (2.0 * Ly)) * (u - Ny); }

    // |xi|^2 for a multi-index over tangential axes (centered slots).
    double xi_norm2(const std::array<int, 2>& ux) const {
        double s = 0;
        for (int a = 0; a < n_tangential(); ++a) {
            double x = xi(ux[a]);
            s += x * x;
        }
        return s;
    }

    std::size_t n_boundary() const {
        std::size_t s = 1;
        for (int a = 0; a < n_tangential(); ++a) s *= Nx;
        return s * Nt;
    }
    std::size_t n_snapshot() const {
        std::size_t s = 1;
        for (int a = 0; a < n_tangential(); ++a) s *= Nx;
        return s * Ny;
    }
    std::size_t n_volume() const { return n_snapshot() * Nt; }
    std::size_t n_xmodes() const {
        std::size_t s = 1;
        for (int a = 0; a < n_tangential(); ++a) s *= Nx;
        return s;
    }

    // Smallest |delta_m + |xi_k|^2| over the whole discrete frequency set.
    // With the default offsets this is strictly positive (direct scan).
    double min_paraboloid_gap() const {
        double gap = std::numeric_limits<double>::infinity();
        const int nxa = n_tangential();
        std::array<int, 2> ux{Nx / 2, Nx / 2};
        auto scan = [&](auto&& self, int axis) -> void {
            if (axis == nxa) {
                double x2 = xi_norm2(ux);
                for (int m = 0; m < Nt; ++m) gap = std::min(gap, std::abs(delta(m) + x2));
                return;
            }
            for (int k = 0; k < Nx; ++k) {
                ux[axis] = k;
                self(self, axis + 1);
            }
        };
        scan(scan, 0);
        return gap;
    }

    bool same_shape(const Grid& o) const {
        return d == o.d && Nx == o.Nx && Ny == o.Ny && Nt == o.Nt && Lx == o.Lx && Ly == o.Ly &&
               Lt == o.Lt && offset_x == o.offset_x && offset_t == o.offset_t;
    }
};

}  // namespace halfspace
