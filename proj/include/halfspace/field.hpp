#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "grid.hpp"

namespace halfspace {

enum class DomainTag { volume_spacetime, volume_snapshot, boundary_spacetime };

// Representation along the periodic axes (tangential + time).
//   physical      : samples g(x_i, ..., t_n)
//   frequency     : coefficients g^(xi_k, ..., delta_m), centered slots
//   semidiscrete  : frequency along x, physical along t (resampling input)
enum class Rep { physical, frequency, semidiscrete };

// Designated extension of a half-space snapshot to the full line in y.
enum class YExtension { zero, odd, even };

inline std::string to_string(DomainTag t) {
    switch (t) {
        case DomainTag::volume_spacetime: return "volume-spacetime";
        case DomainTag::volume_snapshot: return "volume-snapshot";
        default: return "boundary-spacetime";
    }
}
inline std::string to_string(Rep r) {
    switch (r) {
        case Rep::physical: return "physical";
        case Rep::frequency: return "frequency";
        default: return "semidiscrete";
    }
}

namespace detail {
template <class V>
bool all_finite(const V& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}
}  // namespace detail

// Complex samples on the boundary grid, index order (x0[, x1], t), t fastest.
struct BoundaryField {
    Grid grid;
    Rep rep = Rep::physical;
    std::vector<cx> v;

    BoundaryField() = default;
    BoundaryField(const Grid& g, Rep r) : grid(g), rep(r), v(g.n_boundary(), cx{}) {}

    std::size_t xstride() const { return static_cast<std::size_t>(grid.Nt); }
    cx& at(std::size_t xflat, int n) { return v[xflat * grid.Nt + n]; }
    const cx& at(std::size_t xflat, int n) const { return v[xflat * grid.Nt + n]; }

    void require_finite(const char* who) const {
        if (!detail::all_finite(v)) throw structural_error(std::string(who) + ": non-finite entries");
    }
};

// Complex samples on the volume grid.
//   volume_spacetime: index (x..., y, t), t fastest, y next.
//   volume_snapshot : index (x..., y), y fastest; carries the designated
//                     y-extension used when a full-line field is needed.
struct SampledField {
    Grid grid;
    DomainTag tag = DomainTag::volume_spacetime;
    Rep rep = Rep::physical;
    YExtension ext = YExtension::zero;
    std::vector<cx> v;

    SampledField() = default;
    SampledField(const Grid& g, DomainTag t, Rep r = Rep::physical)
        : grid(g), tag(t), rep(r) {
        v.assign(t == DomainTag::volume_snapshot ? g.n_snapshot()
                 : t == DomainTag::volume_spacetime ? g.n_volume()
                                                    : g.n_boundary(),
                 cx{});
    }

    // volume_spacetime accessor
    cx& at(std::size_t xflat, int j, int n) {
        return v[(xflat * grid.Ny + j) * grid.Nt + n];
    }
    const cx& at(std::size_t xflat, int j, int n) const {
        return v[(xflat * grid.Ny + j) * grid.Nt + n];
    }
    // volume_snapshot accessor
    cx& ats(std::size_t xflat, int j) { return v[xflat * grid.Ny + j]; }
    const cx& ats(std::size_t xflat, int j) const { return v[xflat * grid.Ny + j]; }

    void require_finite(const char* who) const {
        if (!detail::all_finite(v)) throw structural_error(std::string(who) + ": non-finite entries");
    }

    void require_tag(DomainTag t, const char* who) const {
        if (tag != t) throw structural_error(std::string(who) + ": wrong domain tag " + to_string(tag));
    }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* who) {
    if (!a.same_shape(b)) throw structural_error(std::string(who) + ": grid mismatch");
}

}  // namespace halfspace
