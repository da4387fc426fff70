#pragma once

#include <Eigen/Dense>

#include <numeric>

#include "bvp.hpp"
#include "generators.hpp"

namespace halfspace {

// Exact-rational admissible pair: 2/p + d/q = d/2, p > 2.
struct AdmissiblePair {
    long p_num = 0, p_den = 1, q_num = 0, q_den = 1;
    double p() const { return double(p_num) / p_den; }
    double q() const { return double(q_num) / q_den; }
};

// Integer-p ladder on the admissibility line: q = 2 d p / (d p - 4).
inline std::vector<AdmissiblePair> admissible_pairs(int d, int count) {
    if (d < 1 || d > 3) throw domain_error("admissible_pairs: d in {1,2,3}");
    std::vector<AdmissiblePair> out;
    long p = d == 1 ? 5 : 3;  // p > max(2, 4/d)
    while (static_cast<int>(out.size()) < count) {
        long num = 2 * d * p, den = d * p - 4;
        long g = std::gcd(num, den);
        out.push_back({p, 1, num / g, den / g});
        ++p;
    }
    return out;
}

enum class StrichartzSource { pure_bvp, cauchy, forcing, forcing_trace };

struct StrichartzSpec {
    StrichartzSource source = StrichartzSource::pure_bvp;
    Grid grid;
    BoundaryPacket boundary_packet;   // pure_bvp
    VolumePacket volume_packet;       // cauchy / forcing (with gt as envelope)
    BoundarySymbol symbol = BoundarySymbol::dirichlet();
    double p = 4.0, q = 4.0;
    double s = 0.0;
    std::vector<double> lambdas{0.5, 1.0, 2.0};
    int refinements = 1;  // grid doublings for the refinement table
};

struct StrichartzReport {
    double p = 0, q = 0, s = 0;
    double ratio = 0;
    std::vector<std::pair<int, double>> refinement_table;   // (N, ratio)
    std::vector<std::pair<double, double>> scaling_table;   // (lambda, ratio)
};

namespace detail {

inline double strichartz_ratio_once(const StrichartzSpec& spec, const Grid& g, double lambda) {
    const double p = spec.p, q = spec.q;
    switch (spec.source) {
        case StrichartzSource::pure_bvp: {
            BoundaryPacket pk = spec.boundary_packet.scaled(lambda, g.d);
            BoundaryField gb = extend_zero(pk.sample(g));
            double gn = hs_boundary_norm(gb, spec.s);
            if (gn == 0.0) throw accuracy_error("strichartz_report: zero boundary data");
            BvpOptions opt;
            opt.s = spec.s;
            opt.check_support = false;
            SampledField u = solve_pure_bvp(gb, spec.symbol, opt);
            return lpq_norm(u, p, q) / gn;
        }
        case StrichartzSource::cauchy: {
            VolumePacket pk = spec.volume_packet.scaled(lambda, g.d);
            SampledField u0 = pk.snapshot(g, YExtension::zero);
            double n0 = l2_norm(u0);
            if (n0 == 0.0) throw accuracy_error("strichartz_report: zero initial data");
            SampledField u = cauchy_propagate(u0);
            return lpq_norm(u, p, q) / n0;
        }
        case StrichartzSource::forcing:
        case StrichartzSource::forcing_trace: {
            VolumePacket pk = spec.volume_packet.scaled(lambda, g.d);
            SampledField f = pk.spacetime(g);
            double pp = p / (p - 1.0), qp = q / (q - 1.0);  // dual pair
            double fn = lpq_norm(f, pp, qp);
            if (fn == 0.0) throw accuracy_error("strichartz_report: zero forcing");
            SampledField u = duhamel(f);
            if (spec.source == StrichartzSource::forcing) return lpq_norm(u, p, q) / fn;
            BoundaryField tr = extend_zero(trace_y0(u));
            return hs_boundary_norm(tr, spec.s) / fn;
        }
    }
    throw structural_error("strichartz_report: unknown source");
}

}  // namespace detail

// Mixed-norm ratio with refinement (grid doubling) and scaling tables.
inline StrichartzReport strichartz_report(const StrichartzSpec& spec) {
    StrichartzReport rep;
    rep.p = spec.p;
    rep.q = spec.q;
    rep.s = spec.s;
    double lhs = 2.0 / spec.p + spec.grid.d / spec.q;
    if (!(spec.p > 2.0) || std::abs(lhs - spec.grid.d / 2.0) > 1e-12)
        throw domain_error("strichartz_report: (p,q) must be admissible with p > 2");
    rep.ratio = detail::strichartz_ratio_once(spec, spec.grid, 1.0);
    Grid g = spec.grid;
    rep.refinement_table.emplace_back(g.Nx, rep.ratio);
    for (int r = 0; r < spec.refinements; ++r) {
        g.Nx *= 2;
        g.Ny *= 2;
        g.Nt *= 2;
        rep.refinement_table.emplace_back(g.Nx, detail::strichartz_ratio_once(spec, g, 1.0));
    }
    for (double lam : spec.lambdas)
        rep.scaling_table.emplace_back(lam, detail::strichartz_ratio_once(spec, spec.grid, lam));
    return rep;
}

namespace detail {

// Adaptive Simpson on [a, b] for complex integrands.
template <class F>
cx adaptive_simpson(F&& f, double a, double b, double tol, int depth, cx fa, cx fm, cx fb) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cx flm = f(lm), frm = f(rm);
    cx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    cx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    cx delta = left + right - whole;
    if (depth <= 0) throw accuracy_error("oscillatory quadrature did not converge");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, tol / 2, depth - 1, fa, flm, fm) +
           adaptive_simpson(f, m, b, tol / 2, depth - 1, fm, frm, fb);
}

template <class F>
cx adaptive_simpson(F&& f, double a, double b, double tol) {
    cx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, tol, 40, fa, fm, fb);
}

}  // namespace detail

// q(T, a) = int_R e^{i eta^2 T} e^{-a |eta|} d eta for T > 0, a >= 0, through
// the rotated contour eta = e^{i pi/4} s where the Fresnel factor decays:
// q = 2 e^{i pi/4} int_0^inf e^{-T s^2} e^{-a e^{i pi/4} s} ds.
inline cx fresnel_damped_integral(double T, double a, double tol = 1e-12) {
    if (T <= 0.0) throw domain_error("fresnel_damped_integral: T > 0 required");
    const double smax = std::sqrt(745.0 / T);  // e^{-T s^2} underflow edge
    const cx rot = std::polar(1.0, pi / 4.0);
    auto f = [&](double s) { return std::exp(-T * s * s - a * rot * s); };
    cx val = detail::adaptive_simpson(f, 0.0, smax, tol);
    return 2.0 * rot * val;
}

struct KernelBoundReport {
    double sup = 0.0;                        // sup |N| |t-s|^{d/2}
    double sup_y0 = 0.0;                     // the y = y2 = 0 slice (Fresnel line)
    std::size_t n_samples = 0;
    int d = 2;
};

// Samples |N_{t,s}| |t-s|^{d/2} with N = (2pi)^d (Fresnel factor in x) *
// int e^{i eta^2 (t-s)} e^{-(y+y2)|eta|} d eta over a (y+y2, |t-s|) grid.
inline KernelBoundReport kernel_nts_bound(int d, const std::vector<double>& a_values,
                                          const std::vector<double>& t_values,
                                          double quad_tol = 1e-12) {
    if (d < 1 || d > 3) throw domain_error("kernel_nts_bound: d in {1,2,3}");
    KernelBoundReport rep;
    rep.d = d;
    for (double T : t_values) {
        if (T < 0.1 || T > 10.0) throw domain_error("kernel_nts_bound: |t-s| in [0.1, 10]");
        double xfac = std::pow(pi / T, 0.5 * (d - 1));  // |Fresnel factor in x|
        for (double a : a_values) {
            if (a < 0.0) throw domain_error("kernel_nts_bound: y + y2 >= 0");
            double q = std::abs(fresnel_damped_integral(T, a, quad_tol));
            double val = std::pow(2.0 * pi, d) * xfac * q * std::pow(T, 0.5 * d);
            rep.sup = std::max(rep.sup, val);
            if (a == 0.0) rep.sup_y0 = std::max(rep.sup_y0, val);
            ++rep.n_samples;
        }
    }
    return rep;
}

// Largest singular value of L f = int_0^inf e^{-lambda y} f(y) dy on L2(R+),
// through the symmetric kernel 1/(y1+y2) discretized on a log grid:
// A_ij = sqrt(w_i w_j) / (y_i + y_j), ||L|| = sqrt(lambda_max(A)).
struct LaplaceOpResult {
    double opnorm = 0.0;
    Eigen::VectorXd top_vector;   // in the weighted coordinates
    Eigen::MatrixXd form;         // the symmetrized kernel matrix
};

inline LaplaceOpResult laplace_opnorm(int n, double u_min = -10.0, double u_max = 10.0) {
    if (n < 64) throw domain_error("laplace_opnorm: N >= 64 required");
    Eigen::VectorXd y(n), w(n);
    double du = (u_max - u_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        double u = u_min + i * du;
        y[i] = std::exp(u);
        w[i] = y[i] * du * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
    }
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = std::sqrt(w[i] * w[j]) / (y[i] + y[j]);
            A(i, j) = v;
            A(j, i) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    LaplaceOpResult res;
    res.opnorm = std::sqrt(es.eigenvalues().maxCoeff());
    res.top_vector = es.eigenvectors().col(n - 1);
    res.form = std::move(A);
    return res;
}

// Appendix weight: r(xi, eta) = j on the bands 2^j - 2^{-j} <= eta/|xi| <= 2^j,
// J = 1 + r, p = sqrt(delta + xi^2) / J(xi, sqrt(delta + xi^2))^2.
// The band definition is taken in |xi| (the d = 2 statement is for xi > 0).
struct AppendixWeight {
    int j_max = 8;

    double r(double xi, double eta) const {
        double q = eta / std::abs(xi);
        if (!(q > 0.0) || !std::isfinite(q)) return 0.0;
        double j = std::round(std::log2(q));
        if (j < 1 || j > j_max) return 0.0;
        double tj = std::pow(2.0, j);
        return (q >= tj - 1.0 / tj && q <= tj) ? j : 0.0;
    }
    double J(double xi, double eta) const { return 1.0 + r(xi, eta); }
    double p(double xi, double delta) const {
        double w = delta + xi * xi;
        if (w <= 0.0) throw domain_error("appendix weight: p is defined on the elliptic region");
        double root = std::sqrt(w);
        double Jv = J(xi, root);
        return root / (Jv * Jv);
    }
    double sup_J() const { return 1.0 + j_max; }
};

inline AppendixWeight appendix_weight_build(int j_max) {
    if (j_max < 1) throw domain_error("appendix_weight_build: j_max >= 1");
    return AppendixWeight{j_max};
}

// J as a profile of q = eta/xi; unit_weight() is the Hilbert-kernel case.
inline std::function<double(double)> weight_profile(const AppendixWeight& w) {
    return [w](double q) { return w.J(1.0, q); };
}
inline std::function<double(double)> unit_weight() {
    return [](double) { return 1.0; };
}

struct FormRatioReport {
    int k_max = 0;
    int j_max = 0;
    double ratio = 0.0;
    bool plateau_flag = false;
};

namespace detail {

// Piecewise quadrature grid on [2^{-k_max}, 2^{k_max}] xi: the band edges
// [2^j - 2^{-j}, 2^j] xi are segment breakpoints, each segment carries its
// own log-spaced midpoint rule, so no cell ever straddles a band edge (the
// thin bands are where both J and the adversarial profiles jump).
inline void appendix_eta_grid(double xi, int k_max, int j_max, int n_background,
                              int n_per_band, std::vector<double>& eta,
                              std::vector<double>& w) {
    double lo = std::pow(2.0, -k_max) * xi, hi = std::pow(2.0, k_max) * xi;
    std::vector<double> brk{lo, hi};
    for (int j = 1; j <= j_max; ++j) {
        double tj = std::pow(2.0, j);
        for (double b : {(tj - 1.0 / tj) * xi, tj * xi})
            if (b > lo && b < hi) brk.push_back(b);
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    eta.clear();
    w.clear();
    const double span = std::log(hi / lo);
    for (std::size_t sgmt = 0; sgmt + 1 < brk.size(); ++sgmt) {
        double a = brk[sgmt], b = brk[sgmt + 1];
        bool in_band = false;
        for (int j = 1; j <= j_max; ++j) {
            double tj = std::pow(2.0, j);
            if (a >= (tj - 1.0 / tj) * xi - 1e-14 * tj && b <= tj * xi + 1e-14 * tj) in_band = true;
        }
        int n = in_band ? n_per_band
                        : std::max(2, (int)std::lround(n_background * std::log(b / a) / span));
        // midpoint rule in log space, confined to the segment
        for (int i = 0; i < n; ++i) {
            double l = a * std::pow(b / a, double(i) / n);
            double r = a * std::pow(b / a, double(i + 1) / n);
            eta.push_back(std::sqrt(l * r));
            w.push_back(r - l);
        }
    }
}

inline double appendix_form_once(const std::function<double(double)>& Jprofile, int j_max,
                                 const std::function<double(double)>& phi_profile, int k_max,
                                 int n_background, int n_per_band) {
    // single xi-slice: every quantity is scale free in eta/xi, and the
    // xi-integration of a scale-invariant profile contributes the same
    // ratio per slice
    const double xi = 1.0;
    std::vector<double> eta, w;
    appendix_eta_grid(xi, k_max, j_max, n_background, n_per_band, eta, w);
    const std::size_t n = eta.size();
    std::vector<double> phi(n), Jv(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi[i] = phi_profile(eta[i] / xi);
        Jv[i] = Jprofile(eta[i] / xi);
    }
    std::vector<std::size_t> sup;
    for (std::size_t i = 0; i < n; ++i)
        if (phi[i] != 0.0) sup.push_back(i);
    if (sup.empty()) throw accuracy_error("appendix_form_ratio: zero test function");
    double form = 0.0, mass = 0.0;
    for (std::size_t i : sup) {
        double row = 0.0;
        for (std::size_t j : sup) row += Jv[j] * phi[j] * w[j] / (eta[i] + eta[j]);
        form += Jv[i] * phi[i] * w[i] * row;
        mass += phi[i] * phi[i] * w[i];
    }
    return form / mass;
}

}  // namespace detail

// Quadratic form iint J(eta1) J(eta2) phi phi / (eta1 + eta2) against the
// mass of phi; the plateau flag reports stability under doubling k_max and
// the band resolution.
inline FormRatioReport appendix_form_ratio(const std::function<double(double)>& Jprofile,
                                           int j_max,
                                           const std::function<double(double)>& phi_profile,
                                           int k_max, int n_background = 400,
                                           int n_per_band = 16) {
    FormRatioReport rep;
    rep.k_max = k_max;
    rep.j_max = j_max;
    rep.ratio = detail::appendix_form_once(Jprofile, j_max, phi_profile, k_max, n_background,
                                           n_per_band);
    double refined = detail::appendix_form_once(Jprofile, j_max, phi_profile, 2 * k_max,
                                                2 * n_background, 2 * n_per_band);
    rep.plateau_flag = std::abs(refined - rep.ratio) <= 0.05 * std::abs(rep.ratio);
    return rep;
}

inline FormRatioReport appendix_form_ratio(const AppendixWeight& weight,
                                           const std::function<double(double)>& phi_profile,
                                           int k_max, int n_background = 400,
                                           int n_per_band = 16) {
    return appendix_form_ratio(weight_profile(weight), weight.j_max, phi_profile, k_max,
                               n_background, n_per_band);
}

// phi with equal L2 mass on every band (the adversarial profile for the
// j-weighted terms).
inline std::function<double(double)> appendix_adversarial_phi(const AppendixWeight& weight) {
    int jm = weight.j_max;
    return [jm](double q) {
        double j = std::round(std::log2(q));
        if (j < 1 || j > jm) return 0.0;
        double tj = std::pow(2.0, j);
        if (!(q >= tj - 1.0 / tj && q <= tj)) return 0.0;
        double width = 1.0 / tj;
        return 1.0 / std::sqrt(width * jm);  // unit mass per band
    };
}

// Discrete sup over phi of the slice form (largest eigenvalue of the
// weighted kernel); with J = 1 this converges to Hilbert's constant pi.
inline double appendix_form_sup(const std::function<double(double)>& Jprofile, int j_max,
                                int k_max, int n_background = 600, int n_per_band = 16) {
    std::vector<double> eta, w;
    detail::appendix_eta_grid(1.0, k_max, j_max, n_background, n_per_band, eta, w);
    const int n = static_cast<int>(eta.size());
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = Jprofile(eta[i]) * Jprofile(eta[j]) * std::sqrt(w[i] * w[j]) /
                       (eta[i] + eta[j]);
            A(i, j) = v;
            A(j, i) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    return es.eigenvalues().maxCoeff();
}

// ||u1(t=0)||_{L2} against ||g^ ||xi|^2+delta|^{1/4}||_{L2(hyperbolic)}: the
// Plancherel identity behind the parabolic change of variables, evaluated
// through the eta-substituted spectrum (exact semidiscrete resampling).
inline std::pair<double, double> hyperbolic_sharpness(const BoundaryField& g) {
    const Grid& gr = g.grid;
    BoundaryField ghat = detail::as_frequency(g);

    // hyperbolic-mass precondition
    double hyp = 0.0, tot = 0.0;
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        double xi2 = xi_norm2_of_flat(gr, kf);
        for (int m = 0; m < gr.Nt; ++m) {
            double a = std::norm(ghat.at(kf, m));
            tot += a;
            if (xi2 + gr.delta(m) < 0.0) hyp += a;
        }
    }
    if (tot == 0.0) return {0.0, 0.0};
    if (hyp < 0.99 * tot)
        throw precondition_error("hyperbolic_sharpness: less than 99% hyperbolic mass");

    BoundaryField sd = ghat;
    detail::transform_t_axis(sd.v, gr, Direction::inverse);
    sd.rep = Rep::semidiscrete;

    double cellx = 1.0;
    for (int a = 0; a < gr.n_tangential(); ++a) cellx *= gr.dxi() / (2.0 * pi);

    // lhs: || 2 eta g^(xi, -eta^2 - |xi|^2) 1_{eta>0} ||_{L2} in the full-line
    // eta Plancherel measure (the u1 spectrum at t = 0)
    std::vector<double> acc(gr.n_xmodes());
    const double deta = 2.0 * pi / (2.0 * gr.Ly);
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        double xi2 = xi_norm2_of_flat(gr, kf);
        double eta1_max = std::sqrt(std::max(0.0, -gr.delta(0) - xi2));
        double s = 0.0;
        for (int r = 0; r < gr.ny_full(); ++r) {
            double eta = gr.eta(r);
            if (eta <= 0.0 || eta > eta1_max) continue;
            cx v = 2.0 * eta * resample_parabolic(sd, kf, -eta * eta - xi2);
            s += std::norm(v);
        }
        acc[kf] = s * deta / (2.0 * pi);
    }
    double lhs = std::sqrt(pairwise_sum(acc) * cellx);

    // rhs: (1/pi)^{1/2} weighted hyperbolic mass of the grid spectrum
    std::vector<double> acc2(gr.n_xmodes());
    for (std::size_t kf = 0; kf < gr.n_xmodes(); ++kf) {
        double xi2 = xi_norm2_of_flat(gr, kf);
        double s = 0.0;
        for (int m = 0; m < gr.Nt; ++m) {
            double w = xi2 + gr.delta(m);
            if (w >= 0.0) continue;
            s += std::sqrt(-w) * std::norm(ghat.at(kf, m));
        }
        acc2[kf] = s * gr.ddelta();
    }
    double rhs = std::sqrt(pairwise_sum(acc2) * cellx / pi);
    return {lhs, rhs};
}

}  // namespace halfspace
