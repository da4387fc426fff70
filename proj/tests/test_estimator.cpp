#include <catch2/catch_amalgamated.hpp>

#include <halfspace/estimator.hpp>

#include "oracles.hpp"

using namespace halfspace;

TEST_CASE("admissible_pairs") {
    auto has = [](const std::vector<AdmissiblePair>& v, double p, double q) {
        for (const auto& a : v)
            if (std::abs(a.p() - p) < 1e-12 && std::abs(a.q() - q) < 1e-12) return true;
        return false;
    };
    auto d2 = admissible_pairs(2, 6);
    CHECK(has(d2, 4.0, 4.0));
    auto d3 = admissible_pairs(3, 6);
    CHECK(has(d3, 4.0, 3.0));
    auto d1 = admissible_pairs(1, 6);
    CHECK(has(d1, 8.0, 4.0));
    for (int d : {1, 2, 3})
        for (const auto& a : admissible_pairs(d, 8)) {
            CHECK(a.p() > 2.0);
            CHECK(2.0 / a.p() + d / a.q() == Catch::Approx(d / 2.0).epsilon(1e-14));
        }
}

TEST_CASE("lpq_norm") {
    Grid g;
    g.Nx = 16;
    g.Ny = 16;
    g.Nt = 16;
    SECTION("zero field") {
        SampledField z(g, DomainTag::volume_spacetime);
        CHECK(lpq_norm(z, 4.0, 4.0) == 0.0);
    }
    SECTION("constant field closed form") {
        SampledField one(g, DomainTag::volume_spacetime);
        for (auto& z : one.v) z = cx{1.0, 0.0};
        double expect = std::pow(g.Lx * g.Ly, 0.25) * std::pow(g.Lt, 0.25);
        CHECK(lpq_norm(one, 4.0, 4.0) == Catch::Approx(expect).epsilon(1e-12));
        // infinity handling
        CHECK(lpq_norm(one, std::numeric_limits<double>::infinity(), 2.0) ==
              Catch::Approx(std::sqrt(g.Lx * g.Ly)).epsilon(1e-12));
    }
    SECTION("Gaussian against refined-grid quadrature") {
        auto sample = [](const Grid& gg) {
            VolumePacket p;
            p.gx[0] = {0.0, 1.0, 0.0};
            p.gy = {gg.Ly / 2, 1.0, 0.0};
            p.gt = {0.0, 1.0, 0.0};
            return p.spacetime(gg);
        };
        Grid gb = g;
        gb.Nx = 64;
        gb.Ny = 64;
        gb.Nt = 64;
        double base = lpq_norm(sample(gb), 4.0, 4.0);
        Grid g2 = g;
        g2.Nx = 128;
        g2.Ny = 128;
        g2.Nt = 128;
        double fine = lpq_norm(sample(g2), 4.0, 4.0);
        CHECK(base == Catch::Approx(fine).epsilon(1e-6));
    }
}

TEST_CASE("strichartz_report") {
    StrichartzSpec spec;
    spec.grid.Lx = 16.0;
    spec.grid.Nx = 32;
    spec.grid.Ly = 16.0;
    spec.grid.Ny = 32;
    spec.grid.Lt = 8.0;
    spec.grid.Nt = 32;
    SECTION("zero data raises") {
        spec.boundary_packet.amp = cx{};
        CHECK_THROWS_AS(strichartz_report(spec), accuracy_error);
    }
    SECTION("non-admissible pair raises") {
        spec.p = 3.0;
        CHECK_THROWS_AS(strichartz_report(spec), domain_error);
    }
    SECTION("Gaussian boundary data: finite, refinement-stable, scale-invariant") {
        spec.boundary_packet.gx[0] = {0.0, 1.2, 0.3};
        spec.boundary_packet.gt = {2.4, 0.4, -8.0};
        spec.refinements = 1;
        StrichartzReport rep = strichartz_report(spec);
        CHECK(std::isfinite(rep.ratio));
        CHECK(rep.ratio > 0.0);
        REQUIRE(rep.refinement_table.size() == 2);
        double r0 = rep.refinement_table[0].second, r1 = rep.refinement_table[1].second;
        CHECK(std::abs(r1 - r0) <= 0.10 * r0);
        for (auto& [lam, r] : rep.scaling_table) {
            (void)lam;
            CHECK(std::abs(r - rep.ratio) <= 0.10 * rep.ratio);
        }
    }
}

TEST_CASE("kernel_nts_bound") {
    SECTION("Fresnel line: y = y2 = 0 matches sqrt(pi/T)") {
        for (double T : {0.1, 0.5, 1.0, 4.0, 10.0}) {
            cx q = fresnel_damped_integral(T, 0.0);
            CHECK(std::abs(q) == Catch::Approx(std::sqrt(pi / T)).epsilon(1e-10));
        }
    }
    SECTION("damping sends the integral to zero (like 2/a for large a)") {
        double q60 = std::abs(fresnel_damped_integral(1.0, 60.0));
        double q600 = std::abs(fresnel_damped_integral(1.0, 600.0));
        CHECK(q60 <= 2.0 / 60.0 * 1.01);
        CHECK(q600 <= 2.0 / 600.0 * 1.01);
        CHECK(q600 < 0.2 * q60);
    }
    SECTION("monotone in y + y2 at fixed |t - s|") {
        for (double T : {0.1, 1.0, 10.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (double a : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
                double v = std::abs(fresnel_damped_integral(T, a));
                CHECK(v <= prev * (1.0 + 1e-12));
                prev = v;
            }
        }
    }
    SECTION("sup is finite and plateaus under sample refinement") {
        for (int d : {2, 3}) {
            auto amk = [](int n) {
                std::vector<double> v{0.0};
                for (int i = 0; i < n; ++i) v.push_back(0.05 * std::pow(200.0, double(i) / (n - 1)));
                return v;
            };
            auto tmk = [](int n) {
                std::vector<double> v;
                for (int i = 0; i < n; ++i) v.push_back(0.1 * std::pow(100.0, double(i) / (n - 1)));
                return v;
            };
            KernelBoundReport coarse = kernel_nts_bound(d, amk(12), tmk(12));
            KernelBoundReport fine = kernel_nts_bound(d, amk(24), tmk(24));
            CHECK(std::isfinite(coarse.sup));
            CHECK(std::abs(fine.sup - coarse.sup) <= 0.05 * coarse.sup);
        }
    }
}

TEST_CASE("laplace_opnorm") {
    SECTION("N = 64 lands in the coarse bracket") {
        double v = laplace_opnorm(64).opnorm;
        CHECK(v >= 1.5);
        CHECK(v <= 1.8);
    }
    SECTION("monotone nondecreasing and convergent in N") {
        double v256 = laplace_opnorm(256).opnorm;
        double v512 = laplace_opnorm(512).opnorm;
        double v1024 = laplace_opnorm(1024).opnorm;
        CHECK(v512 >= v256 - 1e-12);
        CHECK(v1024 >= v512 - 1e-12);
        CHECK(std::abs(v1024 - v512) <= 0.01 * v512);
    }
    SECTION("top eigenpair is self-consistent to 1e-10") {
        LaplaceOpResult r = laplace_opnorm(128);
        Eigen::VectorXd Av = r.form * r.top_vector;
        double lam = r.opnorm * r.opnorm;
        CHECK((Av - lam * r.top_vector).norm() <= 1e-10 * lam);
    }
    SECTION("small N rejected") { CHECK_THROWS_AS(laplace_opnorm(32), domain_error); }
}

TEST_CASE("appendix weight construction") {
    AppendixWeight w = appendix_weight_build(8);
    SECTION("band values") {
        // eta/xi = 2^5 sits at the right edge of band 5
        CHECK(w.r(1.0, 32.0) == 5.0);
        CHECK(w.J(1.0, 32.0) == 6.0);
        // eta/xi = 3 lies between band 1 ([1.5, 2]) and band 2 ([3.75, 4])
        CHECK(w.r(1.0, 3.0) == 0.0);
        CHECK(w.J(1.0, 3.0) == 1.0);
        // interior of band 2
        CHECK(w.r(1.0, 3.9) == 2.0);
        // |xi| symmetry
        CHECK(w.r(-1.0, 3.9) == 2.0);
    }
    SECTION("sup J = 1 + j_max, attained inside the thinnest band") {
        double sup = 0.0;
        for (double q = 0.25; q < 300.0; q *= 1.0009) sup = std::max(sup, w.J(1.0, q));
        for (int j = 1; j <= 8; ++j) {
            double tj = std::pow(2.0, j);
            sup = std::max(sup, w.J(1.0, tj - 0.5 / tj));
        }
        CHECK(sup == 1.0 + 8.0);
        CHECK(w.sup_J() == 9.0);
    }
    SECTION("p is anisotropically 1-homogeneous and dominated by the sqrt weight") {
        for (double xi : {0.5, 1.0, 3.0})
            for (double de : {-0.2, 1.0, 7.0, 40.0}) {
                if (de + xi * xi <= 0) continue;
                double p1 = w.p(xi, de);
                CHECK(p1 <= std::sqrt(de + xi * xi) + 1e-14);
                for (double lam : {0.5, 2.0})
                    CHECK(w.p(lam * xi, lam * lam * de) ==
                          Catch::Approx(lam * p1).epsilon(1e-12));
            }
    }
}

TEST_CASE("appendix_form_ratio") {
    SECTION("J = 1 with the indicator of [1,2]: explicit double integral") {
        auto phi = [](double q) { return (q >= 1.0 && q <= 2.0) ? 1.0 : 0.0; };
        FormRatioReport rep = appendix_form_ratio(unit_weight(), 1, phi, 8, 200000, 16);
        // oracle: direct trapezoid of iint_{[1,2]^2} 1/(x+y), mass 1
        const int nq = 4000;
        double acc = 0.0;
        for (int i = 0; i <= nq; ++i)
            for (int j = 0; j <= nq; ++j) {
                double x = 1.0 + double(i) / nq, y = 1.0 + double(j) / nq;
                double wq = ((i == 0 || i == nq) ? 0.5 : 1.0) * ((j == 0 || j == nq) ? 0.5 : 1.0);
                acc += wq / (x + y);
            }
        acc /= double(nq) * nq;
        CHECK(rep.ratio == Catch::Approx(acc).epsilon(1e-4));
    }
    SECTION("J = 1, sup over phi approaches Hilbert's constant pi") {
        double sup = appendix_form_sup(unit_weight(), 1, 40, 1280, 8);
        CHECK(sup == Catch::Approx(pi).epsilon(0.03));
        CHECK(sup < pi + 1e-9);
    }
    SECTION("appendix weight with the adversarial band profile plateaus") {
        AppendixWeight w = appendix_weight_build(8);
        auto phi = appendix_adversarial_phi(w);
        FormRatioReport rep = appendix_form_ratio(w, phi, 20);
        CHECK(std::isfinite(rep.ratio));
        CHECK(rep.ratio > 0.0);
        CHECK(rep.plateau_flag);
        // the witness pair: the ratio stays bounded while sup J = 1 + j_max
        CHECK(w.sup_J() == 9.0);
    }
}

TEST_CASE("hyperbolic_sharpness") {
    Grid g;
    g.Lx = 16.0;
    g.Nx = 32;
    g.Ly = 16.0;
    g.Ny = 128;
    g.Lt = 8.0;
    g.Nt = 128;
    SECTION("zero data") {
        BoundaryField z(g, Rep::physical);
        auto [lhs, rhs] = hyperbolic_sharpness(z);
        CHECK(lhs == 0.0);
        CHECK(rhs == 0.0);
    }
    SECTION("single hyperbolic mode: both sides equal, ratio 1") {
        // the one-mode spectrum resampled onto the eta axis is a Dirichlet
        // kernel of width ddelta/(2 eta0); the y-box must resolve it
        Grid gm = g;
        gm.Ly = 64.0;
        gm.Ny = 512;
        const int k0 = gm.Nx / 2 + 1;
        double xi0 = gm.xi(k0);
        int m0 = gm.Nt / 2 - 7;  // moderately hyperbolic slot
        REQUIRE(gm.delta(m0) + xi0 * xi0 < 0.0);
        BoundaryField f = single_mode_boundary(gm, k0, m0);
        auto [lhs, rhs] = hyperbolic_sharpness(f);
        CHECK(lhs == Catch::Approx(rhs).epsilon(2e-2));
    }
    SECTION("hyperbolic Gaussian packet: ratio within [0.9, 1.1]") {
        BoundaryPacket p;
        p.gx[0] = {0.0, 1.4, 0.0};
        p.gt = {0.0, 0.4, -25.0};  // deep hyperbolic content
        BoundaryField f = p.sample(g);
        auto [lhs, rhs] = hyperbolic_sharpness(f);
        CHECK(lhs / rhs >= 0.9);
        CHECK(lhs / rhs <= 1.1);
    }
    SECTION("elliptic-heavy data rejected") {
        BoundaryPacket p;
        p.gx[0] = {0.0, 1.4, 0.0};
        p.gt = {0.0, 0.5, 10.0};  // elliptic content
        CHECK_THROWS_AS(hyperbolic_sharpness(p.sample(g)), precondition_error);
    }
}
