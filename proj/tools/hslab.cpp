// hslab: batch experiment driver for the half-space Schrodinger laboratory.
// Subcommands parse a sectioned key=value config, run one experiment, and
// write a versioned JSON report (plus optional HSFIELD1 fields / CSV tables).
#include <CLI11.hpp>
#include <json.hpp>

#include <halfspace/config.hpp>
#include <halfspace/estimator.hpp>
#include <halfspace/io.hpp>
#include <halfspace/nls.hpp>
#include <halfspace/symbol_expr.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

using namespace halfspace;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Grid grid_from(const Config& cfg) {
    Grid g;
    g.d = static_cast<int>(cfg.get_int("grid", "d", 2));
    g.Lx = cfg.get_double("grid", "Lx", 16.0);
    g.Nx = static_cast<int>(cfg.get_int("grid", "Nx", 64));
    g.Ly = cfg.get_double("grid", "Ly", 16.0);
    g.Ny = static_cast<int>(cfg.get_int("grid", "Ny", 64));
    g.Lt = cfg.get_double("grid", "Lt", 16.0);
    g.Nt = static_cast<int>(cfg.get_int("grid", "Nt", 64));
    g.offset_x = cfg.get_double("grid", "offset_x", 0.0);
    g.offset_t = cfg.get_double("grid", "offset_t", 0.5);
    g.validate();
    return g;
}

Gaussian1D axis_gaussian(const Config& cfg, const std::string& sec, const std::string& ax) {
    Gaussian1D a;
    a.center = cfg.get_double(sec, ax + "_center", 0.0);
    a.sigma = cfg.get_double(sec, ax + "_sigma", 1.0);
    a.momentum = cfg.get_double(sec, ax + "_momentum", 0.0);
    return a;
}

BoundaryField boundary_data_from(const Config& cfg, const Grid& g, const std::string& sec) {
    std::string kind = cfg.get_string(sec, "kind", "zero");
    if (kind == "zero") return BoundaryField(g, Rep::physical);
    if (kind == "file") {
        AnyField f = read_field(cfg.get_string(sec, "path"));
        if (!std::holds_alternative<BoundaryField>(f))
            throw structural_error("[" + sec + "]: file does not hold boundary data");
        BoundaryField b = std::get<BoundaryField>(std::move(f));
        require_same_grid(b.grid, g, sec.c_str());
        return b;
    }
    if (kind == "gaussian") {
        BoundaryPacket p;
        p.amp = cx{cfg.get_double(sec, "amp_re", 1.0), cfg.get_double(sec, "amp_im", 0.0)};
        for (int a = 0; a < g.n_tangential(); ++a) p.gx[a] = axis_gaussian(cfg, sec, "x");
        p.gt = axis_gaussian(cfg, sec, "t");
        return extend_zero(p.sample(g));
    }
    if (kind == "single-mode") {
        int k = g.Nx / 2, m = g.Nt / 2;
        if (cfg.has(sec, "k_slot")) {
            k = static_cast<int>(cfg.get_int(sec, "k_slot"));
            m = static_cast<int>(cfg.get_int(sec, "m_slot"));
        } else {
            auto [kk, mm] = nearest_mode(g, cfg.get_double(sec, "xi0", 0.0),
                                         cfg.get_double(sec, "delta0", 1.0));
            k = kk;
            m = mm;
        }
        cx coeff{cfg.get_double(sec, "coeff_re", 1.0), cfg.get_double(sec, "coeff_im", 0.0)};
        return transformed(single_mode_boundary(g, k, m, coeff), Direction::inverse);
    }
    throw structural_error("[" + sec + "] kind: unknown data kind '" + kind + "'");
}

SampledField snapshot_data_from(const Config& cfg, const Grid& g, const std::string& sec) {
    std::string kind = cfg.get_string(sec, "kind", "zero");
    std::string ext = cfg.get_string(sec, "extension", "zero");
    YExtension ye = ext == "odd"    ? YExtension::odd
                    : ext == "even" ? YExtension::even
                                    : YExtension::zero;
    if (kind == "zero") {
        SampledField f(g, DomainTag::volume_snapshot);
        f.ext = ye;
        return f;
    }
    if (kind == "file") {
        AnyField f = read_field(cfg.get_string(sec, "path"));
        if (!std::holds_alternative<SampledField>(f))
            throw structural_error("[" + sec + "]: file does not hold volume data");
        SampledField s = std::get<SampledField>(std::move(f));
        s.require_tag(DomainTag::volume_snapshot, sec.c_str());
        require_same_grid(s.grid, g, sec.c_str());
        s.ext = ye;
        return s;
    }
    if (kind == "gaussian") {
        VolumePacket p;
        p.amp = cx{cfg.get_double(sec, "amp_re", 1.0), cfg.get_double(sec, "amp_im", 0.0)};
        for (int a = 0; a < g.n_tangential(); ++a) p.gx[a] = axis_gaussian(cfg, sec, "x");
        p.gy = axis_gaussian(cfg, sec, "y");
        return p.snapshot(g, ye);
    }
    throw structural_error("[" + sec + "] kind: unknown data kind '" + kind + "'");
}

std::optional<SampledField> forcing_from(const Config& cfg, const Grid& g) {
    std::string kind = cfg.get_string("forcing", "kind", "none");
    if (kind == "none") return std::nullopt;
    if (kind == "gaussian") {
        VolumePacket p;
        p.amp = cx{cfg.get_double("forcing", "amp_re", 1.0),
                   cfg.get_double("forcing", "amp_im", 0.0)};
        for (int a = 0; a < g.n_tangential(); ++a) p.gx[a] = axis_gaussian(cfg, "forcing", "x");
        p.gy = axis_gaussian(cfg, "forcing", "y");
        p.gt = axis_gaussian(cfg, "forcing", "t");
        return p.spacetime(g);
    }
    if (kind == "file") {
        AnyField f = read_field(cfg.get_string("forcing", "path"));
        SampledField s = std::get<SampledField>(std::move(f));
        s.require_tag(DomainTag::volume_spacetime, "forcing");
        require_same_grid(s.grid, g, "forcing");
        return s;
    }
    throw structural_error("[forcing] kind: unknown data kind '" + kind + "'");
}

BoundarySymbol symbol_from(const Config& cfg) {
    std::string name = cfg.get_string("symbol", "name", "dirichlet");
    if (name == "dirichlet") return BoundarySymbol::dirichlet();
    if (name == "neumann") return BoundarySymbol::neumann();
    if (name == "transparent") return BoundarySymbol::transparent();
    if (name == "custom")
        return parse_symbol(cfg.get_string("symbol", "label", "custom"),
                            cfg.get_string("symbol", "b1"), cfg.get_string("symbol", "b2"));
    throw structural_error("[symbol] name: unknown symbol '" + name + "'");
}

struct Out {
    fs::path dir;
    json report;

    explicit Out(const Config& cfg, const std::string& sub, long seed) {
        const char* env = std::getenv("HSLAB_OUT");
        dir = env ? fs::path(env) : fs::path(cfg.get_string("output", "dir", "."));
        fs::create_directories(dir);
        report["report_version"] = 1;
        report["subcommand"] = sub;
        report["seed"] = seed;
        auto now = std::chrono::system_clock::now().time_since_epoch();
        report["timestamp"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }

    void write(const Config& cfg) {
        std::string name = cfg.get_string("output", "report", "report.json");
        std::ofstream out(dir / name);
        out << report.dump(2) << "\n";
        std::cout << (dir / name).string() << "\n";
    }
};

void write_csv(const fs::path& p, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(p);
    out << header << "\n";
    out.precision(17);
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
}

json norm_entry(const std::string& variant, double s, double value) {
    return json{{"variant", variant}, {"s", s}, {"value", value}};
}

int run_check_kl(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 20250809);
    BoundarySymbol sym = symbol_from(cfg);
    KLSampleSpec spec;
    spec.seed = static_cast<std::uint64_t>(seed);
    spec.n_random = static_cast<int>(cfg.get_int("run", "n_random", 10000));
    TimeDirection dir = cfg.get_string("run", "direction", "forward") == "backward"
                            ? TimeDirection::backward
                            : TimeDirection::forward;
    KLReport rep = kl_margin(sym, spec, dir);
    Out out(cfg, "check-kl", seed);
    out.report["symbol"] = sym.name;
    out.report["direction"] = dir == TimeDirection::backward ? "backward" : "forward";
    out.report["alpha_hat"] = rep.alpha_hat;
    out.report["beta_hat"] = rep.beta_hat;
    out.report["n_samples"] = rep.n_samples;
    out.report["n_excluded"] = rep.n_excluded;
    out.report["excluded_flag"] = rep.excluded_flag;
    out.report["witness_min"] = {{"xi", rep.witness_min.xi_abs},
                                 {"delta", rep.witness_min.delta},
                                 {"gamma", rep.witness_min.gamma},
                                 {"hyperbolic", rep.witness_min.xi_abs * rep.witness_min.xi_abs +
                                                        rep.witness_min.delta <
                                                    0.0}};
    out.write(cfg);
    return 0;
}

int run_norms(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    Grid g = grid_from(cfg);
    Out out(cfg, "norms", seed);
    json entries = json::array();
    if (cfg.has("boundary_data", "kind")) {
        BoundaryField b = boundary_data_from(cfg, g, "boundary_data");
        for (double s : {0.0, 0.5, 1.0, 2.0}) {
            entries.push_back(norm_entry("Hs-boundary", s, hs_boundary_norm(b, s)));
            entries.push_back(norm_entry("Hs-dual", s, hs_dual_norm(b, s)));
            entries.push_back(norm_entry("bourgain", s, bourgain_norm(b, s)));
        }
        entries.push_back(norm_entry("L2", 0.0, l2_norm(b)));
        auto r = i_functional(b);
        out.report["i_functional"] = {{"infinite", r.infinite},
                                      {"value", r.value},
                                      {"slope", r.slope}};
    }
    if (cfg.has("initial_data", "kind")) {
        SampledField u0 = snapshot_data_from(cfg, g, "initial_data");
        entries.push_back(norm_entry("L2-volume", 0.0, l2_norm(u0)));
        FullSnapshot full = make_full_snapshot(u0);
        detail::full_snapshot_transform(full, Direction::forward);
        for (double s : {0.0, 1.0})
            entries.push_back(norm_entry("sobolev-volume", s, sobolev_full_norm(g, full.v, s)));
    }
    out.report["norms"] = entries;
    out.write(cfg);
    return 0;
}

int run_solve_bvp(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    Grid g = grid_from(cfg);
    BoundaryField gb = boundary_data_from(cfg, g, "boundary_data");
    BoundarySymbol sym = symbol_from(cfg);
    BvpOptions opt;
    opt.s = cfg.get_double("run", "s", 0.0);
    opt.zero_extend = cfg.get_bool("run", "zero_extend", true);
    opt.quadrature = cfg.get_string("run", "quadrature", "grid-delta") == "eta-uniform"
                         ? BvpQuadrature::eta_uniform
                         : BvpQuadrature::grid_delta;
    BvpDiagnostics diag;
    SampledField u = solve_pure_bvp(gb, sym, opt, &diag);
    Out out(cfg, "solve-bvp", seed);
    out.report["kl_alpha"] = diag.kl_alpha;
    out.report["causality_ratio"] = diag.causality_ratio;
    out.report["causality_warning"] = diag.causality_warning;
    out.report["rough_s_flag"] = diag.rough_s_flag;
    out.report["norms"] = {norm_entry("L4L4", 0.0, lpq_norm(u, 4.0, 4.0)),
                           norm_entry("L2", 0.0, l2_norm(u))};
    if (cfg.has("output", "field")) write_field(out.dir / cfg.get_string("output", "field"), u);
    out.write(cfg);
    return 0;
}

int run_solve_ibvp(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    Grid g = grid_from(cfg);
    IBVPData data;
    data.u0 = snapshot_data_from(cfg, g, "initial_data");
    if (cfg.has("boundary_data", "kind")) data.g = boundary_data_from(cfg, g, "boundary_data");
    data.f = forcing_from(cfg, g);
    data.symbol = symbol_from(cfg);
    data.s = cfg.get_double("run", "s", 0.0);
    IBVPReport rep;
    SampledField u = solve_ibvp(data, &rep);
    Out out(cfg, "solve-ibvp", seed);
    out.report["compat"] = {
        {"status", rep.compat.status == CompatStatus::pass    ? "pass"
                   : rep.compat.status == CompatStatus::fail ? "fail"
                                                             : "not-required"},
        {"diagnostic", rep.compat.diagnostic}};
    out.report["correction_norm"] = rep.correction_norm;
    out.report["causality_ratio"] = rep.bvp.causality_ratio;
    out.report["rough_s_flag"] = rep.bvp.rough_s_flag;
    std::vector<std::vector<double>> rows;
    for (int n = 0; n < g.Nt; ++n) {
        double t = g.t_pos(n);
        if (t < 0.0) continue;
        double m2 = 0.0;
        for (std::size_t kf = 0; kf < g.n_xmodes(); ++kf)
            for (int j = 0; j < g.Ny; ++j) m2 += std::norm(u.at(kf, j, n));
        rows.push_back({t, std::sqrt(m2 * detail::cell_physical(g, DomainTag::volume_snapshot))});
    }
    if (cfg.has("output", "csv"))
        write_csv(out.dir / cfg.get_string("output", "csv"), "t,l2", rows);
    out.report["l2_first"] = rows.front()[1];
    out.report["l2_last"] = rows.back()[1];
    if (cfg.has("output", "field")) write_field(out.dir / cfg.get_string("output", "field"), u);
    out.write(cfg);
    return 0;
}

int run_solve_nls(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    Grid g = grid_from(cfg);
    NLSProblem prob;
    prob.u0 = snapshot_data_from(cfg, g, "initial_data");
    prob.g = boundary_data_from(cfg, g, "boundary_data");
    prob.a = cfg.get_double("run", "a", 3.0);
    prob.epsilon = static_cast<int>(cfg.get_int("run", "epsilon", 1));
    prob.T = cfg.get_double("run", "T", 0.5);
    prob.tol = cfg.get_double("run", "tol", 1e-10);
    prob.max_iter = static_cast<int>(cfg.get_int("run", "max_iter", 25));
    prob.p = cfg.get_double("run", "p", 4.0);
    prob.q = cfg.get_double("run", "q", 4.0);
    Out out(cfg, "solve-nls", seed);
    double horizon = cfg.get_double("run", "horizon", 0.0);
    if (horizon > 0.0) {
        double bound = cfg.get_double("run", "monitor_bound", 1.0);
        GlobalRunResult run = global_small_solve(prob, horizon, bound);
        json mon = json::array();
        std::vector<std::vector<double>> rows;
        for (auto& [T, m] : run.monitor) {
            mon.push_back({{"T", T}, {"m", m}});
            rows.push_back({T, m});
        }
        out.report["monitor"] = mon;
        if (cfg.has("output", "csv"))
            write_csv(out.dir / cfg.get_string("output", "csv"), "T,m", rows);
        if (cfg.has("output", "field"))
            write_field(out.dir / cfg.get_string("output", "field"), run.u);
    } else {
        PicardResult res = picard_solve(prob);
        out.report["converged"] = res.converged;
        out.report["iterations"] = res.log.size();
        json lg = json::array();
        std::vector<std::vector<double>> rows;
        for (const auto& r : res.log) {
            lg.push_back({{"iter", r.iter},
                          {"distance", r.distance},
                          {"contraction", r.contraction},
                          {"m", r.monitor}});
            rows.push_back({double(r.iter), r.contraction, r.monitor});
        }
        out.report["log"] = lg;
        if (cfg.has("output", "csv"))
            write_csv(out.dir / cfg.get_string("output", "csv"), "iter,contraction,m", rows);
        if (cfg.has("output", "field"))
            write_field(out.dir / cfg.get_string("output", "field"), res.u);
    }
    out.write(cfg);
    return 0;
}

int run_scattering(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    Grid g = grid_from(cfg);
    NLSProblem prob;
    prob.u0 = snapshot_data_from(cfg, g, "initial_data");
    prob.g = boundary_data_from(cfg, g, "boundary_data");
    prob.T = cfg.get_double("run", "T", 1.0);
    prob.a = cfg.get_double("run", "a", 3.0);
    prob.epsilon = static_cast<int>(cfg.get_int("run", "epsilon", 1));
    double horizon = cfg.get_double("run", "horizon", 4.0);
    double bound = cfg.get_double("run", "monitor_bound", 1.0);
    GlobalRunResult run = global_small_solve(prob, horizon, bound);
    std::vector<double> times;
    {
        std::istringstream ts(cfg.get_string("run", "sample_times"));
        double v;
        char comma;
        while (ts >> v) {
            times.push_back(v);
            ts >> comma;
        }
    }
    ScatteringReport rep = scattering_profile(run, times);
    Out out(cfg, "scattering", seed);
    out.report["times"] = rep.times;
    out.report["cauchy_diff"] = rep.cauchy_diff;
    out.report["decreasing"] = rep.decreasing;
    out.report["linear_diff"] = rep.linear_diff;
    out.report["linear_decreasing"] = rep.linear_decreasing;
    out.report["extension_choice_diff"] = rep.extension_choice_diff;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i + 1 < rep.times.size(); ++i)
        rows.push_back({rep.times[i], rep.cauchy_diff[i]});
    if (cfg.has("output", "csv"))
        write_csv(out.dir / cfg.get_string("output", "csv"), "t,cauchy_diff", rows);
    if (cfg.has("output", "field"))
        write_field(out.dir / cfg.get_string("output", "field"), rep.profile);
    out.write(cfg);
    return 0;
}

int run_strichartz(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    StrichartzSpec spec;
    spec.grid = grid_from(cfg);
    std::string src = cfg.get_string("run", "source", "pure-bvp");
    spec.source = src == "cauchy"          ? StrichartzSource::cauchy
                  : src == "forcing"       ? StrichartzSource::forcing
                  : src == "forcing-trace" ? StrichartzSource::forcing_trace
                                           : StrichartzSource::pure_bvp;
    spec.p = cfg.get_double("run", "p", 4.0);
    spec.q = cfg.get_double("run", "q", 4.0);
    spec.s = cfg.get_double("run", "s", 0.0);
    spec.refinements = static_cast<int>(cfg.get_int("run", "refinements", 1));
    spec.symbol = symbol_from(cfg);
    if (spec.source == StrichartzSource::pure_bvp) {
        spec.boundary_packet.amp = cx{cfg.get_double("boundary_data", "amp_re", 1.0),
                                      cfg.get_double("boundary_data", "amp_im", 0.0)};
        for (int a = 0; a < spec.grid.n_tangential(); ++a)
            spec.boundary_packet.gx[a] = axis_gaussian(cfg, "boundary_data", "x");
        spec.boundary_packet.gt = axis_gaussian(cfg, "boundary_data", "t");
    } else {
        std::string sec = spec.source == StrichartzSource::cauchy ? "initial_data" : "forcing";
        spec.volume_packet.amp =
            cx{cfg.get_double(sec, "amp_re", 1.0), cfg.get_double(sec, "amp_im", 0.0)};
        for (int a = 0; a < spec.grid.n_tangential(); ++a)
            spec.volume_packet.gx[a] = axis_gaussian(cfg, sec, "x");
        spec.volume_packet.gy = axis_gaussian(cfg, sec, "y");
        spec.volume_packet.gt = axis_gaussian(cfg, sec, "t");
    }
    StrichartzReport rep = strichartz_report(spec);
    Out out(cfg, "strichartz", seed);
    out.report["p"] = rep.p;
    out.report["q"] = rep.q;
    out.report["s"] = rep.s;
    out.report["ratio"] = rep.ratio;
    json rt = json::array(), st = json::array();
    std::vector<std::vector<double>> rrows, srows;
    for (auto& [N, r] : rep.refinement_table) {
        rt.push_back({{"N", N}, {"ratio", r}});
        rrows.push_back({double(N), r});
    }
    for (auto& [lam, r] : rep.scaling_table) {
        st.push_back({{"lambda", lam}, {"ratio", r}});
        srows.push_back({lam, r});
    }
    out.report["refinement_table"] = rt;
    out.report["scaling_table"] = st;
    if (cfg.has("output", "csv")) {
        write_csv(out.dir / ("refine_" + cfg.get_string("output", "csv")), "N,ratio", rrows);
        write_csv(out.dir / ("scale_" + cfg.get_string("output", "csv")), "lambda,ratio", srows);
    }
    out.write(cfg);
    return 0;
}

int run_kernel_bound(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    int d = static_cast<int>(cfg.get_int("run", "d", 2));
    int na = static_cast<int>(cfg.get_int("run", "n_a", 24));
    int nt = static_cast<int>(cfg.get_int("run", "n_t", 24));
    std::vector<double> av{0.0}, tv;
    for (int i = 0; i < na; ++i) av.push_back(0.05 * std::pow(200.0, double(i) / (na - 1)));
    for (int i = 0; i < nt; ++i) tv.push_back(0.1 * std::pow(100.0, double(i) / (nt - 1)));
    KernelBoundReport rep = kernel_nts_bound(d, av, tv);
    KernelBoundReport fine = kernel_nts_bound(d, av, tv, 1e-13);
    Out out(cfg, "kernel-bound", seed);
    out.report["d"] = d;
    out.report["sup"] = rep.sup;
    out.report["sup_fresnel_line"] = rep.sup_y0;
    out.report["n_samples"] = rep.n_samples;
    out.report["quadrature_consistency"] = std::abs(fine.sup - rep.sup) / rep.sup;
    out.write(cfg);
    return 0;
}

int run_laplace_norm(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    int n = static_cast<int>(cfg.get_int("run", "N", 2048));
    LaplaceOpResult res = laplace_opnorm(n, cfg.get_double("run", "u_min", -10.0),
                                         cfg.get_double("run", "u_max", 10.0));
    Out out(cfg, "laplace-norm", seed);
    out.report["N"] = n;
    out.report["opnorm"] = res.opnorm;
    out.report["sqrt_pi"] = std::sqrt(pi);
    out.write(cfg);
    return 0;
}

int run_appendix(const Config& cfg) {
    long seed = cfg.get_int("run", "seed", 0);
    int j_max = static_cast<int>(cfg.get_int("run", "j_max", 8));
    int k_max = static_cast<int>(cfg.get_int("run", "k_max", 20));
    AppendixWeight w = appendix_weight_build(j_max);
    auto phi = appendix_adversarial_phi(w);
    FormRatioReport rep = appendix_form_ratio(w, phi, k_max);
    double hilbert = appendix_form_sup(unit_weight(), 1, 40, 1280, 8);
    Out out(cfg, "appendix", seed);
    out.report["j_max"] = j_max;
    out.report["k_max"] = k_max;
    out.report["sup_J"] = w.sup_J();
    out.report["form_ratio"] = rep.ratio;
    out.report["plateau_flag"] = rep.plateau_flag;
    out.report["hilbert_sup"] = hilbert;
    out.report["hilbert_target"] = pi;
    out.write(cfg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-space Schrodinger laboratory"};
    app.footer(symbol_grammar_help());
    std::string config_path;
    int threads = 1;
    app.add_option("--threads", threads, "worker cap for internal parallel loops");

    std::map<std::string, int (*)(const Config&)> runners = {
        {"solve-ibvp", run_solve_ibvp},     {"solve-bvp", run_solve_bvp},
        {"solve-nls", run_solve_nls},       {"check-kl", run_check_kl},
        {"norms", run_norms},               {"strichartz", run_strichartz},
        {"kernel-bound", run_kernel_bound}, {"laplace-norm", run_laplace_norm},
        {"appendix", run_appendix},         {"scattering", run_scattering}};

    std::string chosen;
    for (auto& [name, fn] : runners) {
        (void)fn;
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->callback([&chosen, name = name] { chosen = name; });
    }
    app.require_subcommand(1);

    CLI11_PARSE(app, argc, argv);
    set_thread_cap(threads);

    try {
        Config cfg = Config::parse_file(config_path);
        return runners.at(chosen)(cfg);
    } catch (const config_parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const symbol_parse_error& e) {
        std::cerr << "symbol error: " << e.what() << "\n";
        return 1;
    } catch (const structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const singular_symbol_error& e) {
        std::cerr << "singular symbol: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_symbol_error& e) {
        std::cerr << "unsupported symbol: " << e.what() << "\n";
        return 2;
    } catch (const non_contraction_error& e) {
        std::cerr << "no contraction: " << e.what() << "\n";
        return 3;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return 3;
    }
}
