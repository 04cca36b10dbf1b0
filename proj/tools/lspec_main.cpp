// lspec: simulate symmetrized lag-tau auto-cross covariance matrices,
// evaluate the limiting spectral law, and run the Monte Carlo verification
// suites from the command line.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lspec/analysis.hpp"
#include "lspec/plot.hpp"

using namespace lspec;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct GridSpec {
    double lo = -1.0, hi = 1.0;
    int count = 101;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const auto p1 = s.find(':');
    const auto p2 = s.find(':', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw CLI::ValidationError("--grid", "expected lo:hi:count");
    try {
        g.lo = std::stod(s.substr(0, p1));
        g.hi = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
        g.count = std::stoi(s.substr(p2 + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected lo:hi:count");
    }
    if (g.count < 2 || g.hi <= g.lo)
        throw CLI::ValidationError("--grid", "need hi > lo and count >= 2");
    return g;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path);
    os << content;
    if (!os) throw IoError("write failed: " + path);
}

// config + wall-clock timestamp; kept out of the primary outputs so those
// stay byte-identical across reruns
void write_meta(const std::string& path, const SimulationConfig& cfg,
                DistributionKind dist, std::uint64_t seed) {
    char ts[64];
    const std::time_t now = std::time(nullptr);
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::ostringstream os;
    os << "{\"n\": " << cfg.n << ", \"T\": " << cfg.T << ", \"tau\": " << cfg.tau
       << ", \"dist\": \"" << to_string(dist) << "\", \"seed\": " << seed
       << ", \"generated_at\": \"" << ts << "\"}\n";
    write_file(path, os.str());
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out;
    for (double v : s.values) {
        out += fmt17(v);
        out += '\n';
    }
    return out;
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path);
    Spectrum s;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) s.values.push_back(std::stod(line));
    std::sort(s.values.begin(), s.values.end());
    return s;
}

struct CommonSim {
    int n = 200, T = 1000, tau = 1;
    std::string dist = "complex-gaussian";
    std::uint64_t seed = 1;

    SimulationConfig config() const { return {n, T, tau}; }
    DistributionKind kind() const { return distribution_from_string(dist); }
};

void add_sim_flags(CLI::App* cmd, CommonSim& sim) {
    cmd->add_option("--n", sim.n, "dimension n")->check(CLI::PositiveNumber);
    cmd->add_option("--T", sim.T, "sample length T")->check(CLI::PositiveNumber);
    cmd->add_option("--tau", sim.tau, "lag tau")->check(CLI::NonNegativeNumber);
    cmd->add_option("--dist", sim.dist, "complex-gaussian | real-gaussian | rademacher");
    cmd->add_option("--seed", sim.seed, "rng seed");
}

int run_verify(const std::string& suite, const CommonSim& sim, int reps,
               std::uint64_t seed0, int threads, double tol, double ks_tol,
               double delta0, double delta1, double scale, int k, int q,
               double min_rate, const std::string& out) {
    const auto emit = [&](const VerificationReport& rep) {
        if (out.empty()) return;
        std::ostringstream os;
        write_report_json(rep, os);
        write_file(out, os.str());
    };
    VerificationOptions opt;
    opt.threads = threads;

    if (suite == "extremes") {
        const auto rep = verify_extremes(sim.config(), sim.kind(), reps, seed0, opt);
        emit(rep);
        const auto s = rep.summary();
        const bool pass = s.all_solved && s.max_dev_max <= tol && s.max_dev_min <= tol;
        std::cout << (pass ? "PASS" : "FAIL") << " extremes: max|lmax-d|="
                  << fmt17(s.max_dev_max) << " max|lmin+d|=" << fmt17(s.max_dev_min)
                  << " tol=" << fmt17(tol) << "\n";
        return pass ? kExitPass : kExitFail;
    }
    if (suite == "no-outliers") {
        const auto rep = verify_extremes(sim.config(), sim.kind(), reps, seed0, opt);
        emit(rep);
        const auto s = rep.summary();
        const bool pass = s.all_solved && s.total_outliers == 0;
        std::cout << (pass ? "PASS" : "FAIL")
                  << " no-outliers: eigenvalues in probe intervals = "
                  << s.total_outliers << "\n";
        return pass ? kExitPass : kExitFail;
    }
    if (suite == "pointmass") {
        const auto rep = verify_extremes(sim.config(), sim.kind(), reps, seed0, opt);
        emit(rep);
        const double atom = lsd_point_mass(sim.config().ratio());
        const int bound = std::max(0, sim.n - (sim.T + sim.tau));
        bool pass = true;
        double worst_frac_dev = 0.0;
        for (const auto& rec : rep.records) {
            pass = pass && rec.solver_ok && rec.zero_count >= bound;
            const double frac = double(rec.near_zero_count) / double(sim.n);
            worst_frac_dev = std::max(worst_frac_dev, std::fabs(frac - atom));
        }
        pass = pass && worst_frac_dev <= 0.02;
        std::cout << (pass ? "PASS" : "FAIL") << " pointmass: zero-count bound "
                  << bound << ", max |near-zero-fraction - " << fmt17(atom)
                  << "| = " << fmt17(worst_frac_dev) << "\n";
        return pass ? kExitPass : kExitFail;
    }
    if (suite == "figure") {
        const auto rep = verify_extremes(sim.config(), sim.kind(), reps, seed0, opt);
        emit(rep);
        const auto s = rep.summary();
        const bool pass = s.all_solved && s.max_ks <= ks_tol;
        std::cout << (pass ? "PASS" : "FAIL") << " figure: max KS distance "
                  << fmt17(s.max_ks) << " tol " << fmt17(ks_tol) << "\n";
        return pass ? kExitPass : kExitFail;
    }
    if (suite == "lag-invariance") {
        SimulationConfig cfg = sim.config();
        cfg.tau = std::max(cfg.tau, 3);
        cfg.validate();
        std::vector<double> per_rep(reps, 0.0);
        parallel_reps(reps, threads, [&](int r) {
            const auto panel = sample_panel(cfg, sim.kind(), seed0 + std::uint64_t(r));
            const auto e1 = esd(hermitian_eigenvalues(build_m_tau(panel, 1)));
            const auto e3 = esd(hermitian_eigenvalues(build_m_tau(panel, 3)));
            per_rep[r] = esd_distance(e1, e3);
        });
        double worst = 0.0;
        for (double v : per_rep) worst = std::max(worst, v);
        const bool pass = worst <= ks_tol;
        std::cout << (pass ? "PASS" : "FAIL") << " lag-invariance: max ESD distance "
                  << fmt17(worst) << " tol " << fmt17(ks_tol) << "\n";
        return pass ? kExitPass : kExitFail;
    }
    if (suite == "detection") {
        SimulationConfig cfg = sim.config();
        cfg.tau = std::max(cfg.tau, 3);
        std::vector<int> hits(reps, 0);
        parallel_reps(reps, threads, [&](int r) {
            const std::uint64_t sd = seed0 + std::uint64_t(r);
            const auto fc = make_factor_config(cfg, k, q, scale, sd);
            const auto obs = simulate_factor_panel(fc, sd);
            const auto det = detect_orders(obs, 3, delta0, delta1);
            hits[r] = (det.k_hat == k && det.q_hat == q) ? 1 : 0;
        });
        int ok = 0;
        for (int h : hits) ok += h;
        const double rate = double(ok) / double(reps);
        const bool pass = rate >= min_rate;
        std::cout << (pass ? "PASS" : "FAIL") << " detection: (k,q)=(" << k << ","
                  << q << ") recovered in " << ok << "/" << reps
                  << " reps (need rate >= " << fmt17(min_rate) << ")\n";
        return pass ? kExitPass : kExitFail;
    }
    throw CLI::ValidationError("suite", "unknown suite " + suite);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetrized lag-tau auto-cross covariance spectra toolkit"};
    app.require_subcommand(1);

    auto* c_sim = app.add_subcommand("simulate", "simulate M_n(tau) and write its spectrum");
    CommonSim sim_args;
    std::string sim_out;
    add_sim_flags(c_sim, sim_args);
    c_sim->add_option("-o,--output", sim_out, "spectrum csv path")->required();

    auto* c_panel = app.add_subcommand("panel", "write an innovation panel as csv");
    CommonSim panel_args;
    std::string panel_out;
    double panel_trunc = 0.0;
    add_sim_flags(c_panel, panel_args);
    c_panel->add_option("-o,--output", panel_out, "panel csv path")->required();
    c_panel->add_option("--preprocess", panel_trunc,
                        "truncate/center/rescale at this point (default off)");

    auto* c_matrix = app.add_subcommand("matrix", "write M_n(tau) to a file");
    CommonSim mat_args;
    std::string mat_out, mat_format = "bin";
    add_sim_flags(c_matrix, mat_args);
    c_matrix->add_option("-o,--output", mat_out, "output path")->required();
    c_matrix->add_option("--format", mat_format, "bin | csv")
        ->check(CLI::IsMember({"bin", "csv"}));

    auto* c_boundary = app.add_subcommand("boundary", "print d(c) and the point mass");
    double bnd_c = 1.0;
    c_boundary->add_option("--c", bnd_c, "limiting ratio c")->required();

    auto* c_density = app.add_subcommand("density", "density or cdf curve over a grid");
    double den_c = 0.2;
    std::string den_grid = "-1.5:1.5:601", den_kind = "density", den_out;
    c_density->add_option("--c", den_c, "limiting ratio c")->required();
    c_density->add_option("--grid", den_grid, "lo:hi:count");
    c_density->add_option("--kind", den_kind, "density | cdf")
        ->check(CLI::IsMember({"density", "cdf"}));
    c_density->add_option("-o,--output", den_out, "curve csv path")->required();

    auto* c_st = app.add_subcommand("stieltjes", "branch diagnostics over a real grid");
    double st_c = 0.2, st_v = 0.3;
    std::string st_grid = "-3:3:121", st_out;
    c_st->add_option("--c", st_c, "limiting ratio c")->required();
    c_st->add_option("--grid", st_grid, "lo:hi:count for Re(z)");
    c_st->add_option("--v", st_v, "Im(z) > 0")->check(CLI::PositiveNumber);
    c_st->add_option("-o,--output", st_out, "diagnostics json path")->required();

    auto* c_verify = app.add_subcommand("verify", "run a Monte Carlo verification suite");
    std::string vf_suite;
    CommonSim vf_args;
    int vf_reps = 20, vf_threads = 0, vf_k = 1, vf_q = 1;
    std::uint64_t vf_seed0 = 1;
    double vf_tol = 0.15, vf_kstol = 0.06, vf_delta0 = 0.15, vf_delta1 = 0.15;
    double vf_scale = 5.0, vf_minrate = 0.9;
    std::string vf_out;
    c_verify
        ->add_option("suite", vf_suite,
                     "extremes | no-outliers | pointmass | figure | lag-invariance | detection")
        ->required();
    add_sim_flags(c_verify, vf_args);
    c_verify->add_option("--reps", vf_reps, "repetitions")->check(CLI::PositiveNumber);
    c_verify->add_option("--seed0", vf_seed0, "base seed (rep r uses seed0+r)");
    c_verify->add_option("--threads", vf_threads, "worker cap (0 = auto)");
    c_verify->add_option("--tol", vf_tol, "extreme-eigenvalue tolerance");
    c_verify->add_option("--ks-tol", vf_kstol, "KS / ESD distance tolerance");
    c_verify->add_option("--delta0", vf_delta0, "detection margin on the MP edge");
    c_verify->add_option("--delta1", vf_delta1, "detection margin on d(c_n)");
    c_verify->add_option("--scale", vf_scale, "factor signal scale");
    c_verify->add_option("--k", vf_k, "true factor count");
    c_verify->add_option("--q", vf_q, "true lag order");
    c_verify->add_option("--min-rate", vf_minrate, "required recovery rate");
    c_verify->add_option("-o,--output", vf_out, "report json path");

    auto* c_detect = app.add_subcommand("detect", "one-shot order detection on a simulated panel");
    CommonSim dt_args;
    int dt_k = 1, dt_q = 1, dt_taumax = 3;
    double dt_scale = 5.0, dt_delta0 = 0.15, dt_delta1 = 5.0;
    std::string dt_out;
    add_sim_flags(c_detect, dt_args);
    c_detect->add_option("--k", dt_k, "true factor count")->check(CLI::NonNegativeNumber);
    c_detect->add_option("--q", dt_q, "true lag order")->check(CLI::NonNegativeNumber);
    c_detect->add_option("--scale", dt_scale, "factor signal scale");
    c_detect->add_option("--tau-max", dt_taumax, "largest probed lag")->check(CLI::PositiveNumber);
    c_detect->add_option("--delta0", dt_delta0, "margin on the MP edge");
    c_detect->add_option("--delta1", dt_delta1, "margin on d(c_n)");
    c_detect->add_option("-o,--output", dt_out, "detection report json path");

    auto* c_plot = app.add_subcommand("plot", "histogram + density overlay svg");
    CommonSim plot_args;
    double plot_c = -1.0;
    std::string plot_in, plot_out, plot_title;
    int plot_bins = 0;
    add_sim_flags(c_plot, plot_args);
    c_plot->add_option("--c", plot_c, "ratio for the overlay (default n/T)");
    c_plot->add_option("--input", plot_in, "spectrum csv (skips simulation)");
    c_plot->add_option("--bins", plot_bins, "histogram bin override");
    c_plot->add_option("--title", plot_title, "plot title");
    c_plot->add_option("-o,--output", plot_out, "svg path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (c_sim->parsed()) {
            const auto panel = sample_panel(sim_args.config(), sim_args.kind(), sim_args.seed);
            const auto s = hermitian_eigenvalues(build_m_tau(panel, sim_args.tau));
            write_file(sim_out, spectrum_csv(s));
            write_meta(sim_out + ".meta.json", sim_args.config(), sim_args.kind(),
                       sim_args.seed);
            return kExitPass;
        }
        if (c_panel->parsed()) {
            auto panel = sample_panel(panel_args.config(), panel_args.kind(), panel_args.seed);
            if (panel_trunc > 0.0) panel = preprocess(panel, panel_trunc);
            std::ostringstream os;
            write_panel_csv(panel, os);
            write_file(panel_out, os.str());
            return kExitPass;
        }
        if (c_matrix->parsed()) {
            const auto panel = sample_panel(mat_args.config(), mat_args.kind(), mat_args.seed);
            const auto m = build_m_tau(panel, mat_args.tau);
            std::ostringstream os(std::ios::binary);
            if (mat_format == "bin")
                write_matrix_binary(m, os);
            else
                write_matrix_csv(m, os);
            write_file(mat_out, os.str());
            return kExitPass;
        }
        if (c_boundary->parsed()) {
            std::cout << "d(c) = " << fmt17(lsd_boundary(bnd_c))
                      << "\natom = " << fmt17(lsd_point_mass(bnd_c)) << "\n";
            return kExitPass;
        }
        if (c_density->parsed()) {
            const auto grid = parse_grid(den_grid);
            const LsdModel model(den_c);
            std::string out;
            for (int i = 0; i < grid.count; ++i) {
                const double x = grid.lo + (grid.hi - grid.lo) * i / (grid.count - 1);
                const double y = den_kind == "density" ? model.density(x) : model.cdf(x);
                out += fmt17(x);
                out += ',';
                out += fmt17(y);
                out += '\n';
            }
            write_file(den_out, out);
            return kExitPass;
        }
        if (c_st->parsed()) {
            const auto grid = parse_grid(st_grid);
            std::ostringstream os;
            os << "[\n";
            for (int i = 0; i < grid.count; ++i) {
                const double u = grid.lo + (grid.hi - grid.lo) * i / (grid.count - 1);
                const auto ev = stieltjes_roots({u, st_v}, st_c);
                os << "  {\"z_re\": " << fmt17(u) << ", \"z_im\": " << fmt17(st_v);
                for (int b = 0; b < 4; ++b)
                    os << ", \"m" << b + 1 << "\": [" << fmt17(ev.m[b].real()) << ", "
                       << fmt17(ev.m[b].imag()) << "]";
                os << ", \"selected\": " << ev.selected << ", \"residuals\": [";
                for (int b = 0; b < 4; ++b)
                    os << (b ? ", " : "") << fmt17(ev.residual[b]);
                os << "]}" << (i + 1 < grid.count ? "," : "") << "\n";
            }
            os << "]\n";
            write_file(st_out, os.str());
            return kExitPass;
        }
        if (c_verify->parsed()) {
            return run_verify(vf_suite, vf_args, vf_reps, vf_seed0, vf_threads, vf_tol,
                              vf_kstol, vf_delta0, vf_delta1, vf_scale, vf_k, vf_q,
                              vf_minrate, vf_out);
        }
        if (c_detect->parsed()) {
            SimulationConfig cfg = dt_args.config();
            cfg.tau = std::max(cfg.tau, dt_taumax);
            const auto fc = make_factor_config(cfg, dt_k, dt_q, dt_scale, dt_args.seed);
            const auto obs = simulate_factor_panel(fc, dt_args.seed);
            const auto rep = detect_orders(obs, dt_taumax, dt_delta0, dt_delta1);
            std::ostringstream os;
            write_detection_json(rep, os);
            if (!dt_out.empty())
                write_file(dt_out, os.str());
            else
                std::cout << os.str();
            return kExitPass;
        }
        if (c_plot->parsed()) {
            Spectrum s;
            double ratio = plot_c;
            if (!plot_in.empty()) {
                s = read_spectrum_csv(plot_in);
                if (ratio <= 0.0) throw ConfigError("--c is required with --input");
            } else {
                const auto panel =
                    sample_panel(plot_args.config(), plot_args.kind(), plot_args.seed);
                s = hermitian_eigenvalues(build_m_tau(panel, plot_args.tau));
                if (ratio <= 0.0) ratio = plot_args.config().ratio();
            }
            PlotOptions opt;
            opt.bins = plot_bins;
            opt.title = plot_title;
            write_file(plot_out, render_spectrum_svg(s, LsdModel(ratio), opt));
            return kExitPass;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
