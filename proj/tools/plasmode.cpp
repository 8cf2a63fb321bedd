// plasmode: dispersion, spectrum, field, wall-distribution and absorption
// calculations for longitudinal oscillations of a degenerate electron plasma
// slab with specular-accommodative walls.

#include "plasmode/absorption.hpp"
#include "plasmode/quadrature.hpp"
#include "plasmode/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace plasmode;
using nlohmann::json;

namespace {

constexpr const char* kConventions =
    "accommodation constant A~ = w0*A1; wall field amplitude e_s = 1; "
    "continuum weight 1: e(x) = E_inf + 2 E0 cosh(w0 x/eta0) + "
    "int_{-1}^{1} cosh(w0 x/eta) E(eta) deta";

struct CommonOpts {
    PlasmaParams params;
    SolveOptions tols;
    std::string config_path;
    std::string out_path;
    bool no_timestamp = false;
};

double env_tol(const char* name, double fallback) {
    if (const char* v = std::getenv(name)) {
        try {
            return std::stod(v);
        } catch (...) {
            throw ParamDomainError(name, std::string(name) + " is not a number: " + v);
        }
    }
    return fallback;
}

// flat key=value file; '#' starts a comment
std::map<std::string, double> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamDomainError("config", "cannot open config file " + path);
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParamDomainError("config", "bad config line " +
                                                     std::to_string(lineno));
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            kv[key] = std::stod(val);
        } catch (...) {
            throw ParamDomainError("config", "bad value for '" + key + "' in " + path);
        }
    }
    return kv;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_alpha = true) {
    cmd->add_option("--omega", opts.params.omega, "field frequency / plasma frequency");
    cmd->add_option("--eps", opts.params.eps, "collision frequency / plasma frequency");
    cmd->add_option("--k", opts.params.k, "slab half-width * omega_p / v_F");
    if (with_alpha)
        cmd->add_option("--alpha-p", opts.params.alpha_p,
                        "normal momentum accommodation coefficient in [0,1]");
    cmd->add_option("--config", opts.config_path,
                    "flat key=value parameter file (omega, eps, k, alpha_p); "
                    "flags override file values");
    cmd->add_option("--tol-coeff", opts.tols.tol_coeff, "coefficient-integral tolerance");
    cmd->add_option("--tol-field", opts.tols.tol_field, "field-reconstruction tolerance");
    cmd->add_option("--tol-series", opts.tols.tol_series, "residue-series tolerance");
    cmd->add_option("-o,--out", opts.out_path, "output file (default: stdout)");
    cmd->add_flag("--no-timestamp", opts.no_timestamp,
                  "omit the timestamp header line (byte-identical reruns)");
}

// flags override config file values; the file fills in whatever was not given
void apply_config(const CLI::App* cmd, CommonOpts& opts) {
    if (opts.config_path.empty()) return;
    const auto kv = read_config(opts.config_path);
    auto fill = [&](const char* flag, const char* key, double& slot) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (opt && opt->count() > 0) return;  // flag wins
        const auto it = kv.find(key);
        if (it != kv.end()) slot = it->second;
    };
    fill("--omega", "omega", opts.params.omega);
    fill("--eps", "eps", opts.params.eps);
    fill("--k", "k", opts.params.k);
    fill("--alpha-p", "alpha_p", opts.params.alpha_p);
}

std::string timestamp() {
    char buf[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ParamDomainError("out", "cannot open output file " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

void write_header(std::ostream& os, const std::string& subcmd,
                  const CommonOpts& opts, bool with_alpha = true) {
    os << "# plasmode " << subcmd << "\n";
    if (!opts.no_timestamp) os << "# generated: " << timestamp() << "\n";
    os << "# params: omega=" << num(opts.params.omega) << " eps=" << num(opts.params.eps)
       << " k=" << num(opts.params.k);
    if (with_alpha) os << " alpha_p=" << num(opts.params.alpha_p);
    os << "\n";
    os << "# tolerances: coeff=" << opts.tols.tol_coeff
       << " field=" << opts.tols.tol_field << " series=" << opts.tols.tol_series
       << "\n";
    os << "# conventions: " << kConventions << "\n";
}

json meta_json(const CommonOpts& opts) {
    json m;
    m["params"] = {{"omega", opts.params.omega},
                   {"eps", opts.params.eps},
                   {"k", opts.params.k},
                   {"alpha_p", opts.params.alpha_p}};
    m["tolerances"] = {{"coeff", opts.tols.tol_coeff},
                       {"field", opts.tols.tol_field},
                       {"series", opts.tols.tol_series}};
    m["conventions"] = kConventions;
    if (!opts.no_timestamp) m["generated"] = timestamp();
    return m;
}

// ---------------------------------------------------------------- dispersion

int run_dispersion(const CommonOpts& opts, bool single, double z_re, double z_im,
                   double mu_min, double mu_max, int points) {
    PlasmaParams p = opts.params;
    p.alpha_p = 0.0;  // not used by the dispersion function
    const DerivedConstants dc = derive(p);
    Output out(opts.out_path);
    write_header(out.stream(), "dispersion", opts, false);

    if (single) {
        const Complex z(z_re, z_im);
        const CutFunctionValue v = lambda_eval(z, dc);
        out.stream() << "z_re,z_im,re_lambda,im_lambda,on_cut\n";
        out.stream() << num(z_re) << ',' << num(z_im) << ',' << num(v.value.real())
                     << ',' << num(v.value.imag()) << ',' << (v.on_cut ? 1 : 0)
                     << "\n";
        return 0;
    }

    if (!(points >= 2) || !(mu_min < mu_max) || !(std::abs(mu_min) < 1.0) ||
        !(std::abs(mu_max) < 1.0))
        throw ParamDomainError("mu", "dispersion grid requires -1 < mu_min < mu_max < 1 "
                                     "and at least 2 points");
    out.stream() << "mu,re_lambda,im_lambda,re_lambda_plus,im_lambda_plus,"
                    "re_lambda_minus,im_lambda_minus\n";
    for (int i = 0; i < points; ++i) {
        const double mu = mu_min + (mu_max - mu_min) * double(i) / double(points - 1);
        const Complex l = lambda_cut(mu, dc);
        const auto bp = lambda_boundary(mu, dc);
        out.stream() << num(mu) << ',' << num(l.real()) << ',' << num(l.imag()) << ','
                     << num(bp.plus.real()) << ',' << num(bp.plus.imag()) << ','
                     << num(bp.minus.real()) << ',' << num(bp.minus.imag()) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ spectrum

int run_spectrum(const CommonOpts& opts) {
    PlasmaParams p = opts.params;
    p.alpha_p = 0.0;
    const SpectrumResult res = analyze_spectrum(derive(p));
    json j = meta_json(opts);
    j["kappa"] = res.kappa;
    j["N"] = res.zero_count;
    j["region"] = to_string(res.region);
    if (res.eta0) {
        j["eta0_re"] = res.eta0->real();
        j["eta0_im"] = res.eta0->imag();
        j["residual"] = res.residual;
    } else {
        j["eta0_re"] = nullptr;
        j["eta0_im"] = nullptr;
        j["residual"] = nullptr;
    }
    Output out(opts.out_path);
    out.stream() << j.dump(2) << "\n";
    return 0;
}

// ------------------------------------------------------------ boundary-curve

int run_boundary_curve(const CommonOpts& opts, int samples) {
    const auto pts = trace_curve_l(samples);
    Output out(opts.out_path);
    out.stream() << "# plasmode boundary-curve\n";
    if (!opts.no_timestamp) out.stream() << "# generated: " << timestamp() << "\n";
    out.stream() << "# curve L in the (Omega, eps) plane; the Debye mode exists on "
                    "the origin side\n";
    out.stream() << "# samples=" << samples << " mu_star=" << num(mu_star()) << "\n";
    out.stream() << "mu,Omega,eps\n";
    for (const auto& p : pts)
        out.stream() << num(p.mu) << ',' << num(p.Omega) << ',' << num(p.eps) << "\n";
    return 0;
}

// --------------------------------------------------------------------- field

int run_field(const CommonOpts& opts, int points) {
    const SolutionCoefficients sol = solve(opts.params, opts.tols);
    const FieldProfile fp = field_profile(sol, points);
    Output out(opts.out_path);
    write_header(out.stream(), "field", opts);
    out.stream() << "# boundary_residual=" << num(fp.boundary_residual)
                 << " symmetry_residual=" << num(fp.symmetry_residual) << "\n";
    out.stream() << "x,re_e,im_e\n";
    for (std::size_t i = 0; i < fp.x.size(); ++i)
        out.stream() << num(fp.x[i]) << ',' << num(fp.e[i].real()) << ','
                     << num(fp.e[i].imag()) << "\n";
    return 0;
}

// -------------------------------------------------------------- distribution

struct MuGrid {
    double lo = -0.95, hi = 0.95;
    int count = 40;
};

MuGrid parse_mu_grid(const std::string& spec) {
    MuGrid g;
    if (spec.empty()) return g;
    std::istringstream in(spec);
    char c1 = 0, c2 = 0;
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':')
        throw ParamDomainError("mu-grid", "expected min:max:count, got " + spec);
    return g;
}

int run_distribution(const CommonOpts& opts, const std::string& grid_spec) {
    const MuGrid g = parse_mu_grid(grid_spec);
    if (!(g.count >= 2) || !(g.lo < g.hi) || !(std::abs(g.lo) < 1.0) ||
        !(std::abs(g.hi) < 1.0))
        throw ParamDomainError("mu-grid",
                               "need -1 < min < max < 1 and at least 2 points");
    const SolutionCoefficients sol = solve(opts.params, opts.tols);
    Output out(opts.out_path);
    write_header(out.stream(), "distribution", opts);
    out.stream() << "# wall distribution h(-1, mu)\n";
    out.stream() << "mu,re_h,im_h\n";
    for (int i = 0; i < g.count; ++i) {
        const double mu = g.lo + (g.hi - g.lo) * double(i) / double(g.count - 1);
        if (std::abs(mu) < 1e-12 || std::abs(mu) >= 1.0)
            throw ParamDomainError("mu-grid", "grid point at mu = " +
                                                  std::to_string(mu) +
                                                  " is outside (-1,1)\\{0}");
        const Complex h = boundary_distribution(sol, mu);
        out.stream() << num(mu) << ',' << num(h.real()) << ',' << num(h.imag())
                     << "\n";
    }
    return 0;
}

// -------------------------------------------------------------------- absorb

int run_absorb(const CommonOpts& opts, double omega_min, double omega_max,
               int steps, bool all_routes, int jobs) {
    if (!(steps >= 2) || !(omega_min < omega_max))
        throw ParamDomainError("omega", "sweep requires omega_min < omega_max and "
                                        "at least 2 steps");
    std::vector<std::string> rows(steps);
    std::atomic<int> next{0};
    std::atomic<int> successes{0};

    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= steps) return;
            const double omega =
                omega_min + (omega_max - omega_min) * double(i) / double(steps - 1);
            PlasmaParams p = opts.params;
            p.omega = omega;
            std::ostringstream row;
            row << num(omega) << ',';
            try {
                const SolutionCoefficients sol = solve(p, opts.tols);
                const AbsorptionResult res = compute_absorption(sol, true);
                row << num(res.Q0) << ',' << num(res.agreement);
                if (all_routes)
                    row << ',' << num(res.Q1_closed.real()) << ','
                        << num(res.Q1_closed.imag()) << ','
                        << num(res.Q1_quadrature.real()) << ','
                        << num(res.Q1_quadrature.imag()) << ','
                        << num(res.Q1_spatial.real()) << ','
                        << num(res.Q1_spatial.imag());
                row << ",ok";
                ++successes;
            } catch (const NearCurveError&) {
                row << "nan,nan";
                if (all_routes) row << ",nan,nan,nan,nan,nan,nan";
                row << ",near-L";
            } catch (const std::exception&) {
                row << "nan,nan";
                if (all_routes) row << ",nan,nan,nan,nan,nan,nan";
                row << ",failed";
            }
            rows[i] = row.str();
        }
    };

    const int nthreads = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Output out(opts.out_path);
    write_header(out.stream(), "absorb", opts);
    out.stream() << "# sweep: omega in [" << num(omega_min) << ", " << num(omega_max)
                 << "], " << steps << " steps\n";
    out.stream() << "Omega,Q0,agreement";
    if (all_routes)
        out.stream() << ",re_Q1_closed,im_Q1_closed,re_Q1_quadrature,"
                        "im_Q1_quadrature,re_Q1_spatial,im_Q1_spatial";
    out.stream() << ",status\n";
    for (const std::string& r : rows) out.stream() << r << "\n";
    return successes.load() > 0 ? 0 : 2;
}

// -------------------------------------------------------------------- verify

int run_verify(const CommonOpts& opts) {
    Output out(opts.out_path);
    std::ostream& os = out.stream();
    write_header(os, "verify", opts);

    const DerivedConstants dc = derive(opts.params);
    int bad = 0;
    auto line = [&](const char* name, double value, double gate) {
        const bool ok = value < gate;
        if (!ok) ++bad;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-34s %11.3e  (gate %.0e)  %s", name,
                      value, gate, ok ? "ok" : "FAIL");
        os << buf << "\n";
    };

    // derived-constant identities
    line("lambda_inf collapse",
         std::abs(dc.lambda_inf - (dc.lambda1 + 1.0 / (3.0 * dc.c))) /
             std::abs(dc.lambda_inf),
         1e-14);
    line("c two derivations", std::abs(dc.c - dc.z0 * dc.eta1_sq) / std::abs(dc.c),
         1e-14);

    const SolutionCoefficients sol = solve(opts.params, opts.tols);
    os << "region: " << to_string(sol.spectrum.region)
       << ", kappa = " << sol.spectrum.kappa;
    if (sol.spectrum.eta0)
        os << ", eta0 = (" << num(sol.spectrum.eta0->real()) << ", "
           << num(sol.spectrum.eta0->imag()) << ")";
    os << "\n";

    const Diagnostics d = run_diagnostics(sol);
    line("field boundary |e(+-1)-1|", d.field_boundary, 1e-6);
    line("field symmetry", d.field_symmetry, 1e-8);
    line("non-flow first moment", d.nonflow, 1e-6);
    line("wall-jump linear fit", d.bc_fit, 1e-5);
    line("wall-jump slope vs A~/w0", d.bc_coeff_dev, 1e-6);
    if (opts.params.alpha_p > 0.0) {
        line("moment equation residual", d.moment_eq, 1e-8);
        line("wall-moment round trip", d.moment_roundtrip, 1e-6);
    }
    if (sol.spectrum.region == Region::DPlus) {
        line("pole-elimination bracket", d.pole_bracket, 1e-10);
        line("pole probe growth ratio", d.pole_probe, 2.0);
    }
    line("M(z)/z decay at |z|=1e3", d.m_tail, 1e-5);
    line("J1 residue vs quadrature", d.j1_dev, 1e-7);
    line("J2 residue vs quadrature", d.j2_dev, 1e-7);
    line("jump-problem principal value", d.jump_dev, 1e-8);
    line("field derivative vs density", d.dedx_dev, 1e-5);

    const AbsorptionResult ab = compute_absorption(sol, true);
    line("absorption route agreement", ab.agreement, 1e-6);
    line("Q0 non-negativity (-Q0)", -ab.Q0, 1e-15);
    os << "Q0 = " << num(ab.Q0) << "\n";

    if (bad > 0) {
        os << bad << " checks FAILED\n";
        return 3;
    }
    os << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degenerate-plasma slab oscillations: dispersion, spectrum, "
                 "fields and absorption"};
    app.require_subcommand(1);

    CommonOpts opts;
    opts.params = {0.5, 0.2, 5.0, 0.5};
    try {
        opts.tols.tol_coeff = env_tol("PLASMODE_TOL_COEFF", 1e-10);
        opts.tols.tol_field = env_tol("PLASMODE_TOL_FIELD", 1e-8);
        opts.tols.tol_series = env_tol("PLASMODE_TOL_SERIES", 1e-15);
    } catch (const ParamDomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    }

    // dispersion
    auto* disp = app.add_subcommand("dispersion",
                                    "dispersion function on the cut or at a point");
    double z_re = 0.0, z_im = 0.0, mu_min = -0.95, mu_max = 0.95;
    int disp_points = 39;
    add_common(disp, opts, false);
    auto* zre_opt = disp->add_option("--z-re", z_re, "evaluate at a single complex point");
    disp->add_option("--z-im", z_im, "imaginary part for --z-re");
    disp->add_option("--mu-min", mu_min, "grid start (on-cut mode)");
    disp->add_option("--mu-max", mu_max, "grid end (on-cut mode)");
    disp->add_option("--points", disp_points, "grid size (on-cut mode)");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "winding index and Debye zero");
    add_common(spec, opts, false);

    // boundary-curve
    auto* curve = app.add_subcommand("boundary-curve",
                                     "trace the mode-appearance curve L");
    int samples = 200;
    curve->add_option("--samples", samples, "number of curve points");
    curve->add_option("-o,--out", opts.out_path, "output file (default: stdout)");
    curve->add_flag("--no-timestamp", opts.no_timestamp, "omit the timestamp line");

    // field
    auto* field = app.add_subcommand("field", "electric-field profile e(x)");
    int field_points = 101;
    add_common(field, opts);
    field->add_option("--points", field_points, "profile grid size");

    // distribution
    auto* dist = app.add_subcommand("distribution", "wall distribution h(-1, mu)");
    std::string mu_grid;
    add_common(dist, opts);
    dist->add_option("--mu-grid", mu_grid, "grid as min:max:count (default -0.95:0.95:40)");

    // absorb
    auto* absorb = app.add_subcommand("absorb", "absorbed power sweep over Omega");
    double omega_min = 0.3, omega_max = 1.5;
    int omega_steps = 13, jobs = 1;
    bool all_routes = false;
    add_common(absorb, opts);
    absorb->add_option("--omega-min", omega_min, "sweep start");
    absorb->add_option("--omega-max", omega_max, "sweep end");
    absorb->add_option("--omega-steps", omega_steps, "sweep size");
    absorb->add_flag("--all-routes", all_routes, "emit all three Q1 routes");
    absorb->add_option("--jobs", jobs, "worker threads (output order is fixed)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification battery");
    add_common(verify, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // parameter error
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        apply_config(active, opts);
        validate(opts.params);

        if (active == disp)
            return run_dispersion(opts, zre_opt->count() > 0, z_re, z_im, mu_min,
                                  mu_max, disp_points);
        if (active == spec) return run_spectrum(opts);
        if (active == curve) return run_boundary_curve(opts, samples);
        if (active == field) return run_field(opts, field_points);
        if (active == dist) return run_distribution(opts, mu_grid);
        if (active == absorb)
            return run_absorb(opts, omega_min, omega_max, omega_steps, all_routes,
                              jobs);
        if (active == verify) return run_verify(opts);
        return 1;
    } catch (const ParamDomainError& e) {
        std::cerr << "parameter error (" << e.field() << "): " << e.what() << "\n";
        return 1;
    } catch (const EvalDomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const NearCurveError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
