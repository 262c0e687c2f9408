// fraclab command-line driver.
//
//   fraclab kernel  --green x,y [--poisson x,y] [--w x,y]
//   fraclab certify [run options]
//   fraclab solve   [run options]
//   fraclab lemmas  [--tol t] [--samples n]
//   fraclab sweep   [--lambda-lo a --lambda-hi b] [--steps k] [--scalar]
//
// Exit codes: 0 pass, 1 negative mathematical result, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraclab/cone.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/frackernel.hpp"
#include "fraclab/greenop.hpp"
#include "fraclab/lemmas.hpp"
#include "fraclab/report.hpp"
#include "fraclab/scalar_model.hpp"
#include "fraclab/solver.hpp"

namespace fs = std::filesystem;
using namespace fraclab;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;

struct RunConfig {
    double alpha = 1.5;
    double p = 2.0;
    std::size_t grid_n = 65;
    double a_half = 0.5;
    SolverOptions solver;
    double cone_tol = 1e-9;
    std::string profile = "bump";
    std::optional<double> amplitude;
    std::optional<double> cert_fraction;
    std::string h_csv;
    std::uint64_t seed = 1;
    std::string output_dir;

    void validate() const {
        if (!(alpha >= solver_alpha_min && alpha <= solver_alpha_max))
            throw DomainError("alpha must lie in [1.05, 1.95]");
        if (!(p > 1.0 && p <= 4.0)) throw DomainError("p must lie in (1, 4]");
        if (grid_n < 33 || grid_n % 2 == 0) throw DomainError("n must be odd and at least 33");
        if (!(a_half > 0.0 && a_half < 1.0)) throw DomainError("a-half must lie in (0, 1)");
        if (amplitude && !(*amplitude >= 0.0)) throw DomainError("amplitude must be nonnegative");
        if (cert_fraction && !(*cert_fraction >= 0.0)) throw DomainError("cert-fraction must be nonnegative");
        if (!(solver.fixed_tol > 0.0 && solver.newton_tol > 0.0 && cone_tol >= 0.0))
            throw DomainError("tolerances must be positive");
    }

    // output_dir is left out so that reports do not depend on where they are written
    json to_json() const {
        json j;
        j["alpha"] = alpha;
        j["p"] = p;
        j["n"] = grid_n;
        j["a_half"] = a_half;
        j["fixed_tol"] = solver.fixed_tol;
        j["newton_tol"] = solver.newton_tol;
        j["max_picard"] = solver.max_picard;
        j["max_newton"] = solver.max_newton;
        j["cone_tol"] = cone_tol;
        j["profile"] = h_csv.empty() ? json(profile) : json(nullptr);
        j["h_csv"] = h_csv.empty() ? json(nullptr) : json(fs::path(h_csv).filename().string());
        j["amplitude"] = amplitude ? json(*amplitude) : json(nullptr);
        j["cert_fraction"] = cert_fraction ? json(*cert_fraction) : json(nullptr);
        j["seed"] = seed;
        return j;
    }
};

GridFunction base_profile(const RunConfig& rc, const GridPtr& grid) {
    if (!rc.h_csv.empty()) return resample(read_csv_file(rc.h_csv), grid);
    const double a = rc.alpha / 2.0;
    if (rc.profile == "bump") return GridFunction::sample(grid, [](double x) { return 1.0 - x * x; });
    if (rc.profile == "torsion")
        return GridFunction::sample(grid, [a](double x) { return std::pow(std::max(0.0, 1.0 - x * x), a); });
    if (rc.profile == "plateau")
        return GridFunction::sample(grid, [](double x) { return std::min(1.0, 2.0 * (1.0 - std::fabs(x))); });
    throw DomainError("unknown profile '" + rc.profile + "'");
}

// Everything the solver commands share.
struct Setup {
    KernelParams kp;
    GreenOperator op;
    ConeSpec spec;
    GridFunction h_base;
    double b;
    double lambda_cert;  // amplitude at which b |G h|^(p-1) = c_p
    double amplitude;

    explicit Setup(const RunConfig& rc)
        : kp{1, rc.alpha},
          op(make_grid(rc.grid_n), kp),
          spec{rc.a_half, gamma_U(rc.a_half, GreenKernel(kp)), rc.cone_tol},
          h_base(base_profile(rc, op.grid())),
          b(operator_norm_b(op, rc.p)),
          lambda_cert(0.0),
          amplitude(1.0) {
        const double u0 = op.apply(h_base).sup_norm();
        lambda_cert = u0 > 0.0 ? std::pow(critical_constant(rc.p) / b, 1.0 / (rc.p - 1.0)) / u0
                               : std::numeric_limits<double>::infinity();
        if (rc.amplitude) {
            amplitude = *rc.amplitude;
        } else if (rc.cert_fraction || rc.h_csv.empty()) {
            const double f = rc.cert_fraction.value_or(0.5);
            amplitude = u0 > 0.0 ? std::pow(f, 1.0 / (rc.p - 1.0)) * lambda_cert : 0.0;
        }
    }

    FixedPointProblem problem(double p) const { return FixedPointProblem(op, h_base.scaled(amplitude), p); }
};

fs::path output_path(const RunConfig& rc, const std::string& name) {
    fs::path dir = rc.output_dir.empty() ? fs::path(".") : fs::path(rc.output_dir);
    fs::create_directories(dir);
    return dir / name;
}

std::vector<double> parse_point_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw DomainError("malformed point list '" + s + "'");
        }
        if (used != tok.size() || !std::isfinite(x)) throw DomainError("malformed point list '" + s + "'");
        v.push_back(x);
    }
    return v;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------

struct KernelArgs {
    int d = 1;
    std::vector<std::string> green, poisson, w;
    double radius = 1.0;
};

int cmd_kernel(const RunConfig& rc, const KernelArgs& ka) {
    const KernelParams kp{ka.d, rc.alpha};
    kp.validate();
    if (ka.green.empty() && ka.poisson.empty() && ka.w.empty())
        throw DomainError("kernel: give at least one of --green, --poisson, --w");
    const GreenKernel kernel(kp);
    const std::size_t d = std::size_t(ka.d);
    auto split = [&](const std::string& s) {
        std::vector<double> v = parse_point_list(s);
        if (v.size() != 2 * d)
            throw DomainError("kernel: expected " + std::to_string(2 * d) + " coordinates in '" + s + "'");
        return v;
    };
    auto coords = [&](std::span<const double> v) {
        std::string out;
        for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ";" : "") + fmt17(v[k]);
        return out;
    };
    std::ostringstream os;
    os << "kind,x,y,value\n";
    for (const auto& s : ka.green) {
        const auto v = split(s);
        const std::span<const double> x(v.data(), d), y(v.data() + d, d);
        os << "green," << coords(x) << "," << coords(y) << "," << fmt17(kernel.ball(x, y)) << "\n";
    }
    for (const auto& s : ka.poisson) {
        const auto v = split(s);
        const std::span<const double> x(v.data(), d), y(v.data() + d, d);
        os << "poisson," << coords(x) << "," << coords(y) << "," << fmt17(poisson_ball(x, y, ka.radius, kp))
           << "\n";
    }
    for (const auto& s : ka.w) {
        const auto v = split(s);
        const std::span<const double> x(v.data(), d), y(v.data() + d, d);
        os << "w," << coords(x) << "," << coords(y) << "," << fmt17(w_factor(x, y).value) << "\n";
    }
    std::cout << os.str();
    if (!rc.output_dir.empty()) {
        std::ofstream f(output_path(rc, "kernel.csv"), std::ios::binary);
        f << os.str();
    }
    return exit_pass;
}

int cmd_certify(const RunConfig& rc) {
    rc.validate();
    const Setup st(rc);
    const FixedPointProblem prob = st.problem(rc.p);
    const CertificateReport cert = certify(prob, st.spec);
    json body;
    body["command"] = "certify";
    body["amplitude"] = st.amplitude;
    body["lambda_cert"] = st.lambda_cert;
    body["certificate"] = to_json(cert);
    write_json_file(output_path(rc, "report.json").string(), make_document(rc.to_json(), body));
    std::cout << "certificate " << to_string(cert.status) << " lhs=" << fmt17(cert.lhs)
              << " c_p=" << fmt17(cert.c_p) << " margin=" << fmt17(cert.margin) << "\n";
    if (cert.radii)
        std::cout << "radii rho1=" << fmt17(cert.radii->rho1) << " rho2=" << fmt17(cert.radii->rho2)
                  << " rho3=" << fmt17(cert.radii->rho3) << "\n";
    return cert.pass() ? exit_pass : exit_negative;
}

int cmd_solve(const RunConfig& rc) {
    rc.validate();
    const Setup st(rc);
    const FixedPointProblem prob = st.problem(rc.p);
    PairSolve pair = solve_pair(prob, st.spec, rc.solver);
    if (pair.minimal.converged()) residual_strong(pair.minimal, prob);
    if (pair.second && pair.second->converged()) residual_strong(*pair.second, prob);

    const double gap = pair.cert.radii ? pair.cert.radii->rho2 - pair.cert.radii->rho1 : 0.0;
    const bool distinct = pair.second && pair.separation() > std::max(gap, 10.0 * rc.solver.fixed_tol);
    const bool ok = pair.degenerate ? pair.minimal.converged() : pair.both() && distinct;

    write_csv(pair.minimal.u, output_path(rc, "minimal.csv").string());
    const fs::path second_path = output_path(rc, "second.csv");
    if (pair.second && pair.second->converged())
        write_csv(pair.second->u, second_path.string());
    else
        fs::remove(second_path);

    json body;
    body["command"] = "solve";
    body["amplitude"] = st.amplitude;
    body["lambda_cert"] = st.lambda_cert;
    json pj = to_json(pair);
    for (auto it = pj.begin(); it != pj.end(); ++it) body[it.key()] = it.value();
    body["distinct"] = distinct;
    body["success"] = ok;
    write_json_file(output_path(rc, "report.json").string(), make_document(rc.to_json(), body));

    std::cout << "certificate " << to_string(pair.cert.status) << "\n";
    std::cout << "minimal " << to_string(pair.minimal.status) << " sup=" << fmt17(pair.minimal.u.sup_norm())
              << " residual=" << fmt17(pair.minimal.fixed_point_residual) << "\n";
    if (pair.degenerate) std::cout << "degenerate: zero forcing, u = 0\n";
    if (pair.second)
        std::cout << "second " << to_string(pair.second->status) << " sup=" << fmt17(pair.second->u.sup_norm())
                  << " residual=" << fmt17(pair.second->fixed_point_residual) << "\n";
    return ok ? exit_pass : exit_negative;
}

struct LemmaArgs {
    std::optional<double> tol;
    std::size_t samples = 100;
};

int cmd_lemmas(const RunConfig& rc, const LemmaArgs& la) {
    rc.validate();
    LemmaConfig cfg;
    cfg.alpha = rc.alpha;
    cfg.p = rc.p;
    cfg.grid_n = rc.grid_n;
    cfg.a_half = rc.a_half;
    cfg.samples = la.samples;
    cfg.seed = rc.seed;
    if (la.tol) cfg.set_all_tolerances(*la.tol);
    const LemmaReport rep = run_lemma_battery(cfg);

    json conf = rc.to_json();
    conf["samples"] = la.samples;
    conf["tol"] = la.tol ? json(*la.tol) : json(nullptr);
    json body;
    body["command"] = "lemmas";
    body["lemmas"] = to_json(rep);
    write_json_file(output_path(rc, "report.json").string(), make_document(conf, body));

    for (const auto& c : rep.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%-26s %s value=%.3e threshold=%.3e", c.name.c_str(),
                      c.passed ? "PASS" : "FAIL", c.value, c.threshold);
        std::cout << line << "  " << c.detail << "\n";
    }
    return rep.all_passed() ? exit_pass : exit_negative;
}

struct SweepArgs {
    std::optional<double> lambda_lo, lambda_hi;
    int steps = 30;
    std::optional<double> rel_width;
    bool scalar = false;
};

int cmd_sweep(const RunConfig& rc, const SweepArgs& sa) {
    rc.validate();
    const Setup st(rc);
    if (!std::isfinite(st.lambda_cert)) throw DomainError("sweep: forcing profile is zero");
    const double lo = sa.lambda_lo.value_or(0.1 * st.lambda_cert);
    const double hi = sa.lambda_hi.value_or(3.0 * st.lambda_cert);
    if (!(lo > 0.0 && hi > lo)) throw DomainError("sweep: empty lambda range");
    // the scalar fold is compared against a closed form, so it is bisected further
    const double rel_width = sa.rel_width.value_or(sa.scalar ? 1e-10 : 1e-4);

    const double u0_base = st.op.apply(st.h_base).sup_norm();
    std::unique_ptr<BranchFamily> family;
    ScalarBranchFamily* scalar = nullptr;
    if (sa.scalar) {
        auto s = std::make_unique<ScalarBranchFamily>(st.b, u0_base, rc.p);
        scalar = s.get();
        family = std::move(s);
    } else {
        family = std::make_unique<GridBranchFamily>(st.op, st.h_base, rc.p, st.spec, rc.solver);
    }
    const SweepRecord rec = fold_sweep(*family, lo, hi, sa.steps, rel_width);

    std::vector<SweepPoint> all = rec.points;
    all.insert(all.end(), rec.refinement.begin(), rec.refinement.end());
    std::stable_sort(all.begin(), all.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.lambda < b.lambda; });
    {
        std::ofstream f(output_path(rc, "branches.csv"), std::ios::binary);
        f << "lambda,certified,minimal_sup,second_sup\n";
        auto cell = [](double v) { return std::isfinite(v) ? fmt17(v) : std::string(); };
        for (const auto& pt : all)
            f << fmt17(pt.lambda) << "," << (pt.certified ? 1 : 0) << "," << cell(pt.minimal_sup) << ","
              << cell(pt.second_sup) << "\n";
    }

    json conf = rc.to_json();
    conf["lambda_lo"] = lo;
    conf["lambda_hi"] = hi;
    conf["steps"] = sa.steps;
    conf["scalar"] = sa.scalar;
    json body;
    body["command"] = "sweep";
    json sj = to_json(rec, rel_width);
    for (auto it = sj.begin(); it != sj.end(); ++it) body[it.key()] = it.value();
    bool ok = rec.sufficiency_ok(rel_width);
    if (scalar) {
        const double closed = scalar->closed_form_fold();
        const double err = std::fabs(rec.fold_estimate - closed) / closed;
        body["scalar_b"] = st.b;
        body["scalar_u0"] = u0_base;
        body["closed_form_fold"] = closed;
        body["closed_form_rel_error"] = err;
        ok = ok && err <= 1e-6;
    }
    body["success"] = ok;
    write_json_file(output_path(rc, "fold.json").string(), make_document(conf, body));

    std::cout << "lambda_cert=" << fmt17(rec.lambda_cert) << " fold_estimate=" << fmt17(rec.fold_estimate)
              << " ratio=" << fmt17(rec.fold_estimate / rec.lambda_cert) << (rec.bracketed ? "" : " (not bracketed)")
              << "\n";
    return ok ? exit_pass : exit_negative;
}

void add_run_options(CLI::App& app, RunConfig& rc) {
    app.add_option("--alpha", rc.alpha, "fractional order alpha")->capture_default_str();
    app.add_option("--p", rc.p, "power p")->capture_default_str();
    app.add_option("--n", rc.grid_n, "grid size (odd, >= 33)")->capture_default_str();
    app.add_option("--a-half", rc.a_half, "half width of the central interval U")->capture_default_str();
    app.add_option("--fixed-tol", rc.solver.fixed_tol, "fixed-point tolerance")->capture_default_str();
    app.add_option("--newton-tol", rc.solver.newton_tol, "Newton step tolerance")->capture_default_str();
    app.add_option("--max-picard", rc.solver.max_picard)->capture_default_str();
    app.add_option("--max-newton", rc.solver.max_newton)->capture_default_str();
    app.add_option("--cone-tol", rc.cone_tol, "relative tolerance of cone checks")->capture_default_str();
    app.add_option("--profile", rc.profile, "forcing profile")
        ->check(CLI::IsMember({"bump", "torsion", "plateau"}))
        ->capture_default_str();
    auto* amp = app.add_option("--amplitude", rc.amplitude, "forcing amplitude");
    auto* frac = app.add_option("--cert-fraction", rc.cert_fraction,
                                "amplitude chosen so that b |G h|^(p-1) = fraction * c_p (default 0.5)");
    amp->excludes(frac);
    app.add_option("--h-csv", rc.h_csv, "forcing from a CSV file (x,value)");
    app.add_option("--seed", rc.seed, "sampling seed")->capture_default_str();
    app.add_option("--out", rc.output_dir, "output directory")->envname("FRACLAB_OUTPUT_DIR");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for (-Delta)^(alpha/2) u = u^p + h on (-1, 1)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file mirroring the long options");
    RunConfig rc;
    add_run_options(app, rc);

    KernelArgs ka;
    auto* kernel = app.add_subcommand("kernel", "evaluate the Green function, Poisson kernel and w-factor");
    kernel->add_option("--d", ka.d, "dimension")->capture_default_str();
    kernel->add_option("--green", ka.green, "points x,y for G(x,y)");
    kernel->add_option("--poisson", ka.poisson, "points x,y for P(x,y) of the ball of --radius");
    kernel->add_option("--w", ka.w, "points x,y for w(x,y)");
    kernel->add_option("--radius", ka.radius, "Poisson ball radius")->capture_default_str();

    auto* certify_cmd = app.add_subcommand("certify", "check the smallness certificate and compute the radii");
    auto* solve_cmd = app.add_subcommand("solve", "compute the minimal and the second solution");

    LemmaArgs la;
    auto* lemmas = app.add_subcommand("lemmas", "run the kernel verification battery");
    lemmas->add_option("--tol", la.tol, "replace every battery tolerance");
    lemmas->add_option("--samples", la.samples, "random inputs per sampled check")->capture_default_str();

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "sweep the forcing amplitude and locate the fold");
    sweep->add_option("--lambda-lo", sa.lambda_lo, "lower amplitude (default 0.1 lambda_cert)");
    sweep->add_option("--lambda-hi", sa.lambda_hi, "upper amplitude (default 3 lambda_cert)");
    sweep->add_option("--steps", sa.steps, "uniform grid points")->capture_default_str();
    sweep->add_option("--rel-width", sa.rel_width, "relative bisection width (1e-4; 1e-10 in scalar mode)");
    sweep->add_flag("--scalar", sa.scalar, "use the real-line model b u^p + lambda u0");

    for (auto* sub : {kernel, certify_cmd, solve_cmd, lemmas, sweep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (kernel->parsed()) return cmd_kernel(rc, ka);
        if (certify_cmd->parsed()) return cmd_certify(rc);
        if (solve_cmd->parsed()) return cmd_solve(rc);
        if (lemmas->parsed()) return cmd_lemmas(rc, la);
        if (sweep->parsed()) return cmd_sweep(rc, sa);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
