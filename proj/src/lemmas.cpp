#include "fraclab/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fraclab/cone.hpp"
#include "fraclab/greenop.hpp"

namespace fraclab {
namespace {

double unit_draw(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// interior sample of (lo, hi), m points, endpoints excluded
double interior(double lo, double hi, std::size_t k, std::size_t m) {
    return lo + (hi - lo) * (double(k) + 0.5) / double(m);
}

}  // namespace

void LemmaConfig::set_all_tolerances(double tol) {
    ratio_stability = unimodal_tol = reflection_tol = monotone_tol = poisson_tol = invariance_tol = tol;
}

bool LemmaReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

double green_reflection_defect(const GreenKernel& kernel, double z, std::size_t m) {
    // Nodes z + r (2k + 1 - m) / m are reflected exactly when z, r and m are
    // dyadic. Rounded reflections would be amplified near the diagonal, where
    // G is only Holder continuous with exponent alpha - 1.
    const double r = 1.0 - z;
    auto node = [&](std::size_t k) { return z + r * (double(2 * k + 1) - double(m)) / double(m); };
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double y = node(i);
        const double yh = 2.0 * z - y;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = node(j);
            const double vh = 2.0 * z - v;
            const double g = kernel.interval(y, v, z, r);
            worst = std::max(worst, std::fabs(kernel.interval(yh, vh, z, r) - g));
            worst = std::max(worst, std::fabs(kernel.interval(yh, v, z, r) - kernel.interval(y, vh, z, r)));
        }
    }
    return worst;
}

double green_monotonicity_defect(const GreenKernel& kernel, double z, std::size_t m) {
    const double r = 1.0 - z;
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double y = interior(z, 1.0, i, m);
        const double yh = 2.0 * z - y;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = interior(z, 1.0, j, m);
            worst = std::max(worst, kernel.interval(yh, v, z, r) - kernel.interval(y, v, z, r));
        }
    }
    return worst;
}

double poisson_monotonicity_defect(const KernelParams& kp, double z, std::size_t m) {
    const double r = 1.0 - z;
    const double left = z - r;  // V \ W = (-1, left]
    double worst = 0.0;
    if (!(left > -1.0)) return worst;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = interior(left, z, i, m);
        const double y = 2.0 * z - x;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = interior(-1.0, left, j, m);
            const double py = poisson_ball(y - z, v - z, r, kp);
            const double px = poisson_ball(x - z, v - z, r, kp);
            worst = std::max(worst, py - px);
        }
    }
    return worst;
}

LemmaReport run_lemma_battery(const LemmaConfig& cfg) {
    const KernelParams kp{1, cfg.alpha};
    kp.validate_solver();
    LemmaReport rep;
    const GreenKernel kernel(kp);

    // Green ratio constant and its stability under grid doubling
    rep.gamma_U = gamma_U(cfg.a_half, kernel, {cfg.ratio_resolution});
    rep.gamma_U_refined = gamma_U(cfg.a_half, kernel, {2 * cfg.ratio_resolution});
    {
        const double rel = std::fabs(rep.gamma_U_refined - rep.gamma_U) / rep.gamma_U_refined;
        rep.checks.push_back({"green_ratio", rep.gamma_U > 0.0 && rel <= cfg.ratio_stability, rel,
                              cfg.ratio_stability,
                              "gamma_U=" + fmt(rep.gamma_U) + " refined=" + fmt(rep.gamma_U_refined)});
    }

    const GreenOperator op(make_grid(cfg.grid_n), kp);
    const GridPtr& grid = op.grid();

    // symmetry and unimodality preserved by G on random smooth inputs
    {
        std::mt19937_64 rng(cfg.seed);
        double worst = 0.0;
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            const double beta = 0.5 + 3.0 * unit_draw(rng);
            const double k = 8.0 * unit_draw(rng);
            const double mix = unit_draw(rng);
            const double amp = 0.1 + 2.0 * unit_draw(rng);
            const GridFunction f = GridFunction::sample(grid, [&](double x) {
                const double t = std::max(0.0, 1.0 - x * x);
                return amp * (mix * std::pow(t, beta) + (1.0 - mix) * std::exp(-k * x * x));
            });
            const GridFunction g = op.apply(f);
            ConeSpec shape{cfg.a_half, 1e-6, 0.0};
            const ConeDiagnostics d = check_membership(g, shape);
            worst = std::max({worst, d.worst_asymmetry / d.sup, d.worst_monotonicity / d.sup,
                              d.worst_negative / d.sup});
        }
        rep.checks.push_back({"unimodality_preservation", worst <= cfg.unimodal_tol, worst,
                              cfg.unimodal_tol, std::to_string(cfg.samples) + " random inputs"});
    }

    // reflection identities and monotonicity on shifted intervals
    {
        double refl = 0.0, mono = 0.0, pmono = 0.0;
        for (double z : {0.125, 0.375, 0.625}) {
            refl = std::max(refl, green_reflection_defect(kernel, z, 64));
            mono = std::max(mono, green_monotonicity_defect(kernel, z, 100));
            pmono = std::max(pmono, poisson_monotonicity_defect(kp, z, 40));
        }
        rep.checks.push_back({"green_reflection", refl <= cfg.reflection_tol, refl, cfg.reflection_tol,
                              "G_W(y^,v^)=G_W(y,v), G_W(y^,v)=G_W(y,v^)"});
        rep.checks.push_back({"green_monotonicity", mono <= cfg.monotone_tol, mono, cfg.monotone_tol,
                              "G_W(y,v) >= G_W(y^,v) on W+"});
        rep.checks.push_back({"poisson_monotonicity", pmono <= cfg.monotone_tol, pmono, cfg.monotone_tol,
                              "P_W(y,v) <= P_W(x,v) left of W"});
    }

    // Poisson normalization
    {
        double worst = 0.0;
        for (double x : {0.0, 0.3, -0.6}) worst = std::max(worst, std::fabs(poisson_exterior_mass(x, 1.0, kp) - 1.0));
        rep.checks.push_back({"poisson_normalization", worst <= cfg.poisson_tol, worst, cfg.poisson_tol,
                              "base points 0, 0.3, -0.6"});
    }

    // cone invariance
    {
        const ConeSpec spec{cfg.a_half, rep.gamma_U, cfg.invariance_tol};
        const InvarianceReport inv = verify_invariance(op, cfg.p, spec, cfg.samples, cfg.seed);
        const double worst = std::max({inv.worst_negative, inv.worst_asymmetry, inv.worst_monotonicity,
                                       inv.worst_ratio_shortfall});
        rep.checks.push_back({"cone_invariance", inv.passed(), worst, cfg.invariance_tol,
                              std::to_string(inv.violations.size()) + " violations in " +
                                  std::to_string(inv.count) + " samples"});
    }
    return rep;
}

}  // namespace fraclab
