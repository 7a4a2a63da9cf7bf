#include "twistmeans/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "twistmeans/means.hpp"
#include "twistmeans/quadrature.hpp"
#include "twistmeans/special_functions.hpp"
#include "twistmeans/sphere.hpp"

namespace twistmeans::experiments {

Record upper_bound(std::string experiment, nlohmann::json params, double residual, double tolerance) {
    params["bound"] = "max";
    return {std::move(experiment), std::move(params), residual, tolerance, residual <= tolerance};
}

Record lower_bound(std::string experiment, nlohmann::json params, double residual, double tolerance) {
    params["bound"] = "min";
    return {std::move(experiment), std::move(params), residual, tolerance, residual >= tolerance};
}

nlohmann::json to_json(const SuiteConfig& cfg) {
    return {{"n", cfg.n},
            {"max_k", cfg.max_k},
            {"p", cfg.p},
            {"q", cfg.q},
            {"order", cfg.order == 0 ? nlohmann::json("auto") : nlohmann::json(cfg.order)},
            {"tol", cfg.tol == 0.0 ? nlohmann::json("pinned") : nlohmann::json(cfg.tol)},
            {"seed", cfg.seed}};
}

namespace {

int max_order(int real_dim) {
    switch (real_dim) {
        case 6: return 32;
        case 4: return 192;
        default: return 512;
    }
}

int gate_order(int real_dim, double r, double c) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, int> cache;
    const int rk = static_cast<int>(std::ceil(2.0 * r));
    const int ck = static_cast<int>(std::ceil(2.0 * c));
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(real_dim, rk, ck);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    int order;
    try {
        order = sphere::converged_order(real_dim, 0.5 * rk, 0.5 * ck);
    } catch (const NumericalError&) {
        order = max_order(real_dim);
    }
    cache[key] = order;
    return order;
}

}  // namespace

int auto_order(const SuiteConfig& cfg, int real_dim, double r, double center_norm, int degree) {
    if (cfg.order > 0) return std::min(cfg.order, max_order(real_dim));
    const int gated = gate_order(real_dim, r, center_norm) + degree;
    const int order = std::max(gated, means::scheduled_order(r, center_norm, degree));
    return std::min(order, max_order(real_dim));
}

// ---------------------------------------------------------------- injectivity

InjectivityResult injectivity_recover(const InjectivityInstance& inst, const SuiteConfig& cfg) {
    const int n = inst.n;
    const int big_k = inst.truncation;
    if (static_cast<int>(inst.gamma.size()) != big_k + 1)
        throw std::invalid_argument("injectivity_recover: gamma must have K + 1 entries");
    if (!(inst.radius > 0.0)) throw std::invalid_argument("injectivity_recover: radius must be positive");
    const double t0 = 0.5 * inst.radius * inst.radius;

    InjectivityResult res;
    for (int k = 0; k <= big_k; ++k) {
        if (k == 0) continue;
        for (double x : special::laguerre_zeros({k, n - 1.0}))
            if (std::abs(x - t0) <= 1e-10 * std::max(1.0, x)) res.flagged.push_back(k);
    }

    // sampled means on the Gauss-Laguerre radii, z_0 = R e_1
    ComplexPoint z0(n);
    z0[0] = inst.radius;
    const Field f = [&](const ComplexPoint& u) {
        Complex s = 0.0;
        for (int k = 0; k <= big_k; ++k) s += inst.gamma[k] * special::phi_eval({k, n}, u.norm());
        return s;
    };
    const quadrature::Rule1D gl = quadrature::gauss_laguerre(12, n - 1.0);
    std::vector<Complex> samples(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double r = std::sqrt(2.0 * gl.nodes[i]);
        const auto& rule = means::unit_rule(2 * n, auto_order(cfg, 2 * n, r, inst.radius, 2 * big_k));
        samples[i] = means::twisted_mean(f, means::MeanQuery{z0, r}, rule).value;
    }

    // c_k = int M phi_k r^{2n-1} dr / int phi_k^2 r^{2n-1} dr, exact in t = r^2/2
    std::vector<Complex> c(big_k + 1);
    std::vector<double> bphi(big_k + 1);
    for (int k = 0; k <= big_k; ++k) {
        std::vector<Complex> terms(gl.nodes.size());
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            terms[i] = gl.weights[i] * special::laguerre_eval({k, n - 1.0}, gl.nodes[i]) * std::exp(0.5 * gl.nodes[i]) *
                       samples[i];
        c[k] = quadrature::pairwise_sum(terms) * std::tgamma(k + 1.0) / std::tgamma(k + static_cast<double>(n));
        bphi[k] = special::b_constant(k, n).to_double() * special::phi_eval({k, n}, inst.radius);
    }

    res.recovered.assign(big_k + 1, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= big_k; ++k) {
        if (std::find(res.flagged.begin(), res.flagged.end(), k) != res.flagged.end()) continue;
        res.recovered[k] = c[k] / bphi[k];
        res.max_error = std::max(res.max_error, std::abs(res.recovered[k] - inst.gamma[k]));
        hi = std::max(hi, std::abs(bphi[k]));
        lo = std::min(lo, std::abs(bphi[k]));
    }
    res.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

    double scale = 0.0;
    for (const Complex& s : samples) scale = std::max(scale, std::abs(s));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double r = std::sqrt(2.0 * gl.nodes[i]);
        Complex model = 0.0;
        for (int k = 0; k <= big_k; ++k)
            if (!std::isnan(res.recovered[k].real())) model += res.recovered[k] * bphi[k] * special::phi_eval({k, n}, r);
        res.refit_residual = std::max(res.refit_residual, std::abs(model - samples[i]) / std::max(scale, 1e-300));
    }
    return res;
}

std::vector<Record> injectivity_suite(const SuiteConfig& cfg) {
    std::vector<Record> out;
    const int n = 2, big_k = 4;
    std::mt19937_64 gen(cfg.seed ^ 0x1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto draw = [&] {
        std::vector<Complex> g(big_k + 1);
        for (auto& x : g) x = Complex(u(gen), u(gen));
        return g;
    };
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-6;

    for (int rep = 0; rep < 3; ++rep) {
        const InjectivityInstance inst{n, 1.0, big_k, draw()};
        const InjectivityResult r = injectivity_recover(inst, cfg);
        Record rec = upper_bound("prop-3.8",
                                 {{"case", "recover"}, {"n", n}, {"R", 1.0}, {"K", big_k}, {"draw", rep},
                                  {"flagged", r.flagged}, {"condition", r.condition}, {"refit", r.refit_residual}},
                                 r.max_error, tol);
        rec.pass = rec.pass && r.flagged.empty();
        out.push_back(rec);
    }
    {
        const InjectivityInstance inst{n, 1.0, big_k, std::vector<Complex>(big_k + 1, 0.0)};
        const InjectivityResult r = injectivity_recover(inst, cfg);
        out.push_back(upper_bound("prop-3.8", {{"case", "zero function"}, {"n", n}, {"R", 1.0}, {"K", big_k}},
                                  r.max_error, 1e-14));
    }
    {
        const InjectivityInstance inst{n, 2.0, big_k, draw()};
        const InjectivityResult r = injectivity_recover(inst, cfg);
        Record rec = upper_bound("prop-3.8",
                                 {{"case", "exceptional index"}, {"n", n}, {"R", 2.0}, {"K", big_k},
                                  {"flagged", r.flagged}, {"condition", r.condition}, {"refit", r.refit_residual}},
                                 r.max_error, tol);
        rec.pass = rec.pass && r.flagged == std::vector<int>{1};
        out.push_back(rec);
    }
    return out;
}

// -------------------------------------------------------------------- support

SupportAnsatz twisted_ansatz(int n, int p, int q, const std::vector<Complex>& c, const std::vector<Complex>& d,
                             double inner) {
    if (static_cast<int>(c.size()) > p || static_cast<int>(d.size()) > q)
        throw std::invalid_argument("twisted_ansatz: at most p growing and q decaying terms");
    SupportAnsatz a;
    a.family = SupportAnsatz::Family::Twisted;
    a.n = n;
    a.p = p;
    a.q = q;
    a.inner = inner;
    const int big = n + p + q;
    for (std::size_t i = 0; i < c.size(); ++i)
        a.profile.push_back({c[i], -2.0 * (big - static_cast<int>(i + 1)), 1.0});
    for (std::size_t k = 0; k < d.size(); ++k)
        a.profile.push_back({d[k], -2.0 * (big - static_cast<int>(k + 1)), -1.0});
    return a;
}

SupportAnsatz euclidean_ansatz(int dim, int k, const std::vector<Complex>& alpha, double inner, int exponent_dim) {
    if (static_cast<int>(alpha.size()) > k) throw std::invalid_argument("euclidean_ansatz: at most k terms");
    SupportAnsatz a;
    a.family = SupportAnsatz::Family::Euclidean;
    a.n = dim;
    a.p = k;
    a.inner = inner;
    const int e = exponent_dim < 0 ? dim : exponent_dim;
    // f = a_k(rho) Y(x/rho) = a_k(rho) rho^{-k} (x_1 + i x_2)^k
    for (std::size_t i = 0; i < alpha.size(); ++i)
        a.profile.push_back({alpha[i], static_cast<double>(-e - 2 * static_cast<int>(i)), 0.0});
    return a;
}

std::vector<SupportSample> support_samples(int real_dim, double inner, int count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SupportSample> out;
    for (int s = 0; s < count; ++s) {
        std::vector<double> x(real_dim);
        double norm = 0.0;
        for (double& v : x) {
            v = g(gen);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        const int which = s % 3;
        const double target = which == 0 ? 0.5 : which == 1 ? 1.0 : 1.2 * std::pow(u(gen), 1.0 / real_dim);
        for (double& v : x) v *= target / norm;
        const double r = target + inner + 0.05 + 2.95 * u(gen);
        out.push_back({std::move(x), r});
    }
    return out;
}

namespace {

ComplexPoint complex_center(const std::vector<double>& x) {
    ComplexPoint z(static_cast<int>(x.size() / 2));
    for (int j = 0; j < z.dim(); ++j) z[j] = Complex(x[2 * j], x[2 * j + 1]);
    return z;
}

RealPoint real_center(const std::vector<double>& x) {
    RealPoint p(static_cast<int>(x.size()));
    for (int j = 0; j < p.dim(); ++j) p[j] = x[j];
    return p;
}

double center_norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void check_admissible(const SupportAnsatz& a, const SupportSample& s) {
    if (!(s.radius > center_norm(s.center) + a.inner))
        throw std::invalid_argument("support check: sample violates r > |z| + B");
}

ComplexPoly twisted_weight(int n, int p, int q) {
    if (n >= 2) return ComplexPoly::z1p_zbar2q(n, p, q);
    if (p > 0 && q > 0) throw std::invalid_argument("support check: H_{p,q}(C) = 0 for p, q > 0");
    ComplexPoly::Exponent e{p, q};
    return ComplexPoly::monomial(1, e);
}

}  // namespace

double support_ansatz_check(const SupportAnsatz& a, const std::vector<SupportSample>& samples, const SuiteConfig& cfg) {
    if (a.family != SupportAnsatz::Family::Twisted) throw std::invalid_argument("support_ansatz_check: twisted ansatz");
    const RadialProfile profile = RadialProfile::exp_power(a.profile);
    const ComplexPoly weight = twisted_weight(a.n, a.p, a.q);
    const auto f = [&](const ComplexPoint& u) { return profile(u.norm()) * weight.eval(u); };
    double worst = 0.0;
    for (const auto& s : samples) {
        check_admissible(a, s);
        if (a.profile.empty()) continue;
        const ComplexPoint z = complex_center(s.center);
        const auto& rule = means::unit_rule(2 * a.n, auto_order(cfg, 2 * a.n, s.radius, z.norm(), 48 + a.p + a.q));
        const means::MeanValue m = means::twisted_mean(f, means::MeanQuery{z, s.radius}, rule);
        worst = std::max(worst, std::abs(m.value) / std::max(m.mass, 1e-300));
    }
    return worst;
}

double euclid_support_check(const SupportAnsatz& a, const std::vector<SupportSample>& samples, const SuiteConfig& cfg) {
    if (a.family != SupportAnsatz::Family::Euclidean) throw std::invalid_argument("euclid_support_check: Euclidean ansatz");
    const RadialProfile profile = RadialProfile::exp_power(a.profile);
    const RealPoly weight = RealPoly::x1_plus_ix2_pow(a.n, a.p);
    const auto f = [&](const RealPoint& x) { return profile(x.norm()) * weight.eval(x); };
    double worst = 0.0;
    for (const auto& s : samples) {
        check_admissible(a, s);
        if (a.profile.empty()) continue;
        const RealPoint x = real_center(s.center);
        const auto& rule = means::unit_rule(a.n, auto_order(cfg, a.n, s.radius, x.norm(), 64 + a.p));
        const means::MeanValue m = means::euclidean_mean(f, x, s.radius, rule);
        worst = std::max(worst, std::abs(m.value) / std::max(m.mass, 1e-300));
    }
    return worst;
}

std::vector<Record> support_suite(const SuiteConfig& cfg) {
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-7;
    const double probe = 1e-3;
    const int count = 30;
    struct Case {
        std::string id;
        std::string clause;
        SupportAnsatz ansatz;
        bool necessity;
    };
    std::vector<Case> cases;
    const Complex c1(0.7, -0.2), c2(-0.4, 0.9), d1(1.3, 0.4), d2(0.2, -0.8);

    // twisted family on C^2
    cases.push_back({"thm-4.1", "(1) p=q=0, a=0", twisted_ansatz(2, 0, 0, {}, {}), false});
    cases.push_back({"thm-4.1", "(2) p=q=1, c_1", twisted_ansatz(2, 1, 1, {c1}, {}), false});
    cases.push_back({"thm-4.1", "(2) p=q=1, c_1 + d_1", twisted_ansatz(2, 1, 1, {c1}, {d1}), false});
    cases.push_back({"thm-4.1", "(2) p=2 q=1, c_1 + c_2 + d_1", twisted_ansatz(2, 2, 1, {c1, c2}, {d1}), false});
    cases.push_back({"thm-4.1", "(3) q=0 p=1", twisted_ansatz(2, 1, 0, {c1}, {}), false});
    cases.push_back({"thm-4.1", "(3) q=0 p=2", twisted_ansatz(2, 2, 0, {c1, c2}, {}), false});
    cases.push_back({"thm-4.1", "(3) p=0 q=1", twisted_ansatz(2, 0, 1, {}, {d1}), false});
    cases.push_back({"thm-4.1", "(3) p=0 q=2", twisted_ansatz(2, 0, 2, {}, {d1, d2}), false});
    if (cfg.p + cfg.q > 0 && cfg.p <= 3 && cfg.q <= 3) {
        std::vector<Complex> cs(cfg.p, c1), ds(cfg.q, d1);
        for (int i = 1; i < cfg.p; ++i) cs[i] = c2 * static_cast<double>(i);
        for (int i = 1; i < cfg.q; ++i) ds[i] = d2 * static_cast<double>(i);
        cases.push_back({"thm-4.1", "configured p,q, all terms", twisted_ansatz(2, cfg.p, cfg.q, cs, ds), false});
    }
    {
        SupportAnsatz bad = twisted_ansatz(2, 1, 1, {c1}, {});
        bad.profile[0].power += 0.5;
        cases.push_back({"thm-4.1", "necessity: growing exponent +0.5", bad, true});
        SupportAnsatz bad2 = twisted_ansatz(2, 1, 1, {}, {d1});
        bad2.profile[0].power += 0.5;
        cases.push_back({"thm-4.1", "necessity: decaying exponent +0.5", bad2, true});
        SupportAnsatz bad3 = twisted_ansatz(2, 0, 0, {}, {});
        bad3.profile.push_back({1.0, -4.0, -1.0});
        cases.push_back({"thm-4.1", "necessity: nonzero radial a for p=q=0", bad3, true});
    }
    // Euclidean family, exponent letter read as the real dimension
    cases.push_back({"thm-4.5", "k=0, a_0=0", euclidean_ansatz(3, 0, {}), false});
    cases.push_back({"thm-4.5", "d=3 k=1 single term", euclidean_ansatz(3, 1, {1.0}), false});
    cases.push_back({"thm-4.5", "d=3 k=2", euclidean_ansatz(3, 2, {c1, d1}), false});
    cases.push_back({"thm-4.5", "d=3 k=3", euclidean_ansatz(3, 3, {c1, d1, c2}), false});
    cases.push_back({"thm-4.5", "d=2 k=2", euclidean_ansatz(2, 2, {c1, d2}), false});
    {
        SupportAnsatz newton = euclidean_ansatz(3, 0, {});
        newton.profile.push_back({1.0, -1.0, 0.0});
        cases.push_back({"thm-4.5", "negative control 1/|x|", newton, true});
        cases.push_back({"thm-4.5", "alternative reading: exponent uses d-1", euclidean_ansatz(3, 1, {1.0}, 1.0, 2), true});
        SupportAnsatz bad = euclidean_ansatz(3, 2, {c1, d1});
        bad.profile[1].power += 0.5;
        cases.push_back({"thm-4.5", "necessity: exponent +0.5", bad, true});
    }

    std::vector<std::function<std::vector<Record>()>> tasks;
    for (std::size_t idx = 0; idx < cases.size(); ++idx) {
        tasks.push_back([&, idx] {
            const Case& c = cases[idx];
            const bool twisted = c.ansatz.family == SupportAnsatz::Family::Twisted;
            const int real_dim = twisted ? 2 * c.ansatz.n : c.ansatz.n;
            const auto samples = support_samples(real_dim, c.ansatz.inner, count, cfg.seed + idx);
            const double res =
                twisted ? support_ansatz_check(c.ansatz, samples, cfg) : euclid_support_check(c.ansatz, samples, cfg);
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : c.ansatz.profile)
                terms.push_back({{"re", t.c.real()}, {"im", t.c.imag()}, {"power", t.power}, {"sigma", t.sigma}});
            nlohmann::json params{{"clause", c.clause}, {"dim", c.ansatz.n}, {"B", c.ansatz.inner},
                                  {"samples", count},   {"profile", terms}};
            if (twisted) {
                params["p"] = c.ansatz.p;
                params["q"] = c.ansatz.q;
            } else {
                params["k"] = c.ansatz.p;
            }
            return std::vector<Record>{c.necessity ? lower_bound(c.id, params, res, probe)
                                                   : upper_bound(c.id, params, res, tol)};
        });
    }
    std::vector<Record> out;
    for (auto& part : parallel_map(tasks)) out.insert(out.end(), part.begin(), part.end());

    // the growing branch violates |z|^k |f| <= C_k e^{-|z|^2/4}; a numeric
    // stand-in for the decay step, evaluated at rho = 10
    {
        const SupportAnsatz a = twisted_ansatz(2, 1, 1, {c1}, {});
        const RadialProfile profile = RadialProfile::exp_power(a.profile);
        const double rho = 10.0;
        const double ratio = std::abs(profile(rho)) * rho * rho * std::exp(0.25 * rho * rho);
        out.push_back(lower_bound("thm-4.1",
                                  {{"clause", "decay contrapositive (numeric stand-in)"},
                                   {"rho", rho},
                                   {"quantity", "|a(rho)| |P(z)| e^{rho^2/4} on |z|=rho"}},
                                  ratio, 1e10));
    }
    return out;
}

// ------------------------------------------------------------- two-sided, n=1

std::vector<Record> two_sided_means_probe(const SuiteConfig& cfg) {
    std::vector<Record> out;
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-7;
    const double inner = 1.0;
    // smooth bump supported in |z| <= B, not radial
    const Field bump = [inner](const ComplexPoint& u) {
        const double s = u.norm_sq() / (inner * inner);
        if (s >= 1.0) return Complex(0.0);
        return std::exp(-1.0 / (1.0 - s)) * (1.0 + 0.5 * u[0] + Complex(0.0, 0.3) * std::conj(u[0]));
    };
    std::mt19937_64 gen(cfg.seed ^ 0x42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 30; ++s) {
        const double c = 1.5 * u(gen);
        const ComplexPoint z{std::polar(c, 2.0 * kPi * u(gen))};
        const double r = c + inner + 0.01 + 2.99 * u(gen);
        const auto& rule = means::unit_rule(2, auto_order(cfg, 2, r, c, 8));
        for (means::Side side : {means::Side::Left, means::Side::Right}) {
            means::MeanQuery q{z, r};
            q.side = side;
            worst = std::max(worst, std::abs(means::twisted_mean(bump, q, rule).value));
        }
    }
    out.push_back(upper_bound("thm-4.2", {{"case", "bump, both sides, r > B + |z|"}, {"B", inner}, {"samples", 30}},
                              worst, tol));
    {
        const ComplexPoint z{Complex(1.0, 0.0)};
        const auto& rule = means::unit_rule(2, 256);
        double both = 0.0;
        for (means::Side side : {means::Side::Left, means::Side::Right}) {
            means::MeanQuery q{z, 3.0};
            q.side = side;
            both = std::max(both, std::abs(means::twisted_mean(bump, q, rule).value));
        }
        out.push_back(upper_bound("thm-4.2", {{"case", "bump B=1, r=3, |z|=1"}}, both, tol));
        // inside the support range the bump is seen
        means::MeanQuery q{ComplexPoint{Complex(0.3, 0.0)}, 0.5};
        out.push_back(lower_bound("thm-4.2", {{"case", "bump visible for r < B + |z|"}},
                                  std::abs(means::twisted_mean(bump, q, rule).value), 1e-3));
        const Field zero = [](const ComplexPoint&) { return Complex(0.0); };
        out.push_back(upper_bound("thm-4.2", {{"case", "f = 0"}},
                                  std::abs(means::twisted_mean(zero, means::MeanQuery{z, 3.0}, rule).value), 0.0));
    }
    // asymmetry: a left twisted translate of phi_1 has vanishing left means
    // for centers on |z - eta| = sqrt(2) while the right means do not vanish
    {
        const ComplexPoint eta{Complex(0.7, -0.4)};
        const Field g = [](const ComplexPoint& w) { return Complex(special::phi_eval({1, 1}, w.norm())); };
        const Field f = means::twisted_translate(g, eta);
        const double radius = std::sqrt(2.0);
        double left = 0.0, right = 0.0;
        for (int a = 0; a < 8; ++a) {
            const ComplexPoint z = eta + ComplexPoint{std::polar(radius, 2.0 * kPi * a / 8.0 + 0.1)};
            for (double r : {0.5, 1.0, 2.0, 3.7}) {
                const auto& rule = means::unit_rule(2, auto_order(cfg, 2, r, z.norm(), 4));
                means::MeanQuery q{z, r};
                const means::MeanValue l = means::twisted_mean(f, q, rule);
                q.side = means::Side::Right;
                const means::MeanValue rv = means::twisted_mean(f, q, rule);
                left = std::max(left, std::abs(l.value));
                right = std::max(right, std::abs(rv.value));
            }
        }
        out.push_back(upper_bound("thm-4.2", {{"case", "asymmetry: left means of translate on |z-eta|=sqrt2"}}, left, 1e-10));
        out.push_back(lower_bound("thm-4.2", {{"case", "asymmetry: right means of translate on |z-eta|=sqrt2"}}, right, 1e-2));
    }
    return out;
}

// ------------------------------------------------------------------- gallery

std::vector<Record> counterexample_gallery(const SuiteConfig& cfg) {
    const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-8;
    const double witness_min = 1e-2;
    const std::vector<double> radii{0.5, 1.0, 2.0, 3.7};
    std::vector<Record> out;
    auto row = [&](std::string name, nlohmann::json params, double on, double off) {
        params["row"] = name;
        params["off_sphere_witness"] = off;
        params["witness_min"] = witness_min;
        Record r = upper_bound("counterexamples", std::move(params), on, tol);
        r.pass = r.pass && off >= witness_min;
        out.push_back(std::move(r));
    };

    // (i) Euclidean Bessel eigenfunction, lambda R = first zero of J_{d/2-1}
    {
        const int d = 2;
        const double lambda = 1.0;
        const RadialProfile psi = RadialProfile::bessel(lambda, d);
        const double radius = special::bessel_j_zero(0.5 * d - 1.0, 1) / lambda;
        const auto f = [&](const RealPoint& x) { return psi(x.norm()); };
        double on = 0.0, off = 0.0;
        for (double r : radii) {
            const auto& rule = means::unit_rule(d, auto_order(cfg, d, r, radius, static_cast<int>(4 * (r + radius)) + 8));
            for (int a = 0; a < 8; ++a) {
                const double th = 2.0 * kPi * a / 8.0 + 0.2;
                on = std::max(on, std::abs(means::euclidean_mean(f, RealPoint{radius * std::cos(th), radius * std::sin(th)}, r, rule).value));
                off = std::max(off, std::abs(means::euclidean_mean(f, RealPoint{0.5 * radius * std::cos(th), 0.5 * radius * std::sin(th)}, r, rule).value));
            }
        }
        row("Bessel on S_R (Euclidean)", {{"d", d}, {"lambda", lambda}, {"R", radius}, {"r", radii}}, on, off);
    }
    // (ii) Laguerre function phi_1 on C^2, R = 2 is a zero of L_1^1(R^2/2)
    const Field phi1 = [](const ComplexPoint& u) { return Complex(special::phi_eval({1, 2}, u.norm())); };
    auto sphere_points = [](const ComplexPoint& base, double radius) {
        std::vector<ComplexPoint> pts;
        for (int a = 0; a < 8; ++a) {
            const double th = 2.0 * kPi * a / 8.0;
            pts.push_back(base + ComplexPoint{std::polar(radius * std::cos(0.3 + 0.1 * a), th),
                                              std::polar(radius * std::sin(0.3 + 0.1 * a), 1.7 * th)});
        }
        return pts;
    };
    {
        const ComplexPoint origin(2);
        double on = 0.0, off = 0.0;
        for (double r : radii) {
            for (const ComplexPoint& z : sphere_points(origin, 2.0)) {
                const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, 2.0, 2));
                on = std::max(on, std::abs(means::twisted_mean(phi1, means::MeanQuery{z, r}, rule).value));
            }
            for (const ComplexPoint& z : sphere_points(origin, 1.0)) {
                const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, 1.0, 2));
                off = std::max(off, std::abs(means::twisted_mean(phi1, means::MeanQuery{z, r}, rule).value));
            }
        }
        row("Laguerre on S_R (twisted)", {{"n", 2}, {"k", 1}, {"R", 2.0}, {"r", radii}}, on, off);
    }
    // (iii) phi_0 against weights in H_{0,1}: weighted means vanish everywhere
    {
        const Field phi0 = [](const ComplexPoint& u) { return Complex(special::phi_eval({0, 2}, u.norm())); };
        const ComplexPoly zb2 = ComplexPoly::coordinate(2, 1, true);
        const ComplexPoly z1 = ComplexPoly::coordinate(2, 0, false);
        double on = 0.0, off = 0.0;
        for (double r : radii)
            for (const ComplexPoint& z : sphere_points(ComplexPoint(2), 1.3)) {
                const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, 1.3, 2));
                on = std::max(on, std::abs(means::weighted_twisted_mean(phi0, z, r, zb2, rule).value));
                off = std::max(off, std::abs(means::weighted_twisted_mean(phi0, z, r, z1, rule).value));
            }
        row("phi_0 with weight zbar_2 (witness: weight z_1)", {{"n", 2}, {"k", 0}, {"weight", "zbar_2"}, {"r", radii}},
            on, off);
    }
    // (iv) a twisted translate of (ii): the zero set moves to S_R(eta), so an
    // off-origin sphere carries the failure while S_R(0) no longer does
    {
        const ComplexPoint eta{Complex(0.8, 0.3), Complex(-0.5, 0.6)};
        const Field moved = means::twisted_translate(phi1, eta);
        double on = 0.0, off = 0.0;
        for (double r : radii) {
            for (const ComplexPoint& z : sphere_points(eta, 2.0)) {
                const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, z.norm(), 2));
                on = std::max(on, std::abs(means::twisted_mean(moved, means::MeanQuery{z, r}, rule).value));
            }
            for (const ComplexPoint& z : sphere_points(ComplexPoint(2), 2.0)) {
                const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, 2.0, 2));
                off = std::max(off, std::abs(means::twisted_mean(moved, means::MeanQuery{z, r}, rule).value));
            }
        }
        row("twisted translate, off-center sphere S_R(eta)",
            {{"n", 2}, {"k", 1}, {"R", 2.0}, {"eta", {0.8, 0.3, -0.5, 0.6}}, {"r", radii}}, on, off);
    }
    return out;
}

// ----------------------------------------------------------------- execution

int thread_count() {
    if (const char* env = std::getenv("TWISTMEANS_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<Record>> parallel_map(const std::vector<std::function<std::vector<Record>()>>& tasks) {
    std::vector<std::vector<Record>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                results[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int workers = std::min<int>(thread_count(), static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::string to_csv(const std::vector<Record>& records) {
    std::string out = "experiment,params,residual,tolerance,pass\n";
    char buf[64];
    for (const auto& r : records) {
        std::string params = r.params.dump();
        std::string quoted = "\"";
        for (char ch : params) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        quoted += '"';
        out += r.experiment + "," + quoted + ",";
        std::snprintf(buf, sizeof buf, "%.6e,%.3e,", r.residual, r.tolerance);
        out += buf;
        out += r.pass ? "true\n" : "false\n";
    }
    return out;
}

nlohmann::json to_json(const std::vector<Record>& records, const SuiteConfig& cfg) {
    nlohmann::json rows = nlohmann::json::array();
    int passed = 0;
    for (const auto& r : records) {
        rows.push_back({{"experiment", r.experiment},
                        {"params", r.params},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
        passed += r.pass ? 1 : 0;
    }
    return {{"config", to_json(cfg)},
            {"records", rows},
            {"summary", {{"total", records.size()}, {"passed", passed}, {"failed", static_cast<int>(records.size()) - passed}}}};
}

}  // namespace twistmeans::experiments
