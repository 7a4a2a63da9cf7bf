#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "twistmeans/experiments.hpp"
#include "twistmeans/harmonics.hpp"
#include "twistmeans/means.hpp"
#include "twistmeans/operators.hpp"
#include "twistmeans/quadrature.hpp"
#include "twistmeans/special_functions.hpp"

namespace twistmeans::experiments {

namespace {

using Suite = std::vector<Record> (*)(const SuiteConfig&);
using Tasks = std::vector<std::function<std::vector<Record>()>>;

double pinned(const SuiteConfig& cfg, double value) { return cfg.tol > 0.0 ? cfg.tol : value; }

std::vector<Record> flatten(const std::vector<std::vector<Record>>& parts) {
    std::vector<Record> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

ComplexPoint gaussian_point(std::mt19937_64& gen, int n, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    ComplexPoint z(n);
    for (int j = 0; j < n; ++j) {
        const double re = g(gen);
        z[j] = Complex(re, g(gen));
    }
    return z;
}

Field phi_field(int k, int n) {
    return [k, n](const ComplexPoint& u) { return Complex(special::phi_eval({k, n}, u.norm())); };
}

// A smooth test function on C^n: Gaussian times a mixed polynomial.
StructuredFunction smooth_test_function(int n) {
    ComplexPoly poly = ComplexPoly::constant(n, 1.0) + Complex(0.5, -0.2) * ComplexPoly::coordinate(n, 0, true);
    if (n >= 2) poly += Complex(0.3, 0.4) * (ComplexPoly::coordinate(n, 0, false) * ComplexPoly::coordinate(n, 1, true));
    return StructuredFunction::from(RadialProfile::exp_power({{1.0, 0.0, -4.0 / 3.0}}), poly);
}

// ------------------------------------------------------------ eq-1.2

std::vector<Record> suite_laguerre_relation(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    std::vector<int> ns{1, 2};
    if (cfg.n == 3) ns.push_back(3);
    const std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
    Tasks tasks;
    for (int n : ns) {
        std::mt19937_64 gen(cfg.seed + 101 * n);
        std::vector<ComplexPoint> zs;
        for (int i = 0; i < 20; ++i) zs.push_back(gaussian_point(gen, n, n == 3 ? 0.4 : 0.7));
        for (int k = 0; k <= cfg.max_k; ++k)
            for (double r : radii)
                tasks.push_back([=] {
                    const double b = special::b_constant(k, n).to_double();
                    double worst = 0.0;
                    for (const ComplexPoint& z : zs) {
                        const auto& rule = means::unit_rule(2 * n, auto_order(cfg, 2 * n, r, z.norm(), 2 * k));
                        const Complex expected = b * special::phi_eval({k, n}, r) * special::phi_eval({k, n}, z.norm());
                        for (means::Side side : {means::Side::Left, means::Side::Right}) {
                            means::MeanQuery q{z, r};
                            q.side = side;
                            worst = std::max(worst, means::twisted_mean(phi_field(k, n), q, rule).relative_to(expected));
                        }
                    }
                    return std::vector<Record>{upper_bound(
                        "eq-1.2", {{"n", n}, {"k", k}, {"r", r}, {"centers", zs.size()}, {"sides", "left,right"}}, worst, tol)};
                });
    }
    return flatten(parallel_map(tasks));
}

// ------------------------------------------------------------ bessel-eigen

std::vector<Record> suite_bessel(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    std::vector<Record> out;
    std::mt19937_64 gen(cfg.seed + 7);
    std::normal_distribution<double> g(0.0, 0.8);
    for (int d : {2, 3})
        for (double lambda : {1.0, 2.0}) {
            const RadialProfile psi = RadialProfile::bessel(lambda, d);
            const auto f = [&](const RealPoint& x) { return psi(x.norm()); };
            std::vector<RealPoint> xs;
            for (int i = 0; i < 10; ++i) {
                RealPoint x(d);
                for (int j = 0; j < d; ++j) x[j] = g(gen);
                xs.push_back(x);
            }
            for (double r : {0.5, 1.0, 2.0, 4.0}) {
                double worst = 0.0;
                for (const RealPoint& x : xs) {
                    const int deg = static_cast<int>(std::ceil(2.0 * lambda * (r + x.norm()))) + 10;
                    const auto& rule = means::unit_rule(d, auto_order(cfg, d, r, x.norm(), deg));
                    worst = std::max(worst, means::euclidean_mean(f, x, r, rule).relative_to(psi(r) * psi(x.norm())));
                }
                out.push_back(upper_bound("bessel-eigen", {{"d", d}, {"lambda", lambda}, {"r", r}, {"centers", xs.size()}},
                                          worst, tol));
            }
            const double radius = special::bessel_j_zero(0.5 * d - 1.0, 1) / lambda;
            double on = 0.0;
            for (int a = 0; a < 8; ++a) {
                RealPoint x(d);
                const double th = 2.0 * kPi * a / 8.0 + 0.3;
                x[0] = radius * std::cos(th);
                x[1] = radius * std::sin(th);
                for (double r : {0.5, 1.0, 2.0, 3.7}) {
                    const int deg = static_cast<int>(std::ceil(2.0 * lambda * (r + radius))) + 10;
                    const auto& rule = means::unit_rule(d, auto_order(cfg, d, r, radius, deg));
                    on = std::max(on, std::abs(means::euclidean_mean(f, x, r, rule).value));
                }
            }
            out.push_back(upper_bound("bessel-eigen", {{"d", d}, {"lambda", lambda}, {"case", "zero set S_R"}, {"R", radius}},
                                      on, tol));
        }
    return out;
}

// ------------------------------------------------------------ laguerre

// sum_j (-1)^j binom(k+alpha, k-j) x^j / j! in extended precision: the
// alternating terms reach ~1e5 at x = 5, k = 20, which costs double ~1e-10.
double explicit_laguerre(int k, double alpha, double x) {
    long double sum = 0.0L, term = 1.0L;
    for (int j = 0; j < k; ++j) term *= (alpha + k - j) / static_cast<long double>(k - j);  // binom(k+alpha, k)
    for (int j = 0; j <= k; ++j) {
        sum += term;
        term *= -static_cast<long double>(x) * (k - j) / ((alpha + j + 1) * static_cast<long double>(j + 1));
    }
    return static_cast<double>(sum);
}

std::vector<Record> suite_laguerre_recurrence(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-12);
    std::vector<Record> out;
    for (int a = 0; a <= 3; ++a) {
        const double alpha = a;
        double deriv = 0.0, shift = 0.0, explicit_sum = 0.0;
        for (int k = 1; k <= 20; ++k)
            for (int i = 0; i <= 100; ++i) {
                const double x = 0.5 * i;
                const double lk = special::laguerre_eval({k, alpha}, x);
                const double lk1 = special::laguerre_eval({k - 1, alpha}, x);
                const double up = special::laguerre_eval({k - 1, alpha + 1.0}, x);
                const double lk_up = special::laguerre_eval({k, alpha + 1.0}, x);
                // x d/dx L_k = k L_k - (k + alpha) L_{k-1}, with d/dx L_k^a = -L_{k-1}^{a+1}
                const double s1 = std::max({std::abs(x * up), k * std::abs(lk), (k + alpha) * std::abs(lk1), 1e-300});
                deriv = std::max(deriv, std::abs(-x * up - (k * lk - (k + alpha) * lk1)) / s1);
                // L_{k-1}^{a+1} + L_k^a = L_k^{a+1}
                const double s2 = std::max({std::abs(up), std::abs(lk), std::abs(lk_up), 1e-300});
                shift = std::max(shift, std::abs(up + lk - lk_up) / s2);
                if (x <= 5.0) {
                    const double sum = explicit_laguerre(k, alpha, x);
                    explicit_sum = std::max(explicit_sum, std::abs(sum - lk) / std::max(std::abs(lk), 1.0));
                }
            }
        out.push_back(upper_bound("laguerre-recurrence", {{"alpha", alpha}, {"identity", "derivative"}, {"k_max", 20}, {"x", "[0,50]"}},
                                  deriv, tol));
        out.push_back(upper_bound("laguerre-recurrence", {{"alpha", alpha}, {"identity", "type shift"}, {"k_max", 20}, {"x", "[0,50]"}},
                                  shift, tol));
        out.push_back(upper_bound("laguerre-recurrence",
                                  {{"alpha", alpha}, {"identity", "explicit sum"}, {"k_max", 20}, {"x", "[0,5]"}},
                                  explicit_sum, tol));
    }
    return out;
}

std::vector<Record> suite_distinct_zeros(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-12);
    std::vector<Record> out;
    for (int a = 0; a <= 3; ++a) {
        const double alpha = a;
        double residual = 0.0, min_gap = 1e300;
        bool interlacing = true;
        std::vector<double> prev;
        for (int k = 1; k <= 12; ++k) {
            const auto zeros = special::laguerre_zeros({k, alpha});
            for (std::size_t i = 0; i < zeros.size(); ++i) {
                const double x = zeros[i];
                const double d = special::laguerre_deriv({k, alpha}, x);
                residual = std::max(residual, std::abs(special::laguerre_eval({k, alpha}, x) / d) / x);
                if (i > 0) min_gap = std::min(min_gap, (zeros[i] - zeros[i - 1]) / zeros[i]);
            }
            for (std::size_t i = 0; i < prev.size(); ++i)
                interlacing = interlacing && zeros[i] < prev[i] && prev[i] < zeros[i + 1];
            prev = zeros;
        }
        Record r = upper_bound("cor-2.6",
                               {{"alpha", alpha}, {"k_max", 12}, {"min_relative_gap", min_gap}, {"interlacing", interlacing}},
                               residual, tol);
        r.pass = r.pass && interlacing && min_gap > 1e-6;
        out.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------ lemma-2.1

std::vector<Record> suite_projection(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    std::vector<Record> out;
    std::mt19937_64 gen(cfg.seed + 21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 11);
    for (int m : {cfg.n, 1, 3}) {
        if (m < 1 || m > 4) continue;
        for (int draw = 0; draw < 5; ++draw) {
            std::vector<Complex> coeffs(12, 0.0);
            int placed = 0;
            while (placed < 6) {
                const int k = pick(gen);
                if (coeffs[k] != 0.0) continue;
                coeffs[k] = Complex(u(gen), u(gen));
                ++placed;
            }
            const RadialProfile a = RadialProfile::laguerre_series(m, coeffs);
            double worst = 0.0;
            for (int k = 0; k < 16; ++k) {
                const Complex expected = k < 12 ? coeffs[k] : 0.0;
                worst = std::max(worst, std::abs(means::projection_coefficient(a, k, m) - expected));
            }
            // the expansion reproduces a pointwise
            double pointwise = 0.0;
            for (double rho : {0.3, 1.1, 2.5, 4.0, 6.5}) {
                Complex s = 0.0;
                for (int k = 0; k < 16; ++k) s += means::radial_projection(a, k, m)(rho);
                pointwise = std::max(pointwise, std::abs(s - a(rho)));
            }
            out.push_back(upper_bound("lemma-2.1", {{"m", m}, {"draw", draw}, {"terms", 6}, {"pointwise", pointwise}},
                                      std::max(worst, pointwise), tol));
        }
        double orth = 0.0;
        for (int k = 1; k < 10; ++k)
            orth = std::max(orth, std::abs(means::projection_coefficient(RadialProfile::laguerre_function(0, m), k, m)));
        out.push_back(upper_bound("lemma-2.1", {{"m", m}, {"case", "phi_0 has no k >= 1 component"}}, orth, tol));
    }
    return out;
}

// ------------------------------------------------------------ lemma-2.2

std::vector<Record> suite_hecke_bochner(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-6);
    const double vanish_tol = pinned(cfg, 1e-8);
    std::vector<std::pair<int, int>> bidegrees{{1, 0}, {0, 1}, {1, 1}};
    if (std::find(bidegrees.begin(), bidegrees.end(), std::make_pair(cfg.p, cfg.q)) == bidegrees.end() && cfg.p <= 2 &&
        cfg.q <= 2)
        bidegrees.emplace_back(cfg.p, cfg.q);
    struct Profile {
        std::string name;
        RadialProfile a;
    };
    const std::vector<Profile> profiles{{"exp(-rho^2/3)", RadialProfile::exp_power({{1.0, 0.0, -4.0 / 3.0}})},
                                        {"exp(-rho^2/4)", RadialProfile::exp_power({{1.0, 0.0, -1.0}})}};
    const std::vector<ComplexPoint> zs{ComplexPoint{Complex(0.5, 0.2), Complex(-0.3, 0.6)},
                                       ComplexPoint{Complex(1.2, -0.4), Complex(0.1, 0.9)}};
    std::vector<int> ks;
    for (int k = 0; k <= std::min(cfg.max_k, 4); ++k) ks.push_back(k);
    Tasks tasks;
    for (auto [p, q] : bidegrees)
        for (const auto& prof : profiles)
            for (std::size_t zi = 0; zi < zs.size(); ++zi)
                tasks.push_back([=, &zs] {
                    const ComplexPoly weight = ComplexPoly::z1p_zbar2q(2, p, q);
                    const std::vector<ComplexPoint> one{zs[zi]};
                    std::vector<Record> rows;
                    for (const auto& pt : means::hecke_bochner_check(prof.a, weight, p, q, ks, one)) {
                        nlohmann::json params{{"n", 2}, {"p", p}, {"q", q}, {"k", pt.k}, {"profile", prof.name},
                                              {"z", zi}, {"constant", "(2pi)^-(p+q)"}};
                        if (pt.vanishing) {
                            params["case"] = "k < p vanishes";
                            rows.push_back(upper_bound("lemma-2.2", params, std::abs(pt.lhs) / std::max(pt.scale, 1e-300),
                                                       vanish_tol));
                        } else {
                            rows.push_back(upper_bound("lemma-2.2", params, pt.residual, tol));
                        }
                    }
                    return rows;
                });
    return flatten(parallel_map(tasks));
}

// ------------------------------------------------------------ lemma-2.3

std::vector<std::pair<ComplexPoint, double>> c_samples(std::mt19937_64& gen, int count) {
    std::uniform_real_distribution<double> u(0.3, 2.5);
    std::vector<std::pair<ComplexPoint, double>> out;
    for (int i = 0; i < count; ++i) out.emplace_back(gaussian_point(gen, 2, 0.6), u(gen));
    return out;
}

std::vector<Record> suite_constant(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-6);
    const double vanish_tol = pinned(cfg, 1e-10);
    std::vector<std::pair<int, int>> bidegrees{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}};
    if (std::find(bidegrees.begin(), bidegrees.end(), std::make_pair(cfg.p, cfg.q)) == bidegrees.end() && cfg.p <= 3 &&
        cfg.q <= 3)
        bidegrees.emplace_back(cfg.p, cfg.q);
    Tasks tasks;
    for (std::size_t bi = 0; bi < bidegrees.size(); ++bi)
        tasks.push_back([=] {
            const auto [p, q] = bidegrees[bi];
            const ComplexPoly weight = ComplexPoly::z1p_zbar2q(2, p, q);
            std::mt19937_64 gen(cfg.seed + 31 * bi);
            const std::vector<int> ks{q, q + 1};
            // resample degenerate pairs
            std::vector<std::pair<ComplexPoint, double>> kept;
            while (kept.size() < 10) {
                for (const auto& s : c_samples(gen, 1)) {
                    try {
                        means::determine_C(2, weight, p, q, ks, std::vector<std::pair<ComplexPoint, double>>{s});
                        kept.push_back(s);
                    } catch (const std::domain_error&) {
                    }
                }
            }
            const means::CResult c = means::determine_C(2, weight, p, q, ks, kept);
            std::vector<Record> rows;
            rows.push_back(upper_bound("lemma-2.3",
                                       {{"n", 2}, {"p", p}, {"q", q}, {"k", ks}, {"pairs", kept.size()},
                                        {"case", "ratio constant per k"}},
                                       c.ratio_spread, tol));
            rows.push_back(upper_bound("lemma-2.3",
                                       {{"n", 2}, {"p", p}, {"q", q}, {"kappa_re", c.kappa.real()},
                                        {"kappa_im", c.kappa.imag()}, {"closed_form", c.closed_form},
                                        {"case", "kappa = ratio / B_{k-q}^{n+p+q} matches 2^-(p+q) (n-1)!/(n+p+q-1)!"}},
                                       std::abs(c.kappa - c.closed_form) / c.closed_form, tol));
            // k < q: the weighted mean vanishes
            double vanish = 0.0;
            for (int k = 0; k < q; ++k)
                for (const auto& [z, r] : kept) {
                    const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, z.norm(), 2 * k + p + q));
                    const means::MeanValue m = means::weighted_twisted_mean(phi_field(k, 2), z, r, weight, rule);
                    vanish = std::max(vanish, std::abs(m.value) / std::max(m.mass, 1e-300));
                }
            if (q > 0)
                rows.push_back(upper_bound("lemma-2.3", {{"n", 2}, {"p", p}, {"q", q}, {"case", "k < q vanishes"}}, vanish,
                                           vanish_tol));
            return rows;
        });
    return flatten(parallel_map(tasks));
}

std::vector<Record> suite_phi0_weight(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-10);
    std::vector<Record> out;
    std::mt19937_64 gen(cfg.seed + 25);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (int n : {2, 3}) {
        const harmonics::HarmonicBasis basis = harmonics::build_bigraded_basis(n, 0, 1);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const ComplexPoint z = gaussian_point(gen, n, n == 3 ? 0.4 : 0.7);
            const double r = n == 3 ? std::min(u(gen), 1.5) : u(gen);
            const auto& rule = means::unit_rule(2 * n, auto_order(cfg, 2 * n, r, z.norm(), 2));
            for (const auto& p : basis.elements)
                worst = std::max(worst, std::abs(means::weighted_twisted_mean(phi_field(0, n), z, r, p, rule).value));
        }
        out.push_back(upper_bound("remark-2.5", {{"n", n}, {"weights", "orthonormal basis of H_{0,1}"}, {"pairs", 10}},
                                  worst, tol));
    }
    return out;
}

// ------------------------------------------------------------ lemma-3.2

std::vector<ComplexPoint> operator_grid() {
    std::vector<ComplexPoint> g;
    for (double s : {0.3, 1.0, 2.2})
        for (double th : {0.2, 1.9, 4.0})
            g.push_back(ComplexPoint{std::polar(s * std::cos(th / 3.0), th), std::polar(s * std::sin(th / 3.0), -0.7 * th)});
    return g;
}

std::vector<Record> suite_weyl(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    const double fd_tol = pinned(cfg, 1e-6);
    const int n = 2;
    std::vector<Record> out;
    const auto grid = operator_grid();
    for (operators::Kind kind : {operators::Kind::A, operators::Kind::Z}) {
        const std::string name = kind == operators::Kind::A ? "A" : "Z";
        double worst = 0.0;
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q)
                for (int k = 0; k <= std::max(5, cfg.max_k); ++k) {
                    const StructuredFunction phi = StructuredFunction::from(RadialProfile::laguerre_function(k, n),
                                                                            ComplexPoly::constant(n, 1.0));
                    const StructuredFunction g = operators::monomial_weyl(p, q, kind, phi);
                    const int shift = kind == operators::Kind::A ? q : p;
                    for (const ComplexPoint& z : grid) {
                        Complex expected = 0.0;
                        if (k >= shift)
                            expected = std::pow(-0.5, p + q) * std::pow(z[0], p) * std::pow(std::conj(z[1]), q) *
                                       special::phi_eval({k - shift, n + p + q}, z.norm());
                        worst = std::max(worst, std::abs(g(z) - expected) / std::max(1.0, std::abs(expected)));
                    }
                }
        out.push_back(upper_bound("lemma-3.2", {{"n", n}, {"kind", name}, {"p_max", 2}, {"q_max", 2},
                                                {"k_max", std::max(5, cfg.max_k)}, {"path", "analytic"},
                                                {"shift", kind == operators::Kind::A ? "k-q" : "k-p"}},
                                  worst, tol));
        // finite-difference path on black-box versions
        double fd = 0.0;
        for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 0}})
            for (int k : {1, 3}) {
                const StructuredFunction phi = StructuredFunction::from(RadialProfile::laguerre_function(k, n),
                                                                        ComplexPoly::constant(n, 1.0));
                const Field black = phi_field(k, n);
                const Field approx = operators::monomial_weyl(p, q, kind, black);
                const StructuredFunction exact = operators::monomial_weyl(p, q, kind, phi);
                for (const ComplexPoint& z : grid) fd = std::max(fd, std::abs(approx(z) - exact(z)));
            }
        out.push_back(upper_bound("lemma-3.2", {{"n", n}, {"kind", name}, {"path", "finite differences vs analytic"}}, fd,
                                  fd_tol));
    }
    // A_1* and A_2 commute; the A and Z families commute
    const StructuredFunction f = smooth_test_function(n);
    const Field black = [f](const ComplexPoint& z) { return f(z); };
    auto ap = [](operators::Kind k, int j, const StructuredFunction& g) { return operators::apply({k, j, 1}, g); };
    double comm = 0.0, comm_fd = 0.0;
    const std::vector<std::pair<operators::OperatorSpec, operators::OperatorSpec>> pairs{
        {{operators::Kind::As, 0, 1}, {operators::Kind::A, 1, 1}},
        {{operators::Kind::A, 0, 1}, {operators::Kind::Z, 0, 1}},
        {{operators::Kind::As, 0, 1}, {operators::Kind::Zs, 0, 1}},
        {{operators::Kind::A, 1, 1}, {operators::Kind::Zs, 0, 1}}};
    for (const auto& [a, b] : pairs) {
        const StructuredFunction c = ap(a.kind, a.j, ap(b.kind, b.j, f)) - ap(b.kind, b.j, ap(a.kind, a.j, f));
        const Field ab = operators::apply(a, operators::apply(b, black));
        const Field ba = operators::apply(b, operators::apply(a, black));
        for (const ComplexPoint& z : grid) {
            comm = std::max(comm, std::abs(c(z)));
            comm_fd = std::max(comm_fd, std::abs(ab(z) - ba(z)));
        }
    }
    out.push_back(upper_bound("lemma-3.2", {{"case", "commutators [A1*,A2], [A,Z]"}, {"path", "analytic"}}, comm, fd_tol));
    out.push_back(upper_bound("lemma-3.2", {{"case", "commutators [A1*,A2], [A,Z]"}, {"path", "finite differences"}},
                              comm_fd, fd_tol));
    return out;
}

// ------------------------------------------------------------ lemma-3.4

std::vector<Record> suite_radial_ladder(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-10);
    std::vector<Record> out;
    double d_err = 0.0, ds_err = 0.0, plus_sign = 0.0;
    for (int k = 0; k <= 8; ++k)
        for (int m = 1; m <= 5; ++m)
            for (int i = 1; i <= 40; ++i) {
                const double rho = 0.2 * i;
                const double up = special::phi_eval({k, m + 1}, rho);
                const double down = k == 0 ? 0.0 : special::phi_eval({k - 1, m + 1}, rho);
                const double vd = operators::radial_ladder(operators::Kind::D, k, m, rho);
                const double vds = operators::radial_ladder(operators::Kind::Ds, k, m, rho);
                d_err = std::max(d_err, std::abs(vd + up));
                ds_err = std::max(ds_err, std::abs(vds + down));
                plus_sign = std::max(plus_sign, std::abs(vd - up));
            }
    out.push_back(upper_bound("lemma-3.4", {{"kind", "D"}, {"sign", -1}, {"k_max", 8}, {"m_max", 5}, {"rho", "(0,8]"}}, d_err, tol));
    out.push_back(upper_bound("lemma-3.4", {{"kind", "D*"}, {"sign", -1}, {"k_max", 8}, {"m_max", 5}, {"rho", "(0,8]"}}, ds_err, tol));
    out.push_back(lower_bound("lemma-3.4", {{"kind", "D"}, {"sign", +1}, {"case", "positive-sign reading rejected"}}, plus_sign, 1e-3));
    double comp = 0.0;
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int k = 0; k <= 5; ++k) {
                const int m = 2;
                RadialProfile a = RadialProfile::exp_power(*RadialProfile::laguerre_function(k, m).as_exp_power());
                for (int i = 0; i < q; ++i) a = operators::radial_ladder(operators::Kind::Ds, a);
                for (int i = 0; i < p; ++i) a = operators::radial_ladder(operators::Kind::D, a);
                const auto c = operators::radial_ladder_coefficients(p, q, k);
                const RadialProfile expected =
                    RadialProfile::laguerre_series(m + p + q, std::vector<Complex>(c.begin(), c.end()));
                for (double rho : {0.4, 1.5, 3.0, 5.5})
                    comp = std::max(comp, std::abs(a(rho) - expected(rho)) / std::max(1.0, std::abs(expected(rho))));
            }
    out.push_back(upper_bound("lemma-3.4", {{"case", "(1/rho D)^p (1/rho D*)^q composition"}, {"p_max", 2}, {"q_max", 2}},
                              comp, tol));
    return out;
}

// ------------------------------------------------------------ remark-1.2

std::vector<Record> suite_covariance(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-9);
    std::vector<Record> out;
    std::mt19937_64 gen(cfg.seed + 12);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (int n : {1, 2}) {
        const StructuredFunction f = smooth_test_function(n);
        const Field black = [f](const ComplexPoint& z) { return f(z); };
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const ComplexPoint eta = gaussian_point(gen, n, 0.7);
            const ComplexPoint z = gaussian_point(gen, n, 0.7);
            const double r = u(gen);
            const Field moved = means::twisted_translate(black, eta);
            const double c = std::max(z.norm(), (z - eta).norm());
            const auto& rule = means::unit_rule(2 * n, auto_order(cfg, 2 * n, r, c, f.groups().empty() ? 0 : 2));
            const Complex lhs = means::twisted_mean(black, means::MeanQuery{z - eta, r}, rule).value *
                                std::polar(1.0, 0.5 * symplectic(eta, z));
            worst = std::max(worst, means::twisted_mean(moved, means::MeanQuery{z, r}, rule).relative_to(lhs));
        }
        out.push_back(upper_bound("remark-1.2", {{"n", n}, {"case", "tau_eta(f x mu_r) = (tau_eta f) x mu_r"}, {"draws", 10}},
                                  worst, tol));
    }
    // the zero set of phi_1 x mu_r moves with the translate
    const Field phi1 = phi_field(1, 2);
    const ComplexPoint eta{Complex(0.8, 0.3), Complex(-0.5, 0.6)};
    const Field moved = means::twisted_translate(phi1, eta);
    double on = 0.0, off = 0.0;
    for (int a = 0; a < 6; ++a) {
        const ComplexPoint dir{std::polar(2.0 * std::cos(0.4 + 0.2 * a), 1.1 * a), std::polar(2.0 * std::sin(0.4 + 0.2 * a), -0.6 * a)};
        for (double r : {0.5, 1.0, 2.0, 3.7}) {
            const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, (eta + dir).norm(), 2));
            on = std::max(on, std::abs(means::twisted_mean(moved, means::MeanQuery{eta + dir, r}, rule).value));
            off = std::max(off, std::abs(means::twisted_mean(moved, means::MeanQuery{dir, r}, rule).value));
        }
    }
    out.push_back(upper_bound("remark-1.2", {{"case", "translate of phi_1 vanishes on S_2(eta)"}}, on, pinned(cfg, 1e-8)));
    out.push_back(lower_bound("remark-1.2", {{"case", "translate of phi_1 on S_2(0)"}}, off, 1e-2));
    return out;
}

// ------------------------------------------------------------ lambda-reduction

std::vector<Record> suite_lambda(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    std::vector<Record> out;
    std::mt19937_64 gen(cfg.seed + 3);
    std::uniform_real_distribution<double> ul(0.3, 3.0), us(0.3, 2.5);
    for (int n : {1, 2}) {
        const StructuredFunction f = smooth_test_function(n);
        const Field black = [f](const ComplexPoint& z) { return f(z); };
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const ComplexPoint z = gaussian_point(gen, n, 0.7);
            const double lambda = ul(gen), s = us(gen);
            const double big = std::max(lambda, 1.0);
            const auto& rule = means::unit_rule(2 * n, auto_order(cfg, 2 * n, s * std::sqrt(big), z.norm() * std::sqrt(big), 4));
            worst = std::max(worst, means::lambda_reduction_check(black, z, s, lambda, rule));
        }
        out.push_back(upper_bound("lambda-reduction",
                                  {{"n", n}, {"draws", 10}, {"contract", "M_lambda(f; z, s) = M_1(f(./sqrt lambda); sqrt(lambda) z, sqrt(lambda) s)"}},
                                  worst, tol));
        const auto& rule = means::unit_rule(2 * n, 48);
        const ComplexPoint z = gaussian_point(gen, n, 0.7);
        out.push_back(upper_bound("lambda-reduction", {{"n", n}, {"case", "lambda = 1"}},
                                  means::lambda_reduction_check(black, z, 1.3, 1.0, rule), 1e-15));
        out.push_back(upper_bound("lambda-reduction", {{"n", n}, {"case", "z = 0"}},
                                  means::lambda_reduction_check(black, ComplexPoint(n), 1.3, 2.5, rule), 1e-14));
    }
    return out;
}

// ------------------------------------------------------------ lemma-4.4

// Annulus form of the divergence identity for weighted twisted means,
//   F(rho) = rho^{2n-2} f x nu^{p,q}_rho,
//   left : F(b) - F(a) = -2 int_a^b s^{2n-1} [(A_1* f) x nu^{p-1,q}_s - f x nu^{p,q}_s / 4] ds
//   right: F(b) - F(a) = -2 int_a^b s^{2n-1} [(Z_1* f) x nu^{p-1,q}_s + f x nu^{p,q}_s / 4] ds
// (right means carry the conjugate phase). Returns the residual relative to
// the mass of the integrated terms.
double annulus_residual(const StructuredFunction& f, const StructuredFunction& df, int p, int q, means::Side side,
                        const ComplexPoint& z, double a, double b, const SuiteConfig& cfg) {
    const int n = f.dim();
    const ComplexPoly w_pq = ComplexPoly::z1p_zbar2q(n, p, q);
    const ComplexPoly w_low = ComplexPoly::z1p_zbar2q(n, p - 1, q);
    const double sign = side == means::Side::Left ? -1.0 : 1.0;
    auto mean = [&](const StructuredFunction& g, const ComplexPoly& w, double r) {
        const auto& rule = means::unit_rule(2 * n, auto_order(cfg, 2 * n, r, z.norm(), 6 + p + q));
        means::MeanQuery query{z, r, 1.0, side, &w};
        return means::twisted_mean(g, query, rule);
    };
    const quadrature::Rule1D gl = quadrature::gauss_legendre(24, a, b);
    Complex integral = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double s = gl.nodes[i];
        const means::MeanValue m1 = mean(df, w_low, s);
        const means::MeanValue m2 = mean(f, w_pq, s);
        const double g = -2.0 * gl.weights[i] * std::pow(s, 2 * n - 1);
        integral += g * (m1.value + sign * 0.25 * m2.value);
        mass += std::abs(g) * (m1.mass + 0.25 * m2.mass);
    }
    const means::MeanValue fb = mean(f, w_pq, b), fa = mean(f, w_pq, a);
    const Complex lhs = std::pow(b, 2 * n - 2) * fb.value - std::pow(a, 2 * n - 2) * fa.value;
    return std::abs(lhs - integral) / std::max(mass, 1e-300);
}

std::vector<Record> suite_annulus_twisted(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    const StructuredFunction f = smooth_test_function(2);
    const StructuredFunction a_star = operators::apply({operators::Kind::As, 0, 1}, f);
    const StructuredFunction z_star = operators::apply({operators::Kind::Zs, 0, 1}, f);
    const std::vector<ComplexPoint> zs{ComplexPoint{Complex(0.4, -0.3), Complex(0.2, 0.7)},
                                       ComplexPoint{Complex(-1.0, 0.5), Complex(0.6, -0.2)}};
    Tasks tasks;
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}})
        tasks.push_back([=, &f, &a_star, &z_star, &zs] {
            double left = 0.0, right = 0.0, swapped = 0.0;
            for (const ComplexPoint& z : zs) {
                left = std::max(left, annulus_residual(f, a_star, p, q, means::Side::Left, z, 0.7, 2.4, cfg));
                right = std::max(right, annulus_residual(f, z_star, p, q, means::Side::Right, z, 0.7, 2.4, cfg));
                swapped = std::max(swapped, annulus_residual(f, z_star, p, q, means::Side::Left, z, 0.7, 2.4, cfg));
            }
            nlohmann::json base{{"n", 2}, {"p", p}, {"q", q}, {"annulus", {0.7, 2.4}}};
            auto with = [&](const char* key, const char* v) {
                nlohmann::json j = base;
                j[key] = v;
                return j;
            };
            return std::vector<Record>{
                upper_bound("lemma-4.4", with("case", "left means, operator A_1*"), left, tol),
                upper_bound("lemma-4.4", with("case", "right means, operator Z_1*"), right, tol),
                lower_bound("lemma-4.4", with("case", "left means with Z_1* (does not hold)"), swapped, 1e-3)};
        });
    return flatten(parallel_map(tasks));
}

// ------------------------------------------------------------ lemma-4.7

std::vector<Record> suite_annulus_euclid(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-8);
    std::vector<Record> out;
    for (int d : {2, 3}) {
        RealPoly poly = RealPoly::constant(d, 1.0) + RealPoly::coordinate(d, 0) +
                        Complex(0.3, 0.1) * (RealPoly::coordinate(d, 1) * RealPoly::coordinate(d, d - 1));
        const RealStructuredFunction f = RealStructuredFunction::from(RadialProfile::exp_power({{1.0, 0.0, -2.0}}), poly);
        const RealStructuredFunction df = operators::euclid_dbar(f, 1);
        RealPoint x(d);
        x[0] = 0.4;
        x[d - 1] = -0.7;
        for (int k = 1; k <= 3; ++k) {
            const RealPoly wk = RealPoly::x1_plus_ix2_pow(d, k);
            const RealPoly wk1 = RealPoly::x1_plus_ix2_pow(d, k - 1);
            auto mean = [&](const RealStructuredFunction& g, const RealPoly& w, double r) {
                const auto& rule = means::unit_rule(d, auto_order(cfg, d, r, x.norm(), 8 + k));
                return means::euclidean_mean(g, x, r, rule, &w);
            };
            // F(rho) = rho^{d-2} f * mu^k_rho;  F(b) - F(a) = int_a^b s^{d-1} (dbar f) * mu^{k-1}_s ds
            const double a = 0.6, b = 2.2;
            const quadrature::Rule1D gl = quadrature::gauss_legendre(24, a, b);
            Complex integral = 0.0;
            double mass = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const means::MeanValue m = mean(df, wk1, gl.nodes[i]);
                const double g = gl.weights[i] * std::pow(gl.nodes[i], d - 1);
                integral += g * m.value;
                mass += std::abs(g) * m.mass;
            }
            const Complex lhs = std::pow(b, d - 2) * mean(f, wk, b).value - std::pow(a, d - 2) * mean(f, wk, a).value;
            out.push_back(upper_bound("lemma-4.7", {{"d", d}, {"k", k}, {"annulus", {a, b}}},
                                      std::abs(lhs - integral) / std::max(mass, 1e-300), tol));
        }
    }
    return out;
}

// ------------------------------------------------------------ k-invariance

std::vector<Record> suite_unitary(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-12);
    std::vector<Record> out;
    std::mt19937_64 gen(cfg.seed + 5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int n : {2, 3})
        for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}}) {
            Eigen::MatrixXcd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = Complex(g(gen), g(gen));
            const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
            const harmonics::HarmonicBasis basis = harmonics::build_bigraded_basis(n, p, q);
            double worst = 0.0;
            for (const auto& e : basis.elements) {
                const ComplexPoly moved = harmonics::unitary_action(e, u);
                // distance from H_{p,q}: remove the projection on the basis
                ComplexPoly rest = moved;
                for (const auto& b : basis.elements) rest -= harmonics::sphere_inner(moved, b) * b;
                worst = std::max(worst, std::sqrt(std::abs(harmonics::sphere_inner(rest, rest))));
                worst = std::max(worst, moved.is_bihomogeneous(p, q) ? 0.0 : 1.0);
            }
            out.push_back(upper_bound("k-invariance", {{"n", n}, {"p", p}, {"q", q}, {"dimension", basis.size()}}, worst, tol));
        }
    return out;
}

// ------------------------------------------------------------ right-invariance

std::vector<Record> suite_invariance(const SuiteConfig& cfg) {
    const double tol = pinned(cfg, 1e-6);
    std::vector<Record> out;
    const StructuredFunction f = smooth_test_function(2);
    std::mt19937_64 gen(cfg.seed + 9);
    std::uniform_real_distribution<double> u(0.4, 2.5);
    double z_err = 0.0, a_gap = 0.0;
    for (int i = 0; i < 6; ++i) {
        const ComplexPoint z = gaussian_point(gen, 2, 0.6);
        const double r = u(gen);
        const auto& rule = means::unit_rule(4, auto_order(cfg, 4, r, z.norm() + 0.1, 8));
        const Field mean_of_f = [&](const ComplexPoint& c) {
            return means::twisted_mean(f, means::MeanQuery{c, r}, rule).value;
        };
        for (int j : {0, 1}) {
            for (operators::Kind kind : {operators::Kind::Z, operators::Kind::Zs}) {
                const operators::OperatorSpec op{kind, j, 1};
                const Complex outer = operators::apply(op, mean_of_f)(z);
                const Complex inner = means::twisted_mean(operators::apply(op, f), means::MeanQuery{z, r}, rule).value;
                z_err = std::max(z_err, std::abs(outer - inner));
            }
            // P_1(Z) with P_1 = z_1 zbar_2 on the mean, the weight used downstream
        }
        {
            const StructuredFunction pf = operators::monomial_weyl(1, 1, operators::Kind::Z, f);
            const Field outer_f = operators::monomial_weyl(1, 1, operators::Kind::Z, mean_of_f);
            const Complex inner = means::twisted_mean(pf, means::MeanQuery{z, r}, rule).value;
            z_err = std::max(z_err, std::abs(outer_f(z) - inner));
        }
        const operators::OperatorSpec as{operators::Kind::As, 0, 1};
        a_gap = std::max(a_gap, std::abs(operators::apply(as, mean_of_f)(z) -
                                         means::twisted_mean(operators::apply(as, f), means::MeanQuery{z, r}, rule).value));
    }
    out.push_back(upper_bound("right-invariance",
                              {{"n", 2}, {"case", "Z_j, Z_j*, P_1(Z) commute with f -> f x mu_r"}, {"draws", 6}}, z_err, tol));
    out.push_back(lower_bound("right-invariance", {{"n", 2}, {"case", "A_1* does not commute with f -> f x mu_r"}}, a_gap, 1e-3));
    return out;
}

const std::vector<std::pair<std::string, Suite>>& registry() {
    static const std::vector<std::pair<std::string, Suite>> r{
        {"eq-1.2", suite_laguerre_relation},
        {"bessel-eigen", suite_bessel},
        {"laguerre-recurrence", suite_laguerre_recurrence},
        {"cor-2.6", suite_distinct_zeros},
        {"lemma-2.1", suite_projection},
        {"lemma-2.2", suite_hecke_bochner},
        {"lemma-2.3", suite_constant},
        {"remark-2.5", suite_phi0_weight},
        {"lemma-3.2", suite_weyl},
        {"lemma-3.4", suite_radial_ladder},
        {"remark-1.2", suite_covariance},
        {"lambda-reduction", suite_lambda},
        {"lemma-4.4", suite_annulus_twisted},
        {"lemma-4.7", suite_annulus_euclid},
        {"thm-4.1",
         [](const SuiteConfig& c) {
             std::vector<Record> out;
             for (auto& r : support_suite(c))
                 if (r.experiment == "thm-4.1") out.push_back(r);
             return out;
         }},
        {"thm-4.2", two_sided_means_probe},
        {"thm-4.5",
         [](const SuiteConfig& c) {
             std::vector<Record> out;
             for (auto& r : support_suite(c))
                 if (r.experiment == "thm-4.5") out.push_back(r);
             return out;
         }},
        {"prop-3.8", injectivity_suite},
        {"k-invariance", suite_unitary},
        {"right-invariance", suite_invariance},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, fn] : registry()) v.push_back(id);
        return v;
    }();
    return ids;
}

std::vector<Record> run_suite(const std::string& id, const SuiteConfig& cfg) {
    for (const auto& [name, fn] : registry())
        if (name == id) return fn(cfg);
    throw std::out_of_range("unknown suite id: " + id);
}

}  // namespace twistmeans::experiments
