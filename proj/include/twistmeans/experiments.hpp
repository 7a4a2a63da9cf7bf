#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "twistmeans/core.hpp"
#include "twistmeans/radial.hpp"

namespace twistmeans::experiments {

/// One row of a report. `pass` is decided by the suite: most rows require
/// residual <= tolerance, witness rows (params.bound == "min") require
/// residual >= tolerance.
struct Record {
    std::string experiment;
    nlohmann::json params;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

Record upper_bound(std::string experiment, nlohmann::json params, double residual, double tolerance);
Record lower_bound(std::string experiment, nlohmann::json params, double residual, double tolerance);

/// Suite knobs. order = 0 selects the quadrature order automatically;
/// tol = 0 keeps each suite's pinned tolerance.
struct SuiteConfig {
    int n = 2;
    int max_k = 6;
    int p = 1;
    int q = 1;
    int order = 0;
    double tol = 0.0;
    std::uint64_t seed = 20240601;
};

nlohmann::json to_json(const SuiteConfig& cfg);

/// Sphere order for a mean at radius r around a center of norm c with an
/// integrand carrying `degree` polynomial degree: the convergence gate
/// order plus the degree, never below the radial schedule.
int auto_order(const SuiteConfig& cfg, int real_dim, double r, double center_norm, int degree);

/// Identity suites by id ("eq-1.2", "lemma-2.3", ...), in a fixed order.
const std::vector<std::string>& suite_ids();
/// Throws std::out_of_range for an unknown id.
std::vector<Record> run_suite(const std::string& id, const SuiteConfig& cfg);

// --------------------------------------------------------------- experiments

struct InjectivityInstance {
    int n = 2;
    double radius = 1.0;          // |z_0|
    int truncation = 4;           // K
    std::vector<Complex> gamma;   // true coefficients, size K + 1
};

struct InjectivityResult {
    std::vector<Complex> recovered;  // NaN for flagged indices
    std::vector<int> flagged;        // k with L_k^{n-1}(R^2/2) = 0
    double max_error = 0.0;          // over unflagged k
    double condition = 0.0;          // max/min |B_k phi_k(R)| over unflagged k
    double refit_residual = 0.0;     // forward model refit against the samples
};

/// Samples f x mu_r(z_0), f = sum gamma_k phi_k^{n-1}, on the Gauss-Laguerre
/// radii by sphere quadrature, then recovers gamma_k by radial
/// orthogonality and division by B_k phi_k(R).
InjectivityResult injectivity_recover(const InjectivityInstance& inst, const SuiteConfig& cfg);

struct SupportAnsatz {
    enum class Family { Twisted, Euclidean };
    Family family = Family::Twisted;
    int n = 2;        // complex dimension (twisted) or real dimension (Euclidean)
    int p = 0;        // bidegree (twisted) or degree k in p (Euclidean)
    int q = 0;
    double inner = 1.0;                  // B
    std::vector<ExpPowerTerm> profile;   // a~(rho)
};

/// The closed-form coefficient families: twisted a~ built from c_i (growing
/// branch) and d_k (decaying branch); Euclidean a_k from alpha_i.
SupportAnsatz twisted_ansatz(int n, int p, int q, const std::vector<Complex>& c, const std::vector<Complex>& d,
                             double inner = 1.0);
SupportAnsatz euclidean_ansatz(int dim, int k, const std::vector<Complex>& alpha, double inner = 1.0,
                               int exponent_dim = -1);

struct SupportSample {
    std::vector<double> center;  // 2n reals (twisted) or d reals (Euclidean)
    double radius = 0.0;
};

/// max over samples of |f x mu_r(z)| / mass. Throws std::invalid_argument if
/// a sample violates r > |z| + B.
double support_ansatz_check(const SupportAnsatz& a, const std::vector<SupportSample>& samples, const SuiteConfig& cfg);
double euclid_support_check(const SupportAnsatz& a, const std::vector<SupportSample>& samples, const SuiteConfig& cfg);

/// Admissible samples: centers from two spheres and a random cloud, radii
/// with r - |z| - B in (0.05, 3].
std::vector<SupportSample> support_samples(int real_dim, double inner, int count, std::uint64_t seed);

std::vector<Record> counterexample_gallery(const SuiteConfig& cfg);
std::vector<Record> injectivity_suite(const SuiteConfig& cfg);
std::vector<Record> support_suite(const SuiteConfig& cfg);
std::vector<Record> two_sided_means_probe(const SuiteConfig& cfg);

// ----------------------------------------------------------------- execution

/// Worker count: TWISTMEANS_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

/// Runs tasks on up to thread_count() workers; results keep task order.
std::vector<std::vector<Record>> parallel_map(const std::vector<std::function<std::vector<Record>()>>& tasks);

std::string to_csv(const std::vector<Record>& records);
nlohmann::json to_json(const std::vector<Record>& records, const SuiteConfig& cfg);

}  // namespace twistmeans::experiments
