#include "twistmeans/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "twistmeans/experiments.hpp"
#include "twistmeans/harmonics.hpp"

namespace twistmeans::cli {

namespace {

using experiments::Record;
using experiments::SuiteConfig;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::optional<int> n, max_k, p, q, order;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) throw UsageError("config: bad value for " + key + ": '" + value + "'");
    return v;
}

// key = value lines, '#' starts a comment. Keys match the long flags.
Overrides read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file: " + path);
    Overrides o;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "n") o.n = parse_number<int>(key, value);
        else if (key == "max-k") o.max_k = parse_number<int>(key, value);
        else if (key == "p") o.p = parse_number<int>(key, value);
        else if (key == "q") o.q = parse_number<int>(key, value);
        else if (key == "order") o.order = value == "auto" ? 0 : parse_number<int>(key, value);
        else if (key == "tol") o.tol = parse_number<double>(key, value);
        else if (key == "seed") o.seed = parse_number<std::uint64_t>(key, value);
        else if (key == "out") o.out = value;
        else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return o;
}

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

SuiteConfig resolve(const Overrides& o) {
    SuiteConfig c;
    if (o.n) c.n = *o.n;
    if (o.max_k) c.max_k = *o.max_k;
    if (o.p) c.p = *o.p;
    if (o.q) c.q = *o.q;
    if (o.order) c.order = *o.order;
    if (o.tol) c.tol = *o.tol;
    if (o.seed) c.seed = *o.seed;
    if (c.n < 1 || c.n > 3) throw UsageError("--n must be 1, 2 or 3");
    if (c.max_k < 0 || c.p < 0 || c.q < 0 || c.order < 0) throw UsageError("bounds and order must be >= 0");
    if (o.tol && !(c.tol > 0.0)) throw UsageError("--tol must be positive");
    return c;
}

// Runs the identity suites in `ids`, sharing one support run between
// thm-4.1 and thm-4.5.
std::vector<Record> run_ids(const std::vector<std::string>& ids, const SuiteConfig& cfg) {
    std::optional<std::vector<Record>> support;
    std::vector<Record> out;
    for (const auto& id : ids) {
        std::vector<Record> rows;
        if (id == "thm-4.1" || id == "thm-4.5") {
            if (!support) support = experiments::support_suite(cfg);
            for (const auto& r : *support)
                if (r.experiment == id) rows.push_back(r);
        } else {
            rows = experiments::run_suite(id, cfg);
        }
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot write " + path);
    f << text;
    f.close();
    if (!f) throw std::ios_base::failure("cannot write " + path);
}

// --out PATH writes PATH.csv and PATH.json (a trailing .csv or .json is stripped).
void emit(const std::vector<Record>& rows, const SuiteConfig& cfg, const std::optional<std::string>& out_path,
          std::ostream& out) {
    const std::string csv = experiments::to_csv(rows);
    if (!out_path) {
        out << csv;
    } else {
        std::string base = *out_path;
        for (const std::string ext : {".csv", ".json"})
            if (base.size() > ext.size() && base.compare(base.size() - ext.size(), ext.size(), ext) == 0)
                base.resize(base.size() - ext.size());
        write_file(base + ".csv", csv);
        write_file(base + ".json", experiments::to_json(rows, cfg).dump(2) + "\n");
    }
}

std::string summary(const std::vector<Record>& rows) {
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const Record& r) { return !r.pass; });
    std::ostringstream s;
    s << rows.size() - failed << "/" << rows.size() << " rows pass";
    if (failed) {
        s << "; failing:";
        for (const auto& r : rows)
            if (!r.pass) s << "\n  " << r.experiment << " " << r.params.dump() << " residual=" << r.residual;
    }
    return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted spherical means: identity suites, counterexamples and experiments", "twistmeans"};
    app.require_subcommand(1);

    Overrides flags;
    std::string config_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", flags.n, "complex dimension");
        sub->add_option("--max-k", flags.max_k, "largest Laguerre degree");
        sub->add_option("--p", flags.p, "bidegree p of the weight");
        sub->add_option("--q", flags.q, "bidegree q of the weight");
        sub->add_option("--order", flags.order, "sphere rule order, 0 = auto");
        sub->add_option("--tol", flags.tol, "override every pinned tolerance");
        sub->add_option("--seed", flags.seed, "random seed");
        sub->add_option("--out", flags.out, "write OUT.csv and OUT.json instead of CSV on stdout");
        sub->add_option("--config", config_path, "key = value file; flags take precedence");
    };

    std::string verify_id;
    auto* verify = app.add_subcommand("verify", "run one identity suite, or all of them");
    verify->add_option("id", verify_id, "suite id or 'all'")->required();
    add_common(verify);
    auto* gallery = app.add_subcommand("counterexamples", "the four-row counterexample gallery");
    add_common(gallery);
    auto* inj = app.add_subcommand("injectivity", "coefficient recovery from means centered on a sphere");
    add_common(inj);
    auto* support = app.add_subcommand("support", "support-theorem ansatz checks and two-sided probe");
    add_common(support);
    auto* all = app.add_subcommand("all", "every suite and experiment");
    add_common(all);
    bool real_basis = false;
    auto* basis = app.add_subcommand("basis", "export an orthonormal harmonic basis as JSON");
    basis->add_flag("--real", real_basis, "Euclidean H_k on R^n with k = p");
    add_common(basis);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        Overrides o;
        if (!config_path.empty()) o = read_config(config_path);
        take(o.n, flags.n);
        take(o.max_k, flags.max_k);
        take(o.p, flags.p);
        take(o.q, flags.q);
        take(o.order, flags.order);
        take(o.tol, flags.tol);
        take(o.seed, flags.seed);
        take(o.out, flags.out);
        const SuiteConfig cfg = resolve(o);

        if (basis->parsed()) {
            const nlohmann::json j = real_basis ? harmonics::to_json(harmonics::build_real_basis(cfg.n, cfg.p))
                                                : harmonics::to_json(harmonics::build_bigraded_basis(cfg.n, cfg.p, cfg.q));
            if (o.out) write_file(*o.out, j.dump(2) + "\n");
            else out << j.dump(2) << "\n";
            return 0;
        }

        std::vector<Record> rows;
        if (verify->parsed()) {
            const auto& ids = experiments::suite_ids();
            if (verify_id == "all") {
                rows = run_ids(ids, cfg);
            } else if (std::find(ids.begin(), ids.end(), verify_id) != ids.end()) {
                rows = run_ids({verify_id}, cfg);
            } else {
                err << "error: unknown id '" << verify_id << "'. Valid ids:\n  all\n";
                for (const auto& id : ids) err << "  " << id << "\n";
                return 2;
            }
        } else if (gallery->parsed()) {
            rows = experiments::counterexample_gallery(cfg);
        } else if (inj->parsed()) {
            rows = experiments::injectivity_suite(cfg);
        } else if (support->parsed()) {
            rows = experiments::support_suite(cfg);
            const auto two = experiments::two_sided_means_probe(cfg);
            rows.insert(rows.end(), two.begin(), two.end());
        } else if (all->parsed()) {
            rows = run_ids(experiments::suite_ids(), cfg);
            const auto g = experiments::counterexample_gallery(cfg);
            rows.insert(rows.end(), g.begin(), g.end());
        }

        emit(rows, cfg, o.out, out);
        err << summary(rows) << "\n";
        return std::all_of(rows.begin(), rows.end(), [](const Record& r) { return r.pass; }) ? 0 : 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace twistmeans::cli
