// equimax command-line front-end.
//
// Subcommands:
//   identities   exact sweeps of the combinatorial identities (ruiz, lemma2,
//                theorem key identity)
//   series-check exact series-level checks (lemma3 hypothesis chain, lemma1
//                derivative identity, eq8 convolution identity)
//   quad-check   numeric falsification of the consecutive-maxima identity
//                for an arbitrary density model
//   gof-test     equidistribution goodness-of-fit test on a CSV of values
//   simulate     size/power simulation of the test under a chosen model
//
// Exit codes: 0 all requested checks pass / test completed (a statistical
// rejection is a result, not an error); 1 an identity check failed or a
// numeric check could not be verified; 2 usage or ingestion errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "equimax/csv.hpp"
#include "equimax/density.hpp"
#include "equimax/gof.hpp"
#include "equimax/numeric_check.hpp"
#include "equimax/report.hpp"
#include "equimax/ruiz.hpp"
#include "equimax/series.hpp"
#include "equimax/version.hpp"

namespace {

using namespace equimax;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "64-bit seed echoed into the report")
        ->envname("EQUIMAX_SEED")
        ->capture_default_str();
    cmd->add_option("--output", c.output, "write the report to this file instead of stdout");
    cmd->add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

void emit(const CommonOpts& c, const std::string& body) {
    if (c.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + c.output + "'");
    }
    out << body;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            throw std::invalid_argument("empty entry in list '" + text + "'");
        }
        out.push_back(Rational::from_string(item.substr(b, e - b + 1)));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list '" + text + "'");
    }
    return out;
}

// "a..b" inclusive, or a single integer "a".
std::pair<long long, long long> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const long long v = std::stoll(text);
            return {v, v};
        }
        const long long lo = std::stoll(text.substr(0, dots));
        const long long hi = std::stoll(text.substr(dots + 2));
        if (lo > hi) {
            throw std::invalid_argument("range low > high");
        }
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid range '" + text + "'; expected N or A..B");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("range '" + text + "' out of integer bounds");
    }
}

Json discrepancies_json(const IdentityReport& report) {
    Json arr = Json::array();
    for (const auto& d : report.discrepancies) {
        arr.push_back(Json::object()
                          .set("parameters", d.parameters)
                          .set("lhs", d.lhs.str())
                          .set("rhs", d.rhs.str()));
    }
    return arr;
}

Json identity_check_json(const IdentityReport& report) {
    Json params = Json::object();
    for (const auto& [k, v] : report.parameter_set) {
        params.set(k, v);
    }
    return Json::object()
        .set("identity_name", report.identity_name)
        .set("parameters", std::move(params))
        .set("passed", report.passed())
        .set("discrepancies", discrepancies_json(report));
}

std::string csv_row_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// ---------------------------------------------------------------- identities

struct IdentitiesOpts {
    CommonOpts common;
    unsigned ruiz_nmax = 12;
    std::string ruiz_x = "-3,-1/2,0,1,7/3,10";
    unsigned lemma2_mmax = 20;
    unsigned lemma2_kmax = 12;
    long long theorem_nmin = 3;
    long long theorem_nmax = 12;
};

int run_identities(const IdentitiesOpts& o) {
    std::vector<IdentityReport> checks;
    checks.push_back(verify_ruiz(o.ruiz_nmax, parse_rational_list(o.ruiz_x)));

    IdentityReport lemma2;
    lemma2.identity_name = "lemma2";
    lemma2.parameter_set = {{"m_max", std::to_string(o.lemma2_mmax)},
                            {"k_max", std::to_string(o.lemma2_kmax)}};
    for (unsigned m = 0; m <= o.lemma2_mmax; ++m) {
        for (unsigned k = 0; k <= o.lemma2_kmax; ++k) {
            const Rational d = verify_lemma2(m, k);
            if (!d.is_zero()) {
                lemma2.discrepancies.push_back(
                    {"m=" + std::to_string(m) + " k=" + std::to_string(k), d, Rational(0)});
            }
        }
    }
    checks.push_back(std::move(lemma2));

    IdentityReport theorem;
    theorem.identity_name = "theorem";
    theorem.parameter_set = {{"n_min", std::to_string(o.theorem_nmin)},
                             {"n_max", std::to_string(o.theorem_nmax)}};
    if (o.theorem_nmin < 3) {
        throw std::domain_error("--theorem-nmin must be >= 3");
    }
    for (long long n = o.theorem_nmin; n <= o.theorem_nmax; ++n) {
        const Rational d = verify_theorem_identity(n);
        if (!d.is_zero()) {
            theorem.discrepancies.push_back({"n=" + std::to_string(n), d, Rational(0)});
        }
    }
    checks.push_back(std::move(theorem));

    const bool all_passed =
        std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });

    std::string body;
    if (o.common.format == "json") {
        Json config = Json::object()
                          .set("subcommand", "identities")
                          .set("ruiz_nmax", static_cast<long long>(o.ruiz_nmax))
                          .set("ruiz_x", o.ruiz_x)
                          .set("lemma2_mmax", static_cast<long long>(o.lemma2_mmax))
                          .set("lemma2_kmax", static_cast<long long>(o.lemma2_kmax))
                          .set("theorem_nmin", o.theorem_nmin)
                          .set("theorem_nmax", o.theorem_nmax)
                          .set("seed", o.common.seed)
                          .set("format", o.common.format);
        Json arr = Json::array();
        for (const auto& c : checks) {
            arr.push_back(identity_check_json(c));
        }
        body = Json::object()
                   .set("engine_version", kEngineVersion)
                   .set("config", std::move(config))
                   .set("checks", std::move(arr))
                   .set("all_passed", all_passed)
                   .dump() +
               "\n";
    } else {
        std::ostringstream os;
        os << "identity,parameters,passed,discrepancy_count\n";
        for (const auto& c : checks) {
            std::string params;
            for (const auto& [k, v] : c.parameter_set) {
                if (!params.empty()) params += ' ';
                params += k + "=" + v;
            }
            os << c.identity_name << ',' << csv_row_escape(params) << ','
               << (c.passed() ? "true" : "false") << ',' << c.discrepancies.size() << '\n';
        }
        body = os.str();
    }
    emit(o.common, body);
    return all_passed ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------- series-check

struct SeriesOpts {
    CommonOpts common;
    std::string lambdas = "1";
    std::string n_range = "2..8";
    unsigned order = 16;
    unsigned lemma1_mmax = 6;
    std::optional<unsigned> lemma3_kmax;
};

int run_series_check(const SeriesOpts& o) {
    if (o.order < 1) {
        throw std::invalid_argument("--order must be >= 1");
    }
    const auto [n_lo, n_hi] = parse_range(o.n_range);
    if (n_lo < 2) {
        throw std::domain_error("--n must be >= 2");
    }
    const unsigned lemma3_kmax = o.lemma3_kmax.value_or(o.order);
    const unsigned lemma1_cap = std::min(o.lemma1_mmax, o.order / 2);

    bool all_passed = true;
    Json arr = Json::array();
    std::ostringstream csv;
    csv << "check,lambda,parameter,passed,detail\n";

    for (const Rational& lambda : parse_rational_list(o.lambdas)) {
        const PowerSeries f = exp_density_series(lambda, o.order);

        Json coeffs = Json::array();
        for (const Rational& c : f.coefficients()) {
            coeffs.push_back(c.str());
        }
        arr.push_back(Json::object()
                          .set("check", "density-series")
                          .set("lambda", lambda.str())
                          .set("order", static_cast<long long>(f.order()))
                          .set("coefficients", std::move(coeffs)));

        const IdentityReport hyp = check_lemma3_hypothesis(f, lemma3_kmax);
        all_passed = all_passed && hyp.passed();
        arr.push_back(Json::object()
                          .set("check", "lemma3-hypothesis")
                          .set("lambda", lambda.str())
                          .set("k_max", static_cast<long long>(lemma3_kmax))
                          .set("passed", hyp.passed())
                          .set("discrepancies", discrepancies_json(hyp)));
        csv << "lemma3-hypothesis," << lambda.str() << ",k_max=" << lemma3_kmax << ','
            << (hyp.passed() ? "true" : "false") << ',' << hyp.discrepancies.size()
            << " discrepancies\n";

        for (unsigned m = 1; m <= lemma1_cap; ++m) {
            const IdentityReport rep = verify_lemma1(f, m);
            all_passed = all_passed && rep.passed();
            arr.push_back(Json::object()
                              .set("check", "lemma1")
                              .set("lambda", lambda.str())
                              .set("m", static_cast<long long>(m))
                              .set("passed", rep.passed())
                              .set("discrepancies", discrepancies_json(rep)));
            csv << "lemma1," << lambda.str() << ",m=" << m << ','
                << (rep.passed() ? "true" : "false") << ',' << rep.discrepancies.size()
                << " discrepancies\n";
        }

        for (long long n = n_lo; n <= n_hi; ++n) {
            const auto mismatch = verify_eq8(f, n, o.order);
            all_passed = all_passed && !mismatch.has_value();
            Json entry = Json::object()
                             .set("check", "eq8")
                             .set("lambda", lambda.str())
                             .set("n", n)
                             .set("order", static_cast<long long>(o.order))
                             .set("passed", !mismatch.has_value());
            if (mismatch) {
                entry.set("mismatch", Json::object()
                                          .set("index", static_cast<long long>(mismatch->index))
                                          .set("lhs", mismatch->lhs.str())
                                          .set("rhs", mismatch->rhs.str()));
            } else {
                entry.set("mismatch", Json());
            }
            arr.push_back(std::move(entry));
            csv << "eq8," << lambda.str() << ",n=" << n << ','
                << (mismatch ? "false" : "true") << ','
                << (mismatch ? "mismatch at index " + std::to_string(mismatch->index)
                             : "no mismatch")
                << '\n';
        }
    }

    std::string body;
    if (o.common.format == "json") {
        Json config = Json::object()
                          .set("subcommand", "series-check")
                          .set("lambda", o.lambdas)
                          .set("n", o.n_range)
                          .set("order", static_cast<long long>(o.order))
                          .set("lemma1_mmax", static_cast<long long>(lemma1_cap))
                          .set("lemma3_kmax", static_cast<long long>(lemma3_kmax))
                          .set("seed", o.common.seed)
                          .set("format", o.common.format);
        body = Json::object()
                   .set("engine_version", kEngineVersion)
                   .set("config", std::move(config))
                   .set("checks", std::move(arr))
                   .set("all_passed", all_passed)
                   .dump() +
               "\n";
    } else {
        body = csv.str();
    }
    emit(o.common, body);
    return all_passed ? kExitOk : kExitCheckFailed;
}

// ----------------------------------------------------------------- quad-check

struct QuadOpts {
    CommonOpts common;
    std::string model = "exp:rate=1";
    int n = 3;
    double xmax = 0.0;  // 0 = auto (0.999 quantile of the n-sample maximum)
    std::size_t grid = 64;
    double tol = 1e-10;
};

int run_quad_check(const QuadOpts& o) {
    const DensityModel model = DensityModel::parse(o.model);
    const double xmax = o.xmax > 0.0 ? o.xmax : default_xmax(model, o.n);
    const DiscrepancyCurve curve = discrepancy_curve(model, o.n, xmax, o.grid, o.tol);

    std::string body;
    if (o.common.format == "json") {
        Json config = Json::object()
                          .set("subcommand", "quad-check")
                          .set("model", model.spec_string())
                          .set("n", static_cast<long long>(o.n))
                          .set("xmax", xmax)
                          .set("grid", curve.grid.size())
                          .set("tol", o.tol)
                          .set("seed", o.common.seed)
                          .set("format", o.common.format);
        Json grid = Json::array();
        Json lhs = Json::array();
        Json rhs = Json::array();
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            grid.push_back(curve.grid[i]);
            lhs.push_back(curve.lhs_cdf[i]);
            rhs.push_back(curve.rhs_cdf[i]);
        }
        Json failures = Json::array();
        for (const std::size_t i : curve.quadrature_failures) {
            failures.push_back(i);
        }
        body = Json::object()
                   .set("engine_version", kEngineVersion)
                   .set("config", std::move(config))
                   .set("grid", std::move(grid))
                   .set("lhs_cdf", std::move(lhs))
                   .set("rhs_cdf", std::move(rhs))
                   .set("max_abs_discrepancy", curve.max_abs_discrepancy)
                   .set("quadrature_tolerance", curve.quadrature_tolerance)
                   .set("quadrature_failures", std::move(failures))
                   .set("identity_holds", !curve.identity_falsified())
                   .dump() +
               "\n";
    } else {
        std::ostringstream os;
        write_curve_csv(curve, os);
        body = os.str();
    }
    emit(o.common, body);
    const bool ok = !curve.identity_falsified() && curve.quadrature_failures.empty();
    return ok ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- gof-test

struct GofOpts {
    CommonOpts common;
    std::string input;
    int n = 3;
    int B = 500;
    double alpha = 0.05;
};

std::string test_report_json(const TestReport& r) {
    return Json::object()
               .set("n", static_cast<long long>(r.n))
               .set("m1", r.m1)
               .set("m2", r.m2)
               .set("ks_statistic", r.ks_statistic)
               .set("p_value", r.p_value)
               .set("alpha", r.alpha)
               .set("reject", r.reject)
               .set("B", static_cast<long long>(r.B))
               .set("seed", r.seed)
               .set("engine_version", r.engine_version)
               .dump() +
           "\n";
}

int run_gof_test(const GofOpts& o) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open input file '" + o.input + "'");
    }
    SampleBatch batch(read_value_csv(in), o.input, o.common.seed);
    const TestReport report = run_test(batch, o.n, o.B, o.alpha, o.common.seed);

    std::string body;
    if (o.common.format == "json") {
        body = test_report_json(report);
    } else {
        std::ostringstream os;
        os << "n,m1,m2,ks_statistic,p_value,alpha,reject,B,seed,engine_version\n"
           << report.n << ',' << report.m1 << ',' << report.m2 << ','
           << format_double17(report.ks_statistic) << ',' << format_double17(report.p_value)
           << ',' << format_double17(report.alpha) << ',' << (report.reject ? "true" : "false")
           << ',' << report.B << ',' << report.seed << ',' << report.engine_version << '\n';
        body = os.str();
    }
    emit(o.common, body);
    return kExitOk;  // a rejection is a result, not an error
}

// ------------------------------------------------------------------- simulate

struct SimulateOpts {
    CommonOpts common;
    std::string model = "exp:rate=1";
    std::size_t N = 1200;
    int n = 3;
    int reps = 400;
    int B = 300;
    double alpha = 0.05;
};

int run_simulate(const SimulateOpts& o) {
    const DensityModel model = DensityModel::parse(o.model);
    const SimulationReport sim =
        simulate_size_power(model, o.N, o.n, o.reps, o.B, o.alpha, o.common.seed);

    std::string body;
    if (o.common.format == "json") {
        Json config = Json::object()
                          .set("subcommand", "simulate")
                          .set("model", sim.model_spec)
                          .set("N", sim.N)
                          .set("n", static_cast<long long>(sim.n))
                          .set("reps", static_cast<long long>(sim.reps))
                          .set("B", static_cast<long long>(sim.B))
                          .set("alpha", sim.alpha)
                          .set("seed", sim.seed)
                          .set("format", o.common.format);
        Json pvals = Json::array();
        for (const double p : sim.p_values) {
            pvals.push_back(p);
        }
        body = Json::object()
                   .set("engine_version", sim.engine_version)
                   .set("config", std::move(config))
                   .set("rejection_rate", sim.rejection_rate)
                   .set("reps", static_cast<long long>(sim.reps))
                   .set("p_values", std::move(pvals))
                   .dump() +
               "\n";
    } else {
        std::ostringstream os;
        os << "rep,p_value\n";
        for (std::size_t i = 0; i < sim.p_values.size(); ++i) {
            os << i << ',' << format_double17(sim.p_values[i]) << '\n';
        }
        body = os.str();
    }
    emit(o.common, body);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equimax: exact and statistical checks of the consecutive-maxima "
                 "equidistribution property of the exponential distribution"};
    app.require_subcommand(1);

    IdentitiesOpts id_opts;
    CLI::App* id = app.add_subcommand(
        "identities", "verify the combinatorial identities exactly over parameter sweeps");
    add_common(id, id_opts.common);
    id->add_option("--ruiz-nmax", id_opts.ruiz_nmax, "largest n in the ruiz sweep")
        ->capture_default_str();
    id->add_option("--ruiz-x", id_opts.ruiz_x,
                   "comma-separated rational x values for the ruiz sweep")
        ->capture_default_str();
    id->add_option("--lemma2-mmax", id_opts.lemma2_mmax, "largest m in the lemma2 sweep")
        ->capture_default_str();
    id->add_option("--lemma2-kmax", id_opts.lemma2_kmax, "largest k in the lemma2 sweep")
        ->capture_default_str();
    id->add_option("--theorem-nmin", id_opts.theorem_nmin, "smallest n in the theorem sweep (>= 3)")
        ->capture_default_str();
    id->add_option("--theorem-nmax", id_opts.theorem_nmax, "largest n in the theorem sweep")
        ->capture_default_str();

    SeriesOpts se_opts;
    CLI::App* se = app.add_subcommand(
        "series-check", "verify the series-level identities exactly for exponential densities");
    add_common(se, se_opts.common);
    se->add_option("--lambda", se_opts.lambdas, "comma-separated rational rates")
        ->capture_default_str();
    se->add_option("--n", se_opts.n_range, "sample size or range A..B for the eq8 check")
        ->capture_default_str();
    se->add_option("--order", se_opts.order, "series truncation order")->capture_default_str();
    se->add_option("--lemma1-mmax", se_opts.lemma1_mmax,
                   "largest m for the lemma1 check (capped at order/2)")
        ->capture_default_str();
    se->add_option("--lemma3-kmax", se_opts.lemma3_kmax,
                   "largest k for the lemma3 hypothesis check (default: order)");

    QuadOpts qu_opts;
    CLI::App* qu = app.add_subcommand(
        "quad-check", "compare the two cdfs of the equidistribution identity by quadrature");
    add_common(qu, qu_opts.common);
    qu->add_option("--model", qu_opts.model, "density model spec")->capture_default_str();
    qu->add_option("--n", qu_opts.n, "sample size (>= 2)")->capture_default_str();
    qu->add_option("--xmax", qu_opts.xmax, "grid end (default: 0.999 quantile of the max)");
    qu->add_option("--grid", qu_opts.grid, "number of grid points")->capture_default_str();
    qu->add_option("--tol", qu_opts.tol, "quadrature absolute tolerance")->capture_default_str();

    GofOpts go_opts;
    CLI::App* go = app.add_subcommand(
        "gof-test", "equidistribution goodness-of-fit test for exponentiality on CSV data");
    add_common(go, go_opts.common);
    go->add_option("--input", go_opts.input, "CSV file, one positive value per line")->required();
    go->add_option("--n", go_opts.n, "group size (>= 2)")->capture_default_str();
    go->add_option("--B", go_opts.B, "number of permutations")->capture_default_str();
    go->add_option("--alpha", go_opts.alpha, "nominal level in (0,1)")->capture_default_str();

    SimulateOpts si_opts;
    CLI::App* si = app.add_subcommand(
        "simulate", "size/power simulation of the test under a density model");
    add_common(si, si_opts.common);
    si->add_option("--model", si_opts.model, "density model spec")->capture_default_str();
    si->add_option("--N", si_opts.N, "values per replicate dataset")->capture_default_str();
    si->add_option("--n", si_opts.n, "group size (>= 2)")->capture_default_str();
    si->add_option("--reps", si_opts.reps, "number of replicates")->capture_default_str();
    si->add_option("--B", si_opts.B, "permutations per replicate")->capture_default_str();
    si->add_option("--alpha", si_opts.alpha, "nominal level in (0,1)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    try {
        if (id->parsed()) return run_identities(id_opts);
        if (se->parsed()) return run_series_check(se_opts);
        if (qu->parsed()) return run_quad_check(qu_opts);
        if (go->parsed()) return run_gof_test(go_opts);
        if (si->parsed()) return run_simulate(si_opts);
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
