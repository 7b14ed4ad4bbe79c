// Command-line front end: wires JSON/CSV inputs to the library pipelines and
// writes a report.json plus CSV traces per run. Exit codes: 0 pass, 1 fail,
// 2 inconclusive, 10 usage, 11 bad input, 12 evaluator breakdown.

#include <CLI11.hpp>
#include <tauberkit/tauberkit.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace tk = tauberkit;
using tk::io::json;

namespace {

std::string fmt(double v) { return tk::io::detail::fmt(v); }

constexpr int kUsageExit = 10;
constexpr int kInputExit = 11;
constexpr int kEvaluatorExit = 12;

int exit_for_error(tk::errc c) {
    switch (c) {
        case tk::errc::evaluator_failure:
        case tk::errc::nonconvergent:
        case tk::errc::schedule_not_converged:
            return kEvaluatorExit;
        default:
            return kInputExit;
    }
}

int exit_for(const std::vector<tk::ConditionReport>& rs) {
    int rc = 0;
    for (const auto& r : rs) {
        if (r.verdict == tk::Verdict::fail) return 1;
        if (r.verdict == tk::Verdict::inconclusive) rc = 2;
    }
    return rc;
}

struct OutDir {
    std::filesystem::path dir;
    std::vector<std::string> files;

    explicit OutDir(const std::string& d) : dir(d.empty() ? "." : d) {
        std::filesystem::create_directories(dir);
    }
    std::string file(const std::string& name) {
        files.push_back(name);
        return (dir / name).string();
    }
};

void print_params(const json& params) {
    for (auto it = params.begin(); it != params.end(); ++it) {
        std::cout << "  " << it.key() << ": ";
        const json& v = it.value();
        if (v.is_string()) {
            std::cout << v.get<std::string>();
        } else if (v.is_number_float()) {
            std::cout << fmt(v.get<double>());
        } else if (v.is_number_integer()) {
            std::cout << v.get<std::int64_t>();
        } else if (v.is_boolean()) {
            std::cout << (v.get<bool>() ? "true" : "false");
        } else if (v.is_array()) {
            bool first = true;
            for (const auto& e : v) {
                if (!first) std::cout << " ";
                first = false;
                if (e.is_number_float())
                    std::cout << fmt(e.get<double>());
                else
                    std::cout << e.dump();
            }
        } else {
            std::cout << v.dump();
        }
        std::cout << "\n";
    }
}

// Shared tail of every run: condition lines, file list, exit code and the
// summary. The "summary" field is byte-identical to the SUMMARY stdout line.
int emit(OutDir& out, json& report, const std::vector<tk::ConditionReport>& conditions,
         const std::string& summary, int rc) {
    if (!conditions.empty()) {
        json arr = json::array();
        for (const auto& c : conditions) arr.push_back(tk::io::report_json(c));
        report["conditions"] = arr;
        for (const auto& c : conditions)
            std::cout << "  " << tk::condition_name(c.condition) << ": "
                      << tk::verdict_name(c.verdict) << "\n";
    }
    json files = json::array();
    for (const auto& f : out.files) files.push_back(f);
    report["files"] = files;
    report["exit"] = rc;
    report["summary"] = summary;
    tk::io::write_json((out.dir / "report.json").string(), report);
    for (const auto& f : out.files) std::cout << "  wrote: " << (out.dir / f).string() << "\n";
    std::cout << "  wrote: " << (out.dir / "report.json").string() << "\n";
    std::cout << "SUMMARY: " << summary << "\n";
    return rc;
}

std::string verdict_piece(const tk::ConditionReport& r) {
    return std::string(tk::condition_name(r.condition)) + "=" + tk::verdict_name(r.verdict);
}

// ---------------------------------------------------------------------------
// Transform sources addressable from the command line.

struct SpecInputs {
    std::string id;
    double a = 1.0;
    std::string probs;
    std::string weights;
    std::string coeffs;
    std::string samples;
    double rho = 0.0;
    std::int64_t n = 100000;
    int depth = 20;
    bool disc = false; // pole_only only; power_coeffs is always a disc source
};

const std::string& need(const std::string& path, const SpecInputs& in, const char* flag) {
    if (path.empty()) tk::fail(tk::errc::bad_input, "spec '" + in.id + "' needs " + flag);
    return path;
}

tk::SeriesSpec build_spec(const SpecInputs& in) {
    if (in.id == "exp_renewal") return tk::SeriesSpec::exp_renewal();
    if (in.id == "pole_only")
        return tk::SeriesSpec::pole_only(in.a,
                                         in.disc ? tk::Geometry::disc : tk::Geometry::half_plane);
    if (in.id == "double_pole") return tk::SeriesSpec::double_pole();
    if (in.id == "dirichlet_weights")
        return tk::SeriesSpec::dirichlet_weights(
            tk::io::read_weights_json(need(in.weights, in, "--weights")));
    if (in.id == "lattice_renewal")
        return tk::SeriesSpec::lattice_renewal(
            tk::io::read_lattice_json(need(in.probs, in, "--probs")));
    if (in.id == "stieltjes") {
        tk::LatticeDist p = tk::io::read_lattice_json(need(in.probs, in, "--probs"));
        return tk::SeriesSpec::stieltjes(tk::renewal_sequence(p, in.n));
    }
    if (in.id == "power_coeffs") {
        if (!in.coeffs.empty())
            return tk::SeriesSpec::power_coeffs(tk::io::read_coeffs_json(in.coeffs));
        // Coefficients from the renewal recursion, long enough that the
        // truncation tail at the deepest dyadic sample stays below 1e-9/d.
        tk::LatticeDist p = tk::io::read_lattice_json(need(in.probs, in, "--probs or --coeffs"));
        double d_min = std::ldexp(1.0, -in.depth);
        std::size_t len = tk::power_terms_needed(1.0 - d_min, 1e-9 / d_min, 1.0);
        tk::RenewalSeq seq = tk::renewal_sequence(p, static_cast<std::int64_t>(len));
        return tk::SeriesSpec::power_coeffs(std::move(seq.q));
    }
    if (in.id == "sampled")
        return tk::SeriesSpec::sampled(
            tk::io::read_samples_csv(need(in.samples, in, "--samples"), in.rho));
    tk::fail(tk::errc::bad_input, "unknown spec id '" + in.id + "'");
}

json spec_params(const SpecInputs& in) {
    json p;
    p["spec"] = in.id;
    if (in.id == "pole_only") p["a"] = in.a;
    if (!in.probs.empty()) p["probs"] = in.probs;
    if (!in.weights.empty()) p["weights"] = in.weights;
    if (!in.coeffs.empty()) p["coeffs"] = in.coeffs;
    if (!in.samples.empty()) p["samples"] = in.samples;
    if (in.id == "sampled") p["rho"] = in.rho;
    if (in.id == "stieltjes") p["n"] = in.n;
    return p;
}

// ---------------------------------------------------------------------------
// renewal subcommands

int run_lattice(const std::string& probs_path, std::int64_t n, const std::string& out_dir) {
    json params;
    params["probs"] = probs_path;
    params["n"] = n;
    std::cout << "tauberkit renewal lattice\n";
    print_params(params);

    tk::LatticeDist p = tk::io::read_lattice_json(probs_path);
    double target = p.span / tk::lattice_mean(p); // 1 / sum of n p_n in lattice units
    tk::RenewalSeq q = tk::renewal_sequence(p, n);
    tk::Trace t = tk::asymptotic_ratio(q, target);

    OutDir out(out_dir);
    tk::io::write_trace_csv(out.file("q.csv"), t);

    json report;
    report["command"] = "renewal lattice";
    report["params"] = params;
    report["span"] = p.span;
    report["limit_target"] = target;
    report["trace"] = tk::io::trace_summary_json(t);

    std::cout << "  limit target: " << fmt(target) << "\n";
    std::cout << "  sup deviation over [" << fmt(t.window_lo) << ", " << fmt(t.window_hi)
              << "]: " << fmt(t.sup_deviation_tail) << "\n";
    std::string summary = "renewal lattice: n=" + std::to_string(n) + " limit=" + fmt(target) +
                          " tail_dev=" + fmt(t.sup_deviation_tail);
    return emit(out, report, {}, summary, 0);
}

int run_dirichlet(const std::string& weights_path, std::int64_t x, const std::string& out_dir) {
    json params;
    params["weights"] = weights_path;
    params["x"] = x;
    std::cout << "tauberkit renewal dirichlet\n";
    print_params(params);

    tk::ArithWeights w = tk::io::read_weights_json(weights_path);
    tk::ConditionReport support = tk::power_support_report(w);
    tk::ArithRenewal a = tk::dirichlet_renewal(w, static_cast<std::uint64_t>(x));
    tk::Trace t = tk::partial_sum_ratio(a);

    OutDir out(out_dir);
    tk::io::write_trace_csv(out.file("ratio.csv"), t);

    json report;
    report["command"] = "renewal dirichlet";
    report["params"] = params;
    report["limit_target"] = a.limit_target;
    report["trace"] = tk::io::trace_summary_json(t);

    std::cout << "  limit target: " << fmt(a.limit_target) << "\n";
    std::cout << "  sup deviation over [" << fmt(t.window_lo) << ", " << fmt(t.window_hi)
              << "]: " << fmt(t.sup_deviation_tail) << "\n";
    std::vector<tk::ConditionReport> rs{support};
    std::string summary = "renewal dirichlet: X=" + std::to_string(x) +
                          " limit=" + fmt(a.limit_target) +
                          " tail_dev=" + fmt(t.sup_deviation_tail) + " " + verdict_piece(support);
    return emit(out, report, rs, summary, exit_for(rs));
}

int run_continuous(const std::string& density_path, double xmax, double h, bool normalize,
                   const std::string& out_dir) {
    json params;
    params["density"] = density_path;
    params["xmax"] = xmax;
    if (h > 0.0) params["h"] = h;
    params["normalize"] = normalize;
    std::cout << "tauberkit renewal continuous\n";
    print_params(params);

    tk::GridDensity p = [&] {
        if (!normalize) return tk::io::read_density_csv(density_path);
        auto [step, values] = tk::io::detail::read_xy_csv(density_path, "density");
        return tk::GridDensity::normalized(step, std::move(values));
    }();
    tk::RenewalGrid grid = tk::continuous_renewal(p, xmax);

    // trapezoid first moment of the sampled density; the declared tail mass
    // carries unknown mean, so it is simply not counted
    double mean = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        double wgt = (i == 0 || i + 1 == p.values.size()) ? 0.5 : 1.0;
        mean += wgt * p.step * static_cast<double>(i) * p.values[i] * p.step;
    }

    tk::Trace qt;
    qt.x.reserve(grid.Q.size());
    qt.value.reserve(grid.Q.size());
    for (std::size_t k = 0; k < grid.Q.size(); ++k) {
        qt.x.push_back(grid.step * static_cast<double>(k));
        qt.value.push_back(grid.Q[k]);
    }

    OutDir out(out_dir);
    tk::io::write_trace_csv(out.file("renewal.csv"), qt);

    json report;
    report["command"] = "renewal continuous";
    report["params"] = params;
    report["step"] = grid.step;
    report["mean"] = mean;
    report["Q_end"] = grid.Q.back();

    std::cout << "  step: " << fmt(grid.step) << "\n";
    std::cout << "  density mean: " << fmt(mean) << "\n";
    std::cout << "  Q(xmax): " << fmt(grid.Q.back()) << "\n";
    std::string summary = "renewal continuous: xmax=" + fmt(grid.xmax()) +
                          " step=" + fmt(grid.step) + " Q_end=" + fmt(grid.Q.back());

    if (h > 0.0) {
        tk::Trace b = tk::blackwell_increments(grid, h, mean);
        tk::io::write_trace_csv(out.file("blackwell.csv"), b);
        report["blackwell"] = tk::io::trace_summary_json(b);
        std::cout << "  increment target: " << fmt(b.target) << "\n";
        std::cout << "  increment deviation over [" << fmt(b.window_lo) << ", "
                  << fmt(b.window_hi) << "]: " << fmt(b.sup_deviation_tail) << "\n";
        summary += " blackwell_target=" + fmt(b.target) +
                   " blackwell_dev=" + fmt(b.sup_deviation_tail);
    }
    return emit(out, report, {}, summary, 0);
}

// ---------------------------------------------------------------------------
// probe subcommands

int run_boundary(const SpecInputs& in, double lambda, int depth, std::int64_t points,
                 double declared_k, double g_lower, const std::string& out_dir) {
    json params = spec_params(in);
    params["lambda"] = lambda;
    params["depth"] = depth;
    params["points"] = points;
    params["k"] = declared_k;
    params["g_lower"] = g_lower;
    std::cout << "tauberkit probe boundary\n";
    print_params(params);

    tk::SeriesSpec spec = build_spec(in);
    std::vector<double> schedule = tk::dyadic_schedule(depth);
    tk::BoundaryGrid grid =
        tk::sample_boundary(spec, lambda, schedule, static_cast<std::size_t>(points));

    std::vector<tk::ConditionReport> rs{tk::check_B1(grid), tk::check_B2(grid),
                                        tk::check_B3(grid, g_lower, declared_k)};

    OutDir out(out_dir);
    tk::io::write_json(out.file("grid.json"), tk::io::grid_json(grid));

    json gsum;
    gsum["approach_variable"] = grid.approach_variable;
    gsum["rows"] = grid.approach.size();
    gsum["points"] = grid.transverse.size();
    gsum["max_tail_bound"] = grid.max_tail_bound;

    json report;
    report["command"] = "probe boundary";
    report["params"] = params;
    report["grid"] = gsum;

    std::string summary = "probe boundary: spec=" + in.id;
    for (const auto& r : rs) summary += " " + verdict_piece(r);
    return emit(out, report, rs, summary, exit_for(rs));
}

int run_fejer(const SpecInputs& in, double lambda, std::vector<double> h_list, int depth,
              std::int64_t points, const std::string& out_dir) {
    if (h_list.empty()) {
        for (double h = 1.0; h <= 1024.0; h *= 2.0) h_list.push_back(h);
    }
    json params = spec_params(in);
    params["lambda"] = lambda;
    params["depth"] = depth;
    json harr = json::array();
    for (double h : h_list) harr.push_back(h);
    params["h"] = harr;
    if (points > 0) params["points"] = points;
    std::cout << "tauberkit probe fejer\n";
    print_params(params);

    tk::SeriesSpec spec = build_spec(in);
    std::vector<double> dist = tk::dyadic_schedule(depth);
    std::vector<double> schedule(dist.size());
    for (std::size_t j = 0; j < dist.size(); ++j) schedule[j] = 1.0 + dist[j];

    tk::FejerResult res =
        tk::fejer_probe(spec, lambda, h_list, schedule, static_cast<std::size_t>(points));

    OutDir out(out_dir);
    tk::io::write_trace_csv(out.file("fejer.csv"), res.J);

    double max_j = 0.0;
    for (double v : res.J.value) max_j = std::max(max_j, std::abs(v));

    json report;
    report["command"] = "probe fejer";
    report["params"] = params;
    report["sigma_star"] = res.sigma_star;
    report["points_used"] = res.points;
    report["max_abs_J"] = max_j;

    std::cout << "  sigma*: " << fmt(res.sigma_star) << "\n";
    std::cout << "  quadrature points: " << res.points << "\n";
    std::cout << "  max |J|: " << fmt(max_j) << "\n";
    std::vector<tk::ConditionReport> rs{res.report};
    std::string summary = "probe fejer: spec=" + in.id + " " + verdict_piece(res.report) +
                          " max_J=" + fmt(max_j) + " sigma_star=" + fmt(res.sigma_star);
    return emit(out, report, rs, summary, exit_for(rs));
}

// ---------------------------------------------------------------------------
// check subcommands

int run_slowdecrease(const std::string& samples_path, double eps, std::vector<double> h_list,
                     std::vector<double> x0_list, double rho, const std::string& out_dir) {
    tk::SampledFunction S = tk::io::read_samples_csv(samples_path, rho);
    if (h_list.empty()) h_list = {0.25, 0.5, 1.0, 2.0};
    if (x0_list.empty()) {
        double X = S.xmax();
        x0_list = {X / 4.0, X / 2.0, 3.0 * X / 4.0};
    }

    json params;
    params["samples"] = samples_path;
    params["eps"] = eps;
    params["rho"] = rho;
    json harr = json::array();
    for (double h : h_list) harr.push_back(h);
    params["h"] = harr;
    json xarr = json::array();
    for (double x0 : x0_list) xarr.push_back(x0);
    params["x0"] = xarr;
    std::cout << "tauberkit check slowdecrease\n";
    print_params(params);

    std::vector<tk::ConditionReport> rs{tk::check_slow_decrease(S, eps, h_list, x0_list),
                                        tk::check_bounded_decrease(S, h_list.front())};

    OutDir out(out_dir);
    json report;
    report["command"] = "check slowdecrease";
    report["params"] = params;

    std::string summary = "check slowdecrease: eps=" + fmt(eps);
    for (const auto& r : rs) summary += " " + verdict_piece(r);
    return emit(out, report, rs, summary, exit_for(rs));
}

int run_koga(const std::string& samples_path, double k, double rho, const std::string& out_dir) {
    json params;
    params["samples"] = samples_path;
    params["k"] = k;
    params["rho"] = rho;
    std::cout << "tauberkit check koga\n";
    print_params(params);

    tk::SampledFunction S = tk::io::read_samples_csv(samples_path, rho);
    tk::ConditionReport r = tk::check_koga_integral(S, k);

    OutDir out(out_dir);
    json report;
    report["command"] = "check koga";
    report["params"] = params;

    std::vector<tk::ConditionReport> rs{r};
    std::string summary = "check koga: k=" + fmt(k) + " " + verdict_piece(r) +
                          " integral=" + fmt(r.estimate("integral"));
    return emit(out, report, rs, summary, exit_for(rs));
}

// ---------------------------------------------------------------------------
// limit

int run_limit(SpecInputs in, const std::string& mode_str, int depth, const std::string& out_dir) {
    in.disc = mode_str == "abel";
    in.depth = depth;
    json params = spec_params(in);
    params["mode"] = mode_str;
    params["depth"] = depth;
    std::cout << "tauberkit limit\n";
    print_params(params);

    tk::SeriesSpec spec = build_spec(in);
    tk::LimitMode mode = in.disc ? tk::LimitMode::abel : tk::LimitMode::sigma;

    OutDir out(out_dir);
    json report;
    report["command"] = "limit";
    report["params"] = params;

    std::string summary;
    int rc = 0;
    try {
        tk::LimitEstimate est = tk::estimate_limit(spec, mode, depth);
        report["limit"] = tk::io::limit_json(est);
        std::cout << "  a: " << fmt(est.extrapolated) << "\n";
        std::cout << "  residual: " << fmt(est.residual) << "\n";
        summary = "limit: spec=" + in.id + " mode=" + mode_str + " a=" + fmt(est.extrapolated) +
                  " residual=" + fmt(est.residual);
    } catch (const tk::Error& e) {
        if (e.code() != tk::errc::nonconvergent) throw;
        report["limit"] = nullptr;
        json res;
        res["code"] = tk::errc_name(e.code());
        res["message"] = e.what();
        report["resolution"] = res;
        std::cout << "  " << tk::errc_name(e.code()) << ": " << e.what() << "\n";
        summary = "limit: spec=" + in.id + " mode=" + mode_str + " NONCONVERGENT";
        rc = 2;
    }
    return emit(out, report, {}, summary, rc);
}

// --h is a real option on several subcommands, so help is --help only.
CLI::App* sub(CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->set_help_flag("--help", "print help and exit");
    return s;
}

void add_spec_flags(CLI::App* cmd, SpecInputs& in) {
    cmd->add_option("--spec", in.id,
                    "transform source: exp_renewal, pole_only, double_pole, dirichlet_weights, "
                    "lattice_renewal, stieltjes, power_coeffs, sampled")
        ->required();
    cmd->add_option("--a", in.a, "pole residue for pole_only (default 1)");
    cmd->add_option("--probs", in.probs, "lattice distribution JSON")->check(CLI::ExistingFile);
    cmd->add_option("--weights", in.weights, "arithmetical weights JSON")
        ->check(CLI::ExistingFile);
    cmd->add_option("--coeffs", in.coeffs, "power series coefficients JSON")
        ->check(CLI::ExistingFile);
    cmd->add_option("--samples", in.samples, "sampled function CSV (header x,value)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--rho", in.rho, "declared polynomial growth exponent for sampled input");
    cmd->add_option("--n", in.n, "sequence length for the stieltjes source")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"renewal solvers, boundary probes and growth checkers"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    int rc = 0;

    // renewal
    auto* renewal = sub(&app, "renewal", "renewal equation solvers");
    renewal->require_subcommand(1);

    struct {
        std::string probs;
        std::int64_t n = 100000;
        std::string out = ".";
    } lat;
    auto* lattice = sub(renewal, "lattice", "lattice renewal sequence q_n");
    lattice->add_option("--probs", lat.probs, "lattice distribution JSON")
        ->required()
        ->check(CLI::ExistingFile);
    lattice->add_option("--n", lat.n, "number of terms")->check(CLI::PositiveNumber);
    lattice->add_option("--out", lat.out, "output directory");
    lattice->callback([&] { rc = run_lattice(lat.probs, lat.n, lat.out); });

    struct {
        std::string weights;
        std::int64_t x = 100000;
        std::string out = ".";
    } dir;
    auto* dirichlet =
        sub(renewal, "dirichlet", "multiplicative renewal partial sums S(x)/x");
    dirichlet->add_option("--weights", dir.weights, "arithmetical weights JSON")
        ->required()
        ->check(CLI::ExistingFile);
    dirichlet->add_option("--x", dir.x, "table size X")->check(CLI::PositiveNumber);
    dirichlet->add_option("--out", dir.out, "output directory");
    dirichlet->callback([&] { rc = run_dirichlet(dir.weights, dir.x, dir.out); });

    struct {
        std::string density;
        double xmax = 10.0;
        double h = 0.0;
        bool normalize = false;
        std::string out = ".";
    } cont;
    auto* continuous =
        sub(renewal, "continuous", "renewal function Q of a step density");
    continuous->add_option("--density", cont.density, "density CSV (header x,density)")
        ->required()
        ->check(CLI::ExistingFile);
    continuous->add_option("--xmax", cont.xmax, "solve Q on [0, xmax]")
        ->check(CLI::PositiveNumber);
    continuous->add_option("--h", cont.h, "also trace increments Q(x+h) - Q(x)");
    continuous->add_flag("--normalize", cont.normalize,
                         "rescale the density to unit integral before solving");
    continuous->add_option("--out", cont.out, "output directory");
    continuous->callback(
        [&] { rc = run_continuous(cont.density, cont.xmax, cont.h, cont.normalize, cont.out); });

    // probe
    auto* probe = sub(&app, "probe", "boundary behavior probes");
    probe->require_subcommand(1);

    struct {
        SpecInputs in;
        double lambda = 1.0;
        int depth = 20;
        std::int64_t points = 2001;
        double k = 1.0;
        double g_lower = 0.0;
        std::string out = ".";
    } bnd;
    auto* boundary =
        sub(probe, "boundary", "sample Re F near the boundary and run the checks");
    add_spec_flags(boundary, bnd.in);
    boundary->add_option("--lambda", bnd.lambda, "transverse half width")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--depth", bnd.depth, "dyadic approach depth")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--points", bnd.points, "transverse sample count (odd)")
        ->check(CLI::PositiveNumber);
    boundary->add_option("--k", bnd.k, "declared blow-up exponent for the growth check");
    boundary->add_option("--glower", bnd.g_lower, "constant lower envelope");
    boundary->add_option("--out", bnd.out, "output directory");
    boundary->callback([&] {
        rc = run_boundary(bnd.in, bnd.lambda, bnd.depth, bnd.points, bnd.k, bnd.g_lower, bnd.out);
    });

    struct {
        SpecInputs in;
        double lambda = 1.0;
        std::vector<double> h;
        int depth = 20;
        std::int64_t points = 0;
        std::string out = ".";
    } fej;
    auto* fejer = sub(probe, "fejer", "windowed cosine boundedness probe");
    add_spec_flags(fejer, fej.in);
    fejer->add_option("--lambda", fej.lambda, "window half width")->check(CLI::PositiveNumber);
    fejer->add_option("--h", fej.h, "frequency list (default 1 2 4 ... 1024)");
    fejer->add_option("--depth", fej.depth, "dyadic schedule depth")->check(CLI::PositiveNumber);
    fejer->add_option("--points", fej.points, "quadrature points (0 = auto)");
    fejer->add_option("--out", fej.out, "output directory");
    fejer->callback(
        [&] { rc = run_fejer(fej.in, fej.lambda, fej.h, fej.depth, fej.points, fej.out); });

    // check
    auto* check = sub(&app, "check", "sampled-function growth checks");
    check->require_subcommand(1);

    struct {
        std::string samples;
        double eps = 0.1;
        std::vector<double> h;
        std::vector<double> x0;
        double rho = 0.0;
        std::string out = ".";
    } slow;
    auto* slowdecrease =
        sub(check, "slowdecrease", "windowed drop checks on e^{-x} S(x)");
    slowdecrease->add_option("--samples", slow.samples, "sampled function CSV (header x,value)")
        ->required()
        ->check(CLI::ExistingFile);
    slowdecrease->add_option("--eps", slow.eps, "allowed drop")->check(CLI::PositiveNumber);
    slowdecrease->add_option("--h", slow.h, "window widths (default 0.25 0.5 1 2)");
    slowdecrease->add_option("--x0", slow.x0, "suffix starts (default X/4 X/2 3X/4)");
    slowdecrease->add_option("--rho", slow.rho, "declared polynomial growth exponent");
    slowdecrease->add_option("--out", slow.out, "output directory");
    slowdecrease->callback([&] {
        rc = run_slowdecrease(slow.samples, slow.eps, slow.h, slow.x0, slow.rho, slow.out);
    });

    struct {
        std::string samples;
        double k = 0.0;
        double rho = 0.0;
        std::string out = ".";
    } koga;
    auto* kogacmd = sub(check, "koga", "weighted tail integral convergence");
    kogacmd->add_option("--samples", koga.samples, "sampled function CSV (header x,value)")
        ->required()
        ->check(CLI::ExistingFile);
    kogacmd->add_option("--k", koga.k, "weight exponent")->required();
    kogacmd->add_option("--rho", koga.rho, "declared polynomial growth exponent");
    kogacmd->add_option("--out", koga.out, "output directory");
    kogacmd->callback([&] { rc = run_koga(koga.samples, koga.k, koga.rho, koga.out); });

    // limit
    struct {
        SpecInputs in;
        std::string mode = "sigma";
        int depth = 20;
        std::string out = ".";
    } lim;
    auto* limit = sub(&app, "limit", "extrapolated boundary limit of d * Re F");
    add_spec_flags(limit, lim.in);
    limit->add_option("--mode", lim.mode, "approach variable: sigma or abel")
        ->check(CLI::IsMember({"sigma", "abel"}));
    limit->add_option("--depth", lim.depth, "dyadic depth")->check(CLI::PositiveNumber);
    limit->add_option("--out", lim.out, "output directory");
    limit->callback([&] { rc = run_limit(lim.in, lim.mode, lim.depth, lim.out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const tk::Error& e) {
        std::cerr << "error: " << tk::errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_for_error(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputExit;
    }
    return rc;
}
