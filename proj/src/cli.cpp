#include "skewflow/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "skewflow/cohomology.hpp"
#include "skewflow/mixing_lab.hpp"
#include "skewflow/suspension.hpp"

namespace skewflow::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string command;
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    unsigned threads = 1;
    bool json_errors = false;
};

struct Context {
    Options opts;
    json config;
    std::string config_text;

    const json& section(const char* key) const
    {
        if (!config.contains(key))
            fail(ErrorKind::ConfigError, std::string("config is missing \"") + key + "\"");
        return config.at(key);
    }

    const json& experiment() const { return section("experiment"); }

    std::uint64_t seed() const
    {
        if (opts.seed)
            return *opts.seed;
        if (!config.contains("seed") || !config["seed"].is_number_unsigned())
            fail(ErrorKind::ConfigError, "stochastic subcommands need a nonnegative integer \"seed\"");
        return config["seed"].get<std::uint64_t>();
    }

    double tolerance() const
    {
        if (opts.tol)
            return *opts.tol;
        if (config.contains("tolerance"))
            return parse_decimal(config["tolerance"]);
        return kDefaultCoboundaryTol;
    }

    std::string output_path() const
    {
        if (!opts.out_path.empty())
            return opts.out_path;
        if (config.contains("output") && config["output"].is_string())
            return config["output"].get<std::string>();
        return {};
    }
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void emit(const Context& ctx, const std::string& text)
{
    const std::string path = ctx.output_path();
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::ConfigError, "cannot open output file " + path);
    out << text;
}

void emit_json(const Context& ctx, const json& j) { emit(ctx, j.dump(2) + "\n"); }

std::string csv_header(const Context& ctx, const std::optional<std::uint64_t>& seed, const std::string& columns)
{
    std::ostringstream os;
    os << "# skewflow " << ctx.opts.command << "\n";
    os << "# config_hash=fnv1a64:" << hex64(fnv1a64(ctx.config.dump())) << "\n";
    if (seed)
        os << "# seed=" << *seed << "\n";
    os << columns << "\n";
    return os.str();
}

TrigPoly roof_from(const Context& ctx, std::size_t dim)
{
    TrigPoly f = trigpoly_from_json(ctx.section("roof"));
    if (f.dim() != dim)
        fail(ErrorKind::DimensionMismatch, "roof dimension differs from the system");
    return f;
}

/// Component of f with nonzero last frequency coordinate.
TrigPoly top_component(const TrigPoly& f)
{
    return decompose(f, f.dim() - 1).perps.back();
}

std::size_t get_size(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_unsigned())
        fail(ErrorKind::ConfigError, std::string("\"") + key + "\" must be a nonnegative integer");
    return j[key].get<std::size_t>();
}

std::vector<double> get_reals(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorKind::ConfigError, std::string("\"") + key + "\" must be an array");
    std::vector<double> out;
    for (const auto& v : j[key])
        out.push_back(parse_decimal(v));
    return out;
}

std::vector<std::int64_t> get_ints(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorKind::ConfigError, std::string("\"") + key + "\" must be an array");
    std::vector<std::int64_t> out;
    for (const auto& v : j[key]) {
        if (!v.is_number_integer())
            fail(ErrorKind::ConfigError, std::string("\"") + key + "\" entries must be integers");
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

Cube cube_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("box") || !j["box"].is_array())
        fail(ErrorKind::ConfigError, "cube needs \"box\" and \"height\"");
    Cube c;
    for (const auto& iv : j["box"]) {
        if (!iv.is_array() || iv.size() != 2)
            fail(ErrorKind::ConfigError, "cube box entries are [lo, hi] pairs");
        c.box.emplace_back(parse_decimal(iv[0]), parse_decimal(iv[1]));
    }
    const auto h = get_reals(j, "height");
    if (h.size() != 2)
        fail(ErrorKind::ConfigError, "cube height is a [q1, q2] pair");
    c.q1 = h[0];
    c.q2 = h[1];
    return c;
}

json shear_json(const SkewTranslation& t)
{
    try {
        const ShearVector sv = t.shear_vector();
        return {{"v", sv.v}, {"a", sv.a}};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoShearVector)
            throw;
        return nullptr;
    }
}

json advisory_json(const std::vector<RationalityAdvice>& adv)
{
    json arr = json::array();
    for (const auto& a : adv)
        arr.push_back({{"looks_rational", a.looks_rational},
                       {"numerator", a.numerator},
                       {"denominator", a.denominator}});
    return arr;
}

int cmd_validate(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    json dims = json::array();
    for (const auto& e : t.filtration())
        dims.push_back(e.rows());
    json out = {{"dim", t.dim()},
                {"nilpotency_degree", t.nilpotency_degree()},
                {"d0", t.d0()},
                {"filtration_dims", dims},
                {"shear_vector", shear_json(t)},
                {"rationality_advisory", advisory_json(t.rationality_scan())},
                {"advisory_note", "continued-fraction heuristic; unique ergodicity is not decided"}};
    emit_json(ctx, out);
    return 0;
}

int cmd_coboundary(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    const TrigPoly part = top_component(roof_from(ctx, t.dim()));
    json out = to_json(is_smooth_coboundary(part, t, ctx.tolerance()));
    out["component"] = "frequencies with nonzero last coordinate";
    emit_json(ctx, out);
    return 0;
}

int cmd_solve(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    const TrigPoly part = top_component(roof_from(ctx, t.dim()));
    const TrigPoly u = solve_cohomological_equation(part, t, ctx.tolerance());
    const double residual = grid_sup_distance(part, coboundary_apply(u, t), t.dim() <= 3 ? 32 : 16);
    emit_json(ctx, {{"u", to_json(u)}, {"grid_residual", residual}});
    return 0;
}

int cmd_membership(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    emit_json(ctx, to_json(membership_M(roof_from(ctx, t.dim()), t, ctx.tolerance())));
    return 0;
}

int cmd_gen_mixing(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    double eps = 0.05;
    if (ctx.config.contains("experiment") && ctx.config["experiment"].contains("epsilon"))
        eps = parse_decimal(ctx.config["experiment"]["epsilon"]);
    const MixingRoofReport r = generate_mixing_roof(roof_from(ctx, t.dim()), t, eps, ctx.tolerance());
    emit_json(ctx, {{"roof", to_json(r.roof)},
                    {"membership", to_json(r.membership)},
                    {"epsilon_bump", r.epsilon_bump},
                    {"constant_added", r.constant_added},
                    {"certified_min", r.certified_min},
                    {"distance_bound", r.distance_bound},
                    {"distance_grid", r.distance_grid}});
    return 0;
}

SuspensionFlow flow_from(const Context& ctx)
{
    SkewTranslation t = system_from_json(ctx.section("system"));
    TrigPoly roof = roof_from(ctx, t.dim());
    return SuspensionFlow(std::move(t), RoofFunction(std::move(roof)));
}

int cmd_simulate(const Context& ctx)
{
    const SuspensionFlow flow = flow_from(ctx);
    const std::uint64_t seed = ctx.seed();
    const std::size_t count = get_size(ctx.experiment(), "count");
    const auto times = get_reals(ctx.experiment(), "times");
    const auto points = flow.sample_invariant(seed, count, ctx.opts.threads);
    std::string cols = "sample,t";
    for (std::size_t i = 1; i <= flow.dim(); ++i)
        cols += ",x" + std::to_string(i);
    cols += ",r,n_t";
    std::ostringstream os;
    os << csv_header(ctx, seed, cols);
    for (std::size_t k = 0; k < points.size(); ++k)
        for (double t : times) {
            const FlowResult res = flow.flow_with_count(points[k], t);
            os << k << ',' << fmt(t);
            for (double xi : res.point.x)
                os << ',' << fmt(xi);
            os << ',' << fmt(res.point.r) << ',' << res.n << '\n';
        }
    emit(ctx, os.str());
    return 0;
}

int cmd_correlation(const Context& ctx)
{
    const SuspensionFlow flow = flow_from(ctx);
    const std::uint64_t seed = ctx.seed();
    const json& ex = ctx.experiment();
    if (!ex.contains("Q") || !ex.contains("R"))
        fail(ErrorKind::ConfigError, "correlation needs cubes \"Q\" and \"R\"");
    const CorrelationCurve curve = correlation_curve(flow, cube_from_json(ex["Q"]), cube_from_json(ex["R"]),
                                                     get_reals(ex, "t_grid"), get_size(ex, "samples"), seed,
                                                     ctx.opts.threads);
    std::ostringstream os;
    os << csv_header(ctx, seed, "t,estimate,stderr,samples,product");
    const double product = curve.measure_r * curve.measure_q;
    for (const auto& p : curve.points)
        os << fmt(p.t) << ',' << fmt(p.estimate) << ',' << fmt(p.stderr_) << ',' << p.samples << ','
           << fmt(product) << '\n';
    emit(ctx, os.str());
    return 0;
}

int cmd_growth(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    const TrigPoly psi = top_component(roof_from(ctx, t.dim()));
    const std::uint64_t seed = ctx.seed();
    const json& ex = ctx.experiment();
    const auto rows = growth_in_measure(t, psi, parse_decimal(ex.at("C")), get_ints(ex, "n_list"),
                                        get_size(ex, "samples"), seed, ctx.opts.threads);
    std::ostringstream os;
    os << csv_header(ctx, seed, "n,fraction,stderr");
    for (const auto& r : rows)
        os << r.n << ',' << fmt(r.fraction) << ',' << fmt(r.stderr_) << '\n';
    emit(ctx, os.str());
    return 0;
}

int cmd_decoupling(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    const TrigPoly psi = top_component(roof_from(ctx, t.dim()));
    const std::uint64_t seed = ctx.seed();
    const json& ex = ctx.experiment();
    if (!ex.contains("n") || !ex["n"].is_number_integer())
        fail(ErrorKind::ConfigError, "\"n\" must be an integer");
    const auto n = ex["n"].get<std::int64_t>();
    const double c = parse_decimal(ex.at("C"));
    const std::size_t samples = get_size(ex, "samples");
    std::ostringstream os;
    os << csv_header(ctx, seed, "N,fraction,stderr,max_identity_gap");
    for (auto big_n : get_ints(ex, "N_list")) {
        const DecouplingResult r = decoupling_stat(t, psi, n, big_n, c, samples, seed, ctx.opts.threads);
        os << big_n << ',' << fmt(r.fraction) << ',' << fmt(r.stderr_) << ',' << fmt(r.max_identity_gap) << '\n';
    }
    emit(ctx, os.str());
    return 0;
}

int cmd_stretch(const Context& ctx)
{
    const SkewTranslation t = system_from_json(ctx.section("system"));
    const TrigPoly psi = roof_from(ctx, t.dim());
    const json& ex = ctx.experiment();
    const auto xhat = get_reals(ex, "xhat");
    const auto interval = get_reals(ex, "interval");
    if (interval.size() != 2)
        fail(ErrorKind::ConfigError, "\"interval\" is an [a, b] pair");
    std::ostringstream os;
    os << csv_header(ctx, std::nullopt, "n,stretch,grid_points");
    for (auto n : get_ints(ex, "n_list")) {
        const StretchResult r = stretch(t, psi, xhat, interval[0], interval[1], n);
        os << n << ',' << fmt(r.value) << ',' << r.grid_points << '\n';
    }
    emit(ctx, os.str());
    return 0;
}

NilflowSpec nilflow_from(const Context& ctx)
{
    const json& system = ctx.section("system");
    if (!system.contains("nilflow"))
        fail(ErrorKind::ConfigError, "system needs a \"nilflow\" block");
    return nilflow_from_json(system["nilflow"]);
}

int cmd_nilflow_section(const Context& ctx)
{
    const NilflowSpec spec = nilflow_from(ctx);
    const PoincareSection sec = poincare_section(spec);
    json matrix = json::array();
    for (std::size_t i = 0; i < sec.matrix.rows(); ++i)
        matrix.push_back(sec.matrix.row(i));
    json translation = json::array();
    for (double b : sec.translation)
        translation.push_back(fmt(b));
    const RationalityAdvice adv = spec.rationality();
    emit_json(ctx, {{"system", {{"matrix", matrix}, {"translation", translation}}},
                    {"return_time", sec.return_time},
                    {"rationality_advisory", advisory_json({adv})}});
    return 0;
}

int cmd_timechange(const Context& ctx)
{
    const NilflowSpec spec = nilflow_from(ctx);
    const json& ex = ctx.experiment();
    if (!ex.contains("alpha"))
        fail(ErrorKind::ConfigError, "timechange needs an \"alpha\" polynomial");
    const TimeChangeResult r = time_change_roof(spec, trigpoly_from_json(ex["alpha"]), get_size(ex, "quad_panels"),
                                                get_size(ex, "fit_degree"));
    emit_json(ctx, {{"roof", to_json(r.roof)},
                    {"residual", r.residual},
                    {"grid_points_per_axis", r.grid_points_per_axis},
                    {"min_value", r.alpha_min}});
    return 0;
}

int dispatch(const Context& ctx)
{
    const std::string& c = ctx.opts.command;
    if (c == "validate")
        return cmd_validate(ctx);
    if (c == "coboundary")
        return cmd_coboundary(ctx);
    if (c == "solve")
        return cmd_solve(ctx);
    if (c == "membership")
        return cmd_membership(ctx);
    if (c == "gen-mixing")
        return cmd_gen_mixing(ctx);
    if (c == "simulate")
        return cmd_simulate(ctx);
    if (c == "correlation")
        return cmd_correlation(ctx);
    if (c == "growth")
        return cmd_growth(ctx);
    if (c == "decoupling")
        return cmd_decoupling(ctx);
    if (c == "stretch")
        return cmd_stretch(ctx);
    if (c == "nilflow-section")
        return cmd_nilflow_section(ctx);
    if (c == "timechange")
        return cmd_timechange(ctx);
    fail(ErrorKind::ConfigError, "unknown subcommand " + c);
}

int report(const Options& opts, const std::string& kind, const std::string& message, int code)
{
    if (opts.json_errors)
        std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
    else
        std::cerr << "skewflow: " << message << "\n";
    return code;
}

} // namespace

double parse_decimal(const nlohmann::json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (!j.is_string())
        fail(ErrorKind::ConfigError, "expected a number or decimal string");
    const std::string s = j.get<std::string>();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        fail(ErrorKind::ConfigError, "not a decimal: " + s);
    }
    if (pos != s.size())
        fail(ErrorKind::ConfigError, "not a decimal: " + s);
    return v;
}

SkewTranslation system_from_json(const nlohmann::json& system)
{
    if (!system.is_object() || !system.contains("matrix") || !system.contains("translation"))
        fail(ErrorKind::ConfigError, "system needs \"matrix\" and \"translation\"");
    const auto& m = system["matrix"];
    if (!m.is_array() || m.empty())
        fail(ErrorKind::ConfigError, "\"matrix\" must be a nonempty array of rows");
    IntMatrix a(m.size(), m[0].is_array() ? m[0].size() : 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i].is_array() || m[i].size() != a.cols())
            fail(ErrorKind::ConfigError, "\"matrix\" rows must have equal length");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!m[i][j].is_number_integer())
                fail(ErrorKind::ConfigError, "\"matrix\" entries must be integers");
            a(i, j) = m[i][j].get<std::int64_t>();
        }
    }
    if (!a.square())
        fail(ErrorKind::NotUnipotentUpperTriangular, "matrix must be square");
    std::vector<double> b;
    for (const auto& v : system["translation"])
        b.push_back(parse_decimal(v));
    return SkewTranslation(a, b);
}

NilflowSpec nilflow_from_json(const nlohmann::json& nilflow)
{
    if (!nilflow.is_object() || !nilflow.contains("d") || !nilflow.contains("E") || !nilflow.contains("w"))
        fail(ErrorKind::ConfigError, "nilflow needs \"d\", \"E\" and \"w\"");
    const auto d = nilflow["d"].get<std::size_t>();
    std::vector<std::int64_t> e;
    for (const auto& v : nilflow["E"]) {
        if (!v.is_number_integer())
            fail(ErrorKind::ConfigError, "\"E\" entries must be integers");
        e.push_back(v.get<std::int64_t>());
    }
    if (e.size() != d)
        fail(ErrorKind::ConfigError, "\"E\" must have d entries");
    std::vector<double> w;
    for (const auto& v : nilflow["w"])
        w.push_back(parse_decimal(v));
    return NilflowSpec(Lattice(e), w);
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int run(const std::vector<std::string>& args)
{
    Options opts;
    CLI::App app{"Suspension flows over skew-translations of tori", "skewflow"};
    app.add_option("command", opts.command, "Subcommand")
        ->required()
        ->check(CLI::IsMember({"validate", "coboundary", "solve", "membership", "gen-mixing", "simulate",
                               "correlation", "growth", "decoupling", "stretch", "nilflow-section",
                               "timechange"}));
    app.add_option("--config", opts.config_path, "JSON experiment config")->required();
    app.add_option("--out", opts.out_path, "Output path (default: config \"output\" or stdout)");
    app.add_option("--seed", opts.seed, "Seed override");
    app.add_option("--tol", opts.tol, "Obstruction tolerance");
    app.add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--json-errors", opts.json_errors, "Machine-readable errors on stderr");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back(); // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report(opts, "UsageError", e.what(), 1);
    }

    try {
        Context ctx;
        ctx.opts = opts;
        std::ifstream in(opts.config_path, std::ios::binary);
        if (!in)
            fail(ErrorKind::ConfigError, "cannot read config " + opts.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        ctx.config_text = text.str();
        ctx.config = json::parse(ctx.config_text);
        if (!ctx.config.is_object())
            fail(ErrorKind::ConfigError, "config must be a JSON object");
        return dispatch(ctx);
    } catch (const Error& e) {
        return report(opts, std::string(to_string(e.kind())), e.what(), is_validation_error(e.kind()) ? 1 : 2);
    } catch (const json::exception& e) {
        return report(opts, "ConfigError", e.what(), 1);
    } catch (const std::exception& e) {
        return report(opts, "RuntimeError", e.what(), 2);
    }
}

int run(int argc, char** argv)
{
    return run(std::vector<std::string>(argv, argv + argc));
}

} // namespace skewflow::cli
