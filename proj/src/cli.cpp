#include "hls/cli.hpp"

#include "hls/cc_lab.hpp"
#include "hls/constants.hpp"
#include "hls/extremal.hpp"
#include "hls/heisenberg.hpp"
#include "hls/monte_carlo.hpp"
#include "hls/quadrature.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace hls::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

struct Common {
    int n = 1;
    double lambda = 2.0;
    std::optional<double> p, r, s;
    int grid_rho = 64;
    int grid_t = 128;
    std::size_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::string out;
};

HlsParams make_params(const Common& c)
{
    if (c.n < 1)
        throw InvalidArgument("n must be positive");
    if (c.p && (c.r || c.s))
        throw InvalidArgument("give either --p or --r/--s, not both");
    if (c.p)
        return derive_conjugates(c.n, c.lambda, *c.p);
    if (c.r || c.s) {
        if (!(c.r && c.s))
            throw InvalidArgument("--r and --s must be given together");
        HlsParams out = derive_conjugates(c.n, c.lambda, *c.s);
        if (std::abs(out.r - *c.r) > 1e-9 * out.r)
            throw InvalidArgument("exponents violate 1/r + 1/s + lambda/Q = 2");
        return out;
    }
    return diagonal_params(c.n, c.lambda);
}

GridSpec make_grid_spec(const Common& c)
{
    GridSpec g;
    g.n = c.n;
    g.n_rho = c.grid_rho;
    g.n_t = c.grid_t;
    if (c.grid_rho < 4 || c.grid_t < 4)
        throw InvalidArgument("grid needs at least 4 nodes per axis");
    return g;
}

// Writes to --out (atomically enough for our purposes: only after all work is done).
void emit(const Common& c, std::ostream& out, const std::string& text)
{
    if (c.out.empty() || c.out == "-") {
        out << text;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file || !(file << text) || !file.flush())
        throw IoError("cannot write " + c.out);
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush())
        throw IoError("cannot write " + path);
}

json envelope(const std::string& command)
{
    return json{{"schema_version", kSchemaVersion}, {"command", command}};
}

json params_json(const HlsParams& p)
{
    return json{{"n", p.n}, {"Q", p.Q}, {"lambda", p.lambda}, {"p", p.p}, {"q", p.q}, {"r", p.r}, {"s", p.s}};
}

json point_json(const GroupPoint& u)
{
    return json(std::vector<double>(u.coords().begin(), u.coords().end()));
}

// ---------------------------------------------------------------- constants

struct ConstantsConfig {
    int N = 3;
};

std::string cmd_constants(const Common& c, const ConstantsConfig& cc)
{
    const HlsParams hp = make_params(c);
    const HlsParams diag = diagonal_params(c.n, c.lambda);
    json doc = envelope("constants");
    json records = json::array();
    json comparisons = json::array();

    const double fl = frank_lieb_constant(c.n, c.lambda);
    const double upper = heisenberg_upper_bound(c.n, c.lambda, hp.r, hp.s);
    const double upper_diag = heisenberg_upper_bound(c.n, c.lambda, diag.r, diag.s);
    records.push_back({{"name", "frank_lieb_constant"}, {"params", {{"n", c.n}, {"lambda", c.lambda}}}, {"value", fl}});
    records.push_back({{"name", "heisenberg_upper_bound"},
                       {"params", {{"n", c.n}, {"lambda", c.lambda}, {"r", hp.r}, {"s", hp.s}}},
                       {"value", upper}});
    records.push_back({{"name", "ball_volume"}, {"params", {{"n", c.n}}}, {"value", ball_volume(c.n)}});
    comparisons.push_back({{"claim", "heisenberg_upper_bound >= frank_lieb_constant (diagonal)"},
                           {"lhs", upper_diag},
                           {"rhs", fl},
                           {"holds", upper_diag >= fl}});

    if (cc.N < 1)
        throw InvalidArgument("N must be positive");
    if (c.lambda < cc.N) {
        const double rd = 2.0 * cc.N / (2.0 * cc.N - c.lambda);
        const double per_dim = lieb_diagonal_constant(cc.N, c.lambda, LiebVariant::pi_per_dimension);
        const double standard = lieb_diagonal_constant(cc.N, c.lambda, LiebVariant::standard);
        const double loss = lieb_loss_upper_bound(cc.N, c.lambda, rd, rd);
        const double selected = lieb_diagonal_constant(cc.N, c.lambda);
        for (auto [name, v] : {std::pair{"pi_per_dimension", per_dim}, std::pair{"standard", standard}})
            records.push_back({{"name", "lieb_diagonal_constant"},
                               {"params", {{"N", cc.N}, {"lambda", c.lambda}, {"variant", name}}},
                               {"value", v},
                               {"selected", std::string(name) == to_string(kDefaultLiebVariant)}});
        records.push_back({{"name", "lieb_loss_upper_bound"},
                           {"params", {{"N", cc.N}, {"lambda", c.lambda}, {"r", rd}, {"s", rd}}},
                           {"value", loss}});
        comparisons.push_back({{"claim", "lieb_loss_upper_bound >= lieb_diagonal_constant (selected variant)"},
                               {"lhs", loss},
                               {"rhs", selected},
                               {"holds", loss >= selected}});
    } else {
        doc["euclidean_skipped"] = "lambda must be below N for the Euclidean constants";
    }
    doc["params"] = params_json(hp);
    doc["records"] = std::move(records);
    doc["comparisons"] = std::move(comparisons);
    return doc.dump(2) + "\n";
}

// ----------------------------------------------------------------- evaluate

struct EvaluateConfig {
    std::string preset = "H";
    std::string input;
    int refine = 0;
    std::string format = "json";
    bool mc = false;
};

// Reads "rho,t,value" rows (header optional) on a full tensor grid.
CylGridFunction read_grid_file(const std::string& path, int n)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    std::map<std::pair<double, double>, double> cells;
    std::set<double> rho, t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b, v;
        if (!(ls >> a >> b >> v)) {
            if (line_no == 1)
                continue;  // header
            throw IoError(path + ":" + std::to_string(line_no) + ": expected rho,t,value");
        }
        if (!cells.emplace(std::pair{a, b}, v).second)
            throw IoError(path + ": duplicate node");
        rho.insert(a);
        t.insert(b);
    }
    if (cells.size() != rho.size() * t.size() || cells.empty())
        throw IoError(path + ": nodes do not form a full tensor grid");
    std::vector<double> rv(rho.begin(), rho.end()), tv(t.begin(), t.end());
    GridPtr grid;
    try {
        grid = std::make_shared<const CylGrid>(n, rv, tv);
    } catch (const InvalidArgument& e) {
        throw IoError(path + ": " + e.what());
    }
    CylGridFunction f(grid);
    for (std::size_t j = 0; j < rv.size(); ++j)
        for (std::size_t b = 0; b < tv.size(); ++b)
            f(static_cast<int>(j), static_cast<int>(b)) = cells.at({rv[j], tv[b]});
    for (double v : f.values())
        if (!std::isfinite(v))
            throw IoError(path + ": non-finite value");
    return f;
}

std::function<double(double, double)> preset_profile(const std::string& name, double lambda, int n)
{
    const int Q = homogeneous_dimension(n);
    if (name == "H") {
        const double e = -(2.0 * Q - lambda) / 4.0;
        return [e](double r, double t) {
            const double a = 1.0 + r * r;
            return std::pow(a * a + t * t, e);
        };
    }
    if (name == "ball")
        return [](double r, double t) { return r * r * r * r + t * t < 1.0 ? 1.0 : 0.0; };
    if (name == "gaussian")
        return [](double r, double t) { return std::exp(-r * r - t * t); };
    if (name == "zero")
        return [](double, double) { return 0.0; };
    throw InvalidArgument("unknown preset '" + name + "' (H, ball, gaussian, zero, file)");
}

std::string cmd_evaluate(const Common& c, const EvaluateConfig& ec)
{
    const HlsParams hp = make_params(c);
    if (ec.refine < 0 || ec.refine > 3)
        throw InvalidArgument("--refine must lie in [0, 3]");
    if (ec.format != "json" && ec.format != "csv")
        throw InvalidArgument("--format must be json or csv");
    if (ec.preset == "file" && ec.input.empty())
        throw InvalidArgument("preset 'file' needs --input");
    if (ec.preset == "zero")
        throw InvalidArgument("quotient undefined for f = 0");
    const bool use_mc = ec.mc || c.n != 1;
    if (use_mc && !c.seed)
        throw InvalidArgument("--seed is required for Monte Carlo evaluation");
    if (use_mc && ec.preset == "file")
        throw InvalidArgument("grid files are evaluated deterministically (n = 1)");
    if (use_mc && c.samples < 1000)
        throw InvalidArgument("--samples must be at least 1000");
    if (ec.preset != "file")
        (void)preset_profile(ec.preset, c.lambda, c.n);  // validates the name
    const GridSpec base = make_grid_spec(c);

    const bool H_diag = ec.preset == "H" && hp.diagonal(1e-9);
    const double reference = frank_lieb_constant(c.n, c.lambda);
    json doc = envelope("evaluate");
    doc["params"] = params_json(hp);
    doc["preset"] = ec.preset;
    std::ostringstream csv;
    csv << "level,n_rho,n_t,energy,norm_r,norm_s,quotient,energy_ratio,ratio_error\n";

    if (use_mc) {
        const Geometry geo = Geometry::heisenberg(c.n);
        const auto prof = preset_profile(ec.preset, c.lambda, c.n);
        const PointFunction f = [&](std::span<const double> u) {
            double z2 = 0.0;
            for (int k = 0; k < 2 * c.n; ++k)
                z2 += u[k] * u[k];
            return prof(std::sqrt(z2), u[2 * c.n]);
        };
        McOptions mo;
        mo.samples = c.samples;
        mo.seed = *c.seed;
        mo.workers = c.workers == 0 ? 1 : c.workers;
        const McEstimate e = mc_bilinear_energy(f, f, c.lambda, geo, mo);
        const McEstimate nr = mc_lp_norm_power(f, hp.r, geo, mo);
        const McEstimate ns = mc_lp_norm_power(f, hp.s, geo, mo);
        const double ratio = e.value / (std::pow(nr.value, 1.0 / hp.r) * std::pow(ns.value, 1.0 / hp.s));
        doc["method"] = "monte_carlo";
        doc["energy"] = {{"value", e.value}, {"stderr", e.std_error}};
        doc["norm_r"] = std::pow(nr.value, 1.0 / hp.r);
        doc["norm_s"] = std::pow(ns.value, 1.0 / hp.s);
        doc["energy_ratio"] = ratio;
        if (H_diag) {
            doc["reference"] = reference;
            doc["ratio_error"] = std::abs(ratio / reference - 1.0);
        }
        csv << "0,0,0," << fmt(e.value) << ',' << fmt(std::pow(nr.value, 1.0 / hp.r)) << ','
            << fmt(std::pow(ns.value, 1.0 / hp.s)) << ",," << fmt(ratio) << ','
            << (H_diag ? fmt(std::abs(ratio / reference - 1.0)) : "") << "\n";
        return ec.format == "json" ? doc.dump(2) + "\n" : csv.str();
    }

    std::optional<CylGridFunction> from_file;
    if (ec.preset == "file")
        from_file = read_grid_file(ec.input, c.n);

    QuadratureOptions qo;
    qo.workers = c.workers;
    json ladder = json::array();
    std::optional<double> prev_error;
    bool monotone = true;
    GridSpec spec = base;
    const int levels = ec.preset == "file" ? 1 : ec.refine + 1;
    for (int level = 0; level < levels; ++level) {
        // the ball is cell-averaged: point samples resolve its boundary poorly
        const CylGridFunction f = from_file              ? *from_file
                                  : ec.preset == "ball" ? ball_indicator(make_grid(spec), 1.0)
                                                        : CylGridFunction::sample(make_grid(spec),
                                                                                  preset_profile(ec.preset, c.lambda, c.n));
        if (f.is_zero())
            throw InvalidArgument("quotient undefined for f = 0");
        const FractionalIntegralOperator op(f.grid_ptr(), c.lambda, qo);
        const double energy = op.energy(f, f);
        const double nr = lp_norm(f, hp.r), ns = lp_norm(f, hp.s);
        const double quotient = hls_quotient(op, f, hp);
        const double ratio = energy / (nr * ns);
        json row{{"level", level},
                 {"n_rho", f.grid().n_rho()},
                 {"n_t", f.grid().n_t()},
                 {"energy", energy},
                 {"norm_r", nr},
                 {"norm_s", ns},
                 {"quotient", quotient},
                 {"energy_ratio", ratio},
                 {"fractional_integral_at_origin", fractional_integral(f, c.lambda, GroupPoint(1), qo)}};
        std::string err_text;
        if (H_diag) {
            const double err = std::abs(ratio / reference - 1.0);
            row["ratio_error"] = err;
            err_text = fmt(err);
            if (prev_error && !(err < *prev_error))
                monotone = false;
            prev_error = err;
        }
        csv << level << ',' << f.grid().n_rho() << ',' << f.grid().n_t() << ',' << fmt(energy) << ',' << fmt(nr)
            << ',' << fmt(ns) << ',' << fmt(quotient) << ',' << fmt(ratio) << ',' << err_text << "\n";
        ladder.push_back(std::move(row));
        spec = spec.refined();
    }
    doc["method"] = "quadrature";
    doc["levels"] = std::move(ladder);
    if (H_diag) {
        doc["reference"] = reference;
        if (levels > 1)
            doc["error_decreasing"] = monotone;
    }
    return ec.format == "json" ? doc.dump(2) + "\n" : csv.str();
}

// ----------------------------------------------------------------- maximize

struct MaximizeConfig {
    std::string init = "gaussian";
    int max_iter = 500;
    double rtol = 1e-7;
    std::string trace;
};

std::string cmd_maximize(const Common& c, const MaximizeConfig& mc, std::string& trace_csv)
{
    const HlsParams hp = make_params(c);
    if (c.n != 1)
        throw InvalidArgument("maximize runs on the n = 1 quadrature grid");
    if (mc.max_iter < 1)
        throw InvalidArgument("--max-iter must be positive");
    if (!(mc.rtol >= 0.0))
        throw InvalidArgument("--rtol must be nonnegative");
    const GridPtr grid = make_grid(make_grid_spec(c));
    CylGridFunction init(grid);
    if (mc.init == "gaussian")
        init = gaussian_profile(grid);
    else if (mc.init == "H")
        init = extremal_H(c.lambda, grid);
    else if (mc.init == "perturbed")
        init = CylGridFunction::sample(grid, [e = -(8.0 - c.lambda) / 4.0](double r, double t) {
            const double a = 1.0 + r * r;
            return std::pow(a * a + t * t, e) * (1.0 + 0.3 * std::cos(t));
        });
    else
        throw InvalidArgument("unknown --init '" + mc.init + "' (gaussian, H, perturbed)");

    QuadratureOptions qo;
    qo.workers = c.workers;
    const FractionalIntegralOperator op(grid, c.lambda, qo);
    MaximizeOptions mo;
    mo.max_iter = mc.max_iter;
    mo.rtol = mc.rtol;
    const MaximizeResult res = maximize(op, hp, init, mo);
    const Alignment al = align(res.f, extremal_H(c.lambda, grid), hp.p);

    std::ostringstream csv;
    csv << "iter,quotient,q1_concentration,dilation,t_shift,accepted\n";
    for (const TraceRecord& r : res.trace)
        csv << r.iter << ',' << fmt(r.quotient) << ',' << fmt(r.q1_concentration) << ',' << fmt(r.dilation) << ','
            << fmt(r.t_shift) << ',' << (r.accepted ? 1 : 0) << "\n";
    trace_csv = csv.str();

    json doc = envelope("maximize");
    doc["params"] = params_json(hp);
    doc["init"] = mc.init;
    doc["quotient"] = res.quotient;
    doc["iterations"] = static_cast<int>(res.trace.size()) - 1;
    doc["converged"] = res.converged;
    if (hp.diagonal(1e-9)) {
        doc["reference"] = frank_lieb_constant(c.n, c.lambda);
        doc["relative_gap"] = std::abs(res.quotient / frank_lieb_constant(c.n, c.lambda) - 1.0);
    }
    doc["alignment"] = {{"d", al.d}, {"a", al.a}, {"rel_error", al.rel_error}};
    return doc.dump(2) + "\n";
}

// ----------------------------------------------------------------- classify

struct ClassifyConfig {
    std::string generator;
    std::string input;
    int length = 20;
    double k = 0.3;
    double eps = 0.05;
    std::vector<double> R_grid = kDefaultRGrid;
};

// Rows "index,x_1..x_n,y_1..y_n,t,mass"; one measure per distinct index.
std::vector<DiscreteMeasure> read_measure_file(const std::string& path, int n)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    std::map<long, std::vector<Atom>> groups;
    std::string line;
    int line_no = 0;
    const int d = 2 * n + 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        long idx;
        std::vector<double> coords(d);
        double mass;
        bool ok = static_cast<bool>(ls >> idx);
        for (int k = 0; ok && k < d; ++k)
            ok = static_cast<bool>(ls >> coords[k]);
        ok = ok && static_cast<bool>(ls >> mass);
        std::string rest;
        if (ok && (ls >> rest))
            ok = false;
        if (!ok) {
            if (line_no == 1)
                continue;
            throw IoError(path + ":" + std::to_string(line_no) + ": malformed measure row");
        }
        if (!(mass >= 0.0) || !std::isfinite(mass))
            throw IoError(path + ":" + std::to_string(line_no) + ": mass must be finite and nonnegative");
        groups[idx].push_back({GroupPoint(n, coords), mass});
    }
    if (groups.empty())
        throw IoError(path + ": no measures");
    std::vector<DiscreteMeasure> out;
    for (auto& [idx, atoms] : groups) {
        DiscreteMeasure mu(n, std::move(atoms));
        if (!(mu.total_mass() > 0.0))
            throw IoError(path + ": measure " + std::to_string(idx) + " has zero mass");
        out.push_back(mu.normalized());
    }
    return out;
}

std::string cmd_classify(const Common& c, const ClassifyConfig& cc)
{
    if (cc.generator.empty() == cc.input.empty())
        throw InvalidArgument("give exactly one of --generator or --input");
    if (!(cc.eps > 0.0 && cc.eps < 0.5))
        throw InvalidArgument("--eps must lie in (0, 1/2)");
    if (cc.R_grid.empty() || !std::is_sorted(cc.R_grid.begin(), cc.R_grid.end()) || !(cc.R_grid.front() > 0.0))
        throw InvalidArgument("--R-grid must be positive and increasing");
    std::vector<DiscreteMeasure> seq;
    if (!cc.generator.empty()) {
        if (c.n != 1)
            throw InvalidArgument("generators produce n = 1 measures");
        if (!c.seed)
            throw InvalidArgument("--seed is required for generated sequences");
        if (cc.length < 3)
            throw InvalidArgument("--length must be at least 3");
        if (cc.generator == "spread")
            seq = generators::spread(cc.length, *c.seed);
        else if (cc.generator == "translate")
            seq = generators::translate(cc.length, *c.seed);
        else if (cc.generator == "split") {
            if (!(cc.k > 0.0 && cc.k < 1.0))
                throw InvalidArgument("--k must lie in (0, 1)");
            seq = generators::split(cc.length, *c.seed, cc.k);
        } else
            throw InvalidArgument("unknown generator '" + cc.generator + "' (spread, translate, split)");
    } else {
        if (c.n < 1)
            throw InvalidArgument("n must be positive");
        seq = read_measure_file(cc.input, c.n);
        if (seq.size() < 3)
            throw InvalidArgument("need at least 3 measures in the sequence");
    }
    const TrichotomyVerdict v = classify_trichotomy(seq, cc.eps, cc.R_grid);
    json doc = envelope("classify");
    doc["source"] = cc.generator.empty() ? json(cc.input) : json(cc.generator);
    doc["length"] = seq.size();
    doc["eps"] = cc.eps;
    doc["kind"] = to_string(v.kind);
    doc["tail_mass"] = v.tail_mass;
    json profile = json::array();
    for (std::size_t i = 0; i < v.R_grid.size(); ++i)
        profile.push_back({{"R", v.R_grid[i]}, {"Q", v.profile[i]}});
    doc["profile"] = std::move(profile);
    if (v.kind == TrichotomyKind::compactness) {
        json centers = json::array();
        for (const GroupPoint& u : v.centers)
            centers.push_back(point_json(u));
        doc["centers"] = std::move(centers);
    }
    if (v.kind == TrichotomyKind::dichotomy) {
        doc["k"] = v.k;
        doc["tracked_center"] = point_json(*v.tracked_center);
        doc["split_masses"] = {v.split->first.total_mass(), v.split->second.total_mass()};
    }
    return doc.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical toolkit for the Hardy-Littlewood-Sobolev inequality on the Heisenberg group"};
    app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--n", c.n, "Heisenberg dimension n (Q = 2n + 2)")->capture_default_str();
    app.add_option("--lambda", c.lambda, "Kernel exponent, 0 < lambda < Q")->capture_default_str();
    app.add_option("--p", c.p, "Exponent p of ||I f||_q / ||f||_p (default: diagonal)");
    app.add_option("--r", c.r, "Bilinear exponent r (with --s)");
    app.add_option("--s", c.s, "Bilinear exponent s (with --r)");
    app.add_option("--grid-rho", c.grid_rho, "Radial nodes")->capture_default_str();
    app.add_option("--grid-t", c.grid_t, "Vertical nodes")->capture_default_str();
    app.add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
    app.add_option("--seed", c.seed, "Seed for stochastic paths");
    app.add_option("--workers", c.workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", c.out, "Output file (default: stdout)");

    ConstantsConfig cc;
    auto* constants = app.add_subcommand("constants", "Sharp constants and bounds");
    constants->add_option("--N", cc.N, "Euclidean dimension for the Lieb constants")->capture_default_str();

    EvaluateConfig ec;
    auto* evaluate = app.add_subcommand("evaluate", "Energy, norms and quotient of a preset profile");
    evaluate->add_option("--preset", ec.preset, "H, ball, gaussian, zero or file")->capture_default_str();
    evaluate->add_option("--input", ec.input, "CSV grid file with rows rho,t,value");
    evaluate->add_option("--refine", ec.refine, "Extra grid-halving levels")->capture_default_str();
    evaluate->add_option("--format", ec.format, "json or csv")->capture_default_str();
    evaluate->add_flag("--mc", ec.mc, "Use Monte Carlo instead of quadrature");

    MaximizeConfig mc;
    auto* maximize_cmd = app.add_subcommand("maximize", "Search for a maximizer of the quotient");
    maximize_cmd->add_option("--init", mc.init, "gaussian, H or perturbed")->capture_default_str();
    maximize_cmd->add_option("--max-iter", mc.max_iter, "Iteration cap")->capture_default_str();
    maximize_cmd->add_option("--rtol", mc.rtol, "Relative improvement threshold over 10 iterations")
        ->capture_default_str();
    maximize_cmd->add_option("--trace", mc.trace, "CSV file for the convergence trace");

    ClassifyConfig kc;
    auto* classify = app.add_subcommand("classify", "Vanishing / compactness / dichotomy verdict");
    classify->add_option("--generator", kc.generator, "spread, translate or split");
    classify->add_option("--input", kc.input, "CSV measure file with rows index,x..,y..,t,mass");
    classify->add_option("--length", kc.length, "Sequence length")->capture_default_str();
    classify->add_option("--k", kc.k, "Mass of the lighter bump (split)")->capture_default_str();
    classify->add_option("--eps", kc.eps, "Verdict threshold")->capture_default_str();
    classify->add_option("--R-grid", kc.R_grid, "Probe radii")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (constants->parsed()) {
            emit(c, out, cmd_constants(c, cc));
        } else if (evaluate->parsed()) {
            emit(c, out, cmd_evaluate(c, ec));
        } else if (maximize_cmd->parsed()) {
            std::string trace;
            const std::string summary = cmd_maximize(c, mc, trace);
            if (!mc.trace.empty())
                write_file(mc.trace, trace);
            emit(c, out, summary);
        } else if (classify->parsed()) {
            emit(c, out, cmd_classify(c, kc));
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace hls::cli
