// Config-driven runner: cylid <command> --config run.json [--out dir] [--seed n] [--tol x]
// Exit codes: 0 pass, 1 property failure, 2 config error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cylid/conditions.hpp"
#include "cylid/cylindrical.hpp"
#include "cylid/definiteness.hpp"
#include "cylid/errors.hpp"
#include "cylid/extension.hpp"
#include "cylid/gallery.hpp"
#include "cylid/onedim.hpp"
#include "cylid/rng.hpp"
#include "cylid/serialize.hpp"

using namespace cylid;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

struct Outcome {
    bool pass = true;
    std::string file;
    std::string content;
    Json summary = Json::object();
};

Json load_config(const std::string& path) {
    if (path.empty()) throw ConfigError("--config is required");
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

std::string output_name(const Json& cfg, const std::string& fallback) {
    if (!cfg.contains("output")) return fallback;
    if (!cfg["output"].is_string() || cfg["output"].get<std::string>().empty()) throw ConfigError("output: expected a file name");
    return cfg["output"].get<std::string>();
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

CylindricalCharacteristics load_characteristics(const Json& cfg) {
    if (cfg.contains("characteristics")) return characteristics_from_json(cfg["characteristics"]);
    if (cfg.contains("gallery")) {
        if (!cfg["gallery"].is_string()) throw ConfigError("gallery: expected an entry name");
        try {
            return build_gallery_entry(cfg["gallery"].get<std::string>()).ch;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    throw ConfigError("config needs \"characteristics\" or \"gallery\"");
}

std::uint64_t run_seed(const Json& cfg, const Flags& flags) {
    if (flags.seed) return *flags.seed;
    if (cfg.contains("seed")) {
        if (!cfg["seed"].is_number_unsigned()) throw ConfigError("seed: expected an unsigned integer");
        return cfg["seed"].get<std::uint64_t>();
    }
    return 1;
}

std::vector<Vector> vector_list(const Json& j, int dim, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ConfigError(what + ": expected a non-empty array of vectors");
    std::vector<Vector> out;
    for (const Json& v : j) out.push_back(vector_from_json(v, dim));
    return out;
}

std::vector<Vector> functionals(const Json& cfg, int dim) {
    if (!cfg.contains("functionals")) throw ConfigError("functionals: required");
    return vector_list(cfg["functionals"], dim, "functionals");
}

std::vector<double> t_grid(const Json& cfg, double lo, double hi, int points) {
    if (cfg.contains("t_grid")) {
        const Json& g = cfg["t_grid"];
        if (g.is_array()) {
            std::vector<double> ts;
            for (const Json& t : g) {
                if (!t.is_number()) throw ConfigError("t_grid: expected numbers");
                ts.push_back(t.get<double>());
            }
            if (ts.empty()) throw ConfigError("t_grid: empty");
            return ts;
        }
        if (!g.is_object()) throw ConfigError("t_grid: expected an array or {from, to, points}");
        lo = g.value("from", lo);
        hi = g.value("to", hi);
        points = g.value("points", points);
    }
    if (points < 2 || !(lo < hi)) throw ConfigError("t_grid: need points >= 2 and from < to");
    std::vector<double> ts(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return ts;
}

std::vector<std::vector<Vector>> point_sets(const Json& cfg, int dim, std::uint64_t seed) {
    std::vector<std::vector<Vector>> sets;
    if (cfg.contains("point_sets")) {
        if (!cfg["point_sets"].is_array()) throw ConfigError("point_sets: expected an array of point lists");
        for (const Json& s : cfg["point_sets"]) sets.push_back(vector_list(s, dim, "point_sets"));
    }
    if (cfg.contains("random_point_sets")) {
        const Json& r = cfg["random_point_sets"];
        const int count = r.value("count", 10);
        const int size = r.value("size", 8);
        const double scale = r.value("scale", 0.5);
        if (count < 1 || size < 1 || size > kMaxPoints || !(scale > 0.0)) throw ConfigError("random_point_sets: invalid parameters");
        Engine eng = make_engine(seed, 1);
        std::normal_distribution<double> z(0.0, scale);
        for (int c = 0; c < count; ++c) {
            std::vector<Vector> pts;
            for (int i = 0; i < size; ++i) {
                Vector a(dim);
                for (int k = 0; k < dim; ++k) a(k) = z(eng);
                pts.push_back(std::move(a));
            }
            sets.push_back(std::move(pts));
        }
    }
    for (const auto& s : sets)
        if (static_cast<int>(s.size()) > kMaxPoints) throw ConfigError("point_sets: at most 64 points per set");
    if (sets.empty()) throw ConfigError("point_sets or random_point_sets: required");
    return sets;
}

std::vector<int> divisors(const Json& cfg) {
    std::vector<int> ds{1, 2, 3, 4};
    if (cfg.contains("divisors")) {
        ds.clear();
        if (!cfg["divisors"].is_array()) throw ConfigError("divisors: expected an array");
        for (const Json& d : cfg["divisors"]) {
            if (!d.is_number_integer() || d.get<int>() < 1) throw ConfigError("divisors: expected integers >= 1");
            ds.push_back(d.get<int>());
        }
    }
    return ds;
}

std::vector<FunctionalSequence> sequences(const Json& cfg, int dim) {
    if (!cfg.contains("sequences") || !cfg["sequences"].is_array() || cfg["sequences"].empty())
        throw ConfigError("sequences: expected a non-empty array");
    std::vector<FunctionalSequence> out;
    for (const Json& s : cfg["sequences"]) {
        if (!s.is_object() || !s.contains("limit")) throw ConfigError("sequences: each entry needs a limit");
        FunctionalSequence seq;
        seq.limit = vector_from_json(s["limit"], dim);
        if (s.contains("terms")) {
            seq.terms = vector_list(s["terms"], dim, "sequences.terms");
        } else {
            if (!s.contains("direction")) throw ConfigError("sequences: need terms or a direction");
            const Vector v = vector_from_json(s["direction"], dim);
            const int count = s.value("count", 64);
            const std::string schedule = s.value("schedule", std::string("harmonic"));
            if (count < 1) throw ConfigError("sequences.count: must be >= 1");
            for (int n = 1; n <= count; ++n) {
                if (schedule == "harmonic") seq.terms.push_back(seq.limit + v / static_cast<double>(n));
                else if (schedule == "geometric") seq.terms.push_back(seq.limit + std::ldexp(1.0, -n) * v);
                else throw ConfigError("sequences.schedule: harmonic | geometric");
            }
        }
        out.push_back(std::move(seq));
    }
    return out;
}

// ---------------------------------------------------------------------------

Outcome cmd_cf(const Json& cfg, const Flags&) {
    const CylindricalCharacteristics ch = load_characteristics(cfg);
    const int dim = ch.space.dim();
    const std::vector<double> ts = t_grid(cfg, -3.0, 3.0, 13);
    std::ostringstream csv;
    csv << "kind,index,t,re,im,abs\n";
    bool ok = true;
    double max_abs = 0.0;
    const auto row = [&](const char* kind, std::size_t idx, const std::string& t, Complex v) {
        csv << kind << ',' << idx << ',' << t << ',' << num(v.real()) << ',' << num(v.imag()) << ',' << num(std::abs(v)) << '\n';
        ok = ok && std::isfinite(std::abs(v)) && std::abs(v) <= 1.0 + 1e-9;
        max_abs = std::max(max_abs, std::abs(v));
    };
    if (cfg.contains("functionals")) {
        const std::vector<Vector> as = functionals(cfg, dim);
        for (std::size_t i = 0; i < as.size(); ++i)
            for (double t : ts) row("cf", i, num(t), cf_cyl(ch, t * as[i]));
    }
    double identity_gap = 0.0;
    if (cfg.contains("tuples")) {
        if (!cfg["tuples"].is_array()) throw ConfigError("tuples: expected an array");
        std::size_t idx = 0;
        for (const Json& tup : cfg["tuples"]) {
            if (!tup.is_object() || !tup.contains("functionals") || !tup.contains("t")) throw ConfigError("tuples: need functionals and t");
            const std::vector<Vector> as = vector_list(tup["functionals"], dim, "tuples.functionals");
            const std::vector<Vector> tvs = vector_list(tup["t"], static_cast<int>(as.size()), "tuples.t");
            for (const Vector& t : tvs) {
                const Complex v = cf_projection(ch, as, t);
                Vector sum = Vector::Zero(dim);
                for (std::size_t k = 0; k < as.size(); ++k) sum += t(static_cast<Eigen::Index>(k)) * as[k];
                identity_gap = std::max(identity_gap, std::abs(v - cf_cyl(ch, sum)));
                std::string tstr;
                for (Eigen::Index k = 0; k < t.size(); ++k) tstr += (k ? ";" : "") + num(t(k));
                row("projection", idx, tstr, v);
            }
            ++idx;
        }
    }
    if (!cfg.contains("functionals") && !cfg.contains("tuples")) throw ConfigError("cf: need functionals or tuples");
    ok = ok && identity_gap == 0.0;
    Outcome o{ok, output_name(cfg, "cf.csv"), csv.str()};
    o.summary = {{"max_abs", max_abs}, {"projection_identity_gap", identity_gap}};
    return o;
}

Outcome cmd_check(const Json& cfg, const Flags& flags) {
    const CylindricalCharacteristics ch = load_characteristics(cfg);
    const int dim = ch.space.dim();
    ConditionsGrid grid;
    grid.point_sets = point_sets(cfg, dim, run_seed(cfg, flags));
    if (cfg.contains("sequences")) grid.sequences = sequences(cfg, dim);
    grid.divisors = divisors(cfg);
    if (flags.tol) grid.eigen_tol = *flags.tol;
    if (cfg.contains("continuity_tol")) grid.continuity_tol = cfg["continuity_tol"].get<double>();
    const ConditionsReport rep = id_conditions_report(ch, grid);
    Outcome o{rep.all_pass(), output_name(cfg, "check.json"), to_json(rep).dump(2) + "\n"};
    Json rows = Json::array();
    for (const auto& c : rep.conditions) rows.push_back({{"condition", c.index}, {"pass", c.pass}});
    o.summary = {{"conditions", rows}};
    return o;
}

Outcome cmd_definiteness(const Json& cfg, const Flags& flags) {
    const CylindricalCharacteristics ch = load_characteristics(cfg);
    const int dim = ch.space.dim();
    const auto sets = point_sets(cfg, dim, run_seed(cfg, flags));
    const std::vector<int> ds = divisors(cfg);
    const double tol = flags.tol.value_or(kDefaultEigenTolerance);
    const std::string kernel = cfg.value("kernel", std::string("kappa"));
    Json out = Json::array();
    bool ok = true;
    for (const auto& set : sets) {
        Json entry = Json::object();
        if (kernel == "kappa") {
            const FunctionalKernel k = [&](const Vector& a) { return kappa(ch, a); };
            if (set.size() >= 2) {
                const DefinitenessReport nd = negative_definite_check(k, set, tol);
                ok = ok && nd.passed();
                entry["negative_definite"] = to_json(nd);
            }
            Json sch = Json::array();
            for (const auto& r : schoenberg_check(k, set, ds, tol)) {
                ok = ok && r.passed();
                sch.push_back(to_json(r));
            }
            entry["schoenberg"] = sch;
        } else if (kernel == "cf") {
            const DefinitenessReport r = positive_definite_check([&](const Vector& a) { return cf_cyl(ch, a); }, set, tol);
            ok = ok && r.passed();
            entry["positive_definite"] = to_json(r);
        } else {
            throw ConfigError("kernel: kappa | cf");
        }
        out.push_back(entry);
    }
    Outcome o{ok, output_name(cfg, "definiteness.json"), Json{{"kernel", kernel}, {"pass", ok}, {"point_sets", out}}.dump(2) + "\n"};
    o.summary = {{"point_sets", sets.size()}};
    return o;
}

Outcome cmd_project(const Json& cfg, const Flags& flags) {
    const CylindricalCharacteristics ch = load_characteristics(cfg);
    const std::vector<Vector> as = functionals(cfg, ch.space.dim());
    const std::vector<double> ts = t_grid(cfg, -4.0, 4.0, 41);
    const double tol = flags.tol.value_or(1e-10);
    Json rows = Json::array();
    double worst = 0.0;
    for (const Vector& a : as) {
        const IdCharacteristics1D one = project_1d(ch, a);
        double residual = 0.0;
        for (double t : ts) residual = std::max(residual, std::abs(cf_1d(one, t) - cf_cyl(ch, t * a)));
        worst = std::max(worst, residual);
        rows.push_back({{"functional", to_json(a)}, {"characteristics", to_json(one)}, {"residual", residual}});
    }
    const bool ok = worst <= tol;
    Outcome o{ok, output_name(cfg, "project.json"), Json{{"tolerance", tol}, {"pass", ok}, {"projections", rows}}.dump(2) + "\n"};
    o.summary = {{"max_residual", worst}};
    return o;
}

double normal_cdf(double x, double mean, double sd) { return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0))); }

double poisson_cdf(long k, double rate) {
    if (k < 0) return 0.0;
    double term = std::exp(-rate);
    double sum = term;
    for (long j = 1; j <= k; ++j) {
        term *= rate / static_cast<double>(j);
        sum += term;
    }
    return std::min(1.0, sum);
}

Outcome cmd_sample(const Json& cfg, const Flags& flags) {
    const CylindricalCharacteristics ch = load_characteristics(cfg);
    if (!cfg.contains("sample") || !cfg["sample"].is_object()) throw ConfigError("sample: required object");
    const Json& s = cfg["sample"];
    if (!s.contains("functional")) throw ConfigError("sample.functional: required");
    const Vector a = vector_from_json(s["functional"], ch.space.dim());
    const std::size_t n = s.value("n", std::size_t{100000});
    const double cutoff = s.value("cutoff", 0.0);
    if (n < 2) throw ConfigError("sample.n: must be >= 2");
    const std::uint64_t seed = run_seed(cfg, flags);
    const std::vector<double> ts = t_grid(cfg, -2.0, 2.0, 21);

    const IdCharacteristics1D one = project_1d(ch, a);
    const IdCharacteristics1D target = cutoff > 0.0 ? truncate_small_jumps(one, cutoff) : one;
    const std::vector<double> xs = sample_1d(one, n, seed, cutoff);
    const double bound = flags.tol.value_or(3.0 / std::sqrt(static_cast<double>(n)));

    std::ostringstream csv;
    csv << "t,empirical_re,empirical_im,analytic_re,analytic_im,deviation,bound\n";
    double worst = 0.0;
    for (double t : ts) {
        const Complex e = empirical_cf(xs, t);
        const Complex c = cf_1d(target, t);
        const double dev = std::abs(e - c);
        worst = std::max(worst, dev);
        csv << num(t) << ',' << num(e.real()) << ',' << num(e.imag()) << ',' << num(c.real()) << ',' << num(c.imag()) << ',' << num(dev)
            << ',' << num(bound) << '\n';
    }
    bool ok = worst <= bound;
    Json summary{{"n", n}, {"seed", seed}, {"max_cf_deviation", worst}, {"cf_bound", bound}};

    // closed-form oracles: pure Gaussian, or a single jump size without Gaussian part
    const LevyMeasureR& eta = target.eta;
    std::optional<double> ks;
    std::string oracle = "none";
    if (eta.is_zero() && target.r > 0.0) {
        ks = ks_statistic_continuous(xs, [&](double x) { return normal_cdf(x, target.m, target.r); });
        oracle = "normal";
    } else if (target.r == 0.0 && eta.densities().empty() && eta.atoms().size() == 1) {
        const Atom atom = eta.atoms()[0];
        const double offset = target.m - atom.weight * target.h(atom.location);
        ks = ks_statistic_lattice(xs, offset, atom.location, [&](long k) { return poisson_cdf(k, atom.weight); });
        oracle = "poisson";
    }
    summary["oracle"] = oracle;
    if (ks) {
        const double crit = ks_critical_1pct(n);
        summary["ks"] = *ks;
        summary["ks_critical_1pct"] = crit;
        ok = ok && *ks < crit;
    }
    Outcome o{ok, output_name(cfg, "sample.csv"), csv.str()};
    o.summary = summary;
    return o;
}

Outcome cmd_dnu(const Json& cfg, const Flags&) {
    if (!cfg.contains("measure")) throw ConfigError("measure: required");
    int dim = 0;
    NormKind norm = NormKind::l2;
    if (cfg.contains("space")) {
        dim = cfg["space"].value("dim", 0);
        try {
            norm = norm_from_name(cfg["space"].value("norm", std::string("l2")));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("space.norm: ") + e.what());
        }
    }
    if (dim < 1) throw ConfigError("space.dim: required integer >= 1");
    const FunctionalSpace space(dim, norm);
    const MeasureOnU nu = measure_on_u_from_json(cfg["measure"], dim);
    TruncationFunction h = TruncationFunction::ramp();
    if (cfg.contains("truncation")) {
        try {
            h = TruncationFunction::by_name(cfg["truncation"].get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("truncation: ") + e.what());
        }
    }
    const std::vector<Vector> as = functionals(cfg, dim);
    std::ostringstream csv;
    csv << "index,value,std_error,outside_ball_mass";
    for (int k = 0; k < 3; ++k) csv << ",piece" << k << "_abs,piece" << k << "_bound,piece" << k << "_ok";
    csv << '\n';
    bool ok = true;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const DnuResult r = d_nu(nu, as[i], h, space);
        ok = ok && r.bounds_hold;
        csv << i << ',' << num(r.value) << ',' << num(r.std_error) << ',' << num(r.outside_ball_mass);
        for (const DnuPiece& p : r.pieces) csv << ',' << num(p.abs_integral) << ',' << num(p.bound) << ',' << (p.within_bound ? 1 : 0);
        csv << '\n';
    }
    Outcome o{ok, output_name(cfg, "dnu.csv"), csv.str()};
    o.summary = {{"functionals", as.size()}, {"radon_extendability", "untested"}};
    return o;
}

Outcome cmd_continuity(const Json& cfg, const Flags& flags) {
    const CylindricalCharacteristics ch = load_characteristics(cfg);
    const std::vector<FunctionalSequence> seqs = sequences(cfg, ch.space.dim());
    ContinuityOptions opts;
    if (flags.tol) opts.threshold = *flags.tol;
    if (cfg.contains("threshold")) opts.threshold = cfg["threshold"].get<double>();
    std::ostringstream csv;
    csv << "sequence,n,drift_gap,quadratic_gap,combined_distance,levy_distance\n";
    bool ok = true;
    Json verdicts = Json::array();
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        const ContinuityReport rep = continuity_report(ch, seqs[i].terms, seqs[i].limit, opts);
        for (const ContinuityRow& r : rep.rows)
            csv << i << ',' << r.n << ',' << num(r.drift_gap) << ',' << num(r.quadratic_gap) << ',' << num(r.combined_distance) << ','
                << num(r.levy_distance) << '\n';
        ok = ok && rep.continuity_pass && rep.regular_continuity_pass;
        verdicts.push_back(to_json(rep));
    }
    Outcome o{ok, output_name(cfg, "continuity.csv"), csv.str()};
    o.summary = {{"sequences", verdicts}};
    return o;
}

Outcome cmd_gallery(const std::vector<std::string>& args, const Flags&) {
    if (args.empty()) throw ConfigError("gallery: expected list | build <name>");
    if (args[0] == "list") {
        if (args.size() != 1) throw ConfigError("gallery list: no arguments expected");
        Json names = gallery_names();
        Outcome o{true, "", ""};
        o.summary = {{"entries", names}};
        return o;
    }
    if (args[0] == "build") {
        if (args.size() != 2) throw ConfigError("gallery build: expected one entry name");
        const auto names = gallery_names();
        if (std::find(names.begin(), names.end(), args[1]) == names.end()) throw ConfigError("gallery: unknown entry " + args[1]);
        const GalleryEntry e = build_gallery_entry(args[1]);
        Json expected = Json::array();
        for (const auto& p : e.expected) expected.push_back({{"property", p.name}, {"should_pass", p.should_pass}});
        Json doc{{"name", e.name}, {"description", e.description}, {"expected", expected}, {"characteristics", to_json(e.ch)}};
        Outcome o{true, args[1] + ".json", doc.dump(2) + "\n"};
        o.summary = {{"entry", e.name}};
        return o;
    }
    throw ConfigError("gallery: expected list | build <name>");
}

void write_output(const Flags& flags, const Outcome& o) {
    if (o.file.empty()) return;
    const fs::path dir(flags.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = dir / o.file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << o.content;
}

void report_error(const std::string& kind, const std::string& message) {
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristics of infinitely divisible cylindrical measures"};
    app.require_subcommand(1);
    Flags flags;
    std::uint64_t seed = 0;
    double tol = 0.0;
    auto* seed_opt = app.add_option("--seed", seed, "seed for sampling and random point sets");
    auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
    app.add_option("--config", flags.config, "run configuration (JSON)");
    app.add_option("--out", flags.out, "output directory");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"cf", "tabulate characteristic functions"},
        {"check", "conditions of the characterization theorem"},
        {"definiteness", "negative/positive-definiteness of kappa or the CF"},
        {"project", "one-dimensional projections and their cross-check"},
        {"sample", "sample a projection and compare with its CF"},
        {"dnu", "d_nu table with piecewise bounds"},
        {"continuity", "continuity report along sequences"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
    std::vector<std::string> gallery_args;
    auto* gallery = app.add_subcommand("gallery", "list | build <name>")->fallthrough();
    gallery->add_option("args", gallery_args, "list | build <name>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kExitConfig;
    }
    if (*seed_opt) flags.seed = seed;
    if (*tol_opt) {
        if (!(tol > 0.0)) {
            report_error("config", "--tol must be positive");
            return kExitConfig;
        }
        flags.tol = tol;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Outcome o;
        if (command == "gallery") {
            o = cmd_gallery(gallery_args, flags);
        } else {
            const Json cfg = load_config(flags.config);
            if (!cfg.is_object()) throw ConfigError("config: expected a JSON object");
            if (command == "cf") o = cmd_cf(cfg, flags);
            else if (command == "check") o = cmd_check(cfg, flags);
            else if (command == "definiteness") o = cmd_definiteness(cfg, flags);
            else if (command == "project") o = cmd_project(cfg, flags);
            else if (command == "sample") o = cmd_sample(cfg, flags);
            else if (command == "dnu") o = cmd_dnu(cfg, flags);
            else o = cmd_continuity(cfg, flags);
        }
        write_output(flags, o);
        Json summary{{"command", command}, {"pass", o.pass}};
        if (!o.file.empty()) summary["output"] = (fs::path(flags.out) / o.file).string();
        summary.update(o.summary);
        std::cout << summary.dump() << std::endl;
        return o.pass ? kExitPass : kExitFail;
    } catch (const ConfigError& e) {
        report_error("config", e.what());
        return kExitConfig;
    } catch (const Json::exception& e) {
        report_error("config", e.what());
        return kExitConfig;
    } catch (const HypothesisError& e) {
        report_error("hypothesis", e.what());
        return kExitFail;
    } catch (const std::exception& e) {
        report_error("runtime", e.what());
        return kExitFail;
    }
}
