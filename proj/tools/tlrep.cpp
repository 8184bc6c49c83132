// tlrep: command-line front end. JSON goes to stdout (or --out), a short
// summary goes to stderr. Exit codes: 0 ok, 1 failed verification or error,
// 2 bad flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tlrep/json_io.hpp"
#include "tlrep/tlrep.hpp"

using namespace tlrep;

namespace {

struct Common {
    std::string out;
    double tol = 1e-9;
};

struct EntryArgs {
    std::string id;
    std::vector<std::string> params;
    std::string q, zeta, spin;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "write the JSON report to this file instead of stdout");
    sub->add_option("--tol", c.tol, "absolute residual tolerance")
        ->envname("TLREP_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_entry_args(CLI::App* sub, EntryArgs& e, bool required) {
    auto* opt = sub->add_option("--catalog", e.id, "catalog id (see `tlrep catalog list`)");
    if (required) opt->required();
    sub->add_option("--param", e.params, "catalog parameter key=value (repeatable)");
    sub->add_option("--q", e.q, "shorthand for --param q=...");
    sub->add_option("--zeta", e.zeta, "shorthand for --param zeta=...");
    sub->add_option("--spin", e.spin, "shorthand for --param S=...");
}

CatalogEntry build_from(const EntryArgs& e) {
    std::map<std::string, std::string> p;
    for (const std::string& kv : e.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
        p[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (!e.q.empty()) p["q"] = e.q;
    if (!e.zeta.empty()) p["zeta"] = e.zeta;
    if (!e.spin.empty()) p["S"] = e.spin;
    return build_entry(e.id, p);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

json meta(const std::string& command, const Common& c) {
    return {{"tool", "tlrep"}, {"version", tlrep::version}, {"command", command}, {"tol", c.tol}};
}

void emit(json payload, const std::string& command, const Common& c) {
    payload["meta"] = meta(command, c);
    const std::string text = payload.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << text;
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(10);
    s << x;
    return s.str();
}

std::string label_text(const SpinLabel& l) {
    auto half = [](int twice) { return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2"; };
    return "|" + half(l.j2) + "," + half(l.m2) + ">";
}

// ---- commands ----

int cmd_verify(const EntryArgs& ea, const std::string& input, const Common& c) {
    if (ea.id.empty() == input.empty()) throw std::invalid_argument("verify needs exactly one of --catalog or --input");
    const Tolerance tol(c.tol);
    json out;
    CMatrix t(1, 1);
    std::size_t n = 0;
    std::optional<CoeffSet> cs;
    if (!ea.id.empty()) {
        const CatalogEntry e = build_from(ea);
        out["entry"] = to_json(e);
        t = e.t;
        n = e.n;
        cs = e.cs;
    } else {
        const json j = read_json_file(input);
        if (j.contains("t")) {
            t = matrix_from_json(j.at("t"));
            n = j.at("n").get<std::size_t>();
        } else {
            cs = coeffset_from_json(j, tol);
            n = cs->n();
            t = build_projection(*cs) * complex(detail::forced_q(*cs));
        }
        out["input"] = input;
    }
    const TLVerdict v = check_axioms(t, n, tol);
    out["verdict"] = to_json(v);
    if (cs && v.pass) out["bounds"] = to_json(bound_suite(*cs, v, tol));
    emit(out, "verify", c);
    std::cerr << "verify: " << (v.pass ? "PASS" : "FAIL") << " (" << to_string(v.kind) << "), n=" << n
              << " rank=" << v.rank << " Q=" << fmt(v.q_value) << "\n";
    return v.pass ? 0 : 1;
}

int cmd_catalog_list(const Common& c) {
    json list = json::array();
    for (const CatalogInfo& info : catalog_list()) {
        list.push_back({{"id", info.id}, {"description", info.description}, {"defaults", info.defaults}});
        std::cerr << "  " << info.id << "  " << info.description << "\n";
    }
    emit({{"entries", list}}, "catalog list", c);
    return 0;
}

int cmd_catalog_build(const EntryArgs& ea, const Common& c) {
    const CatalogEntry e = build_from(ea);
    const TLVerdict v = check_axioms(e.t, e.n, Tolerance(c.tol));
    emit({{"entry", to_json(e)}, {"verdict", to_json(v)}}, "catalog build", c);
    std::cerr << "catalog build " << e.id << ": n=" << e.n << " Q=" << fmt(e.expected_q) << " "
              << (v.pass ? "PASS" : "FAIL") << "\n";
    return v.pass ? 0 : 1;
}

struct LabelScanArgs {
    std::string spin = "1/2";
    std::string q = "1";
    bool sweep = false;
    double q_lo = 0.25, q_hi = 4.0;
    std::size_t grid = 400, jobs = 1;
};

int cmd_label_scan(const LabelScanArgs& a, bool pairs, const Common& c) {
    const int s2 = parse_doubled(a.spin);
    const complex qz = parse_scalar(a.q);
    if (qz.imag() != 0.0) throw std::invalid_argument("--q must be real");
    VectorScanOptions opt;
    opt.zero_tol = c.tol;
    opt.mode = a.sweep ? ScanMode::sweep : ScanMode::point;
    opt.sweep.q_lo = a.q_lo;
    opt.sweep.q_hi = a.q_hi;
    opt.sweep.grid = a.grid;
    opt.sweep.zero_tol = c.tol;
    opt.sweep.jobs = a.jobs;
    const QContext ctx(qz.real());
    const auto hits = pairs ? scan_pairs(s2, ctx, opt) : scan_vectors(s2, ctx, opt);
    json list = json::array();
    for (const TLScanHit& h : hits) list.push_back(to_json(h));
    const std::string name = pairs ? "scan-pairs" : "scan-vectors";
    json out = {{"two_s", s2}, {"mode", a.sweep ? "sweep" : "point"}, {"hits", list}};
    out["q"] = a.sweep ? json(nullptr) : real_to_json(ctx.q);
    emit(out, name, c);
    std::cerr << name << ": S=" << a.spin << ", " << hits.size() << " hit(s)\n";
    for (const TLScanHit& h : hits) {
        std::cerr << "  ";
        for (const SpinLabel& l : h.labels) std::cerr << label_text(l) << " ";
        std::cerr << to_string(h.mode);
        if (!h.q_values.empty()) std::cerr << " Q=" << fmt(h.q_values.front());
        std::cerr << "\n";
    }
    return 0;
}

struct SubsetArgs {
    std::string basis;
    std::optional<std::size_t> max_rank;
    bool high_ranks = false;
    std::size_t jobs = 1;
};

int cmd_scan_subsets(const SubsetArgs& a, const Common& c) {
    ScanConfig cfg;
    if (a.basis.rfind("cg:", 0) == 0) {
        const std::string rest = a.basis.substr(3);
        const auto comma = rest.find(',');
        const int s2 = parse_doubled(rest.substr(0, comma));
        double q = 1.0;
        if (comma != std::string::npos) {
            const complex z = parse_scalar(rest.substr(comma + 1));
            if (z.imag() != 0.0) throw std::invalid_argument("cg basis: q must be real");
            q = z.real();
        }
        cfg.basis = cg_basis(s2, q);
        cfg.n = static_cast<std::size_t>(s2) + 1;
    } else {
        const json j = read_json_file(a.basis);
        cfg.n = j.at("n").get<std::size_t>();
        for (const json& m : j.at("basis")) cfg.basis.push_back(matrix_from_json(m));
    }
    cfg.max_rank = a.max_rank;
    cfg.include_high_ranks = a.high_ranks;
    cfg.tol = Tolerance(c.tol);
    cfg.parallelism = a.jobs;
    const auto hits = scan(cfg);
    json list = json::array();
    for (const SubsetHit& h : hits) list.push_back(to_json(h));
    const ScanReport rep = scan_report(hits, cfg.basis, cfg.n, cfg.tol);
    emit({{"basis", a.basis}, {"n", cfg.n}, {"ranks", scan_ranks(cfg)}, {"hits", list}, {"report", to_json(rep)}},
         "scan-subsets", c);
    std::cerr << "scan-subsets: " << hits.size() << " hit(s) over " << cfg.basis.size() << " basis vectors\n";
    for (const ScanGroup& g : rep.groups) {
        std::cerr << "  rank " << g.rank << " Q=" << fmt(g.q_value) << " x" << g.members.size() << "\n";
    }
    return 0;
}

struct JwArgs {
    std::size_t n = 0, r = 0, n_max = 10, legs = 0;
    std::optional<double> q_cap;
};

int cmd_jw(const JwArgs& a, const EntryArgs& ea, const Common& c) {
    std::size_t n = a.n, r = a.r;
    std::optional<double> q_cap = a.q_cap;
    json out;
    std::optional<CatalogEntry> e;
    if (!ea.id.empty()) {
        e = build_from(ea);
        if (!e->cs) throw std::invalid_argument("jw: catalog entry has no coefficient set");
        n = e->n;
        r = e->cs->rank();
        q_cap = e->expected_q;
        out["entry_id"] = e->id;
    }
    if (n == 0 || r == 0) throw std::invalid_argument("jw needs --n and --r (or --catalog)");
    const JWReport rep = jw_report(n, r, q_cap, a.n_max);
    out["report"] = to_json(rep);
    bool ok = true;
    if (e && a.legs >= 2) {
        json proj = json::array();
        for (std::size_t big_n = 2; big_n <= a.legs; ++big_n) {
            json row = {{"N", big_n}, {"d", real_to_json(d_sequence(n, r, big_n)[big_n])}};
            try {
                const CMatrix p = jw_matrix(e->t, n, big_n);
                row["trace"] = real_to_json(trace(p).real());
                const double res = jw_annihilation_residual(e->t, n, big_n);
                row["annihilation_residual"] = real_to_json(res);
                ok = ok && res <= c.tol * std::max(1.0, fro_norm(p));
            } catch (const UndefinedProjectorError& err) {
                row["undefined"] = err.what();
                proj.push_back(row);
                break;
            }
            proj.push_back(row);
        }
        out["projectors"] = proj;
    }
    emit(out, "jw", c);
    std::cerr << "jw: n=" << n << " r=" << r << " allowed " << to_string(rep.allowed.kind);
    if (!rep.allowed.values.empty()) {
        std::cerr << " {";
        for (std::size_t k = 0; k < rep.allowed.values.size(); ++k)
            std::cerr << (k ? ", " : "") << fmt(rep.allowed.values[k]);
        std::cerr << "}";
    }
    std::cerr << "\n";
    return ok ? 0 : 1;
}

int cmd_ybe(const EntryArgs& ea, const std::vector<std::string>& us, const std::vector<std::string>& vs,
            const Common& c) {
    const CatalogEntry e = build_from(ea);
    const RFamily fam = make_family(e.t, e.n, Tolerance(c.tol));
    YBEReport rep;
    if (us.empty() && vs.empty()) {
        rep = ybe_residual(fam);
    } else {
        std::vector<complex> gu, gv;
        for (const auto& s : us) gu.push_back(parse_scalar(s));
        for (const auto& s : vs) gv.push_back(parse_scalar(s));
        if (gu.empty()) gu = gv;
        if (gv.empty()) gv = gu;
        rep = ybe_residual(fam, gu, gv);
    }
    const bool ok = rep.max_residual <= c.tol;
    json out = {{"entry_id", e.id}, {"q_cap", real_to_json(fam.q_cap)}, {"q_root", complex_to_json(fam.q_root)},
                {"ybe", to_json(rep)}, {"pass", ok}};
    emit(out, "ybe", c);
    std::cerr << "ybe " << e.id << ": " << (rep.additive ? "additive" : "multiplicative")
              << " branch, max residual " << fmt(rep.max_residual) << " " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_bounds(const EntryArgs& ea, const Common& c) {
    const CatalogEntry e = build_from(ea);
    if (!e.cs) throw std::invalid_argument("bounds: catalog entry has no coefficient set");
    const Tolerance tol(c.tol);
    const TLVerdict v = check_axioms(e.t, e.n, tol);
    const BoundReport b = bound_suite(*e.cs, v, tol);
    const bool ok = v.pass && b.nr_satisfied && b.quartic_satisfied;
    emit({{"entry_id", e.id}, {"verdict", to_json(v)}, {"bounds", to_json(b)}, {"pass", ok}}, "bounds", c);
    std::cerr << "bounds " << e.id << ": Q=" << fmt(b.q_value) << " >= n/r=" << fmt(b.bound_nr)
              << ", Q^4 >= " << fmt(b.bound_quartic) << " " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temperley-Lieb tensor-space representations: verification, catalog, scans"};
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags (flags win)");
    app.set_version_flag("--version", tlrep::version);
    app.require_subcommand(1);

    Common common;
    EntryArgs entry;

    auto* verify = app.add_subcommand("verify", "check the TL axioms for a catalog entry or a JSON input");
    std::string input;
    add_common(verify, common);
    add_entry_args(verify, entry, false);
    verify->add_option("--input", input, "JSON file with {n, t} or a coefficient set {n, vs}")->check(CLI::ExistingFile);

    auto* catalog = app.add_subcommand("catalog", "list or build catalog entries");
    catalog->require_subcommand(1);
    auto* cat_list = catalog->add_subcommand("list", "list catalog ids");
    add_common(cat_list, common);
    auto* cat_build = catalog->add_subcommand("build", "build one entry");
    add_common(cat_build, common);
    cat_build->add_option("id", entry.id, "catalog id")->required();
    cat_build->add_option("--param", entry.params, "parameter key=value (repeatable)");

    LabelScanArgs label_args;
    auto label_scan = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, common);
        sub->add_option("--spin", label_args.spin, "spin S, e.g. 1 or 3/2")->capture_default_str();
        sub->add_option("--q", label_args.q, "deformation parameter (point mode)")->capture_default_str();
        sub->add_flag("--sweep", label_args.sweep, "scan q over [q-lo, q-hi] for roots and all-q hits");
        sub->add_option("--q-lo", label_args.q_lo)->capture_default_str();
        sub->add_option("--q-hi", label_args.q_hi)->capture_default_str();
        sub->add_option("--grid", label_args.grid, "sweep grid points")->capture_default_str();
        sub->add_option("--jobs", label_args.jobs)->check(CLI::PositiveNumber)->capture_default_str();
        return sub;
    };
    auto* scan_vec = label_scan("scan-vectors", "find CG vectors |J,m>_q that give TL representations");
    auto* scan_pair = label_scan("scan-pairs", "find CG pairs that give TL representations");

    SubsetArgs subset_args;
    auto* scan_sub = app.add_subcommand("scan-subsets", "search subsets of an orthonormal basis");
    add_common(scan_sub, common);
    scan_sub->add_option("--basis", subset_args.basis, "cg:S[,q] or a JSON file {n, basis: [matrix, ...]}")
        ->required();
    scan_sub->add_option("--max-rank", subset_args.max_rank, "largest rank (default floor(n^2/4))");
    scan_sub->add_flag("--high-ranks", subset_args.high_ranks, "also scan ranks with a nonempty allowed-Q set");
    scan_sub->add_option("--jobs", subset_args.jobs)->check(CLI::PositiveNumber)->capture_default_str();

    JwArgs jw_args;
    auto* jw = app.add_subcommand("jw", "Jones-Wenzl traces, rho sequence and allowed Q");
    add_common(jw, common);
    jw->add_option("--n", jw_args.n, "local dimension");
    jw->add_option("--r", jw_args.r, "rank");
    jw->add_option("--Q", jw_args.q_cap, "loop value for the rho sequence");
    jw->add_option("--nmax", jw_args.n_max, "length of the d and rho sequences")->capture_default_str();
    add_entry_args(jw, entry, false);
    jw->add_option("--legs", jw_args.legs, "with --catalog, build projectors up to this many legs");

    std::vector<std::string> us, vs;
    auto* ybe = app.add_subcommand("ybe", "Yang-Baxter residual of the R-matrix family");
    add_common(ybe, common);
    add_entry_args(ybe, entry, true);
    ybe->add_option("--u", us, "spectral parameters u (default grid if omitted)");
    ybe->add_option("--v", vs, "spectral parameters v (defaults to the u list)");

    auto* bounds = app.add_subcommand("bounds", "Q lower bounds for a catalog entry");
    add_common(bounds, common);
    add_entry_args(bounds, entry, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* deepest = &app;
        for (bool found = true; found;) {
            found = false;
            for (const CLI::App* s : deepest->get_subcommands()) {
                deepest = s;
                found = true;
                break;
            }
        }
        std::cerr << deepest->help();
        return 2;
    }

    std::string command = "tlrep";
    try {
        if (*verify) {
            command = "verify";
            return cmd_verify(entry, input, common);
        }
        if (*cat_list) {
            command = "catalog list";
            return cmd_catalog_list(common);
        }
        if (*cat_build) {
            command = "catalog build";
            return cmd_catalog_build(entry, common);
        }
        if (*scan_vec) {
            command = "scan-vectors";
            return cmd_label_scan(label_args, false, common);
        }
        if (*scan_pair) {
            command = "scan-pairs";
            return cmd_label_scan(label_args, true, common);
        }
        if (*scan_sub) {
            command = "scan-subsets";
            return cmd_scan_subsets(subset_args, common);
        }
        if (*jw) {
            command = "jw";
            return cmd_jw(jw_args, entry, common);
        }
        if (*ybe) {
            command = "ybe";
            return cmd_ybe(entry, us, vs, common);
        }
        if (*bounds) {
            command = "bounds";
            return cmd_bounds(entry, common);
        }
    } catch (const std::exception& e) {
        std::cerr << command << ": error: " << e.what() << "\n";
        try {
            emit({{"error", e.what()}}, command, common);
        } catch (const std::exception&) {
        }
        return 1;
    }
    return 2;
}
