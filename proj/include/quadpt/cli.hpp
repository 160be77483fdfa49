#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes the payload to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "quadpt/germ.hpp"
#include "quadpt/kazarian.hpp"
#include "quadpt/render.hpp"
#include "quadpt/secant.hpp"
#include "quadpt/thom.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace quadpt::cli {

enum Exit : int { ok = 0, verification_failed = 1, usage = 2 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string format;  // empty: per-command default
    int max_degree = -1;
    std::vector<std::string> series_files;
    bool seed_free = false;

    std::string multi = "A0^4";
    std::string sing;
    std::string side = "target";
    std::optional<int> ell;
    int triangle = -1;

    std::string suite;
    std::string germ = "A1";
    int r = 4;
    int root_budget = -1;

    int k = 0, n = 0;
    std::vector<std::string> exprs;

    int a = 1;
    std::string chi_file;
    bool lehn = false;
    bool experimental = false;
};

inline std::string format_or(const Options& o, const std::string& fallback) {
    return o.format.empty() ? fallback : o.format;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline std::vector<ThomSeries> load_series(const Options& o) {
    std::vector<ThomSeries> out;
    for (const auto& f : o.series_files) out.push_back(ThomSeries::from_file(f));
    return out;
}

inline void check_degree(const Options& o, int degree) {
    if (o.max_degree >= 0 && degree > o.max_degree)
        throw UsageError("result has degree " + std::to_string(degree) + ", above --max-degree " +
                         std::to_string(o.max_degree));
}

inline void emit_poly(std::ostream& out, const GradedPoly& p, const std::string& format, nlohmann::json meta) {
    if (format == "latex") {
        out << to_latex(p) << "\n";
    } else if (format == "json") {
        meta["polynomial"] = to_json(p);
        out << meta.dump(2) << "\n";
    } else {
        out << to_factored_text(p) << "\n";
    }
}

inline int cmd_residue(const Options& o, std::ostream& out, std::ostream& err) {
    if (!o.ell) throw UsageError("residue needs --ell");
    auto m = MultiSingularity::parse(o.multi);
    ResidueTable table(load_series(o));
    check_degree(o, codim(m, *o.ell));
    GradedPoly p = table(m, *o.ell);
    bool conditional = ResidueTable::is_conditional(m);
    if (conditional) err << "note: R_" << m.label() << " is conditional on the supplied Thom series\n";
    emit_poly(out, p, format_or(o, "text"),
              {{"multi", m.label()}, {"ell", *o.ell}, {"degree", p.degree()}, {"conditional", conditional}});
    return ok;
}

inline int cmd_thom(const Options& o, std::ostream& out, std::ostream&) {
    const std::string format = format_or(o, "text");
    if (o.triangle >= 0) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i <= o.triangle; ++i) {
            nlohmann::json row = nlohmann::json::array();
            std::string line;
            for (int j = 0; j <= i; ++j) {
                Rat v = a_coeff(i - j, j);
                row.push_back(to_fraction_string(v));
                line += (j ? " " : "") + to_short_string(v);
            }
            rows.push_back(row);
            if (format != "json") out << line << "\n";
        }
        if (format == "json") out << nlohmann::json{{"a_triangle", rows}}.dump(2) << "\n";
        return ok;
    }
    if (o.sing.empty()) throw UsageError("thom needs --sing or --triangle");
    if (!o.ell) throw UsageError("thom needs --ell");
    Singularity s = parse_singularity(o.sing);
    std::optional<ThomSeries> series;
    int k = static_cast<int>(s) - static_cast<int>(Singularity::A0);
    if (k >= 0 && k <= 3 && info(s).name == "A" + std::to_string(k)) series = ThomSeries::builtin_A(k);
    for (auto& ts : load_series(o))
        if (ts.name() == info(s).name) series = ts;
    if (!series) throw UsageError("no Thom series for " + o.sing + " (supply --series-file)");
    check_degree(o, series->instantiated_degree(*o.ell + 1));
    GradedPoly p = thom_polynomial(*series, *o.ell);
    emit_poly(out, p, format, {{"singularity", info(s).name}, {"ell", *o.ell}});
    return ok;
}

inline int cmd_expand(const Options& o, std::ostream& out, std::ostream&) {
    auto m = MultiSingularity::parse(o.multi);
    const std::string format = format_or(o, "text");
    bool tex = format == "latex";
    if (o.side == "target") {
        FormalExpansion e = expand_n(m);
        const Symbol nsym{Symbol::Kind::n, m};
        std::string lhs = tex ? nsym.latex() : nsym.text();
        if (format == "json") {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [prod, c] : e.ordered()) {
                nlohmann::json factors = nlohmann::json::array();
                for (const auto& s : prod) factors.push_back(s.text());
                terms.push_back({{"coeff", to_fraction_string(c)}, {"factors", factors}});
            }
            out << nlohmann::json{{"multi", m.label()}, {"side", "target"}, {"terms", terms}}.dump(2) << "\n";
        } else {
            out << lhs << " = " << e.render(tex) << "\n";
        }
        return ok;
    }
    if (o.side != "source") throw UsageError("--side must be target or source");
    std::string lhs = tex ? "m_{" + m.latex() + "}" : "m_" + m.label();
    if (!o.ell) {
        FormalExpansion e = expand_m(m);
        if (format == "json") {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [prod, c] : e.ordered()) {
                nlohmann::json factors = nlohmann::json::array();
                for (const auto& s : prod) factors.push_back(s.text());
                terms.push_back({{"coeff", to_fraction_string(c)}, {"factors", factors}});
            }
            out << nlohmann::json{{"multi", m.label()}, {"side", "source"}, {"terms", terms}}.dump(2) << "\n";
        } else {
            out << lhs << " = " << e.render(tex) << "\n";
        }
        return ok;
    }
    ResidueTable table(load_series(o));
    auto terms = resolve_m(m, *o.ell, table);
    if (format == "json") {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& t : terms)
            items.push_back({{"coefficient", to_json(t.coefficient)},
                             {"image_class", t.image_class ? nlohmann::json(t.image_class->text()) : nlohmann::json()}});
        out << nlohmann::json{{"multi", m.label()}, {"side", "source"}, {"ell", *o.ell}, {"terms", items}}.dump(2)
            << "\n";
    } else {
        out << render_m(terms, tex, lhs) << "\n";
    }
    return ok;
}

inline GermPrototype germ_by_name(const std::string& name, int ell) {
    if (name == "whitney") return whitney_umbrella();
    if (name == "blowup") return blowup_germ();
    if (name == "III22") return germ_III22(ell);
    if (name.size() == 2 && name[0] == 'A' && std::isdigit(static_cast<unsigned char>(name[1])))
        return germ_A(name[1] - '0', ell);
    throw UsageError("unknown germ " + name + " (A<k>, III22, whitney, blowup)");
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
    auto need_ell = [&] {
        if (!o.ell) throw UsageError("--suite " + o.suite + " needs --ell");
        return *o.ell;
    };
    Report report;
    if (o.suite == "quadruple") {
        report = verify_quadruple(need_ell(), o.root_budget);
    } else if (o.suite == "iii22a0") {
        report = verify_III22A0(need_ell());
    } else if (o.suite == "tpa1") {
        report = verify_tpA1(need_ell());
    } else if (o.suite == "whitney") {
        report = verify_whitney();
    } else if (o.suite == "divisibility") {
        int ell = o.ell.value_or(1);
        GermPrototype g = germ_by_name(o.germ, ell);
        try {
            report = verify_divisibility(g, o.r);
        } catch (const NonExactDivision& e) {
            report.suite = "divisibility";
            report.ell = g.ell;
            report.add_bool(g.name + ": e(source) divides the target classes", false, e.what());
        }
    } else {
        throw UsageError("unknown suite '" + o.suite + "' (quadruple, iii22a0, tpa1, divisibility, whitney)");
    }
    if (format_or(o, "json") == "json") {
        out << report.to_json().dump(2) << "\n";
    } else {
        for (const auto& c : report.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    }
    return report.passed() ? ok : verification_failed;
}

inline GrassClass class_from_json(const GrassRing& ring, const nlohmann::json& j) {
    if (!j.is_array()) throw UsageError("a class is a JSON list of {partition, coeff}");
    GrassClass out(ring);
    for (const auto& item : j) {
        auto p = item.at("partition").get<Partition>();
        const auto& c = item.at("coeff");
        Rat coeff = c.is_string() ? parse_rat(c.get<std::string>()) : Rat(c.get<long>());
        out += GrassClass::schur(ring, p, coeff);
    }
    return out;
}

inline int cmd_grass(const Options& o, std::ostream& out, std::ostream&) {
    if (o.exprs.empty()) throw UsageError("grass integrate needs --expr");
    GrassRing ring(o.k, o.n);
    GrassClass product = GrassClass::one(ring);
    for (const auto& e : o.exprs) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(e);
        } catch (const nlohmann::json::exception& ex) {
            throw UsageError(std::string("--expr: ") + ex.what());
        }
        product = class_mul(product, class_from_json(ring, j));
    }
    Rat value = integrate(product);
    if (format_or(o, "text") == "json")
        out << nlohmann::json{{"k", o.k}, {"n", o.n}, {"integral", to_fraction_string(value)}}.dump(2) << "\n";
    else
        out << to_fraction_string(value) << "\n";
    return ok;
}

inline int cmd_secant(const Options& o, std::ostream& out, std::ostream& err) {
    const std::string format = format_or(o, "text");
    if (o.r != 4 && !o.experimental) throw UsageError("--r other than 4 needs --experimental");
    SecantProblem problem{o.a, o.r};
    ResidueTable table(load_series(o));
    if (o.r != 4) err << "note: experimental r-secant count\n";
    SecantResult res = count_rsecant(problem, table);
    const ChiPolynomial& poly = res.rfactorial_N;
    const std::string lhs = std::to_string(o.r) + "!N_" + std::to_string(o.a);

    if (!o.chi_file.empty()) {
        auto values = chi_values_from_json(read_json_file(o.chi_file));
        Rat total = poly.evaluate(values);
        Rat N = total / Rat(factorial(o.r));
        if (format == "json")
            out << nlohmann::json{{"a", o.a}, {"r", o.r}, {"N", to_fraction_string(N)}, {"rfactorial_N", to_fraction_string(total)}}
                       .dump(2)
                << "\n";
        else
            out << to_fraction_string(N) << "\n";
        return ok;
    }
    if (o.lehn) {
        LehnForm form = lehn_crosscheck(poly);
        if (!form.round_trip) {
            err << "Hilbert-scheme substitution did not round-trip\n";
            return verification_failed;
        }
        if (format == "json")
            out << nlohmann::json{{"a", o.a}, {"form", "d,pi,kappa,e"}, {"text", form.text()}, {"polynomial", to_json(form.value)}}.dump(2)
                << "\n";
        else
            out << lhs << " = " << (format == "latex" ? form.latex() : form.text()) << "\n";
        return ok;
    }
    if (format == "json") {
        nlohmann::json j = poly.to_json();
        j["r"] = o.r;
        out << j.dump(2) << "\n";
    } else if (format == "latex") {
        out << o.r << "!N_{" << o.a << "} = " << poly.to_latex() << "\n";
    } else {
        out << lhs << " = " << poly.to_string() << "\n";
    }
    return ok;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Multisingularity residues, interpolation checks and secant counts"};
    app.name("quadpt");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "json, latex or text")->check(CLI::IsMember({"json", "latex", "text"}));
    app.add_option("--max-degree", o.max_degree, "refuse results of higher degree");
    app.add_option("--series-file", o.series_files, "plug-in Thom series (JSON)");
    app.add_flag("--seed-free", o.seed_free, "reserved; every run is deterministic");

    auto* residue = app.add_subcommand("residue", "residue polynomial R of a multisingularity");
    residue->add_option("--multi", o.multi, "e.g. A0^4, A0A1, III22A0");
    residue->add_option("--ell", o.ell, "relative dimension")->check(CLI::NonNegativeNumber);

    auto* thom = app.add_subcommand("thom", "Thom polynomial, or the a_ij triangle");
    thom->add_option("--sing", o.sing, "A0..A6, I22, III22");
    thom->add_option("--ell", o.ell, "relative dimension")->check(CLI::NonNegativeNumber);
    thom->add_option("--triangle", o.triangle, "print rows 0..N of the a_ij triangle");

    auto* expand = app.add_subcommand("expand", "formal expansion of n (target) or m (source)");
    expand->add_option("--multi", o.multi, "multisingularity");
    expand->add_option("--side", o.side, "target or source")->check(CLI::IsMember({"target", "source"}));
    expand->add_option("--ell", o.ell, "resolve residues at this relative dimension");

    auto* verify = app.add_subcommand("verify", "interpolation-method verification suites");
    verify->add_option("--suite", o.suite, "quadruple, iii22a0, tpa1, divisibility, whitney")->required();
    verify->add_option("--ell", o.ell, "relative dimension");
    verify->add_option("--germ", o.germ, "germ for the divisibility suite: A<k>, III22, whitney, blowup");
    verify->add_option("--r", o.r, "multiplicity for the divisibility suite");
    verify->add_option("--root-budget", o.root_budget, "number of beta roots kept (-1: all)");

    auto* grass = app.add_subcommand("grass", "Grassmannian intersection numbers");
    auto* integ = grass->add_subcommand("integrate", "integrate a product of classes over Gr_k(C^n)");
    grass->require_subcommand(1);
    integ->add_option("--k", o.k, "subspace dimension")->required();
    integ->add_option("--n", o.n, "ambient dimension")->required();
    // A plain string option with TakeAll keeps CLI11 from splitting the JSON list syntax.
    std::string expr_sink;
    auto* expr = integ->add_option("--expr", expr_sink, "class as JSON [{\"partition\": [..], \"coeff\": \"p/q\"}]; repeat to multiply")
                     ->required()
                     ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    auto* secant = app.add_subcommand("secant", "number of 4-secant planes as a polynomial in chi");
    secant->add_option("--a", o.a, "dimension of the variety")->check(CLI::PositiveNumber);
    secant->add_option("--chi", o.chi_file, "JSON file {\"(1,0)\": \"12/1\", ...} to evaluate N");
    secant->add_flag("--lehn", o.lehn, "rewrite the a = 2 answer in d, pi, kappa, e");
    secant->add_flag("--experimental", o.experimental, "allow r other than 4");
    secant->add_option("--r", o.r, "number of points (experimental)");

    std::vector<std::string> argv_store{"quadpt"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return usage;
    }
    if (*expr) o.exprs = expr->results();

    try {
        if (*residue) return cmd_residue(o, out, err);
        if (*thom) return cmd_thom(o, out, err);
        if (*expand) return cmd_expand(o, out, err);
        if (*verify) return cmd_verify(o, out, err);
        if (*grass) return cmd_grass(o, out, err);
        if (*secant) return cmd_secant(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace quadpt::cli
