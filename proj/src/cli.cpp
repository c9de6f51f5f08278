#include "fps/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "fps/json_io.hpp"

namespace fps::cli {

namespace {

struct CommonOptions {
    int q = 0;          // 0 = unset
    int K = -1;         // -1 = unset
    std::string mode;   // "" = unset
    double tol = 1e-9;
    long nmax = 1L << 20;
    long nmax_product = 1L << 14;
    int window = 64;
    double guard = 1e100;
    int check_depth = 32;
    std::string format = "table";
    std::string out_file;

    ComposeOptions compose_options() const {
        ComposeOptions o;
        o.verdict.tolerance = tol;
        o.verdict.n_max = nmax;
        o.verdict.window = window;
        o.verdict.overflow_guard = guard;
        o.check_depth = check_depth;
        return o;
    }

    RdlOptions rdl_options() const {
        RdlOptions o;
        o.compose = compose_options();
        o.tolerance = tol;
        o.nmax_product = nmax_product;
        return o;
    }
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--q", o.q, "Expected variable count (validated against inputs)");
    sub->add_option("--K", o.K, "Re-truncate series inputs to total degree K");
    sub->add_option("--mode", o.mode, "Coefficient mode: exact or binary64")
        ->check(CLI::IsMember({"exact", "binary64"}));
    sub->add_option("--tol", o.tol, "Verdict / comparison tolerance (default 1e-9)");
    sub->add_option("--nmax", o.nmax, "Partial-sum budget N_max (default 2^20)");
    sub->add_option("--nmax-product", o.nmax_product,
                    "Budget for Cauchy-product sides, whose terms cost O(n) each (default 2^14)");
    sub->add_option("--window", o.window, "Trailing window for regime detection (default 64)");
    sub->add_option("--guard", o.guard, "Overflow guard for partial sums (default 1e100)");
    sub->add_option("--check-depth", o.check_depth,
                    "Depth of the direct cross-check partial sum (default 32)");
    sub->add_option("--format", o.format, "Output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--out", o.out_file, "Write the report to FILE instead of stdout");
}

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_file(const std::string& arg) {
    return arg.size() > 5 && arg.rfind(".json") == arg.size() - 5;
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CliError(what + ": invalid JSON: " + e.what());
    }
}

AnySeries load_series(const std::string& arg, const CommonOptions& o) {
    const std::string text = looks_like_file(arg) ? slurp(arg) : arg;
    AnySeries f = series_from_json(parse_json_text(text, "series '" + arg + "'"));
    if (o.q != 0 && any_vars(f) != o.q)
        throw CliError("series has q=" + std::to_string(any_vars(f)) + ", but --q=" +
                       std::to_string(o.q) + " was given");
    if (o.K >= 0)
        f = std::visit([&](const auto& s) { return AnySeries(with_truncation(s, o.K)); }, f);
    if (!o.mode.empty()) {
        const bool is_exact = any_is_exact(f);
        if (o.mode == "binary64" && is_exact)
            f = to_binary64(std::get<ExactSeries>(f));
        else if (o.mode == "exact" && !is_exact)
            throw CliError("refusing to promote binary64 coefficients to exact mode");
    }
    return f;
}

CoeffSequence load_sequence(const std::string& arg) {
    if (arg.rfind("rule:", 0) == 0) return parse_rule(arg.substr(5));
    if (arg.rfind("list:", 0) == 0) {
        std::vector<Rational> items;
        std::string rest = arg.substr(5);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t comma = rest.find(',', pos);
            const std::string tok =
                rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!tok.empty()) items.push_back(parse_rational(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return CoeffSequence::from_list(std::move(items));
    }
    const std::string text = looks_like_file(arg) ? slurp(arg) : arg;
    return sequence_from_json(parse_json_text(text, "sequence '" + arg + "'"));
}

// ---- table rendering ------------------------------------------------------

template <typename S>
void print_series_rows(std::ostream& out, const TruncatedSeries<S>& f) {
    for (const auto& [c, v] : f.terms()) out << to_string(c) << "  " << format_scalar(v) << "\n";
    if (f.is_zero()) out << "(zero series)\n";
}

void render_series(std::ostream& out, const AnySeries& f) {
    std::visit(
        [&](const auto& s) {
            out << "q=" << s.vars() << " K=" << s.truncation() << " mode="
                << scalar_mode_name<typename std::decay_t<decltype(s)>::TermMap::mapped_type>()
                << " terms=" << s.term_count() << "\n";
            print_series_rows(out, s);
        },
        f);
}

void render_verdict_line(std::ostream& out, const ConvergenceVerdict& v) {
    out << to_string(v.kind);
    switch (v.kind) {
        case ConvergenceVerdict::Kind::Converged:
            out << " value=" << (v.exact_value ? format_scalar(*v.exact_value)
                                               : format_scalar(v.value))
                << " bound=" << format_scalar(v.error_bound) << " regime=" << v.regime;
            break;
        case ConvergenceVerdict::Kind::Diverged:
            if (v.witness)
                out << " witness=\"" << v.witness->reason << "\" at n=[" << v.witness->n_begin
                    << "," << v.witness->n_end << "]";
            break;
        case ConvergenceVerdict::Kind::Inconclusive:
            if (v.diagnostics)
                out << " last_partial=" << format_scalar(v.diagnostics->last_partial)
                    << " oscillation=" << format_scalar(v.diagnostics->oscillation);
            break;
    }
    out << "\n";
}

void render_composition(std::ostream& out, const CompositionReport& r, const char* title) {
    out << title << ": q=" << r.q << " K=" << r.K << "\n";
    out << "b0 = " << r.b0.str() << "\n";
    out << "special_case = " << to_string(r.special_case) << "\n";
    for (std::size_t s = 0; s < r.G.size(); ++s) {
        out << "G[" << s << "] = ";
        render_verdict_line(out, r.G[s]);
    }
    out << "exists = " << (r.exists() ? "yes" : "no") << " (certified "
        << (r.certified_all_degrees ? "for all degrees" : "up to K") << ")\n";
    if (!r.note.empty()) out << "note: " << r.note << "\n";
    if (r.result) {
        out << "result:\n";
        render_series(out, *r.result);
    }
    if (r.residual) out << "cross_check_residual = " << format_scalar(*r.residual) << "\n";
}

void render_composition_summary(std::ostream& out, const CompositionReport& r, const char* who) {
    out << who << ": " << (r.exists() ? "exists" : "does not exist");
    if (r.first_failure) {
        const auto& v = r.G[static_cast<std::size_t>(*r.first_failure)];
        out << " (G_" << *r.first_failure << " " << to_string(v.kind);
        if (v.witness) out << ": " << v.witness->reason;
        out << ")";
    }
    out << "\n";
}

void render_rdl(std::ostream& out, const RdlReport& r) {
    out << "rdl: q=" << r.q << " K=" << r.K << "\n";
    render_composition_summary(out, r.a_of_p, "A∘P");
    render_composition_summary(out, r.b_of_p, "B∘P");
    render_composition_summary(out, r.ab_of_p, "(AB)∘P");
    out << "status = " << to_string(r.status) << "\n";
    if (r.max_discrepancy)
        out << "max_discrepancy = " << format_scalar(*r.max_discrepancy) << "\n";
    if (!r.detail.empty()) out << "detail: " << r.detail << "\n";
}

void render_counterexample(std::ostream& out, const CounterexampleReport& r) {
    out << "counterexample: a_n = (-1)^n/sqrt(n+1), P = (1,0,0,...)\n";
    out << "partial sums of sum a_n (alternating bound = first omitted term):\n";
    for (const auto& cp : r.checkpoints)
        out << "  N=" << cp.n << "  S_N=" << format_scalar(cp.partial_sum)
            << "  bound=" << format_scalar(cp.bound) << "\n";
    out << "A∘P value = " << format_scalar(r.final_value) << " +/- "
        << format_scalar(r.final_bound) << "\n";
    out << "Cauchy-square lower bound |c_n| >= 2(n+1)/(n+2): "
        << (r.lower_bound_ok ? "verified" : "VIOLATED") << " for n <= " << r.n_terms
        << " (min margin " << format_scalar(r.min_margin) << " at n=" << r.margin_argmin
        << ")\n";
    out << "|c_" << r.n_terms << "| = " << format_scalar(r.sample_c_n) << "\n";
    render_rdl(out, r.rdl);
}

void render_abel(std::ostream& out, const AbelReport& r) {
    out << "abel check (P = I):\n";
    out << "sum a: ";
    render_verdict_line(out, r.sum_a);
    out << "sum b: ";
    render_verdict_line(out, r.sum_b);
    out << "sum c: ";
    render_verdict_line(out, r.sum_c);
    if (!r.applicable) {
        out << "not applicable: " << r.detail << "\n";
        return;
    }
    out << "(sum a)(sum b) = " << format_scalar(r.product_value) << "\n";
    out << "sum c          = " << format_scalar(r.sum_c.value) << "\n";
    out << "discrepancy = " << format_scalar(r.discrepancy)
        << "  combined_bound = " << format_scalar(r.combined_bound) << "\n";
    out << "consistent = " << (r.consistent ? "yes" : "no") << "\n";
}

void emit(std::ostream& out, const CommonOptions& o, const Json& j,
          const std::function<void(std::ostream&)>& table) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out_file.empty()) {
        file.open(o.out_file);
        if (!file) throw CliError("cannot write to '" + o.out_file + "'");
        sink = &file;
    }
    if (o.format == "json")
        *sink << j.dump(2) << "\n";
    else
        table(*sink);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated multivariate formal power series: Cauchy products, composition "
                 "existence verdicts, and the Right Distributive Law"};
    app.require_subcommand(1);

    CommonOptions opt;

    std::string f_arg, g_arg, a_arg, b_arg, p_arg;
    int pow_n = 0;
    long demo_n = 10000;
    long coeff_count = 8;
    std::string pow_method = "repeated";

    auto* c_coeffs = app.add_subcommand("coeffs", "List coefficients of a series or sequence");
    c_coeffs->add_option("--f", f_arg, "Series literal or .json file");
    c_coeffs->add_option("--g", g_arg, "Outer sequence (rule:..., list:..., JSON, or file)");
    c_coeffs->add_option("--count", coeff_count, "How many sequence coefficients to list");
    add_common(c_coeffs, opt);

    auto* c_mul = app.add_subcommand("mul", "Cauchy product of two series");
    c_mul->add_option("--f", f_arg)->required();
    c_mul->add_option("--g", g_arg)->required();
    add_common(c_mul, opt);

    auto* c_pow = app.add_subcommand("pow", "n-th power of a series");
    c_pow->add_option("--f", f_arg)->required();
    c_pow->add_option("--n", pow_n)->required();
    c_pow->add_option("--method", pow_method, "repeated or multinomial")
        ->check(CLI::IsMember({"repeated", "multinomial"}));
    add_common(c_pow, opt);

    auto* c_compose = app.add_subcommand("compose", "Composition g∘f with existence verdicts");
    c_compose->add_option("--g", g_arg)->required();
    c_compose->add_option("--f", f_arg)->required();
    add_common(c_compose, opt);

    auto* c_check = app.add_subcommand("check", "Existence verdicts only (no result series)");
    c_check->add_option("--g", g_arg)->required();
    c_check->add_option("--f", f_arg)->required();
    add_common(c_check, opt);

    auto* c_rdl = app.add_subcommand("rdl", "Verify or refute (A∘P)(B∘P) = (AB)∘P");
    c_rdl->add_option("--A", a_arg)->required();
    c_rdl->add_option("--B", b_arg)->required();
    c_rdl->add_option("--P", p_arg)->required();
    add_common(c_rdl, opt);

    auto* c_demo = app.add_subcommand("demo-counterexample",
                                      "Reproduce the conditionally-convergent counterexample");
    c_demo->add_option("--n", demo_n, "Number of Cauchy-square terms to certify (>= 100)");
    add_common(c_demo, opt);

    auto* c_abel = app.add_subcommand("abel", "Abel's theorem via the law with P = I");
    c_abel->add_option("--a", a_arg)->required();
    c_abel->add_option("--b", b_arg)->required();
    add_common(c_abel, opt);

    std::vector<const char*> argv;
    argv.push_back("fps");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*c_coeffs) {
            if (!f_arg.empty()) {
                AnySeries f = load_series(f_arg, opt);
                emit(out, opt, series_to_json(f), [&](std::ostream& o) { render_series(o, f); });
            } else if (!g_arg.empty()) {
                CoeffSequence g = load_sequence(g_arg);
                Json j = sequence_to_json(g);
                Json vals = Json::array();
                for (long n = 0; n < coeff_count; ++n) {
                    auto ex = g.coeff_exact(n);
                    vals.push_back(ex ? format_scalar(*ex) : format_scalar(g.coeff_double(n)));
                }
                j["values"] = vals;
                emit(out, opt, j, [&](std::ostream& o) {
                    o << g.label() << "\n";
                    for (long n = 0; n < coeff_count; ++n) {
                        auto ex = g.coeff_exact(n);
                        o << "g_" << n << " = "
                          << (ex ? format_scalar(*ex) : format_scalar(g.coeff_double(n))) << "\n";
                    }
                });
            } else {
                throw CliError("coeffs: give --f or --g");
            }
        } else if (*c_mul) {
            AnySeries f = load_series(f_arg, opt);
            AnySeries g = load_series(g_arg, opt);
            if (any_is_exact(f) != any_is_exact(g))
                throw CliError("mul: mode mismatch: '" + f_arg + "' is " +
                               (any_is_exact(f) ? "exact" : "binary64") + ", '" + g_arg +
                               "' is " + (any_is_exact(g) ? "exact" : "binary64"));
            AnySeries h = any_is_exact(f)
                              ? AnySeries(mul(std::get<ExactSeries>(f), std::get<ExactSeries>(g)))
                              : AnySeries(mul(std::get<NumericSeries>(f),
                                              std::get<NumericSeries>(g)));
            emit(out, opt, series_to_json(h), [&](std::ostream& o) { render_series(o, h); });
        } else if (*c_pow) {
            AnySeries f = load_series(f_arg, opt);
            AnySeries h = std::visit(
                [&](const auto& s) {
                    return AnySeries(pow_method == "multinomial" ? pow_multinomial(s, pow_n)
                                                                 : pow_repeated(s, pow_n));
                },
                f);
            emit(out, opt, series_to_json(h), [&](std::ostream& o) { render_series(o, h); });
        } else if (*c_compose || *c_check) {
            CoeffSequence g = load_sequence(g_arg);
            AnySeries f = load_series(f_arg, opt);
            CompositionReport rep = *c_compose ? compose(g, f, opt.compose_options())
                                               : existence_check(g, f, opt.compose_options());
            emit(out, opt, composition_report_to_json(rep), [&](std::ostream& o) {
                render_composition(o, rep, *c_compose ? "compose" : "check");
            });
        } else if (*c_rdl) {
            CoeffSequence A = load_sequence(a_arg);
            CoeffSequence B = load_sequence(b_arg);
            AnySeries P = load_series(p_arg, opt);
            RdlReport rep = rdl_verify(A, B, P, opt.rdl_options());
            emit(out, opt, rdl_report_to_json(rep),
                 [&](std::ostream& o) { render_rdl(o, rep); });
        } else if (*c_demo) {
            CounterexampleReport rep = counterexample_demo(demo_n, opt.rdl_options());
            emit(out, opt, counterexample_report_to_json(rep),
                 [&](std::ostream& o) { render_counterexample(o, rep); });
        } else if (*c_abel) {
            CoeffSequence a = load_sequence(a_arg);
            CoeffSequence b = load_sequence(b_arg);
            AbelReport rep = abel_check(a, b, opt.rdl_options());
            emit(out, opt, abel_report_to_json(rep),
                 [&](std::ostream& o) { render_abel(o, rep); });
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace fps::cli
