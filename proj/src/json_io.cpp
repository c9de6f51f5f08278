#include "fps/json_io.hpp"

#include <cmath>
#include <limits>

namespace fps {

namespace {

template <typename S>
Json series_to_json_impl(const TruncatedSeries<S>& f) {
    Json j;
    j["q"] = f.vars();
    j["K"] = f.truncation();
    j["mode"] = scalar_mode_name<S>();
    Json terms = Json::array();
    for (const auto& [c, v] : f.terms()) {
        Json t;
        t["exp"] = c.exponents();
        t["coef"] = format_scalar(v);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

template <typename S>
TruncatedSeries<S> series_terms_from_json(const Json& j, int q, int K) {
    TruncatedSeries<S> f(q, K);
    if (!j.contains("terms")) return f;
    const Json& terms = j.at("terms");
    if (!terms.is_array()) throw FormatError("series: \"terms\" must be an array");
    for (const Json& t : terms) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coef"))
            throw FormatError("series: each term needs \"exp\" and \"coef\"");
        std::vector<int> exp;
        for (const Json& e : t.at("exp")) {
            if (!e.is_number_integer() || e.get<long>() < 0)
                throw FormatError("series: exponents must be nonnegative integers");
            exp.push_back(e.get<int>());
        }
        MultiIndex c(std::move(exp));
        if (c.dim() != q)
            throw FormatError("series: term " + to_string(c) + " has dimension " +
                              std::to_string(c.dim()) + ", expected q=" + std::to_string(q));
        if (c.total_degree() > K)
            throw FormatError("series: term " + to_string(c) + " exceeds truncation K=" +
                              std::to_string(K));
        const Json& coef = t.at("coef");
        S v;
        try {
            if (coef.is_string())
                v = parse_scalar<S>(coef.get<std::string>());
            else if (coef.is_number())
                v = parse_scalar<S>(coef.dump());
            else
                throw FormatError("series: coefficient must be a string or number");
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("series: bad coefficient: ") + e.what());
        }
        f.add_to(c, v);
    }
    return f;
}

double radius_from_json(const Json& r) {
    if (r.is_number()) return r.get<double>();
    if (r.is_string()) {
        const std::string s = r.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "oo")
            return std::numeric_limits<double>::infinity();
        return parse_rational(s).get_d();
    }
    throw FormatError("sequence: \"radius\" must be a string or number");
}

}  // namespace

Json series_to_json(const AnySeries& f) {
    return std::visit([](const auto& s) { return series_to_json_impl(s); }, f);
}

AnySeries series_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("series: expected a JSON object");
    for (const char* key : {"q", "K", "mode"})
        if (!j.contains(key)) throw FormatError(std::string("series: missing \"") + key + "\"");
    if (!j.at("q").is_number_integer() || !j.at("K").is_number_integer())
        throw FormatError("series: \"q\" and \"K\" must be integers");
    const int q = j.at("q").get<int>();
    const int K = j.at("K").get<int>();
    if (q < 1) throw FormatError("series: q must be >= 1");
    if (K < 0) throw FormatError("series: K must be >= 0");
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "exact") return series_terms_from_json<Rational>(j, q, K);
    if (mode == "binary64") return series_terms_from_json<double>(j, q, K);
    throw FormatError("series: mode must be \"exact\" or \"binary64\", got \"" + mode + "\"");
}

Json sequence_to_json(const CoeffSequence& g) {
    Json j;
    const std::string& label = g.label();
    if (const auto* items = g.as_list()) {
        j["kind"] = "list";
        Json coeffs = Json::array();
        for (const Rational& c : *items) coeffs.push_back(format_scalar(c));
        j["coeffs"] = std::move(coeffs);
    } else if (label.rfind("rule:", 0) == 0) {
        j["kind"] = "rule";
        j["rule"] = label.substr(5);
    } else {
        j["kind"] = "opaque";
        j["label"] = label;
    }
    if (g.radius()) {
        const double r = g.radius()->value;
        j["radius"] = std::isinf(r) ? Json("inf") : Json(r);
        j["radius_provenance"] = g.radius()->user_asserted ? "user" : "derived";
    }
    return j;
}

CoeffSequence sequence_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw FormatError("sequence: expected an object with \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    CoeffSequence g = [&] {
        if (kind == "rule") {
            if (!j.contains("rule")) throw FormatError("sequence: rule kind needs \"rule\"");
            return CoeffSequence::from_rule(j.at("rule").get<std::string>());
        }
        if (kind == "list") {
            if (!j.contains("coeffs")) throw FormatError("sequence: list kind needs \"coeffs\"");
            std::vector<Rational> items;
            for (const Json& c : j.at("coeffs")) {
                if (c.is_string())
                    items.push_back(parse_rational(c.get<std::string>()));
                else if (c.is_number())
                    items.push_back(parse_rational(c.dump()));
                else
                    throw FormatError("sequence: coefficients must be strings or numbers");
            }
            return CoeffSequence::from_list(std::move(items));
        }
        throw FormatError("sequence: kind must be \"rule\" or \"list\", got \"" + kind + "\"");
    }();
    if (j.contains("radius")) g.assert_radius(radius_from_json(j.at("radius")));
    return g;
}

Json verdict_to_json(const ConvergenceVerdict& v) {
    Json j;
    j["kind"] = to_string(v.kind);
    switch (v.kind) {
        case ConvergenceVerdict::Kind::Converged:
            j["value"] = format_scalar(v.value);
            if (v.exact_value) j["value_exact"] = format_scalar(*v.exact_value);
            j["bound"] = std::isinf(v.error_bound) ? Json("inf") : Json(v.error_bound);
            j["regime"] = v.regime;
            break;
        case ConvergenceVerdict::Kind::Diverged:
            if (v.witness) {
                Json w;
                w["reason"] = v.witness->reason;
                w["n_begin"] = v.witness->n_begin;
                w["n_end"] = v.witness->n_end;
                w["sample"] = v.witness->sample;
                j["witness"] = std::move(w);
            }
            break;
        case ConvergenceVerdict::Kind::Inconclusive:
            if (v.diagnostics) {
                Json d;
                d["last_partial"] = v.diagnostics->last_partial;
                d["oscillation"] = v.diagnostics->oscillation;
                j["diagnostics"] = std::move(d);
            }
            if (!v.regime.empty()) j["regime"] = v.regime;
            break;
    }
    j["terms_used"] = v.terms_used;
    return j;
}

Json composition_report_to_json(const CompositionReport& r) {
    Json j;
    j["q"] = r.q;
    j["K"] = r.K;
    j["b0"] = r.b0.str();
    j["special_case"] =
        r.special_case == SpecialCase::None ? Json(nullptr) : Json(to_string(r.special_case));
    Json g = Json::array();
    for (std::size_t s = 0; s < r.G.size(); ++s) {
        Json v = verdict_to_json(r.G[s]);
        Json entry;
        entry["s"] = s;
        entry.update(v);
        g.push_back(std::move(entry));
    }
    j["G"] = std::move(g);
    j["result"] = r.result ? series_to_json(*r.result) : Json(nullptr);
    j["residual"] = r.residual ? Json(*r.residual) : Json(nullptr);
    j["certified"] = r.certified_all_degrees ? "all_degrees" : "up_to_truncation";
    if (r.first_failure) j["first_failure"] = *r.first_failure;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json rdl_report_to_json(const RdlReport& r) {
    Json j;
    j["q"] = r.q;
    j["K"] = r.K;
    j["status"] = to_string(r.status);
    j["max_discrepancy"] = r.max_discrepancy ? Json(*r.max_discrepancy) : Json(nullptr);
    if (!r.detail.empty()) j["detail"] = r.detail;
    j["A_of_P"] = composition_report_to_json(r.a_of_p);
    j["B_of_P"] = composition_report_to_json(r.b_of_p);
    j["AB_of_P"] = composition_report_to_json(r.ab_of_p);
    j["lhs_product"] = r.lhs_product ? series_to_json(*r.lhs_product) : Json(nullptr);
    return j;
}

Json counterexample_report_to_json(const CounterexampleReport& r) {
    Json j;
    j["n_terms"] = r.n_terms;
    Json cps = Json::array();
    for (const auto& cp : r.checkpoints) {
        Json c;
        c["n"] = cp.n;
        c["partial_sum"] = cp.partial_sum;
        c["bound"] = cp.bound;
        cps.push_back(std::move(c));
    }
    j["partial_sums"] = std::move(cps);
    j["value"] = r.final_value;
    j["bound"] = r.final_bound;
    j["cauchy_square"] = {{"lower_bound_ok", r.lower_bound_ok},
                          {"min_margin", r.min_margin},
                          {"margin_argmin", r.margin_argmin},
                          {"last_term_abs", r.sample_c_n}};
    j["rdl"] = rdl_report_to_json(r.rdl);
    return j;
}

Json abel_report_to_json(const AbelReport& r) {
    Json j;
    j["sum_a"] = verdict_to_json(r.sum_a);
    j["sum_b"] = verdict_to_json(r.sum_b);
    j["sum_c"] = verdict_to_json(r.sum_c);
    j["applicable"] = r.applicable;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.applicable) {
        j["product_value"] = r.product_value;
        j["combined_bound"] = r.combined_bound;
        j["discrepancy"] = r.discrepancy;
        j["consistent"] = r.consistent;
    }
    return j;
}

}  // namespace fps
