#pragma once

#include "dgs/equation.hpp"
#include "dgs/functional_equations.hpp"
#include "dgs/multi_index.hpp"
#include "dgs/operators.hpp"
#include "dgs/polynomial.hpp"
#include "dgs/rational.hpp"
#include "dgs/series.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgs {

/// All documents use insertion-ordered JSON with fixed key order and
/// graded-lex sorted entries, so serialized output is byte-stable.
using Json = nlohmann::ordered_json;

namespace detail {

inline std::runtime_error bad_input(const std::string& what) {
    return std::runtime_error("invalid input: " + what);
}

inline Json index_to_json(const MultiIndex& x) {
    Json a = Json::array();
    for (int i = 0; i < x.dim(); ++i) a.push_back(x[i]);
    return a;
}

inline MultiIndex index_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw bad_input(std::string(what) + " must be a nonempty array");
    std::vector<std::int64_t> c;
    c.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw bad_input(std::string(what) + " must hold integers");
        c.push_back(v.get<std::int64_t>());
    }
    return MultiIndex(std::move(c));
}

inline Rational rational_from_json(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) throw bad_input(std::string(what) + " must be a rational string");
    return Rational::parse(j.get<std::string>());
}

inline Json polynomial_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["e"] = index_to_json(e);
        t["c"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

inline Polynomial polynomial_from_json(const Json& j, int dim, const char* what) {
    if (!j.is_array()) throw bad_input(std::string(what) + " must be an array of terms");
    Polynomial p(dim);
    for (const auto& t : j) {
        if (!t.contains("e") || !t.contains("c"))
            throw bad_input(std::string(what) + " terms need 'e' and 'c'");
        p.add_term(index_from_json(t["e"], "exponent"), rational_from_json(t["c"], "coefficient"));
    }
    return p;
}

inline int dim_from_json(const Json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw bad_input("'dim' must be an integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw bad_input("'dim' must be >= 1");
    return dim;
}

inline MultiIndex sized_index(const Json& j, int dim, const char* what) {
    MultiIndex x = index_from_json(j, what);
    if (x.dim() != dim) throw bad_input(std::string(what) + " has the wrong dimension");
    return x;
}

}  // namespace detail

// --- series -----------------------------------------------------------

inline Json to_json(const Series& f) {
    Json j;
    j["dim"] = f.dim();
    j["ell"] = detail::index_to_json(f.ell());
    j["window"] = detail::index_to_json(f.window());
    Json coeffs = Json::array();
    for (const auto& [x, v] : f.coeffs()) {
        Json e;
        e["x"] = detail::index_to_json(x);
        e["v"] = v.str();
        coeffs.push_back(std::move(e));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline Series series_from_json(const Json& j) {
    const int dim = detail::dim_from_json(j);
    if (!j.contains("ell") || !j.contains("window") || !j.contains("coeffs"))
        throw detail::bad_input("series needs 'ell', 'window' and 'coeffs'");
    Series f(detail::sized_index(j["ell"], dim, "ell"),
             detail::sized_index(j["window"], dim, "window"));
    for (const auto& e : j["coeffs"]) {
        if (!e.contains("x") || !e.contains("v"))
            throw detail::bad_input("series coefficients need 'x' and 'v'");
        f.add_at(detail::sized_index(e["x"], dim, "series index"),
                 detail::rational_from_json(e["v"], "series value"));
    }
    return f;
}

// --- operators ---------------------------------------------------------

inline Json to_json(const SeriesOperator& op) {
    Json j;
    j["dim"] = op.dim();
    j["ell"] = detail::index_to_json(op.ell());
    Json terms = Json::array();
    for (const auto& term : op.presentation()) {
        Json t;
        t["coeff"] = term.coeff.str();
        t["beta"] = detail::index_to_json(term.beta);
        t["q"] = detail::polynomial_to_json(term.q);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline SeriesOperator operator_from_json(const Json& j) {
    const int dim = detail::dim_from_json(j);
    if (!j.contains("ell") || !j.contains("terms"))
        throw detail::bad_input("operator needs 'ell' and 'terms'");
    SeriesOperator op(detail::sized_index(j["ell"], dim, "ell"));
    for (const auto& t : j["terms"]) {
        if (!t.contains("coeff") || !t.contains("beta") || !t.contains("q"))
            throw detail::bad_input("operator terms need 'coeff', 'beta' and 'q'");
        op.add_term(detail::rational_from_json(t["coeff"], "operator coefficient"),
                    detail::sized_index(t["beta"], dim, "operator shift"),
                    detail::polynomial_from_json(t["q"], dim, "operator polynomial"));
    }
    return op;
}

// --- Cauchy problems ----------------------------------------------------

inline Json to_json(const CauchyProblem& problem) {
    Json j;
    j["dim"] = problem.equation.dim();
    j["ell"] = detail::index_to_json(problem.ell);
    j["form"] = problem.equation.form() == EquationForm::forward ? "forward" : "backward";
    j["m"] = detail::index_to_json(problem.equation.order());
    Json terms = Json::array();
    for (const auto& [alpha, p] : problem.equation.terms()) {
        Json t;
        t["alpha"] = detail::index_to_json(alpha);
        t["p"] = detail::polynomial_to_json(p);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    Json init;
    init["base_offset"] = detail::index_to_json(problem.data.base_offset());
    Json values = Json::array();
    for (const auto& [x, v] : problem.data.values()) {
        Json e;
        e["x"] = detail::index_to_json(x);
        e["v"] = v.str();
        values.push_back(std::move(e));
    }
    init["values"] = std::move(values);
    init["default"] = problem.data.default_value().str();
    j["initial"] = std::move(init);
    return j;
}

inline CauchyProblem problem_from_json(const Json& j) {
    const int dim = detail::dim_from_json(j);
    for (const char* key : {"ell", "form", "m", "terms", "initial"})
        if (!j.contains(key))
            throw detail::bad_input(std::string("problem needs '") + key + "'");

    const std::string form_text = j["form"].get<std::string>();
    EquationForm form;
    if (form_text == "forward") {
        form = EquationForm::forward;
    } else if (form_text == "backward") {
        form = EquationForm::backward;
    } else {
        throw detail::bad_input("'form' must be \"forward\" or \"backward\"");
    }

    std::vector<std::pair<MultiIndex, Polynomial>> terms;
    for (const auto& t : j["terms"]) {
        if (!t.contains("alpha") || !t.contains("p"))
            throw detail::bad_input("equation terms need 'alpha' and 'p'");
        terms.emplace_back(detail::sized_index(t["alpha"], dim, "alpha"),
                           detail::polynomial_from_json(t["p"], dim, "equation coefficient"));
    }

    const Json& init = j["initial"];
    MultiIndex base = init.contains("base_offset")
                          ? detail::sized_index(init["base_offset"], dim, "base_offset")
                          : MultiIndex::zero(dim);
    std::vector<std::pair<MultiIndex, Rational>> values;
    if (init.contains("values")) {
        for (const auto& e : init["values"]) {
            if (!e.contains("x") || !e.contains("v"))
                throw detail::bad_input("initial values need 'x' and 'v'");
            values.emplace_back(detail::sized_index(e["x"], dim, "initial index"),
                                detail::rational_from_json(e["v"], "initial value"));
        }
    }
    Rational default_value = init.contains("default")
                                 ? detail::rational_from_json(init["default"], "default")
                                 : Rational(0);

    try {
        return CauchyProblem(
            DifferenceEquation(form, detail::sized_index(j["m"], dim, "m"), std::move(terms)),
            InitialData(std::move(base), std::move(values), std::move(default_value)),
            detail::sized_index(j["ell"], dim, "ell"));
    } catch (const std::invalid_argument& e) {
        throw detail::bad_input(e.what());
    }
}

// --- equations (for conversion output) -----------------------------------

inline Json to_json(const DifferenceEquation& eq, const MultiIndex& ell) {
    Json j;
    j["dim"] = eq.dim();
    j["ell"] = detail::index_to_json(ell);
    j["form"] = eq.form() == EquationForm::forward ? "forward" : "backward";
    j["m"] = detail::index_to_json(eq.order());
    Json terms = Json::array();
    for (const auto& [alpha, p] : eq.terms()) {
        Json t;
        t["alpha"] = detail::index_to_json(alpha);
        t["p"] = detail::polynomial_to_json(p);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

// --- verification reports -------------------------------------------------

inline Json to_json(const VerificationReport& report) {
    Json j;
    j["theorem"] = report.theorem;
    j["status"] = report.pass() ? "pass" : "fail";
    j["window"] = detail::index_to_json(report.window);
    Json mismatches = Json::array();
    for (const auto& m : report.mismatches) {
        Json e;
        e["forms"] = m.pair;
        e["x"] = detail::index_to_json(m.x);
        e["lhs"] = m.lhs.str();
        e["rhs"] = m.rhs.str();
        mismatches.push_back(std::move(e));
    }
    j["mismatches"] = std::move(mismatches);
    j["dropped"] = report.dropped;
    return j;
}

// --- document helpers ------------------------------------------------------

/// Canonical text form: two-space indentation, newline-terminated.
inline std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw detail::bad_input(std::string("malformed JSON: ") + e.what());
    }
}

inline Json load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

}  // namespace dgs
