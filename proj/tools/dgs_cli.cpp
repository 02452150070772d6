// Command-line interface: solve Cauchy problems, verify the functional
// equations, convert between recurrences and annihilating operators, and
// evaluate truncated series, all with deterministic JSON input and output.
//
// Exit codes: 0 success (or verification pass), 1 verification mismatch,
// 2 usage or input error.

#include "dgs/dgs.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using dgs::MultiIndex;
using dgs::Rational;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    return parts;
}

MultiIndex parse_window(const std::string& text, int dim) {
    std::vector<std::int64_t> parts;
    for (const auto& piece : split(text, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoll(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw std::runtime_error("invalid window component '" + piece + "'");
        }
    }
    if (parts.size() == 1 && dim > 1) parts.assign(static_cast<std::size_t>(dim), parts[0]);
    if (static_cast<int>(parts.size()) != dim)
        throw std::runtime_error("window needs " + std::to_string(dim) + " components");
    return MultiIndex(std::move(parts));
}

/// Default window 4*(m+1), large enough for drop-free verification of the
/// bundled problems.
MultiIndex default_window(const dgs::CauchyProblem& problem) {
    MultiIndex w = problem.equation.order();
    for (int j = 0; j < w.dim(); ++j) w[j] = 4 * (w[j] + 1);
    return w;
}

std::vector<Rational> parse_rational_list(const std::string& text, int dim, const char* what) {
    std::vector<Rational> values;
    for (const auto& piece : split(text, ',')) values.push_back(Rational::parse(piece));
    if (static_cast<int>(values.size()) != dim)
        throw std::runtime_error(std::string(what) + " needs " + std::to_string(dim) +
                                 " components");
    return values;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << text;
}

dgs::TheoremSelector parse_selector(const std::string& name) {
    if (name == "auto") return dgs::TheoremSelector::automatic;
    if (name == "t1") return dgs::TheoremSelector::t1;
    if (name == "t3") return dgs::TheoremSelector::t3;
    if (name == "t5") return dgs::TheoremSelector::t5;
    throw std::runtime_error("unknown theorem selector '" + name + "'");
}

dgs::FormSelection parse_forms(const std::string& text) {
    dgs::FormSelection forms{false, false, false};
    for (char ch : text) {
        switch (ch) {
            case 'a': case 'A': forms.a = true; break;
            case 'b': case 'B': forms.b = true; break;
            case 'c': case 'C': forms.c = true; break;
            case ',': case ' ': break;
            default: throw std::runtime_error(std::string("unknown form '") + ch + "'");
        }
    }
    if (!forms.a && !forms.b && !forms.c)
        throw std::runtime_error("no right-hand-side forms selected");
    return forms;
}

/// "INDEX=DELTA" (index comma-separated): adds DELTA to the initial value
/// at INDEX when building the right-hand sides only.
dgs::InitialData perturbed_data(const dgs::CauchyProblem& problem, const std::string& spec) {
    const auto eq_pos = spec.find('=');
    if (eq_pos == std::string::npos)
        throw std::runtime_error("perturbation must look like INDEX=DELTA");
    std::vector<std::int64_t> comps;
    for (const auto& piece : split(spec.substr(0, eq_pos), ','))
        comps.push_back(std::stoll(piece));
    const MultiIndex x{std::vector<std::int64_t>(comps)};
    if (x.dim() != problem.equation.dim())
        throw std::runtime_error("perturbation index has the wrong dimension");
    const Rational delta = Rational::parse(spec.substr(eq_pos + 1));

    const auto& data = problem.data;
    const MultiIndex& m = problem.equation.order();
    if (!data.in_region(x, m))
        throw std::runtime_error("perturbation index " + x.str() +
                                 " is outside the initial region");
    std::vector<std::pair<MultiIndex, Rational>> values;
    bool found = false;
    for (const auto& [idx, v] : data.values()) {
        if (idx == x) {
            values.emplace_back(idx, v + delta);
            found = true;
        } else {
            values.emplace_back(idx, v);
        }
    }
    if (!found) values.emplace_back(x, data.default_value() + delta);
    return dgs::InitialData(data.base_offset(), std::move(values), data.default_value());
}

struct Options {
    std::string problem_path;
    std::string out_path;
    std::string window_text;
    std::string theorem = "auto";
    std::string forms_text = "abc";
    std::string perturb_text;
    std::string direction;
    std::string xi_text;
    std::string z_text;
};

int cmd_solve(const Options& opt) {
    const dgs::CauchyProblem problem = dgs::problem_from_json(dgs::load_document(opt.problem_path));
    const MultiIndex window = opt.window_text.empty()
                                  ? default_window(problem)
                                  : parse_window(opt.window_text, problem.equation.dim());
    const dgs::Series solved = dgs::solve_cauchy(problem, window);
    write_output(dgs::dump_document(dgs::to_json(solved)), opt.out_path);
    return 0;
}

int cmd_verify(const Options& opt) {
    const dgs::CauchyProblem problem = dgs::problem_from_json(dgs::load_document(opt.problem_path));
    const MultiIndex window = opt.window_text.empty()
                                  ? default_window(problem)
                                  : parse_window(opt.window_text, problem.equation.dim());
    std::optional<dgs::InitialData> rhs_data;
    if (!opt.perturb_text.empty()) rhs_data = perturbed_data(problem, opt.perturb_text);
    const dgs::VerificationReport report = dgs::verify_functional_equation(
        problem, window, parse_selector(opt.theorem), parse_forms(opt.forms_text), rhs_data);
    std::cout << dgs::dump_document(dgs::to_json(report));
    return report.pass() ? 0 : 1;
}

int cmd_convert(const Options& opt) {
    const dgs::Json doc = dgs::load_document(opt.problem_path);
    if (opt.direction == "to-operator") {
        if (!doc.contains("m"))
            throw std::runtime_error("to-operator expects a problem/equation document");
        const dgs::CauchyProblem problem = dgs::problem_from_json(doc);
        const dgs::SeriesOperator op =
            dgs::to_annihilator(problem.equation.forward(), problem.ell);
        write_output(dgs::dump_document(dgs::to_json(op)), opt.out_path);
        return 0;
    }
    if (opt.direction == "to-recurrence") {
        if (doc.contains("m"))
            throw std::runtime_error("to-recurrence expects an operator document");
        const dgs::SeriesOperator op = dgs::operator_from_json(doc);
        const dgs::DifferenceEquation eq = dgs::to_recurrence(op).forward();
        write_output(dgs::dump_document(dgs::to_json(eq, op.ell())), opt.out_path);
        return 0;
    }
    throw std::runtime_error("direction must be to-operator or to-recurrence");
}

int cmd_eval(const Options& opt) {
    const dgs::Series series = dgs::series_from_json(dgs::load_document(opt.problem_path));
    const auto xi = parse_rational_list(opt.xi_text, series.dim(), "--xi");
    const auto z = parse_rational_list(opt.z_text, series.dim(), "--z");
    std::cout << series.evaluate(xi, z).str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with discrete generating series"};
    app.require_subcommand(1);
    Options opt;

    auto* solve = app.add_subcommand("solve", "solve a Cauchy problem on a window");
    solve->add_option("-p,--problem", opt.problem_path, "problem JSON file")->required();
    solve->add_option("-w,--window", opt.window_text, "window, comma-separated integers");
    solve->add_option("-o,--out", opt.out_path, "output file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "verify the functional equations");
    verify->add_option("-p,--problem", opt.problem_path, "problem JSON file")->required();
    verify->add_option("-w,--window", opt.window_text, "window, comma-separated integers");
    verify->add_option("--theorem", opt.theorem, "auto, t1, t3 or t5")
        ->check(CLI::IsMember({"auto", "t1", "t3", "t5"}));
    verify->add_option("--forms", opt.forms_text, "right-hand-side forms, subset of a,b,c");
    verify->add_option("--perturb", opt.perturb_text,
                       "INDEX=DELTA: perturb one initial value in the right-hand sides only");

    auto* convert = app.add_subcommand("convert", "convert recurrence <-> operator");
    convert->add_option("direction", opt.direction, "to-operator or to-recurrence")
        ->required()
        ->check(CLI::IsMember({"to-operator", "to-recurrence"}));
    convert->add_option("-p,--problem", opt.problem_path, "input JSON file")->required();
    convert->add_option("-o,--out", opt.out_path, "output file (default: stdout)");

    auto* eval = app.add_subcommand("eval", "evaluate a series at a rational point");
    eval->add_option("-p,--problem", opt.problem_path, "series JSON file")->required();
    eval->add_option("--xi", opt.xi_text, "xi values, comma-separated rationals")->required();
    eval->add_option("--z", opt.z_text, "z values, comma-separated rationals")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (convert->parsed()) return cmd_convert(opt);
        if (eval->parsed()) return cmd_eval(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
