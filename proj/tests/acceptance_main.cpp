// Acceptance suite: every check is exact (zero tolerance). Prints one
// PASS/FAIL line per criterion and exits nonzero if any criterion fails.
//
// Usage: dgs_acceptance [path-to-dgs-cli]
// The CLI path is needed only by the golden-file criterion.

#include "dgs/dgs.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace dgs;

namespace {

std::string g_cli_path;
const std::string kRoot = DGS_SOURCE_ROOT;

struct Failure {
    std::string message;
};

void expect(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

// ---- problem builders shared across criteria ------------------------------

CauchyProblem tribonacci_problem() {
    return problem_from_json(load_document(kRoot + "/data/tribonacci.json"));
}
CauchyProblem fibonacci_problem() {
    return problem_from_json(load_document(kRoot + "/data/fibonacci.json"));
}
CauchyProblem schroeder_problem() {
    return problem_from_json(load_document(kRoot + "/data/schroeder.json"));
}
CauchyProblem pascal_problem() {
    return problem_from_json(load_document(kRoot + "/data/pascal.json"));
}

// ---- criteria --------------------------------------------------------------

// Solver equals the memoized recursion oracle; the univariate functional
// equation holds in all three forms; left and right sides reduce to the
// displayed combination of the initial values.
void criterion1() {
    const auto problem = tribonacci_problem();
    const Series f = solve_cauchy(problem, MultiIndex{24});
    oracles::DirectRecursion oracle(problem);
    for (std::int64_t x = 0; x <= 20; ++x)
        expect(f.at(MultiIndex{x}) == oracle.value(MultiIndex{x}),
               "solver disagrees with the recursion oracle at " + std::to_string(x));

    const auto report =
        verify_functional_equation(problem, MultiIndex{24}, TheoremSelector::t1);
    expect(report.pass(), "three-form verification failed");

    // displayed right-hand side: phi(0) + phi(1) b1 + phi(2) b2
    //   - S(phi(0) + phi(1) b1) - S^2 phi(0)
    const MultiIndex w{24};
    Series data(problem.ell, w);
    for (std::int64_t x = 0; x <= 2; ++x)
        data.add_at(MultiIndex{x}, problem.data.at(MultiIndex{x}, MultiIndex{3}));
    Series display = data;
    display -= shift_weight(data.truncated(MultiIndex{1}).resized(w), MultiIndex{1}).series;
    display -= shift_weight(data.truncated(MultiIndex{0}).resized(w), MultiIndex{2}).series;

    const Series lhs =
        to_annihilator(problem.equation, problem.ell).apply(f).series;
    expect(lhs == display, "operator image does not match the displayed right-hand side");
    expect(display == Series(problem.ell, w, {{MultiIndex{2}, Rational(1)}}),
           "displayed right-hand side is not the single basis term at 2");
}

// Dissection counts, the annihilator's exact normal form, and full
// annihilation after composing the support prefactor.
void criterion2() {
    const auto problem = schroeder_problem();
    const Series f = solve_cauchy(problem, MultiIndex{20});
    for (int n = 3; n <= 10; ++n)
        expect(f.at(MultiIndex{n - 1}) == Rational(oracles::polygon_dissections(n)),
               "solver disagrees with dissection enumeration at n = " + std::to_string(n));

    const SeriesOperator ann = to_annihilator(problem.equation, problem.ell);
    const auto terms = ann.presentation();
    expect(terms.size() == 3, "annihilator must have three terms");
    expect(terms[0].coeff == Rational(1) && terms[0].beta == MultiIndex{0} &&
               terms[0].q == Polynomial::variable(1, 0),
           "term at shift 0 must be theta");
    expect(terms[1].coeff == Rational(1) && terms[1].beta == MultiIndex{1} &&
               terms[1].q == Polynomial::univariate({Rational(3), Rational(-6)}),
           "term at shift 1 must be -6 theta + 3");
    expect(terms[2].coeff == Rational(1) && terms[2].beta == MultiIndex{2} &&
               terms[2].q == Polynomial::univariate({Rational(-1), Rational(1)}),
           "term at shift 2 must be theta - 1");

    const Series residual = ann.apply(f).series;
    const SeriesOperator prefactor = support_prefactor(residual);
    expect((prefactor * ann).apply(f).series.is_zero(),
           "prefactor composition must annihilate the solved series");

    // The data variant starting at index 0 leaves a residual inside {0, 1},
    // so composing theta(theta - 1) in front annihilates as displayed.
    const CauchyProblem base_variant(
        problem.equation,
        InitialData(MultiIndex{0}, {{MultiIndex{0}, Rational(-1)}, {MultiIndex{1}, Rational(1)}},
                    Rational(0)),
        problem.ell);
    const Series g = solve_cauchy(base_variant, MultiIndex{20});
    for (int n = 3; n <= 10; ++n)
        expect(g.at(MultiIndex{n - 1}) == Rational(oracles::polygon_dissections(n)),
               "base variant no longer matches the dissection counts");
    SeriesOperator theta_theta_minus_one(problem.ell);
    theta_theta_minus_one.add_term(
        Rational(1), MultiIndex{0},
        Polynomial::univariate({Rational(0), Rational(-1), Rational(1)}));
    expect((theta_theta_minus_one * ann).apply(g).series.is_zero(),
           "theta(theta-1) composition must annihilate the base-data series");
}

// Operator-to-recurrence conversion of the two-term cubic operator.
void criterion3() {
    SeriesOperator op(MultiIndex{1});
    op.add_term(Rational(1), MultiIndex{2}, Polynomial::monomial(MultiIndex{3}, Rational(1)));
    op.add_term(Rational(1), MultiIndex{3}, Polynomial::variable(1, 0));
    const DifferenceEquation fwd = to_recurrence(op).forward();
    expect(fwd.order() == MultiIndex{1}, "extracted order must be 1");
    expect(fwd.coefficient(MultiIndex{1}) ==
               Polynomial::univariate({Rational(1), Rational(3), Rational(3), Rational(1)}),
           "leading coefficient must be (x+1)^3");
    expect(fwd.coefficient(MultiIndex{0}) == Polynomial::variable(1, 0),
           "trailing coefficient must be x");
}

// Round trip recurrence -> operator -> recurrence on random equations.
void criterion4() {
    gen::Rng rng(1004);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 1 + static_cast<int>(gen::pick(rng, 0, 1));
        const auto eq = gen::equation(
            rng, {.dim = dim, .max_order = 3, .max_degree = gen::pick(rng, 0, 3)});
        const auto round =
            to_recurrence(to_annihilator(eq, MultiIndex::ones(dim))).forward().normalized();
        expect(round == eq.normalized(), "round trip failed on trial " + std::to_string(trial));
    }
}

// The annihilator maps every solved series into the initial region.
void criterion5() {
    gen::Rng rng(1005);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 1 + static_cast<int>(gen::pick(rng, 0, 1));
        const auto problem = gen::problem(
            rng, {.dim = dim, .max_order = 2, .max_degree = gen::pick(rng, 0, 2)});
        const MultiIndex window = MultiIndex::constant(dim, dim == 1 ? 12 : 7);
        const Series solved = solve_cauchy(problem, window);
        const Series image =
            to_annihilator(problem.equation, problem.ell).apply(solved).series;
        const MultiIndex limit = problem.data.base_offset() + problem.equation.order();
        for (const auto& [y, v] : image.coeffs())
            expect(y.not_ge(limit),
                   "nonzero coefficient at " + y.str() + " on trial " + std::to_string(trial));
    }
}

// All three right-hand-side forms agree with the operator image, for the
// bundled constant-coefficient problems and random ones.
void criterion6() {
    const auto run = [](const CauchyProblem& problem, const MultiIndex& window) {
        const Series lhs = to_annihilator(problem.equation.forward(), problem.ell)
                               .apply(solve_cauchy(problem, window))
                               .series;
        const auto forms = problem.equation.dim() == 1
                               ? rhs_constant_univariate(problem, window)
                               : rhs_constant(problem, window);
        expect(lhs == forms.a && lhs == forms.b && lhs == forms.c,
               "form equality failed");
    };
    run(tribonacci_problem(), MultiIndex{24});
    run(fibonacci_problem(), MultiIndex{16});
    run(pascal_problem(), MultiIndex{8, 8});

    gen::Rng rng(1006);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 1 + static_cast<int>(gen::pick(rng, 0, 1));
        const auto problem = gen::problem(rng, {.dim = dim, .max_order = 3, .max_degree = 0});
        MultiIndex window = problem.equation.order();
        for (int j = 0; j < dim; ++j) window[j] = 4 * (window[j] + 1);
        run(problem, window);
    }
}

// The polynomial-coefficient right-hand side equals the operator image.
void criterion7() {
    const auto run = [](const CauchyProblem& problem, const MultiIndex& window) {
        const Series lhs = to_annihilator(problem.equation.forward(), problem.ell)
                               .apply(solve_cauchy(problem, window))
                               .series;
        expect(rhs_polynomial(problem, window) == lhs, "right-hand side mismatch");
    };
    run(schroeder_problem(), MultiIndex{20});

    gen::Rng rng(1007);
    for (int trial = 0; trial < 25; ++trial) {
        const int dim = 1 + static_cast<int>(gen::pick(rng, 0, 1));
        const auto problem =
            gen::problem(rng, {.dim = dim, .max_order = 2, .max_degree = 2});
        run(problem, MultiIndex::constant(dim, dim == 1 ? 12 : 8));
    }
}

// Projection identity: the binomial table and random series.
void criterion8() {
    Series pascal(MultiIndex{1, 1}, MultiIndex{12, 12});
    for (const auto& x : box_points_grlex(MultiIndex{0, 0}, MultiIndex{12, 12}))
        pascal.add_at(x, oracles::binomial(x[0] + x[1], x[0]));

    for (std::int64_t x1 = 0; x1 <= 11; ++x1)
        for (std::int64_t x2 = 0; x2 <= 11; ++x2)
            expect((oracles::binomial(x1 + x2 + 2, x1 + 1) -
                    oracles::binomial(x1 + x2 + 1, x1) -
                    oracles::binomial(x1 + x2 + 1, x1 + 1))
                       .is_zero(),
                   "binomial table fails the basic recurrence");

    const auto report = check_projection_identity({Rational(1), Rational(1)}, pascal,
                                                  MultiIndex{12, 12});
    expect(report.pass(), "projection identity failed on the binomial table");

    gen::Rng rng(1008);
    for (int trial = 0; trial < 20; ++trial) {
        const Series f =
            gen::series(rng, MultiIndex{1, 1}, MultiIndex{6, 6}, MultiIndex{6, 6}, 8);
        const std::vector<Rational> c{gen::rational(rng), gen::rational(rng)};
        expect(check_projection_identity(c, f, MultiIndex{6, 6}).pass(),
               "projection identity failed on trial " + std::to_string(trial));
    }
}

// Operator algebra laws: commutation, composition homomorphism, and the
// analytic evaluation oracle.
void criterion9() {
    gen::Rng rng(1009);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 1 + static_cast<int>(gen::pick(rng, 0, 1));
        MultiIndex ell = MultiIndex::zero(dim);
        for (int j = 0; j < dim; ++j) ell[j] = gen::pick(rng, 1, 2);
        const MultiIndex support = MultiIndex::constant(dim, 2);
        const MultiIndex window = MultiIndex::constant(dim, 10);
        const Series f = gen::series(rng, ell, support, window, 6);

        // commutation theta_j o S^beta = S^beta o (theta_j + beta_j)
        MultiIndex beta = MultiIndex::zero(dim);
        for (int j = 0; j < dim; ++j) beta[j] = gen::pick(rng, 0, 2);
        const int axis = static_cast<int>(gen::pick(rng, 0, dim - 1));
        const Series lhs = theta(shift_weight(f, beta).series, axis);
        Series scaled = theta(f, axis);
        for (const auto& [x, v] : f.coeffs()) scaled.add_at(x, Rational(beta[axis]) * v);
        expect(lhs == shift_weight(scaled, beta).series,
               "commutation failed on trial " + std::to_string(trial));

        // composition homomorphism
        const SeriesOperator a = gen::shift_operator(rng, ell, 2, 2);
        const SeriesOperator b = gen::shift_operator(rng, ell, 2, 2);
        const auto once = (a * b).apply(f);
        const auto stepwise = a.apply(b.apply(f).series);
        expect(once.dropped == 0 && stepwise.dropped == 0,
               "window too small for a drop-free check");
        expect(once.series == stepwise.series,
               "composition homomorphism failed on trial " + std::to_string(trial));

        // analytic evaluation against apply-then-evaluate
        const auto applied = a.apply(f);
        expect(applied.dropped == 0, "unexpected drops");
        for (int point = 0; point < 10; ++point) {
            std::vector<Rational> xi, z;
            for (int j = 0; j < dim; ++j) {
                xi.emplace_back(gen::pick(rng, -3, 3));
                z.emplace_back(gen::pick(rng, -4, 8));
            }
            expect(analytic_eval(a, f, xi, z) == applied.series.evaluate(xi, z),
                   "analytic evaluation mismatch on trial " + std::to_string(trial));
        }
    }
}

// ---- CLI golden files -------------------------------------------------------

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string command = g_cli_path + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw Failure{"cannot spawn: " + command};
    std::string out;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
    const int status = pclose(pipe);
    const int code = (status >= 256) ? status / 256 : status;  // WEXITSTATUS
    return {code, out};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{"missing file: " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void expect_golden(const std::string& args, int want_code, const std::string& golden_name) {
    const CliResult got = run_cli(args);
    expect(got.exit_code == want_code,
           "exit code " + std::to_string(got.exit_code) + " != " + std::to_string(want_code) +
               " for: " + args);
    const std::string want = read_file(kRoot + "/tests/golden/" + golden_name);
    expect(got.out == want, "output differs from golden " + golden_name + " for: " + args);
}

void criterion10() {
    expect(!g_cli_path.empty(), "CLI path argument missing");
    const std::string data = kRoot + "/data";

    expect_golden("solve -p " + data + "/tribonacci.json -w 12", 0, "tribonacci_solve_w12.json");
    expect_golden("verify -p " + data + "/tribonacci.json -w 24 --theorem t1 --forms a,b,c", 0,
                  "tribonacci_verify_t1_w24.json");
    expect_golden("solve -p " + data + "/schroeder.json -w 20", 0, "schroeder_solve_w20.json");
    expect_golden("verify -p " + data + "/schroeder.json -w 20 --theorem t5", 0,
                  "schroeder_verify_t5_w20.json");
    expect_golden("verify -p " + data + "/pascal.json -w 8,8 --theorem t3", 0,
                  "pascal_verify_t3_w8.json");
    expect_golden("convert to-recurrence -p " + data + "/example3-operator.json", 0,
                  "example3_to_recurrence.json");
    expect_golden("convert to-operator -p " + data + "/schroeder.json", 0,
                  "schroeder_to_operator.json");
    expect_golden("eval -p " + data + "/sample-series.json --xi 1 --z 2", 0, "eval_sample.txt");

    // exit-code contract: 1 on mismatch, 2 on malformed input
    expect_golden("verify -p " + data + "/tribonacci.json -w 24 --perturb 2=1", 1,
                  "tribonacci_verify_perturbed.json");
    const CliResult corrupt = run_cli("solve -p " + kRoot + "/tests/data/corrupt-problem.json");
    expect(corrupt.exit_code == 2, "corrupt input must exit 2");
    const CliResult too_small = run_cli("solve -p " + data + "/tribonacci.json -w 2");
    expect(too_small.exit_code == 2, "window below the order must exit 2");
    const CliResult bad_usage = run_cli("frobnicate");
    expect(bad_usage.exit_code == 2, "unknown subcommand must exit 2");

    // byte-stability across runs
    const CliResult again = run_cli("solve -p " + data + "/tribonacci.json -w 12");
    expect(again.out == read_file(kRoot + "/tests/golden/tribonacci_solve_w12.json"),
           "repeated run is not byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"1. third-order solver vs oracle + three-form verification", criterion1},
        {"2. dissection numbers, annihilator normal form, prefactor kill", criterion2},
        {"3. cubic operator converts to the exact recurrence", criterion3},
        {"4. recurrence/operator round trip on 100 random equations", criterion4},
        {"5. annihilation property on 50 random Cauchy problems", criterion5},
        {"6. three-form equality on bundled + 50 random problems", criterion6},
        {"7. polynomial right-hand side on bundled + 25 random problems", criterion7},
        {"8. projection identity on the binomial table + 20 random series", criterion8},
        {"9. operator algebra laws on 50 random pairs", criterion9},
        {"10. CLI golden files and exit codes", criterion10},
    };

    int failures = 0;
    for (const auto& [name, body] : criteria) {
        try {
            body();
            std::cout << "PASS " << name << "\n";
        } catch (const Failure& f) {
            ++failures;
            std::cout << "FAIL " << name << ": " << f.message << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL " << name << ": unexpected error: " << e.what() << "\n";
        }
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
