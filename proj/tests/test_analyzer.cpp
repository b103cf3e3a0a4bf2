#include <cmath>

#include "doctest.h"
#include "torussym/analyzer.hpp"
#include "torussym/json_io.hpp"

using namespace torussym;

TEST_CASE("analyze polydisk: full Reinhardt report with asserted conclusion") {
    SymmetryReport rep = analyze(DomainSpec::polydisk({1, 1}), 3, AnalyzeBudgets{}, std::nullopt);
    CHECK(rep.classification.is_reinhardt);
    CHECK(rep.classification.is_circular);
    CHECK(rep.count_nonzero == 0);
    CHECK(rep.count_inconclusive == 0);
    CHECK(rep.condition_d.all_hold());
    CHECK(rep.theorem_statement.find("is invariant") != std::string::npos);
    CHECK(rep.star_violation_rate == 0.0);
}

TEST_CASE("analyze sheared ball: circular only") {
    SymmetryReport rep = analyze(DomainSpec::sheared_ball(), 3, AnalyzeBudgets{}, std::nullopt);
    CHECK_FALSE(rep.classification.is_reinhardt);
    CHECK(rep.classification.is_circular);
    CHECK(rep.classification.hartogs_coords.empty());
    CHECK(lattice_equal(rep.classification.detected_action, TorusAction(2, {{1, 1}})));
    CHECK(rep.differences.provenance.count(DifferenceVector({1, -1})) == 1);
}

TEST_CASE("analyze translated disk product: Hartogs in coordinate 2 only") {
    SymmetryReport rep = analyze(DomainSpec::translated_disk_product(Complex(0.5, 0), 1.0, 1.0),
                                 3, AnalyzeBudgets{}, std::nullopt);
    CHECK(rep.classification.hartogs_coords == std::vector<int>{2});
    CHECK(lattice_equal(rep.classification.detected_action, TorusAction(2, {{0, 1}})));
}

TEST_CASE("analyze mixed quasi-Reinhardt domain") {
    SymmetryReport rep =
        analyze(DomainSpec::mixed_quasi_reinhardt(), 3, AnalyzeBudgets{}, std::nullopt);
    CHECK(lattice_equal(rep.classification.detected_action,
                        TorusAction(3, {{1, 2, 0}, {0, 0, 1}})));
    CHECK(rep.classification.hartogs_coords == std::vector<int>{3});
}

TEST_CASE("punctured ball carries the interior-of-closure caveat") {
    Point removed = {Complex(0.2, 0), Complex(0, 0)};
    SymmetryReport ball = analyze(DomainSpec::ball(2, 1.0), 3, AnalyzeBudgets{}, std::nullopt);
    SymmetryReport punct =
        analyze(DomainSpec::punctured_ball(2, 1.0, removed), 3, AnalyzeBudgets{}, std::nullopt);
    CHECK(punct.classification.is_reinhardt == ball.classification.is_reinhardt);
    CHECK(lattice_equal(punct.classification.detected_action,
                        ball.classification.detected_action));
    CHECK(ball.caveats.empty());
    REQUIRE_FALSE(punct.caveats.empty());
    CHECK(punct.caveats[0].find("interior of the closure") != std::string::npos);
    CHECK(ball.theorem_statement.find("domain itself is") != std::string::npos);
    CHECK(punct.theorem_statement.find("domain itself is") == std::string::npos);
}

TEST_CASE("analyze is deterministic byte for byte") {
    AnalyzeBudgets b;
    b.gram_budget = 100000;
    b.star_samples = 2000;
    SymmetryReport r1 = analyze(DomainSpec::sheared_ball(), 3, b, std::nullopt,
                                MethodRequest::monte_carlo, 7);
    SymmetryReport r2 = analyze(DomainSpec::sheared_ball(), 3, b, std::nullopt,
                                MethodRequest::monte_carlo, 7);
    CHECK(dump_json(r1.to_json()) == dump_json(r2.to_json()));
}

TEST_CASE("verify_invariance: exact symmetry vs negative control") {
    InvarianceCheck good =
        verify_invariance(DomainSpec::ball(2, 1.0), TorusAction::weights({1, 1}), 100000, 1);
    CHECK(good.violation_rate == 0.0);
    CHECK(good.witnesses.empty());

    InvarianceCheck bad =
        verify_invariance(DomainSpec::sheared_ball(), TorusAction::identity(2), 100000, 1);
    CHECK(bad.violation_rate > 0.01);
    CHECK(bad.witnesses.size() == 10);

    InvarianceCheck cubic = verify_invariance(DomainSpec::quasi_circular_cubic(),
                                              TorusAction::weights({1, 2}), 100000, 1);
    CHECK(cubic.violation_rate == 0.0);
}

TEST_CASE("verify_calculation_identity") {
    // trivial character: residual identically zero, moment itself nonzero
    CalculationIdentityCheck trivial = verify_calculation_identity(
        DomainSpec::polydisk({1, 1}), TorusAction::identity(2), MultiIndex{1, 0},
        MultiIndex{1, 0}, 100, 100000, 5);
    CHECK(trivial.g_trivial);
    CHECK(trivial.max_residual == 0.0);
    CHECK(std::abs(trivial.estimate.value) > 1.0);

    // nontrivial character on an invariant domain: moment must vanish
    CalculationIdentityCheck forced = verify_calculation_identity(
        DomainSpec::ball(2, 1.0), TorusAction::weights({1, 1}), MultiIndex{1, 0},
        MultiIndex{0, 0}, 100, 100000, 5);
    CHECK_FALSE(forced.g_trivial);
    CHECK(std::abs(forced.estimate.value) <=
          4.0 * std::max(forced.estimate.std_error, 1e-12));
    CHECK(forced.max_residual <= 8.0 * std::max(forced.estimate.std_error, 1e-12));

    // weight (1,2) pairs z1^2 with z2: g trivial, moment nonzero
    CalculationIdentityCheck paired = verify_calculation_identity(
        DomainSpec::quasi_circular_cubic(), TorusAction::weights({1, 2}), MultiIndex{2, 0},
        MultiIndex{0, 1}, 100, 100000, 5);
    CHECK(paired.g_trivial);
    CHECK(paired.max_residual == 0.0);
    CHECK(std::abs(paired.estimate.value) > 100.0);
}

TEST_CASE("complete Reinhardt probe") {
    CHECK(check_complete_reinhardt(DomainSpec::polydisk({1, 1}), 20000, 2).violation_rate ==
          0.0);
    CHECK(check_complete_reinhardt(DomainSpec::ball(2, 1.0), 20000, 2).violation_rate == 0.0);
    InvarianceCheck holed =
        check_complete_reinhardt(DomainSpec::polydisk_difference({2, 2}, {1, 1}), 20000, 2);
    CHECK(holed.violation_rate > 0.1);
}

TEST_CASE("report json carries schema and reproducibility fields") {
    AnalyzeBudgets b;
    b.star_samples = 1000;
    SymmetryReport rep =
        analyze(DomainSpec::polydisk({1, 1}), 2, b, std::nullopt, MethodRequest::automatic, 11);
    nlohmann::ordered_json j = rep.to_json();
    CHECK(j.at("schema_version").get<int>() == kReportSchemaVersion);
    CHECK(j.at("tool_version").get<std::string>() == kToolVersion);
    CHECK(j.at("seed").get<std::uint64_t>() == 11);
    CHECK(j.at("budgets").contains("gram"));
    CHECK(j.at("policy").contains("abs_tol"));
    CHECK(j.contains("theorem_statement"));
    CHECK(j.contains("condition_d"));
}
