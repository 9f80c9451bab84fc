#include "helpers.hpp"

#include "shapcount/circuit.hpp"
#include "shapcount/circuit_io.hpp"
#include "shapcount/enumerate.hpp"
#include "shapcount/random.hpp"

#include <gtest/gtest.h>

using namespace shapcount;
using namespace shapcount::testing;

namespace {

// (~x1 ^ x2) v (x1 ^ x3)
const char* kDecision = "nnf 7 6 3\n"
                        "L -1\n"
                        "L 2\n"
                        "A 2 0 1\n"
                        "L 1\n"
                        "L 3\n"
                        "A 2 3 4\n"
                        "O 1 2 2 5\n";

// x1 ^ (x2 v (~x2 ^ ~x3)), equivalent to x1 ^ (x2 v ~x3)
const char* kWorked = "nnf 7 6 3\n"
                        "L 1\n"
                        "L 2\n"
                        "L -2\n"
                        "L -3\n"
                        "A 2 2 3\n"
                        "O 2 2 1 4\n"
                        "A 2 0 5\n";

BigInt enumerate_count(const Circuit& c) {
    BigInt total = 0;
    for (auto w : truth_words(c)) total += static_cast<unsigned long>(std::popcount(w));
    return total;
}

} // namespace

TEST(ParseNnf, SingleVariable) {
    const Circuit c = parse_nnf("nnf 1 0 1\nL 1\n");
    EXPECT_EQ(c.size(), 1U);
    EXPECT_EQ(c.gate(0).kind, GateKind::Var);
}

TEST(ParseNnf, DecisionExampleHasEightGates) {
    const Circuit c = parse_nnf(kDecision);
    EXPECT_EQ(c.size(), 8U);
    EXPECT_TRUE(c.is_leaf_nnf());
    EXPECT_EQ(c.scope(c.output()), (std::vector<VarId>{0, 1, 2}));
    const Circuit again = parse_nnf(write_nnf(c));
    EXPECT_EQ(write_nnf(again), write_nnf(c));
    EXPECT_EQ(again.size(), 8U);
}

TEST(ParseNnf, Errors) {
    EXPECT_THROW(parse_nnf("nnf 2 0 1\nL 1\n"), InputError);          // gate count mismatch
    EXPECT_THROW(parse_nnf("nnf 2 2 2\nL 1\nA 2 0 1\n"), InputError); // self reference
    EXPECT_THROW(parse_nnf("nnf 2 2 2\nA 2 1 1\nL 1\n"), InputError); // forward reference
    EXPECT_THROW(parse_nnf("nnf 1 0 1\nL 2\n"), InputError);          // variable range
    EXPECT_THROW(parse_nnf("nnf 2 1 1\nL 1\nA 1 0\n"), InputError);   // unary gate
    EXPECT_THROW(parse_nnf("nnf 2 0 1\nL 1\nT\n"), InputError);       // dangling gate
    EXPECT_THROW(parse_nnf("nnf 3 3 2\nL 1\nL 2\nA 2 0 1\n"), InputError); // edge count
    EXPECT_THROW(parse_nnf("L 1\n"), InputError);
    try {
        parse_nnf("nnf 2 1 1\nc note\nL 1\nX 0\n");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
}

TEST(ParseNnf, ConstantsAndNegation) {
    EXPECT_EQ(model_count_dd(parse_nnf("nnf 1 0 3\nT\n")), 8);
    EXPECT_EQ(model_count_dd(parse_nnf("nnf 1 0 3\nA 0\n")), 8);
    EXPECT_EQ(model_count_dd(parse_nnf("nnf 1 0 3\nO 0 0\n")), 0);
    const Circuit c = parse_nnf("nnf 4 3 2\nL 1\nL 2\nO 0 2 0 1\nN 2\n");
    EXPECT_FALSE(c.is_leaf_nnf());
    EXPECT_EQ(parse_nnf(write_nnf(c)).size(), c.size());
}

TEST(Decomposable, Examples) {
    EXPECT_TRUE(check_decomposable(parse_nnf(kDecision)).decomposable);
    const auto bad = check_decomposable(parse_nnf("nnf 3 2 1\nL 1\nL 1\nA 2 0 1\n"));
    EXPECT_FALSE(bad.decomposable);
    EXPECT_EQ(bad.violations, (std::vector<std::size_t>{2}));
    EXPECT_TRUE(check_decomposable(parse_nnf("nnf 5 4 3\nL 1\nL 2\nL 3\nA 2 1 2\nA 2 0 3\n")).decomposable);
}

TEST(Deterministic, Examples) {
    EXPECT_EQ(check_deterministic_exhaustive(parse_nnf(kDecision)).status, DeterminismStatus::Verified);
    const auto r = check_deterministic_exhaustive(parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n"));
    EXPECT_EQ(r.status, DeterminismStatus::Refuted);
    EXPECT_EQ(r.witness, (std::vector<VarId>{0, 1}));
    EXPECT_EQ(check_deterministic_exhaustive(parse_nnf(kDecision), 2).status, DeterminismStatus::Assumed);
}

TEST(Deterministic, SubstitutedCircuitStaysVerified) {
    const Circuit c = parse_nnf(kDecision);
    for (VarId x = 0; x < 3; ++x)
        for (std::size_t l = 0; l <= 3; ++l)
            EXPECT_EQ(check_deterministic_exhaustive(or_substitute_circuit(c, x, l).circuit).status,
                      DeterminismStatus::Verified);
}

TEST(ModelCount, Examples) {
    EXPECT_EQ(model_count_dd(parse_nnf(kDecision)), 4);
    EXPECT_EQ(model_count_dd(parse_nnf("nnf 1 0 3\nT\n")), 8);
    EXPECT_EQ(model_count_dd(parse_nnf(kWorked)), 3);
}

TEST(ModelCount, Refusals) {
    EXPECT_THROW(model_count_dd(parse_nnf("nnf 3 2 1\nL 1\nL 1\nA 2 0 1\n")), RefusalError);
    const Circuit nondet = parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n");
    EXPECT_NO_THROW(model_count_dd(nondet));
    EXPECT_THROW(model_count_dd(nondet, {true, 20}), RefusalError);
}

TEST(SizePolynomial, Examples) {
    EXPECT_EQ(size_polynomial_count(parse_nnf(kWorked)), kc({0, 1, 1, 1}));
    EXPECT_EQ(size_polynomial_count(parse_nnf("nnf 1 0 2\nT\n")), kc({1, 2, 1}));
    EXPECT_EQ(size_polynomial_count(parse_nnf(kDecision)), kc({0, 1, 2, 1}));
}

TEST(OrSubstituteCircuit, SingleVariableChain) {
    const auto r = or_substitute_circuit(parse_nnf("nnf 1 0 1\nL 1\n"), 0, 2);
    EXPECT_EQ(r.circuit.var_count(), 2U);
    EXPECT_EQ(model_count_dd(r.circuit), 3);
    EXPECT_EQ(format_formula(unfold(r.circuit)), "(or x1 (and (not x1) x2))");
}

TEST(OrSubstituteCircuit, UnitArityIsIsomorphic) {
    const Circuit c = parse_nnf(kDecision);
    const auto r = or_substitute_circuit(c, 1, 1);
    EXPECT_TRUE(equivalent(unfold(r.circuit), unfold(c)));
    EXPECT_EQ(r.circuit.var_count(), 3U);
}

TEST(OrSubstituteCircuit, DecisionExample) {
    const auto r = or_substitute_circuit(parse_nnf(kDecision), 0, 2);
    EXPECT_EQ(r.circuit.var_count(), 4U);
    EXPECT_EQ(model_count_dd(r.circuit), 8);
    EXPECT_EQ(brute_count(formula("(or (and (not (or x1 x2)) x3) (and (or x1 x2) x4))")), 8);
}

TEST(OrSubstituteCircuit, ZeroArityGivesConstants) {
    const auto r = or_substitute_circuit(parse_nnf(kDecision), 0, 0);
    EXPECT_EQ(r.circuit.var_count(), 2U);
    EXPECT_TRUE(equivalent(unfold(r.circuit), formula("vars 2\n(or x1 (and 0 x2))")));
}

TEST(OrSubstituteCircuit, RejectsInnerNegationOnSubstitutedVariable) {
    const Circuit c = parse_nnf("nnf 4 3 2\nL 1\nL 2\nO 0 2 0 1\nN 2\n");
    EXPECT_THROW(or_substitute_circuit(c, 0, 2), InputError);
    // renaming only is fine
    EXPECT_NO_THROW(or_substitute_circuit(c, 0, 1));
}

TEST(KCountsCircuit, Examples) {
    EXPECT_EQ(kcounts_circuit(parse_nnf(kWorked)), kc({0, 1, 1, 1}));
    EXPECT_EQ(kcounts_circuit(parse_nnf("nnf 1 0 2\nT\n")), kc({1, 2, 1}));
    EXPECT_EQ(kcounts_circuit(parse_nnf(kDecision)), kc({0, 1, 2, 1}));
}

TEST(ShapleyCircuit, Examples) {
    EXPECT_EQ(shapley_circuit(parse_nnf(kWorked)), shap({"5/6", "2/6", "-1/6"}));
    EXPECT_EQ(shapley_circuit(parse_nnf("nnf 1 0 3\nF\n")), shap({"0", "0", "0"}));
    const Circuit c = parse_nnf(kDecision);
    EXPECT_EQ(shapley_circuit(c), brute_shapley_permutations(unfold(c)));
    EXPECT_EQ(shapley_circuit(c), shap({"0", "1/2", "1/2"}));
    EXPECT_EQ(shapley_circuit(c, CircuitKCountMethod::Polynomial), shapley_circuit(c));
}

TEST(CircuitFromFormula, RoundTrip) {
    const Circuit c = circuit_from_formula(worked());
    EXPECT_TRUE(equivalent(unfold(c), worked()));
    EXPECT_EQ(evaluate(c, Valuation::from_set(3, std::vector<VarId>{0})), true);
}

TEST(Properties, RandomCircuitsCountCorrectly) {
    Rng rng(31);
    for (std::size_t it = 0; it < 150; ++it) {
        const Circuit c = random_dd_circuit(rng, detail::pick(rng, 0, 12));
        ASSERT_TRUE(check_decomposable(c).decomposable);
        ASSERT_EQ(check_deterministic_exhaustive(c).status, DeterminismStatus::Verified) << write_nnf(c);
        const BoolFunc f = unfold(c);
        ASSERT_EQ(truth_words(c), TruthTable(f).words());
        ASSERT_EQ(model_count_dd(c), enumerate_count(c)) << write_nnf(c);
        const KCountVector k = brute_kcounts(f);
        ASSERT_EQ(size_polynomial_count(c), k) << write_nnf(c);
        ASSERT_EQ(kcounts_circuit(c), k) << write_nnf(c);
        if (c.var_count() <= 8) { ASSERT_EQ(shapley_circuit(c), brute_shapley_permutations(f)) << write_nnf(c); }
    }
}

TEST(Properties, SubstitutionPreservesEverything) {
    Rng rng(32);
    for (std::size_t it = 0; it < 150; ++it) {
        const Circuit c = random_dd_circuit(rng, detail::pick(rng, 1, 10));
        const VarId x = detail::pick(rng, 0, c.var_count() - 1);
        const std::size_t l = detail::pick(rng, 0, 3);
        const auto r = or_substitute_circuit(c, x, l);
        ASSERT_TRUE(check_decomposable(r.circuit).decomposable);
        ASSERT_EQ(check_deterministic_exhaustive(r.circuit).status, DeterminismStatus::Verified);
        ASSERT_LE(r.circuit.size(), c.size() + kSubstitutionGrowth * std::max<std::size_t>(1, c.occurrences(x)) * l);
        std::vector<std::size_t> a(c.var_count(), 1);
        a[x] = l;
        const BoolFunc expect = or_substitute(unfold(c), a).func;
        ASSERT_TRUE(equivalent(unfold(r.circuit), expect)) << write_nnf(c) << " x=" << x << " l=" << l;
    }
}

TEST(Properties, ParseWriteRoundTrip) {
    Rng rng(33);
    for (std::size_t it = 0; it < 100; ++it) {
        const Circuit c = random_dd_circuit(rng, detail::pick(rng, 0, 8));
        const std::string text = write_nnf(c);
        const Circuit back = parse_nnf(text);
        ASSERT_EQ(write_nnf(back), text);
        ASSERT_EQ(truth_words(back), truth_words(c));
    }
}
