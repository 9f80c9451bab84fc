#include "helpers.hpp"

#include "shapcount/dnf.hpp"
#include "shapcount/enumerate.hpp"
#include "shapcount/lineage.hpp"
#include "shapcount/lineage_io.hpp"
#include "shapcount/random.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace shapcount;
using namespace shapcount::testing;

namespace {

// R1 = {a1, a2} (Y1, Y2), R2 = {a1, a2} (Y3, Y4), both endogenous.
Database two_unary() {
    Database d(Schema{{"R1", 1, RelationKind::Endogenous}, {"R2", 1, RelationKind::Endogenous}});
    d.add_row("R1", {"a1"});
    d.add_row("R1", {"a2"});
    d.add_row("R2", {"a1"});
    d.add_row("R2", {"a2"});
    return d;
}

// R = {a1, a2}, S = {(a1,b1), (a2,b2)}, T = {b1, b2}
Database rst_small() {
    Database d(rst_schema());
    d.add_row("R", {"a1"});
    d.add_row("R", {"a2"});
    d.add_row("S", {"a1", "b1"});
    d.add_row("S", {"a2", "b2"});
    d.add_row("T", {"b1"});
    d.add_row("T", {"b2"});
    return d;
}

const Query kTwoUnary = parse_query("Q :- R1(x), R2(x)");

// Hierarchical iff every connected component has a variable in all of its
// atoms and the rest stays hierarchical once that variable is removed.
bool hierarchical_by_decomposition(std::vector<std::set<std::string>> atoms) {
    std::erase_if(atoms, [](const auto& a) { return a.empty(); });
    if (atoms.empty()) return true;
    std::vector<std::size_t> comp(atoms.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = 0; j < atoms.size(); ++j)
                for (const auto& v : atoms[i])
                    if (atoms[j].count(v) && comp[j] > comp[i]) {
                        comp[j] = comp[i];
                        changed = true;
                    }
    }
    for (std::size_t c : std::set<std::size_t>(comp.begin(), comp.end())) {
        std::vector<std::set<std::string>> part;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (comp[i] == c) part.push_back(atoms[i]);
        std::set<std::string> common = part.front();
        for (const auto& a : part) {
            std::set<std::string> keep;
            for (const auto& v : common)
                if (a.count(v)) keep.insert(v);
            common = std::move(keep);
        }
        if (common.empty()) return false;
        const std::string root = *common.begin();
        for (auto& a : part) a.erase(root);
        if (!hierarchical_by_decomposition(part)) return false;
    }
    return true;
}

bool hierarchical_by_decomposition(const Query& q) {
    std::vector<std::set<std::string>> atoms;
    for (const auto& a : q.atoms) {
        std::set<std::string> vs;
        for (const auto& t : a.args)
            if (t.is_variable) vs.insert(t.text);
        atoms.push_back(std::move(vs));
    }
    return hierarchical_by_decomposition(atoms);
}

ClauseSet edges_dnf(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    // X_i are the distinct left indices in order, Y_j the right ones after them
    std::set<std::size_t> left, right;
    for (const auto& [i, j] : edges) {
        left.insert(i);
        right.insert(j);
    }
    auto pos = [](const std::set<std::size_t>& s, std::size_t v) {
        return static_cast<VarId>(std::distance(s.begin(), s.find(v)));
    };
    ClauseSet out;
    for (const auto& [i, j] : edges) out.insert({pos(left, i), static_cast<VarId>(left.size()) + pos(right, j)});
    return out;
}

ClauseSet remap(const ClauseSet& cs, const std::vector<VarId>& map) {
    ClauseSet out;
    for (const auto& c : cs) {
        Clause d;
        for (VarId v : c) d.push_back(map[v]);
        std::sort(d.begin(), d.end());
        out.insert(std::move(d));
    }
    return out;
}

} // namespace

TEST(Database, RejectsBadRows) {
    Database d = two_unary();
    EXPECT_THROW(d.add_row("R1", {"a1"}), InputError);
    EXPECT_THROW(d.add_row("R1", {"a", "b"}), InputError);
    EXPECT_THROW(d.add_row("Nope", {"a"}), InputError);
    EXPECT_THROW(Schema({{"R", 0, RelationKind::Endogenous}}), InputError);
    EXPECT_THROW(Schema({{"R", 1, RelationKind::Endogenous}, {"R", 2, RelationKind::Exogenous}}), InputError);
}

TEST(Database, VariablesRelationThenRow) {
    const Database d = rst_small();
    EXPECT_EQ(d.var_count(), 4U);
    EXPECT_EQ(d.var_of(0, 1), 1U);
    EXPECT_EQ(d.var_of(1, 0), std::nullopt);
    EXPECT_EQ(d.var_of(2, 0), 2U);
    const auto map = d.tuple_map();
    ASSERT_EQ(map.size(), 4U);
    EXPECT_EQ(map[3], (TupleRef{2, 1}));
}

TEST(QueryText, ParseAndFormat) {
    const Query q = parse_query("Q :- R(x), S(x,y), T(y)");
    ASSERT_EQ(q.size(), 3U);
    EXPECT_EQ(q.atoms[1].args[1], Term::var("y"));
    EXPECT_EQ(format_query(q), "Q :- R(x), S(x,y), T(y)");
    const Query c = parse_query("Q:-R(x,'a b',7)  .");
    EXPECT_EQ(c.atoms[0].args[1], Term::value("a b"));
    EXPECT_EQ(c.atoms[0].args[2], Term::value("7"));
    EXPECT_EQ(parse_query(format_query(c)).atoms, c.atoms);
    EXPECT_THROW(parse_query("Q R(x)"), InputError);
    EXPECT_THROW(parse_query("Q :- R(x"), InputError);
    EXPECT_THROW(parse_query("Q :- R()"), InputError);
    EXPECT_THROW(parse_query("Q :- R(x) junk"), InputError);
    EXPECT_THROW(check_query(parse_query("Q :- R(x,y)"), rst_schema()), InputError);
    EXPECT_THROW(check_query(parse_query("Q :- U(x)"), rst_schema()), InputError);
}

TEST(BuildLineage, TwoUnaryRelations) {
    const Lineage l = build_lineage(kTwoUnary, two_unary());
    EXPECT_EQ(l.clauses, (ClauseSet{{0, 2}, {1, 3}}));
    EXPECT_EQ(brute_count(l.func), 7);
}

TEST(BuildLineage, EmptyRelationGivesFalse) {
    Database d(Schema{{"R1", 1, RelationKind::Endogenous}, {"R2", 1, RelationKind::Endogenous}});
    d.add_row("R1", {"a"});
    const Lineage l = build_lineage(kTwoUnary, d);
    EXPECT_TRUE(l.clauses.empty());
    EXPECT_EQ(brute_count(l.func), 0);
}

TEST(BuildLineage, RstQuery) {
    const Lineage l = build_lineage(rst_query(), rst_small());
    EXPECT_EQ(l.clauses, (ClauseSet{{0, 2}, {1, 3}}));
}

TEST(BuildLineage, ExogenousMatchAbsorbs) {
    Database d(Schema{{"R", 1, RelationKind::Endogenous}, {"E", 1, RelationKind::Exogenous}});
    d.add_row("R", {"a"});
    d.add_row("E", {"b"});
    const Lineage l = build_lineage(parse_query("Q :- E(x)"), d);
    EXPECT_EQ(l.clauses, (ClauseSet{Clause{}}));
    EXPECT_EQ(brute_count(l.func), 2);
}

TEST(BuildLineage, ConstantsInAtoms) {
    const Lineage l = build_lineage(parse_query("Q :- S('a1',y), T(y)"), rst_small());
    EXPECT_EQ(l.clauses, (ClauseSet{{2}}));
}

TEST(Hierarchy, Examples) {
    const auto rst = is_hierarchical(rst_query());
    EXPECT_FALSE(rst.hierarchical);
    ASSERT_TRUE(rst.witness);
    EXPECT_EQ(*rst.witness, std::make_pair(std::string("x"), std::string("y")));
    EXPECT_TRUE(is_hierarchical(parse_query("Q :- R(x), S(x)")).hierarchical);
    EXPECT_FALSE(is_hierarchical(stretch_query(rst_query(), rst_schema())).hierarchical);
    EXPECT_TRUE(is_self_join_free(rst_query()));
    EXPECT_FALSE(is_self_join_free(parse_query("Q :- R(x), R(y)")));
    EXPECT_TRUE(is_self_join_free(stretch_query(rst_query(), rst_schema())));
}

TEST(Stretch, QueryExamples) {
    EXPECT_EQ(format_query(stretch_query(rst_query(), rst_schema())), "Q :- R(z1,x), S(x,y), T(z2,y)");
    EXPECT_EQ(format_query(stretch_query(kTwoUnary, two_unary().schema())), "Q :- R1(z1,x), R2(z2,x)");
    const Schema exo{{"E", 2, RelationKind::Exogenous}};
    const Query q = parse_query("Q :- E(x,y)");
    EXPECT_EQ(stretch_query(q, exo).atoms, q.atoms);
    // a query variable named z1 does not capture the fresh one
    EXPECT_EQ(format_query(stretch_query(parse_query("Q :- R1(z1), R2(z1)"), two_unary().schema())),
              "Q :- R1(z1_,z1), R2(z2,z1)");
}

TEST(Stretch, DummyOnRstInstance) {
    const auto s = stretch_database_dummy(rst_small());
    const Database& d = s.database;
    EXPECT_EQ(d.rows(0), (std::vector<Tuple>{{"z!d", "a1"}, {"z!d", "a2"}}));
    EXPECT_EQ(d.rows(1), rst_small().rows(1));
    EXPECT_EQ(d.rows(2), (std::vector<Tuple>{{"z!d", "b1"}, {"z!d", "b2"}}));
    EXPECT_EQ(build_lineage(stretch_query(rst_query(), rst_schema()), d).clauses,
              build_lineage(rst_query(), rst_small()).clauses);
}

TEST(Stretch, DummyOnEmptyDatabase) {
    const Database empty(rst_schema());
    const auto s = stretch_database_dummy(empty);
    EXPECT_EQ(s.database.var_count(), 0U);
    EXPECT_EQ(s.database.rows(1).size(), 0U);
}

TEST(Stretch, DummyAvoidsActiveDomain) {
    Database d(Schema{{"R", 1, RelationKind::Endogenous}});
    d.add_row("R", {"z!d"});
    EXPECT_EQ(stretch_database_dummy(d).database.rows(0).front().front(), "z!d'");
}

TEST(Stretch, ExpandTwoUnary) {
    const std::vector<std::size_t> arities{2, 1, 2, 3};
    const auto s = stretch_database_expand(two_unary(), arities);
    EXPECT_EQ(s.source, (std::vector<VarId>{0, 0, 1, 2, 2, 3, 3, 3}));
    EXPECT_EQ(s.block_start, (std::vector<VarId>{0, 2, 3, 5}));
    EXPECT_EQ(s.fresh_value[1], "z!R1!2");
    const Lineage l = build_lineage(stretch_query(kTwoUnary, two_unary().schema()), s.database);
    EXPECT_EQ(l.clauses, (ClauseSet{{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 5}, {2, 6}, {2, 7}}));
}

TEST(Stretch, ExpandUnitAritiesIsIsomorphic) {
    const std::vector<std::size_t> ones(4, 1);
    const auto s = stretch_database_expand(rst_small(), ones);
    EXPECT_EQ(build_lineage(stretch_query(rst_query(), rst_schema()), s.database).clauses,
              build_lineage(rst_query(), rst_small()).clauses);
}

TEST(Stretch, ExpandZeroArityDeletes) {
    const std::vector<std::size_t> arities{0, 1, 1, 1};
    const auto s = stretch_database_expand(two_unary(), arities);
    EXPECT_EQ(s.database.var_count(), 3U);
    EXPECT_EQ(build_lineage(stretch_query(kTwoUnary, two_unary().schema()), s.database).clauses, (ClauseSet{{0, 2}}));
    EXPECT_THROW(stretch_database_expand(two_unary(), std::vector<std::size_t>{1, 1}), InputError);
}

TEST(CompileHierarchical, TwoUnary) {
    const Circuit c = compile_hierarchical_lineage(kTwoUnary, two_unary());
    EXPECT_EQ(c.var_count(), 4U);
    EXPECT_EQ(model_count_dd(c), 7);
    const auto report = validate(c);
    EXPECT_TRUE(report.usable());
    EXPECT_EQ(report.determinism.status, DeterminismStatus::Verified);
}

TEST(CompileHierarchical, SingleAtomIsChain) {
    Database d(Schema{{"R", 1, RelationKind::Endogenous}});
    for (const char* v : {"a", "b", "c"}) d.add_row("R", {v});
    const Circuit c = compile_hierarchical_lineage(parse_query("Q :- R(x)"), d);
    EXPECT_EQ(model_count_dd(c), 7);
    EXPECT_EQ(check_deterministic_exhaustive(c).status, DeterminismStatus::Verified);
    EXPECT_EQ(size_polynomial_count(c), kc({0, 3, 3, 1}));
}

TEST(CompileHierarchical, Refusals) {
    EXPECT_THROW(compile_hierarchical_lineage(rst_query(), rst_small()), RefusalError);
    Database d(Schema{{"R", 1, RelationKind::Endogenous}});
    EXPECT_THROW(compile_hierarchical_lineage(parse_query("Q :- R(x), R(y)"), d), RefusalError);
}

TEST(ShapleyTuples, TwoUnary) {
    const auto s = shapley_tuples(kTwoUnary, two_unary());
    EXPECT_TRUE(s.hierarchical);
    EXPECT_TRUE(s.warnings.empty());
    EXPECT_EQ(s.values, shap({"1/4", "1/4", "1/4", "1/4"}));
    EXPECT_EQ(s.values, brute_shapley_permutations(build_lineage(kTwoUnary, two_unary()).func));
}

TEST(ShapleyTuples, EmptyLineageIsZero) {
    Database d(Schema{{"R1", 1, RelationKind::Endogenous}, {"R2", 1, RelationKind::Endogenous}});
    d.add_row("R1", {"a"});
    d.add_row("R2", {"b"});
    EXPECT_EQ(shapley_tuples(kTwoUnary, d).values, shap({"0", "0"}));
}

TEST(ShapleyTuples, RstGoesThroughTheHardBranch) {
    const auto s = shapley_tuples(rst_query(), rst_small());
    EXPECT_FALSE(s.hierarchical);
    ASSERT_EQ(s.warnings.size(), 1U);
    EXPECT_NE(s.warnings.front().find("dichotomy"), std::string::npos);
    EXPECT_EQ(s.values, shap({"1/4", "1/4", "1/4", "1/4"}));
}

TEST(ShapleyTuples, HardBranchRefusesAboveBound) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i <= 13; ++i) edges.emplace_back(i, i);
    const Instance inst = pp2dnf_instance(edges);
    EXPECT_THROW(shapley_tuples(inst.query, inst.database), RefusalError);
    EXPECT_THROW(shapley_tuples(parse_query("Q :- R(x), R(y)"), inst.database), InputError);
}

TEST(Pp2dnf, Examples) {
    EXPECT_EQ(build_lineage(rst_query(), pp2dnf_instance({{1, 1}}).database).clauses, (ClauseSet{{0, 1}}));
    const Instance diag = pp2dnf_instance({{1, 1}, {2, 2}});
    const Lineage l = build_lineage(diag.query, diag.database);
    EXPECT_EQ(l.clauses, (ClauseSet{{0, 2}, {1, 3}}));
    EXPECT_EQ(brute_count(l.func), 7);
    const Instance full = pp2dnf_instance({{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    EXPECT_EQ(build_lineage(full.query, full.database).clauses, (ClauseSet{{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
    EXPECT_THROW(pp2dnf_instance({}), InputError);
}

TEST(Embed, RstIntoItself) {
    const Database d = rst_small();
    const Embedding e = embed_nonhierarchical(rst_query(), d);
    EXPECT_EQ(e.x, "x");
    EXPECT_EQ(e.y, "y");
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(e.database.rows(r), d.rows(r));
    EXPECT_EQ(e.var_map, (std::vector<VarId>{0, 1, 2, 3}));
}

TEST(Embed, ExtraExogenousAtom) {
    const Query qp = parse_query("Q :- R(x), S(x,y), T(y), U(x,y)");
    const Instance inst = pp2dnf_instance({{1, 1}, {1, 2}, {3, 2}});
    const Embedding e = embed_nonhierarchical(qp, inst.database);
    EXPECT_FALSE(e.database.schema().endogenous(3));
    EXPECT_EQ(remap(build_lineage(qp, e.database).clauses, e.var_map),
              build_lineage(inst.query, inst.database).clauses);
    EXPECT_THROW(embed_nonhierarchical(parse_query("Q :- R(x), S(x)"), inst.database), RefusalError);
}

TEST(Embed, OtherVariablesGetTheConstantOne) {
    const Query qp = parse_query("Q :- A(x,w), B(x,y), C(y), D(v)");
    const Instance inst = pp2dnf_instance({{1, 2}, {2, 2}});
    const Embedding e = embed_nonhierarchical(qp, inst.database);
    EXPECT_EQ(e.database.rows(0), (std::vector<Tuple>{{"1", "1"}, {"2", "1"}}));
    EXPECT_EQ(e.database.rows(3), (std::vector<Tuple>{{"1"}}));
    EXPECT_EQ(remap(build_lineage(qp, e.database).clauses, e.var_map),
              build_lineage(inst.query, inst.database).clauses);
}

TEST(CompositeCollapse, TwoDummiesPerTuple) {
    // stretched instance with R~ = {(d1,a),(d2,a)}, S = {(a,b)}, T~ = {(d1,b),(d2,b)}
    Database wide(stretch_schema(rst_schema()));
    wide.add_row("R", {"d1", "a"});
    wide.add_row("R", {"d2", "a"});
    wide.add_row("S", {"a", "b"});
    wide.add_row("T", {"d1", "b"});
    wide.add_row("T", {"d2", "b"});
    const Database collapsed = collapse_stretched_rst(wide);
    EXPECT_EQ(collapsed.rows(0), (std::vector<Tuple>{{"(d1,a)"}, {"(d2,a)"}}));
    EXPECT_EQ(collapsed.rows(1).size(), 4U);
    const ClauseSet expected{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    EXPECT_EQ(build_lineage(stretch_query(rst_query(), rst_schema()), wide).clauses, expected);
    EXPECT_EQ(build_lineage(rst_query(), collapsed).clauses, expected);
    EXPECT_THROW(collapse_stretched_rst(rst_small()), InputError);
}

TEST(LineageIo, SchemaAndCsv) {
    const Schema s = parse_schema("# comment\nR 1 endo\n\nS 2 exo\n");
    EXPECT_EQ(s.size(), 2U);
    EXPECT_EQ(format_schema(s), "R 1 endo\nS 2 exo\n");
    EXPECT_THROW(parse_schema("R 1 both\n"), InputError);
    EXPECT_THROW(parse_schema("R 0 endo\n"), InputError);
    EXPECT_THROW(parse_schema("R endo\n"), InputError);
    EXPECT_THROW(parse_schema(""), InputError);

    Database d(s);
    parse_relation_csv(d, 1, "a,\"b,c\"\r\n\n\"q\"\"x\",y\n");
    EXPECT_EQ(d.rows(1), (std::vector<Tuple>{{"a", "b,c"}, {"q\"x", "y"}}));
    EXPECT_EQ(format_relation_csv(d, 1), "a,\"b,c\"\n\"q\"\"x\",y\n");
    EXPECT_THROW(parse_relation_csv(d, 1, "a,\"b,c\"\n"), InputError); // duplicate
    EXPECT_THROW(parse_relation_csv(d, 1, "a\n"), InputError);         // arity
    EXPECT_THROW(parse_relation_csv(d, 0, "\"open\n"), InputError);
}

TEST(LineageIo, DirectoryRoundTripAndSidecars) {
    const auto dir = std::filesystem::temp_directory_path() / "shapcount_lineage_io_test";
    std::filesystem::remove_all(dir);
    save_database(rst_small(), dir);
    const Database back = load_database(dir);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(back.rows(r), rst_small().rows(r));
    std::filesystem::remove(dir / "S.csv");
    EXPECT_EQ(load_database(dir).rows(1).size(), 0U);
    std::filesystem::remove_all(dir);
    EXPECT_THROW(load_database(dir), InputError);

    const Database d = rst_small();
    EXPECT_EQ(format_tuple_map(d, d.tuple_map()), "var_id,relation,row_index\n1,R,0\n2,R,1\n3,T,0\n4,T,1\n");
    const auto s = shapley_tuples(rst_query(), d);
    EXPECT_EQ(format_tuple_shapley(d, s),
              "relation,row_index,numerator,denominator\nR,0,1,4\nR,1,1,4\nT,0,1,4\nT,1,1,4\n");
}

// Properties.

TEST(Properties, StretchedLineageIsSubstitutedLineage) {
    Rng rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [schema, q] = random_sjf_query(rng);
        const Database d = random_database(rng, schema, 12, &q);
        const Lineage l = build_lineage(q, d);
        std::vector<std::size_t> arities(d.var_count());
        for (auto& a : arities) a = detail::pick(rng, 0, 3);
        const auto s = stretch_database_expand(d, arities);
        const Lineage stretched = build_lineage(stretch_query(q, schema), s.database);
        const ClauseSet distributed = to_clause_set(dnf_distribute(or_substituted(l.func, arities)));
        ASSERT_EQ(stretched.clauses, distributed) << format_query(q);

        const auto dummy = stretch_database_dummy(d);
        ASSERT_EQ(build_lineage(stretch_query(q, schema), dummy.database).clauses, l.clauses) << format_query(q);
    }
}

TEST(Properties, LineageMatchesRecursiveOracle) {
    Rng rng(707);
    int checked = 0;
    for (int trial = 0; trial < 300 && checked < 120; ++trial) {
        const auto [schema, q] = random_sjf_query(rng);
        if (q.variables().size() > 2) continue;
        const Database d = random_database(rng, schema, 12, &q);
        if (d.active_domain().size() > 3) continue;
        const Lineage l = build_lineage(q, d);
        ASSERT_TRUE(equivalent(l.func, recursive_lineage(q, d))) << format_query(q);
        for (const auto& c : l.clauses) ASSERT_LE(c.size(), q.size());
        ++checked;
    }
    EXPECT_GE(checked, 100);
}

TEST(Properties, HierarchyClassification) {
    Rng rng(808);
    for (int trial = 0; trial < 300; ++trial) {
        const auto [schema, q] = trial % 2 ? random_sjf_query(rng) : random_hierarchical_query(rng);
        const auto h = is_hierarchical(q);
        ASSERT_EQ(h.hierarchical, hierarchical_by_decomposition(q)) << format_query(q);
        if (trial % 2 == 0) { ASSERT_TRUE(h.hierarchical) << format_query(q); }
        ASSERT_EQ(is_hierarchical(stretch_query(q, schema)).hierarchical, h.hierarchical) << format_query(q);
        if (!h.hierarchical) {
            const auto a = q.atoms_of(h.witness->first), b = q.atoms_of(h.witness->second);
            ASSERT_FALSE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
            ASSERT_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
    }
}

TEST(Properties, DichotomyConsistency) {
    Rng rng(909);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 200; ++trial) {
        const auto [schema, q] = trial % 3 ? random_hierarchical_query(rng) : random_sjf_query(rng);
        if (!is_hierarchical(q).hierarchical) continue;
        const Database d = random_database(rng, schema, 12, &q);
        const Lineage l = build_lineage(q, d);
        const Circuit c = compile_hierarchical_lineage(q, d);
        const auto report = validate(c);
        ASSERT_TRUE(report.usable()) << format_query(q);
        ASSERT_EQ(report.determinism.status, DeterminismStatus::Verified) << format_query(q);
        ASSERT_EQ(model_count_dd(c), brute_count(l.func)) << format_query(q);
        ASSERT_EQ(kcounts_circuit(c), brute_kcounts(l.func)) << format_query(q);
        const auto s = shapley_tuples(q, d);
        ASSERT_EQ(s.values, brute_shapley_subsets(l.func)) << format_query(q);
        if (d.var_count() <= 8) { ASSERT_EQ(s.values, brute_shapley_permutations(l.func)) << format_query(q); }
        ++checked;
    }
    EXPECT_GE(checked, 200);
}

TEST(Properties, Pp2dnfLineageIsTheEdgeDnf) {
    Rng rng(1010);
    for (int trial = 0; trial < 60; ++trial) {
        const auto edges = random_edges(rng, detail::pick(rng, 1, 6), detail::pick(rng, 1, 6));
        const Instance inst = pp2dnf_instance(edges);
        const Lineage l = build_lineage(inst.query, inst.database);
        const ClauseSet expected = edges_dnf(edges);
        ASSERT_EQ(l.clauses, expected);
        ASSERT_EQ(brute_count(l.func), brute_count(from_clause_set(expected, inst.database.var_count())));
    }
}

TEST(Properties, CompositeCollapseKeepsLineage) {
    Rng rng(1111);
    for (int trial = 0; trial < 60; ++trial) {
        const Instance inst = pp2dnf_instance(random_edges(rng, detail::pick(rng, 1, 4), detail::pick(rng, 1, 4)));
        std::vector<std::size_t> arities(inst.database.var_count());
        for (auto& a : arities) a = detail::pick(rng, 0, 2);
        const auto s = stretch_database_expand(inst.database, arities);
        const ClauseSet stretched = build_lineage(stretch_query(inst.query, inst.schema), s.database).clauses;
        ASSERT_EQ(build_lineage(inst.query, collapse_stretched_rst(s.database)).clauses, stretched);
    }
}

TEST(Properties, EmbeddingKeepsLineage) {
    Rng rng(1212);
    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 100; ++trial) {
        const auto [schema, qp] = random_sjf_query(rng);
        if (is_hierarchical(qp).hierarchical) continue;
        const Instance inst = pp2dnf_instance(random_edges(rng, detail::pick(rng, 1, 4), detail::pick(rng, 1, 4)));
        const Embedding e = embed_nonhierarchical(qp, inst.database);
        ASSERT_EQ(remap(build_lineage(qp, e.database).clauses, e.var_map),
                  build_lineage(inst.query, inst.database).clauses)
            << format_query(qp);
        ++checked;
    }
    EXPECT_GE(checked, 100);
}
