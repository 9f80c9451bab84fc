// shapcount: model counting, k-counts and Shapley values for Boolean
// formulas, d-D circuits and query lineage.

#include "shapcount/boolfunc_io.hpp"
#include "shapcount/circuit.hpp"
#include "shapcount/circuit_io.hpp"
#include "shapcount/enumerate.hpp"
#include "shapcount/lineage.hpp"
#include "shapcount/lineage_io.hpp"
#include "shapcount/random.hpp"
#include "shapcount/reductions.hpp"
#include "shapcount/shannon.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace shapcount;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitInconsistency = 4;

struct Options {
    std::string verb;
    std::string input;
    std::string kind;
    std::string method;
    std::size_t max_vars = 20;
    std::string out;
    std::uint64_t seed = 1;
    std::string db;
    std::string query;
    std::string mode;
    bool random = false;
    std::size_t count = 20;
    bool timings = false;
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw InconsistencyError("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

struct Inputs {
    json digests = json::array();

    std::string read(const std::string& path) {
        std::string text = detail::read_file(path);
        digests.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
        return text;
    }

    // schema.txt then every relation file, in schema order
    Database database(const std::string& dir) {
        Database d = load_database(dir);
        std::string all = format_schema(d.schema());
        for (std::size_t r = 0; r < d.schema().size(); ++r) all += format_relation_csv(d, r);
        digests.push_back({{"path", dir}, {"sha256", sha256_hex(all)}});
        return d;
    }
};

EnumerationLimits limits(const Options& o) {
    EnumerationLimits l;
    l.count_vars = o.max_vars;
    return l;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    detail::write_file(o.out, text);
}

// Loaded inputs.

struct LineageInput {
    Query query;
    Database database;
};

Query load_query(const Options& o, Inputs& in) {
    if (!o.query.empty()) return parse_query(o.query);
    if (o.input.empty()) throw InputError("no query: pass a query file or --query");
    return parse_query(in.read(o.input));
}

LineageInput load_lineage(const Options& o, Inputs& in) {
    if (o.db.empty()) throw InputError("--db <dir> is required for lineage input");
    Query q = load_query(o, in);
    Database d = in.database(o.db);
    check_query(q, d.schema());
    return {std::move(q), std::move(d)};
}

Circuit load_circuit(const Options& o, Inputs& in) {
    if (o.input.empty()) throw InputError("no circuit file given");
    return parse_nnf(in.read(o.input));
}

BoolFunc load_formula(const Options& o, Inputs& in) {
    if (o.input.empty()) throw InputError("no formula file given");
    return read_formula(in.read(o.input));
}

// Circuits are checked for determinism up to the bound and refused if a
// counterexample turns up; above the bound determinism is assumed.
std::string certify(const Circuit& c, const Options& o) {
    const auto report = validate(c, o.max_vars);
    if (!report.decomposability.decomposable)
        throw RefusalError("circuit is not decomposable at and-gate " +
                           std::to_string(report.decomposability.violations.front()));
    if (report.determinism.status == DeterminismStatus::Refuted)
        throw RefusalError("circuit is not deterministic: " + report.determinism.note);
    if (report.determinism.status == DeterminismStatus::Assumed) std::cerr << "note: " << report.determinism.note << "\n";
    return to_string(report.determinism.status);
}

bool easy_branch(const Query& q) { return is_self_join_free(q) && is_hierarchical(q).hierarchical; }

// Non-hierarchical lineage is handled by enumeration only, within the bound.
void require_hard_branch_bound(const LineageInput& l, const Options& o) {
    if (l.database.var_count() <= o.max_vars) return;
    std::string why = is_self_join_free(l.query) ? "query is not hierarchical (the hard side of the Shapley dichotomy)"
                                                 : "query has a self-join (outside the dichotomy)";
    throw RefusalError(why + "; " + std::to_string(l.database.var_count()) +
                       " tuples exceed the enumeration bound of " + std::to_string(o.max_vars));
}

// Formula pipelines. The oracles behind the reductions are the Shannon
// counter, since substituted functions outgrow enumeration quickly.

KCountVector formula_kcounts(const BoolFunc& f, const std::string& method, const Options& o) {
    if (method == "paper") return kcounts_from_count_oracle(f, [](const BoolFunc& g) { return shannon_count(g); });
    if (method == "direct") return shannon_kcounts(f);
    if (method == "brute") return brute_kcounts(f, limits(o));
    throw InputError("unknown --method '" + method + "' for kcount (paper|direct|brute)");
}

ShapleyVector formula_shapley(const BoolFunc& f, const std::string& method, const Options& o) {
    if (method == "reduction")
        return shapley_from_kcount_oracle(f, [](const BoolFunc& g) {
            return kcounts_from_count_oracle(g, [](const BoolFunc& h) { return shannon_count(h); });
        });
    if (method == "brute") return brute_shapley_subsets(f, limits(o));
    throw InputError("unknown --method '" + method + "' for shapley (reduction|brute)");
}

KCountVector circuit_kcounts(const Circuit& c, const std::string& method, const Options& o) {
    if (method == "paper") return kcounts_circuit(c);
    if (method == "direct") return size_polynomial_count(c);
    if (method == "brute") return brute_kcounts(unfold(c), limits(o));
    throw InputError("unknown --method '" + method + "' for kcount (paper|direct|brute)");
}

ShapleyVector circuit_shapley(const Circuit& c, const std::string& method, const Options& o) {
    if (method == "reduction") return shapley_circuit(c);
    if (method == "brute") return brute_shapley_subsets(unfold(c), limits(o));
    throw InputError("unknown --method '" + method + "' for shapley (reduction|brute)");
}

// Verbs.

int cmd_count(const Options& o) {
    Inputs in;
    BigInt result;
    if (o.kind == "formula") {
        const BoolFunc f = load_formula(o, in);
        result = o.method == "shannon" ? shannon_count(f) : brute_count(f, limits(o));
    } else if (o.kind == "circuit") {
        const Circuit c = load_circuit(o, in);
        certify(c, o);
        result = model_count_dd(c);
    } else {
        const LineageInput l = load_lineage(o, in);
        if (easy_branch(l.query)) {
            result = model_count_dd(compile_hierarchical_lineage(l.query, l.database));
        } else {
            require_hard_branch_bound(l, o);
            result = brute_count(build_lineage(l.query, l.database).func, limits(o));
        }
    }
    emit(o, result.get_str() + "\n");
    return 0;
}

int cmd_kcount(const Options& o) {
    Inputs in;
    const std::string method = o.method.empty() ? "paper" : o.method;
    KCountVector result;
    if (o.kind == "formula") {
        result = formula_kcounts(load_formula(o, in), method, o);
    } else if (o.kind == "circuit") {
        const Circuit c = load_circuit(o, in);
        certify(c, o);
        result = circuit_kcounts(c, method, o);
    } else {
        const LineageInput l = load_lineage(o, in);
        if (easy_branch(l.query)) {
            result = circuit_kcounts(compile_hierarchical_lineage(l.query, l.database), method, o);
        } else {
            require_hard_branch_bound(l, o);
            result = formula_kcounts(build_lineage(l.query, l.database).func, method, o);
        }
    }
    emit(o, format_csv(result) + "\n");
    return 0;
}

int cmd_shapley(const Options& o) {
    Inputs in;
    const std::string method = o.method.empty() ? "reduction" : o.method;
    if (method != "reduction" && method != "brute")
        throw InputError("unknown --method '" + method + "' for shapley (reduction|brute)");
    if (o.kind == "formula") {
        emit(o, format_csv(formula_shapley(load_formula(o, in), method, o)) + "\n");
    } else if (o.kind == "circuit") {
        const Circuit c = load_circuit(o, in);
        certify(c, o);
        emit(o, format_csv(circuit_shapley(c, method, o)) + "\n");
    } else {
        const LineageInput l = load_lineage(o, in);
        if (!is_self_join_free(l.query)) throw InputError("Shapley dichotomy needs a self-join-free query");
        TupleShapley s;
        if (method == "brute") {
            require_hard_branch_bound(l, o);
            s.values = brute_shapley_subsets(build_lineage(l.query, l.database).func, limits(o));
            s.tuple_map = l.database.tuple_map();
        } else {
            s = shapley_tuples(l.query, l.database, limits(o));
        }
        for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
        emit(o, format_tuple_shapley(l.database, s));
    }
    return 0;
}

std::vector<std::size_t> parse_arities(const std::string& list) {
    std::vector<std::size_t> out;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size()) throw InputError("bad arity '" + item + "'");
        out.push_back(value);
    }
    return out;
}

int cmd_stretch(const Options& o) {
    Inputs in;
    const LineageInput l = load_lineage(o, in);
    if (o.out.empty()) throw InputError("stretch writes a directory: pass --out <dir>");
    StretchedDatabase s;
    if (o.mode.empty() || o.mode == "dummy") {
        s = stretch_database_dummy(l.database);
    } else if (o.mode.rfind("expand:", 0) == 0) {
        s = stretch_database_expand(l.database, parse_arities(o.mode.substr(7)));
    } else {
        throw InputError("unknown --mode '" + o.mode + "' (dummy|expand:<a1,a2,...>)");
    }
    const Query q = stretch_query(l.query, l.database.schema());
    save_database(s.database, o.out);
    detail::write_file(fs::path(o.out) / "query.txt", format_query(q) + "\n");
    const auto map = s.database.tuple_map();
    const auto orig = l.database.tuple_map();
    std::string fresh = "var_id,source_var_id,relation,row_index,fresh_value\n";
    for (std::size_t v = 0; v < s.source.size(); ++v)
        fresh += std::to_string(v + 1) + "," + std::to_string(s.source[v] + 1) + "," +
                 detail::csv_field(s.database.schema().at(map[v].relation).name) + "," + std::to_string(map[v].row) +
                 "," + detail::csv_field(s.fresh_value[v]) + "\n";
    detail::write_file(fs::path(o.out) / "fresh_values.csv", fresh);
    std::cout << format_query(q) << "\n";
    return 0;
}

int cmd_check(const Options& o) {
    Inputs in;
    if (o.kind == "circuit") {
        const Circuit c = load_circuit(o, in);
        const auto r = validate(c, o.max_vars);
        std::string out = "gates: " + std::to_string(c.size()) + "\nvariables: " + std::to_string(c.var_count()) +
                          "\ndecomposable: " + (r.decomposability.decomposable ? "yes" : "no") +
                          "\ndeterministic: " + to_string(r.determinism.status) +
                          "\nleaf-nnf: " + (r.leaf_nnf ? "yes" : "no") + "\n";
        for (const auto& note : r.notes) out += "note: " + note + "\n";
        emit(o, out);
        return 0;
    }
    if (o.kind == "formula") throw InputError("check takes --kind query or circuit");
    const Query q = load_query(o, in);
    if (!o.db.empty()) check_query(q, in.database(o.db).schema());
    const bool sjf = is_self_join_free(q);
    const auto h = is_hierarchical(q);
    std::string out = "query: " + format_query(q) + "\nself-join-free: " + (sjf ? "yes" : "no") + "\nhierarchical: ";
    out += h.hierarchical ? "yes" : "no (witness " + h.witness->first + ", " + h.witness->second + ")";
    out += "\nbranch: ";
    if (!sjf)
        out += "self-join detected, outside the dichotomy";
    else if (h.hierarchical)
        out += "polynomial (hierarchical)";
    else
        out += "hard (non-hierarchical, #P-hard Shapley)";
    emit(o, out + "\n");
    return 0;
}

int cmd_lineage(const Options& o) {
    Inputs in;
    const LineageInput l = load_lineage(o, in);
    const Lineage lin = build_lineage(l.query, l.database);
    const std::string formula = write_formula(lin.func);
    const std::string map = format_tuple_map(l.database, lin.tuple_map);
    if (o.out.empty()) {
        std::cout << formula << "\n" << map;
    } else {
        detail::write_file(o.out, formula);
        detail::write_file(o.out + ".tuple_map.csv", map);
    }
    return 0;
}

int cmd_pp2dnf(const Options& o) {
    Inputs in;
    if (o.input.empty()) throw InputError("no edge list file given");
    if (o.out.empty()) throw InputError("pp2dnf writes a directory: pass --out <dir>");
    std::istringstream text(in.read(o.input));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(text, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        long long i = 0, j = 0;
        if (!(ls >> i)) continue;
        std::string extra;
        if (!(ls >> j) || i < 1 || j < 1 || (ls >> extra))
            throw InputError("edge list line " + std::to_string(lineno) + ": expected 'i j' with positive indices");
        edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    const Instance inst = pp2dnf_instance(edges);
    save_database(inst.database, o.out);
    detail::write_file(fs::path(o.out) / "query.txt", format_query(inst.query) + "\n");
    std::cout << format_query(inst.query) << "\n";
    return 0;
}

// compare: run every applicable method and check they agree.

struct Agreement {
    bool ok = true;
    json disagreements = json::array();

    template <class T>
    void expect(const std::string& what, const T& reference, const T& other, const std::string& method) {
        if (reference == other) return;
        ok = false;
        disagreements.push_back({{"quantity", what}, {"method", method}});
    }
};

json counts_json(const KCountVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json shapley_json(const ShapleyVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(format_rational(x));
    return a;
}

template <class Fn>
auto timed(json& timings, const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

json compare_formula(const BoolFunc& f, const Options& o, Agreement& agree, json& timings) {
    const std::size_t n = f.var_count();
    json r{{"kind", "formula"}, {"variables", n}};
    json calls, skipped = json::array();
    const KCountVector kc = timed(timings, "kcounts.direct", [&] { return shannon_kcounts(f); });
    const BigInt count = sum(kc);

    CountingOracle count_oracle([](const BoolFunc& g) { return shannon_count(g); });
    const KCountVector paper = timed(timings, "kcounts.paper", [&] { return kcounts_from_count_oracle(f, count_oracle); });
    calls["count_oracle"] = count_oracle.calls();
    agree.expect("kcounts", kc, paper, "paper");
    const KCountVector and_variant = timed(timings, "kcounts.and_variant", [&] {
        return kcounts_from_count_oracle_and(f, [](const BoolFunc& g) { return shannon_count(g); });
    });
    agree.expect("kcounts", kc, and_variant, "and_variant");

    CountingOracle kcount_oracle([](const BoolFunc& g) { return shannon_kcounts(g); });
    const ShapleyVector shap = timed(timings, "shapley.reduction", [&] { return shapley_from_kcount_oracle(f, kcount_oracle); });
    calls["kcount_oracle"] = kcount_oracle.calls();
    agree.expect("shapley", shap, shannon_shapley(f), "shannon");

    Rational total = 0;
    for (const auto& s : shap) total += s;
    const int top_bottom = top_minus_bottom(f);
    agree.expect("efficiency", total, Rational(top_bottom), "sum of Shapley values");

    CountingOracle shapley_oracle([](const BoolFunc& g, VarId z) { return shannon_shapley(g, z); });
    const BigInt from_shapley = timed(timings, "count.from_shapley", [&] { return count_from_shapley_oracle(f, shapley_oracle); });
    calls["shapley_oracle"] = shapley_oracle.calls();
    agree.expect("count", count, from_shapley, "from_shapley");
    agree.expect("count", count, shannon_count(f), "shannon");

    if (n <= o.max_vars) {
        agree.expect("count", count, timed(timings, "count.brute", [&] { return brute_count(f, limits(o)); }), "brute");
        agree.expect("kcounts", kc, brute_kcounts(f, limits(o)), "brute");
        agree.expect("shapley", shap, timed(timings, "shapley.subsets", [&] { return brute_shapley_subsets(f, limits(o)); }),
                     "subsets");
    } else {
        skipped.push_back("brute: " + std::to_string(n) + " variables exceed --max-vars");
    }
    if (n <= EnumerationLimits{}.permutation_vars)
        agree.expect("shapley", shap,
                     timed(timings, "shapley.permutations", [&] { return brute_shapley_permutations(f); }), "permutations");
    else
        skipped.push_back("permutations: more than " + std::to_string(EnumerationLimits{}.permutation_vars) + " variables");

    r["count"] = count.get_str();
    r["kcounts"] = counts_json(kc);
    r["shapley"] = shapley_json(shap);
    r["oracle_calls"] = calls;
    r["skipped"] = skipped;
    return r;
}

json compare_circuit(const Circuit& c, const Options& o, Agreement& agree, json& timings) {
    const std::size_t n = c.var_count();
    json r{{"kind", "circuit"}, {"variables", n}, {"gates", c.size()}};
    r["determinism"] = certify(c, o);
    json calls, skipped = json::array();
    const BigInt count = timed(timings, "count.dd", [&] { return model_count_dd(c); });
    const KCountVector poly = timed(timings, "kcounts.direct", [&] { return size_polynomial_count(c); });
    CountingOracle count_oracle([](const Circuit& g) { return model_count_dd(g); });
    const KCountVector paper = timed(timings, "kcounts.paper", [&] { return kcounts_from_count_oracle(c, count_oracle); });
    calls["count_oracle"] = count_oracle.calls();
    agree.expect("kcounts", poly, paper, "paper");
    agree.expect("count", count, sum(poly), "direct");

    const ShapleyVector shap = timed(timings, "shapley.reduction", [&] { return shapley_circuit(c); });
    agree.expect("shapley", shap, shapley_circuit(c, CircuitKCountMethod::Polynomial), "polynomial");
    CountingOracle shapley_oracle([](const Circuit& g, VarId z) {
        return shapley_circuit(g, CircuitKCountMethod::Polynomial)[z];
    });
    const BigInt from_shapley = timed(timings, "count.from_shapley", [&] { return count_from_shapley_oracle(c, shapley_oracle); });
    calls["shapley_oracle"] = shapley_oracle.calls();
    agree.expect("count", count, from_shapley, "from_shapley");

    if (n <= o.max_vars) {
        const BoolFunc f = unfold(c);
        agree.expect("count", count, brute_count(f, limits(o)), "brute");
        agree.expect("kcounts", poly, brute_kcounts(f, limits(o)), "brute");
        agree.expect("shapley", shap, timed(timings, "shapley.subsets", [&] { return brute_shapley_subsets(f, limits(o)); }),
                     "subsets");
    } else {
        skipped.push_back("brute: " + std::to_string(n) + " variables exceed --max-vars");
    }
    r["count"] = count.get_str();
    r["kcounts"] = counts_json(poly);
    r["shapley"] = shapley_json(shap);
    r["oracle_calls"] = calls;
    r["skipped"] = skipped;
    return r;
}

json compare_lineage(const LineageInput& l, const Options& o, Agreement& agree, json& timings) {
    const Lineage lin = build_lineage(l.query, l.database);
    json r{{"kind", "lineage"}, {"query", format_query(l.query)}, {"variables", l.database.var_count()},
           {"clauses", lin.clauses.size()}};
    const bool sjf = is_self_join_free(l.query);
    const bool hier = is_hierarchical(l.query).hierarchical;
    r["self_join_free"] = sjf;
    r["hierarchical"] = hier;
    json skipped = json::array();

    // dummy stretching keeps the lineage
    const auto dummy = stretch_database_dummy(l.database);
    agree.expect("lineage", lin.clauses,
                 build_lineage(stretch_query(l.query, l.database.schema()), dummy.database).clauses, "dummy stretching");

    if (l.database.var_count() > o.max_vars) {
        if (!(sjf && hier)) throw RefusalError("non-hierarchical lineage above the enumeration bound");
        skipped.push_back("brute: " + std::to_string(l.database.var_count()) + " variables exceed --max-vars");
    }
    if (sjf && hier) {
        const Circuit c = timed(timings, "compile", [&] { return compile_hierarchical_lineage(l.query, l.database); });
        r["circuit_gates"] = c.size();
        r["determinism"] = to_string(check_deterministic_exhaustive(c, o.max_vars).status);
        const BigInt count = model_count_dd(c);
        const KCountVector kc = size_polynomial_count(c);
        const ShapleyVector shap = timed(timings, "shapley.circuit", [&] { return shapley_circuit(c); });
        agree.expect("kcounts", kc, kcounts_circuit(c), "paper");
        if (l.database.var_count() <= o.max_vars) {
            agree.expect("count", count, brute_count(lin.func, limits(o)), "brute");
            agree.expect("kcounts", kc, brute_kcounts(lin.func, limits(o)), "brute");
            agree.expect("shapley", shap, brute_shapley_subsets(lin.func, limits(o)), "subsets");
        }
        r["count"] = count.get_str();
        r["kcounts"] = counts_json(kc);
        r["shapley"] = shapley_json(shap);
    } else {
        json sub;
        Agreement inner;
        json ignored;
        sub = compare_formula(lin.func, o, inner, ignored);
        for (const auto& d : inner.disagreements) agree.disagreements.push_back(d);
        agree.ok = agree.ok && inner.ok;
        r["count"] = sub["count"];
        r["kcounts"] = sub["kcounts"];
        r["shapley"] = sub["shapley"];
        r["oracle_calls"] = sub["oracle_calls"];
    }
    r["skipped"] = skipped;
    return r;
}

int cmd_compare(const Options& o) {
    Inputs in;
    Agreement agree;
    json timings = json::object();
    json report{{"verb", "compare"}};
    if (o.random) {
        if (o.count == 0) throw InputError("--count 0: nothing to compare");
        Rng rng(o.seed);
        json runs = json::array();
        for (std::size_t i = 0; i < o.count; ++i) {
            Agreement one;
            json t;
            json r;
            switch (i % 3) {
            case 0: r = compare_formula(random_formula(rng, detail::pick(rng, 1, 6), i / 3), o, one, t); break;
            case 1: r = compare_circuit(random_dd_circuit(rng, detail::pick(rng, 1, 6)), o, one, t); break;
            default: {
                auto [schema, q] = detail::coin(rng) ? random_hierarchical_query(rng) : random_sjf_query(rng);
                Database d = random_database(rng, schema, 10, &q);
                r = compare_lineage({q, std::move(d)}, o, one, t);
            }
            }
            json entry{{"index", i}, {"agree", one.ok}};
            entry.update(r);
            r = std::move(entry);
            if (!one.ok) {
                r["disagreements"] = one.disagreements;
                agree.ok = false;
            }
            runs.push_back(std::move(r));
        }
        report["seed"] = o.seed;
        report["instances"] = o.count;
        report["runs"] = runs;
    } else if (o.kind == "formula") {
        report["result"] = compare_formula(load_formula(o, in), o, agree, timings);
    } else if (o.kind == "circuit") {
        report["result"] = compare_circuit(load_circuit(o, in), o, agree, timings);
    } else {
        report["result"] = compare_lineage(load_lineage(o, in), o, agree, timings);
    }
    report["inputs"] = in.digests;
    report["agree"] = agree.ok;
    if (!agree.ok && !o.random) report["disagreements"] = agree.disagreements;
    if (o.timings) report["timings_ms"] = timings;
    emit(o, report.dump(2) + "\n");
    if (!agree.ok) {
        std::cerr << "error: methods disagree\n";
        return kExitInconsistency;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model counts, k-counts and Shapley values for formulas, d-D circuits and query lineage"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, std::vector<std::string> kinds) {
        sub->add_option("input", o.input, "input file (formula, circuit, query or edge list)");
        sub->add_option("--kind", o.kind, "input kind")->check(CLI::IsMember(kinds));
        sub->add_option("--method", o.method, "method");
        sub->add_option("--max-vars", o.max_vars, "bound for exhaustive enumeration and determinism checks");
        sub->add_option("--out", o.out, "output path");
        sub->add_option("--seed", o.seed, "seed for generated corpora");
        sub->add_option("--db", o.db, "database directory (schema.txt and one CSV per relation)");
        sub->add_option("--query", o.query, "query text instead of a query file");
    };
    const std::vector<std::string> all_kinds{"formula", "circuit", "lineage"};
    struct Verb {
        const char* name;
        const char* help;
        const char* kind;
        std::vector<std::string> kinds;
    };
    const std::vector<Verb> verbs{
        {"count", "model count", "formula", all_kinds},
        {"kcount", "k-counts #_0..#_n (--method paper|direct|brute)", "formula", all_kinds},
        {"shapley", "Shapley values (--method reduction|brute)", "formula", all_kinds},
        {"stretch", "stretch a query and database (--mode dummy|expand:<arities>)", "lineage", {"lineage"}},
        {"check", "classify a query, or validate a circuit", "query", {"query", "circuit"}},
        {"lineage", "write the lineage formula and tuple map", "lineage", {"lineage"}},
        {"pp2dnf", "RST instance from an edge list", "formula", {"formula"}},
        {"compare", "run all methods and check agreement (JSON report)", "formula", all_kinds},
    };
    for (const auto& v : verbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->callback([&o, name = std::string(v.name)] { o.verb = name; });
        sub->preparse_callback([&o, kind = std::string(v.kind)](std::size_t) { o.kind = kind; });
        common(sub, v.kinds);
        if (std::string(v.name) == "stretch") sub->add_option("--mode", o.mode, "dummy or expand:<a1,a2,...>");
        if (std::string(v.name) == "compare") {
            sub->add_flag("--random", o.random, "compare on a generated corpus instead of an input");
            sub->add_option("--count", o.count, "corpus size for --random");
            sub->add_flag("--timings", o.timings, "include timings (makes the report nondeterministic)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (o.verb == "count") return cmd_count(o);
        if (o.verb == "kcount") return cmd_kcount(o);
        if (o.verb == "shapley") return cmd_shapley(o);
        if (o.verb == "stretch") return cmd_stretch(o);
        if (o.verb == "check") return cmd_check(o);
        if (o.verb == "lineage") return cmd_lineage(o);
        if (o.verb == "pp2dnf") return cmd_pp2dnf(o);
        if (o.verb == "compare") return cmd_compare(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const InconsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistency;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInconsistency;
    }
    return kExitInput;
}
