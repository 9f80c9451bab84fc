// Runs the shapcount binary on the sample inputs.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(SHAPCOUNT_CLI) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(SHAPCOUNT_SAMPLES) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("shapcount_cli_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST(Cli, Count) {
    EXPECT_EQ(run("count " + sample("worked.formula")).out, "3\n");
    EXPECT_EQ(run("count " + sample("const0.formula")).out, "0\n");
    EXPECT_EQ(run("count --kind circuit " + sample("decision.nnf")).out, "4\n");
    EXPECT_EQ(run("count --kind lineage --db " + sample("two_unary") + " " + sample("two_unary.query")).out, "7\n");
}

TEST(Cli, Kcount) {
    for (const char* m : {"paper", "direct", "brute"})
        EXPECT_EQ(run(std::string("kcount --method ") + m + " " + sample("worked.formula")).out, "0,1,1,1\n") << m;
    EXPECT_EQ(run("kcount --kind circuit --method direct " + sample("worked.nnf")).out, "0,1,1,1\n");
    const auto dir = scratch("diag");
    std::ofstream(dir.string() + ".edges") << "1 1\n2 2\n";
    ASSERT_EQ(run("pp2dnf " + dir.string() + ".edges --out " + dir.string()).code, 0);
    EXPECT_EQ(run("kcount --kind lineage --db " + dir.string() + " " + (dir / "query.txt").string()).out, "0,0,2,4,1\n");
    EXPECT_EQ(run("kcount --method nope " + sample("worked.formula")).code, 2);
}

TEST(Cli, Shapley) {
    EXPECT_EQ(run("shapley " + sample("worked.formula")).out, "5/6,1/3,-1/6\n");
    EXPECT_EQ(run("shapley --method brute " + sample("worked.formula")).out, "5/6,1/3,-1/6\n");
    EXPECT_EQ(run("shapley --kind circuit " + sample("worked.nnf")).out, "5/6,1/3,-1/6\n");
    EXPECT_EQ(run("shapley " + sample("const0.formula")).out, "0/1,0/1\n");
    EXPECT_EQ(run("shapley --kind lineage --db " + sample("two_unary") + " " + sample("two_unary.query")).out,
              "relation,row_index,numerator,denominator\nR1,0,1,4\nR1,1,1,4\nR2,0,1,4\nR2,1,1,4\n");
}

TEST(Cli, HardBranchRefusesAboveBound) {
    const std::string args = "shapley --kind lineage --db " + sample("rst") + " " + sample("rst.query");
    EXPECT_EQ(run(args).code, 0);
    EXPECT_EQ(run(args + " --max-vars 3").code, 3);
}

TEST(Cli, Check) {
    const Result rst = run("check " + sample("rst.query"));
    EXPECT_NE(rst.out.find("hierarchical: no (witness x, y)"), std::string::npos) << rst.out;
    EXPECT_NE(rst.out.find("self-join-free: yes"), std::string::npos);
    EXPECT_NE(rst.out.find("branch: hard"), std::string::npos);
    EXPECT_NE(run("check --query 'Q :- R(x), S(x)'").out.find("branch: polynomial"), std::string::npos);
    EXPECT_NE(run("check --query 'Q :- R(x), R(y)'").out.find("self-join detected"), std::string::npos);
    EXPECT_NE(run("check --kind circuit " + sample("decision.nnf")).out.find("deterministic: verified"),
              std::string::npos);
}

TEST(Cli, StretchAndLineage) {
    const auto dir = scratch("stretch");
    const Result s = run("stretch --db " + sample("rst") + " " + sample("rst.query") + " --out " + dir.string());
    EXPECT_EQ(s.out, "Q :- R(z1,x), S(x,y), T(z2,y)\n");
    EXPECT_EQ(slurp(dir / "R.csv"), "z!d,a1\nz!d,a2\n");
    const std::string stretched = run("lineage --db " + dir.string() + " " + (dir / "query.txt").string()).out;
    EXPECT_EQ(stretched, run("lineage --db " + sample("rst") + " " + sample("rst.query")).out);

    const auto exo = scratch("exo");
    std::filesystem::create_directories(exo);
    std::ofstream(exo / "schema.txt") << "E 2 exo\n";
    EXPECT_EQ(run("stretch --db " + exo.string() + " --query 'Q :- E(x,y)' --out " + (exo / "out").string()).out,
              "Q :- E(x,y)\n");

    const auto wide = scratch("expand");
    ASSERT_EQ(run("stretch --db " + sample("two_unary") + " " + sample("two_unary.query") +
                  " --mode expand:2,1,2,3 --out " + wide.string())
                  .code,
              0);
    EXPECT_EQ(run("count --kind lineage --db " + wide.string() + " " + (wide / "query.txt").string()).out,
              run("count " + write_temp("expanded.formula", "(or (and x1 x4) (and x1 x5) (and x2 x4) (and x2 x5) "
                                                             "(and x3 x6) (and x3 x7) (and x3 x8))"))
                  .out);
    EXPECT_EQ(run("stretch --db " + sample("two_unary") + " " + sample("two_unary.query") +
                  " --mode expand:1,x --out " + wide.string())
                  .code,
              2);

    const auto out = scratch("lineage_out");
    std::filesystem::create_directories(out);
    ASSERT_EQ(run("lineage --db " + sample("rst") + " " + sample("rst.query") + " --out " + (out / "f.txt").string()).code,
              0);
    EXPECT_EQ(slurp(out / "f.txt"), "vars 4\n(or (and x1 x3) (and x2 x4))\n");
    EXPECT_EQ(slurp(out / "f.txt.tuple_map.csv"), "var_id,relation,row_index\n1,R,0\n2,R,1\n3,T,0\n4,T,1\n");
}

TEST(Cli, Compare) {
    const Result f = run("compare " + sample("worked.formula"));
    EXPECT_EQ(f.code, 0);
    EXPECT_NE(f.out.find("\"agree\": true"), std::string::npos);
    EXPECT_NE(f.out.find("\"count_oracle\": 4"), std::string::npos);
    EXPECT_NE(f.out.find("\"shapley_oracle\": 9"), std::string::npos);
    EXPECT_EQ(run("compare --kind circuit " + sample("decision.nnf")).code, 0);
    EXPECT_EQ(run("compare --kind lineage --db " + sample("two_unary") + " " + sample("two_unary.query")).code, 0);
    const Result a = run("compare --random --seed 5 --count 30");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run("compare --random --seed 5 --count 30").out); // byte-identical
    EXPECT_EQ(run("compare --random --count 0").code, 2);
    EXPECT_EQ(run("compare").code, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("count /nonexistent/file").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("count --kind bogus x").code, 2);
    EXPECT_EQ(run("count --kind circuit " + write_temp("overlap.nnf", "nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n")).code, 3);
    EXPECT_EQ(run("shapley --kind lineage --db " + sample("rst") + " --query 'Q :- R(x), R(y)'").code, 2);
}
