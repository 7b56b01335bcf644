#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "epcurves/cli/matrix_io.hpp"
#include "epcurves/cli/report.hpp"

namespace {

using namespace epc;
using namespace epc::cli;
namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path p = fs::temp_directory_path() / ("epcurves_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string& args) {
    const std::string cmd = std::string(EPCURVES_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Parse, TextAndJson) {
    EXPECT_EQ(parse_matrix("3\n1 2 -1\n-1 0 -2\n0 1 -1"), test::example_n());
    EXPECT_EQ(parse_matrix(R"({"dim":2,"rows":[[0,-1],[1,0]]})"), test::example_p());
    EXPECT_EQ(parse_matrix("\n2\n\n  0  -1 \n+1 0\n"), test::example_p());
    // arbitrary magnitude
    const IntMatrix big = parse_matrix("1\n-123456789012345678901234567890\n");
    EXPECT_EQ(big(0, 0), Integer("-123456789012345678901234567890"));
    EXPECT_EQ(parse_matrix(R"({"dim":1,"rows":[["99999999999999999999999"]]})")(0, 0), Integer("99999999999999999999999"));
}

TEST(Parse, Errors) {
    try {
        parse_matrix("3\n1 2 -1\n-1 0\n0 1 -1", "m.txt");
        FAIL() << "ragged rows accepted";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("m.txt:3:"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("ragged"), std::string::npos);
    }
    EXPECT_THROW(parse_matrix("2\n1 x\n0 1"), InputError);
    EXPECT_THROW(parse_matrix("2\n1 1.5\n0 1"), InputError);
    EXPECT_THROW(parse_matrix("2\n1 0"), InputError);
    EXPECT_THROW(parse_matrix("2\n1 0\n0 1\n1 1"), InputError);
    EXPECT_THROW(parse_matrix(""), InputError);
    EXPECT_THROW(parse_matrix(R"({"dim":2,"rows":[[0,-1],[1]]})"), InputError);
    EXPECT_THROW(parse_matrix(R"({"dim":2,"rows":[[0,-1],[1,0.5]]})"), InputError);
    EXPECT_THROW(parse_matrix(R"({"dim":2,)"), InputError);
    EXPECT_EQ(parse_matrix(format_matrix(test::example_m())), test::example_m());
}

TEST(Generate, Companion) {
    const IntMatrix c = generate_companion(parse_poly("x^5 - x - 1"));
    EXPECT_EQ(determinant(c), Integer(1));
    EXPECT_EQ(charpoly(c), parse_poly("x^5 - x - 1"));
    EXPECT_THROW(generate_companion(parse_poly("x^5 - x + 1")), InputError);
    EXPECT_THROW(generate_companion(parse_poly("x^4 - x - 1")), InputError);
    EXPECT_THROW(generate_companion(parse_poly("2x^3 - 1")), InputError);
}

TEST(Generate, BlockReproducesExample) {
    EXPECT_EQ(block_diagonal(test::example_n(), test::example_p()),
              int_matrix({{1, 2, -1, 0, 0}, {-1, 0, -2, 0, 0}, {0, 1, -1, 0, 0}, {0, 0, 0, 0, -1}, {0, 0, 0, 1, 0}}));
    EXPECT_THROW(block_diagonal(test::example_n(), IntMatrix::identity(3)), InputError);
}

TEST(Generate, ConjugateIsSeededAndUnimodular) {
    const Conjugation a = conjugate(test::example_m(), 7, 20), b = conjugate(test::example_m(), 7, 20);
    EXPECT_EQ(a.matrix, b.matrix);
    EXPECT_EQ(determinant(a.transform), Integer(1));
    EXPECT_EQ(a.transform * test::example_m() * unimodular_inverse(a.transform), a.matrix);
    EXPECT_NE(conjugate(test::example_m(), 8, 20).matrix, a.matrix);
}

TEST(Classify, ExampleAndCompanion) {
    const Classification ex = classify(test::example_m(), {}, "example");
    EXPECT_EQ(ex.conclusion, Conclusion::ContainsTori);
    EXPECT_EQ(ex.report["curve_verdict"]["witness"], Json::parse("[0,0,0,1,0]"));
    EXPECT_EQ(ex.report["max_certified_k"], 1);
    EXPECT_EQ(ex.report["schema"], 1);

    const Classification co = classify(generate_companion(parse_poly("x^5 - x - 1")), {}, "companion");
    EXPECT_EQ(co.conclusion, Conclusion::NoCompactCurves);
    const std::string notes = co.report["notes"].dump();
    EXPECT_NE(notes.find("Inoue surfaces"), std::string::npos);

    EXPECT_THROW(classify(IntMatrix::identity(4), {}), InputError);
    EXPECT_EQ(classify(IntMatrix::identity(5), {}).conclusion, Conclusion::NotAdmissible);
}

TEST(Classify, ReportKeyOrderAndDeterminism) {
    ClassifyOptions o;
    o.samples = 20;
    const std::string a = classify(test::example_m(), o, "x").report.dump(2);
    const std::string b = classify(test::example_m(), o, "x").report.dump(2);
    EXPECT_EQ(a, b);
    const Json r = Json::parse(a);
    std::vector<std::string> keys;
    const Json ordered = classify(test::example_m(), o, "x").report;
    for (const auto& item : ordered.items()) keys.push_back(item.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"schema", "input", "admissibility", "curve_verdict", "leaf_word", "fibration",
                                              "max_certified_k", "geometry_checks", "conclusion", "notes", "provenance"}));
    EXPECT_EQ(r["provenance"]["seed"], 20250813);
}

TEST(Classify, BlockRoundTrips) {
    std::mt19937_64 rng(55);
    ClassifyOptions o;
    o.samples = 10;
    for (int t = 0; t < 50; ++t) {
        const IntMatrix n = cli::companion(test::random_admissible_poly(rng, t % 5 == 0 ? 5 : 3));
        const IntMatrix p = test::random_p_block(rng, t % 3 == 0 ? 4 : 2);
        ASSERT_TRUE(verify_admissible(n).admissible());
        const IntMatrix m = parse_matrix(format_matrix(block_diagonal(n, p)));
        const Classification c = classify(m, o);
        EXPECT_EQ(c.conclusion, Conclusion::ContainsTori) << format_matrix(m);
    }
}

TEST(Classify, ConjugationPreservesVerdicts) {
    std::mt19937_64 rng(66);
    ClassifyOptions o;
    o.samples = 10;
    for (int t = 0; t < 50; ++t) {
        const IntMatrix m = test::random_admissible(rng, t);
        const IntMatrix c = conjugate(m, rng(), 15).matrix;
        const Classification a = classify(m, o), b = classify(c, o);
        EXPECT_EQ(a.admissibility.charpoly, b.admissibility.charpoly);
        EXPECT_EQ(a.admissibility.reason, b.admissibility.reason);
        EXPECT_EQ(a.curve->outcome, b.curve->outcome);
        EXPECT_EQ(a.conclusion, b.conclusion) << format_matrix(m) << format_matrix(c);
    }
}

TEST(Binary, ExitCodesAndFiles) {
    const fs::path dir = scratch_dir();
    write(dir / "m.txt", format_matrix(test::example_m()));
    write(dir / "even.txt", format_matrix(IntMatrix::identity(4)));
    write(dir / "ragged.txt", "3\n1 2\n1 2 3\n1 2 3\n");
    EXPECT_EQ(run("classify " + (dir / "m.txt").string() + " --json " + (dir / "r1.json").string()), 0);
    EXPECT_EQ(run("classify " + (dir / "m.txt").string() + " --json " + (dir / "r2.json").string()), 0);
    EXPECT_EQ(slurp(dir / "r1.json"), slurp(dir / "r2.json"));
    EXPECT_EQ(Json::parse(slurp(dir / "r1.json"))["conclusion"], "ContainsTori");
    EXPECT_EQ(run("classify " + (dir / "even.txt").string()), 1);
    EXPECT_EQ(run("classify " + (dir / "ragged.txt").string()), 1);
    EXPECT_EQ(run("classify " + (dir / "missing.txt").string()), 1);
    EXPECT_EQ(run("classify " + (dir / "m.txt").string() + " --precision 4096"), 1);

    EXPECT_EQ(run("generate companion --poly \"x^5 - x - 1\" -o " + (dir / "c.txt").string()), 0);
    EXPECT_EQ(parse_matrix_file((dir / "c.txt").string()), generate_companion(parse_poly("x^5 - x - 1")));
    EXPECT_EQ(run("generate companion --poly \"x^5 - x + 1\" -o " + (dir / "bad.txt").string()), 1);
    write(dir / "n.txt", format_matrix(test::example_n()));
    write(dir / "p.json", R"({"dim":2,"rows":[[0,-1],[1,0]]})");
    EXPECT_EQ(run("generate block --n " + (dir / "n.txt").string() + " --p " + (dir / "p.json").string() + " -o " +
                  (dir / "b.txt").string()),
              0);
    EXPECT_EQ(parse_matrix_file((dir / "b.txt").string()), test::example_m());
    EXPECT_EQ(run("generate conjugate --in " + (dir / "b.txt").string() + " --seed 7 --steps 20 -o " +
                  (dir / "cj.txt").string()),
              0);
    EXPECT_EQ(parse_matrix_file((dir / "cj.txt").string()), conjugate(test::example_m(), 7, 20).matrix);
    EXPECT_EQ(run("classify " + (dir / "cj.txt").string() + " --json " + (dir / "cj.json").string()), 0);
    EXPECT_EQ(Json::parse(slurp(dir / "cj.json"))["conclusion"], "ContainsTori");
    EXPECT_EQ(run("verify " + (dir / "m.txt").string() + " --samples 20"), 0);
    EXPECT_EQ(run("verify " + (dir / "even.txt").string()), 1);

    // batch mode keeps input order
    EXPECT_EQ(run("classify " + (dir / "c.txt").string() + " " + (dir / "m.txt").string() + " --jobs 2 --json " +
                  (dir / "batch.json").string()),
              0);
    const Json batch = Json::parse(slurp(dir / "batch.json"));
    ASSERT_EQ(batch.size(), 2u);
    EXPECT_EQ(batch[0]["conclusion"], "NoCompactCurves");
    EXPECT_EQ(batch[1]["conclusion"], "ContainsTori");
    fs::remove_all(dir);
}

}  // namespace
