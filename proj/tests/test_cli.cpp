#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "lfem/mesh.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "lfem");
    std::ostringstream out, err;
    const int code = lfem::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("lfem_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string l; std::getline(in, l);) ++n;
    return n;
}

}  // namespace

TEST(Cli, AlphaPrintsThreeDecimals) {
    const auto r = run({"alpha", "--h", "2.57881", "--lambda", "7.5e6", "--d-omega", "76.8375"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.214\n");
    const auto full = run({"alpha", "--h", "0.239", "--lambda", "10", "--d-omega", "4.44", "--full-precision"});
    EXPECT_EQ(full.out, "1\n");
}

TEST(Cli, UsageErrors) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"bogus"}, {"example1", "--nope"}, {"alpha", "--h", "1"}, {"cook", "--levels", "x"}}) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 1);
        EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
        EXPECT_TRUE(r.out.empty());
    }
}

TEST(Cli, HelpSucceeds) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("example1"), std::string::npos);
}

TEST(Cli, Example1TwoLevels) {
    const auto dir = scratch("e1");
    const auto r = run({"example1", "--lambda", "1000", "--levels", "2", "--alpha", "star", "--outdir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir / "example1")) {
        ++files;
        EXPECT_EQ(count_lines(e.path()), 3u) << e.path();
    }
    EXPECT_EQ(files, 2u);
    EXPECT_TRUE(fs::exists(dir / "example1" / "lambda1000_alphastar_l2.csv"));
    EXPECT_TRUE(fs::exists(dir / "example1" / "lambda1000_alphastar_h1.csv"));
    fs::remove_all(dir);
}

TEST(Cli, Example1RepeatedInvocationIsIdempotent) {
    const auto dir = scratch("idem");
    const std::vector<std::string> args{"example1", "--lambda", "1000", "--lambda", "10000", "--levels", "2",
                                        "--n0", "4", "--outdir", dir.string()};
    ASSERT_EQ(run(args).code, 0);
    std::map<std::string, std::string> first;
    for (const auto& e : fs::directory_iterator(dir / "example1")) first[e.path().filename()] = slurp(e.path());
    EXPECT_EQ(first.size(), 8u);
    ASSERT_EQ(run(args).code, 0);
    for (const auto& [name, text] : first) EXPECT_EQ(slurp(dir / "example1" / name), text);
    fs::remove_all(dir);
}

TEST(Cli, ConfigFileAndFlagOverride) {
    const auto dir = scratch("cfg");
    {
        std::ofstream cfg(dir / "study.cfg");
        cfg << "domain=cook\nn0=2\nrefinements=3\nalpha=star\n";
    }
    const auto r = run({"cook", "--config", (dir / "study.cfg").string(), "--levels", "2", "--outdir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(dir / "cook" / "tip_displacement_star.csv"), 3u);
    EXPECT_FALSE(fs::exists(dir / "cook" / "tip_displacement_one.csv"));
    EXPECT_TRUE(fs::exists(dir / "cook" / "deformed_star_lvl1.vtk"));

    {
        std::ofstream cfg(dir / "square.cfg");
        cfg << "domain=square\n";
    }
    EXPECT_EQ(run({"cook", "--config", (dir / "square.cfg").string()}).code, 1);
    {
        std::ofstream cfg(dir / "bad.cfg");
        cfg << "n0=2\nshape=round\n";
    }
    const auto bad = run({"solve", "--config", (dir / "bad.cfg").string()});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
    fs::remove_all(dir);
}

TEST(Cli, SolveReportsAndIllPosed) {
    const auto dir = scratch("solve");
    {
        std::ofstream cfg(dir / "ok.cfg");
        cfg << "domain=cook\nn0=4\n";
    }
    const auto ok = run({"solve", "--config", (dir / "ok.cfg").string()});
    ASSERT_EQ(ok.code, 0) << ok.err;
    for (const char* key : {"Nh ", "alpha ", "iterations ", "relative_residual ", "u(48,52) "})
        EXPECT_NE(ok.out.find(key), std::string::npos) << key;
    {
        std::ofstream cfg(dir / "ill.cfg");
        cfg << "domain=cook\nn0=2\ndirichlet_tags=none\n";
    }
    const auto ill = run({"solve", "--config", (dir / "ill.cfg").string()});
    EXPECT_EQ(ill.code, 2);
    EXPECT_NE(ill.err.find("ill-posed"), std::string::npos) << ill.err;
    fs::remove_all(dir);
}

TEST(Cli, SolveOnMeshFile) {
    const auto dir = scratch("meshfile");
    lfem::write_mesh(lfem::generate_cook_mesh(3), dir / "cook.mesh");
    const auto r = run({"solve", "--mesh", (dir / "cook.mesh").string(), "--lambda", "100", "--point", "48,52",
                        "--full-precision"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("u(48,52) "), std::string::npos);
    const auto outside = run({"solve", "--mesh", (dir / "cook.mesh").string(), "--point", "100,100"});
    EXPECT_EQ(outside.code, 1);
    fs::remove_all(dir);
}

TEST(Cli, AlphaOneAndStarAgreeInUncappedBranch) {
    // h = pi sqrt(2) / 4 on n0 = 4, so lambda = 3 < d_omega / h = 4.
    const auto a = run({"solve", "--n0", "4", "--lambda", "3", "--alpha", "one", "--point", "1,1", "--full-precision"});
    const auto b = run({"solve", "--n0", "4", "--lambda", "3", "--alpha", "star", "--point", "1,1", "--full-precision"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PrecisionModes) {
    const auto six = run({"solve", "--n0", "2", "--lambda", "1000"});
    const auto full = run({"solve", "--n0", "2", "--lambda", "1000", "--full-precision"});
    EXPECT_NE(six.out.find("h 2.22144\n"), std::string::npos) << six.out;
    EXPECT_NE(full.out.find("h 2.221441469079183\n"), std::string::npos) << full.out;
}

TEST(Cli, RefineMesh) {
    const auto dir = scratch("refine");
    lfem::write_mesh(lfem::generate_square_mesh(1.0, 1), dir / "in.mesh");
    const auto r = run({"refine-mesh", (dir / "in.mesh").string(), (dir / "out.mesh").string(), "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lfem::read_mesh(dir / "out.mesh").num_triangles(), 32u);
    EXPECT_EQ(run({"refine-mesh", (dir / "missing.mesh").string(), (dir / "o.mesh").string()}).code, 1);
    fs::remove_all(dir);
}
