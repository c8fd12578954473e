#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tucker/cli.hpp"
#include "tucker/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tucker");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = tucker::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tucker_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
    auto r = cli({});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);

    r = cli({"frobnicate"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);

    r = cli({"gen", "--shape", "3,3", "--ranks", "1,1", "--out", path("t.dnt"), "--bogus"});
    EXPECT_EQ(r.status, 2);

    r = cli({"solve", path("t.dnt"), "--ranks", "1,1", "--algorithm", "newton"});
    EXPECT_EQ(r.status, 2);

    EXPECT_EQ(cli({"--help"}).status, 0);
}

TEST_F(CliTest, GenThenCompare) {
    auto r = cli({"gen", "--shape", "20,20,20", "--ranks", "5,5,5", "--noise", "0", "--seed", "7", "--out", path("t.dnt")});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "ok");

    r = cli({"compare", "--ranks", "5,5,5", path("t.dnt")});
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream table(r.out);
    std::string line;
    std::getline(table, line);
    EXPECT_EQ(line.find("sweep,objective_hooi"), 0u);
    int rows = 0;
    while (std::getline(table, line)) {
        ++rows;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        ASSERT_GE(cells.size(), 8u);
        EXPECT_LE(std::stod(cells[7]), 1e-8) << line;
    }
    EXPECT_EQ(rows, 30);
    const auto report = nlohmann::json::parse(r.err);
    EXPECT_EQ(report["status"], "ok");

    r = cli({"compare", "--ranks", "5,5,5", "--out", path("c.csv"), path("t.dnt")});
    ASSERT_EQ(r.status, 0);
    const auto first = slurp(path("c.csv"));
    ASSERT_EQ(cli({"compare", "--ranks", "5,5,5", "--out", path("c.csv"), path("t.dnt")}).status, 0);
    EXPECT_EQ(slurp(path("c.csv")), first);
}

TEST_F(CliTest, Verify) {
    const auto r = cli({"verify", "--trials", "1000", "--seed", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["status"], "ok");
    ASSERT_EQ(j["campaigns"].size(), 4u);
    for (const auto& c : j["campaigns"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
}

TEST_F(CliTest, SolveWritesReproducibleOutputs) {
    ASSERT_EQ(cli({"gen", "--shape", "8,7,6", "--ranks", "2,2,2", "--noise", "0.1", "--seed", "3", "--out", path("t.dnt")}).status, 0);
    for (const char* alg : {"hooi", "greedy", "tuckals3"}) {
        for (const char* tag : {"a", "b"}) {
            const auto r = cli({"solve", path("t.dnt"), "--ranks", "2,2,2", "--algorithm", alg, "--trace",
                                path(std::string(tag) + ".json"), "--model", path(tag)});
            ASSERT_EQ(r.status, 0) << r.err;
            EXPECT_EQ(nlohmann::json::parse(r.out)["algorithm"], alg);
        }
        EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
        EXPECT_EQ(slurp(path("a.core.dnt")), slurp(path("b.core.dnt")));
        EXPECT_EQ(slurp(path("a.factor1.dnt")), slurp(path("b.factor1.dnt")));
    }
    const auto trace = nlohmann::json::parse(slurp(path("a.json")));
    EXPECT_EQ(trace["schema"], 1);
    EXPECT_EQ(trace["header"]["algorithm"], "tuckals3");

    ASSERT_EQ(cli({"solve", path("t.dnt"), "--ranks", "2,2,2", "--trace", path("t.csv"), "--max-sweeps", "3",
                   "--change-tol", "0", "--timing"}).status, 0);
    std::istringstream csv(slurp(path("t.csv")));
    std::string line;
    int rows = -1;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, SolveOnMatrix) {
    tucker::Matrix m(4, 3);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 10, 1, 0, 1;
    tucker::write_tensor_file(tucker::matrix_as_tensor(m), path("m.dnt"));
    const auto r = cli({"solve", path("m.dnt"), "--ranks", "2,2", "--algorithm", "greedy"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["stop_reason"], "converged");
}

TEST_F(CliTest, Hosvd) {
    ASSERT_EQ(cli({"gen", "--shape", "5,6,7", "--ranks", "2,3,2", "--out", path("t.dnt")}).status, 0);
    const auto r = cli({"hosvd", path("t.dnt"), "--ranks", "2,3,2", "--out", path("h")});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto model = tucker::read_model(path("h"), 3);
    EXPECT_EQ(model.core.shape(), (tucker::Shape{2, 3, 2}));
    EXPECT_EQ(model.factors[1].value().rows(), 6);
}

TEST_F(CliTest, RuntimeErrorsAreReportedAsJson) {
    auto r = cli({"solve", path("missing.dnt"), "--ranks", "1,1"});
    EXPECT_EQ(r.status, 1);
    auto j = nlohmann::json::parse(r.err);
    EXPECT_EQ(j["status"], "error");
    EXPECT_EQ(j["command"], "solve");

    ASSERT_EQ(cli({"gen", "--shape", "3,3", "--ranks", "1,1", "--out", path("t.dnt")}).status, 0);
    r = cli({"solve", path("t.dnt"), "--ranks", "4,1"});
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(nlohmann::json::parse(r.err)["error"].get<std::string>().find("rank"), std::string::npos);

    r = cli({"gen", "--shape", "3,3", "--ranks", "4,1", "--out", path("u.dnt")});
    EXPECT_EQ(r.status, 1);
}

TEST_F(CliTest, ExecutableRuns) {
    const std::string cmd = std::string(TUCKER_CLI_PATH) + " gen --shape 3,3 --ranks 1,1 --out " + path("x.dnt") +
                            " > " + path("out.txt");
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_TRUE(fs::exists(path("x.dnt")));
    EXPECT_NE(std::system((std::string(TUCKER_CLI_PATH) + " nope 2> " + path("err.txt")).c_str()), 0);
}
