#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "gridsched/datasets.hpp"

namespace {

using namespace gridsched;
namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_lines(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("gridsched_cli_" +
                std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

TEST_F(CliTest, GenFixturesMatchCommittedFiles) {
    const auto r = invoke({"gen", "--fixtures", "--out", path("fx")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    for (const char* name : {"r3_j13", "r5_j100", "r8_j60", "r10_j50"}) {
        const std::string file = std::string(name) + ".json";
        EXPECT_EQ(slurp(dir_ / "fx" / file), slurp(fs::path(GRIDSCHED_FIXTURE_DIR) / file)) << name;
    }
    EXPECT_EQ(slurp(dir_ / "fx" / "manifest.json"),
              slurp(fs::path(GRIDSCHED_FIXTURE_DIR) / "manifest.json"));
}

TEST_F(CliTest, GenDeterministic) {
    ASSERT_EQ(invoke({"gen", "-n", "5", "-m", "100", "--seed", "42", "--out", path("a.json")}).code, 0);
    ASSERT_EQ(invoke({"gen", "-n", "5", "-m", "100", "--seed", "42", "--out", path("b.json")}).code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    const auto inst = load_instance(path("a.json"));
    EXPECT_EQ(inst.resource_count(), 5u);
    EXPECT_EQ(inst.job_count(), 100u);
}

TEST_F(CliTest, GenUsageErrors) {
    const auto r = invoke({"gen", "-n", "0"});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(invoke({"gen", "--speed-lo", "5", "--speed-hi", "1"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({}).code, cli::kUsageError);
}

TEST_F(CliTest, GenUnwritablePath) {
    EXPECT_EQ(invoke({"gen", "--out", path("no/such/dir/x.json")}).code, cli::kIoError);
}

TEST_F(CliTest, SolveDeterministic) {
    const std::string fixture = (fs::path(GRIDSCHED_FIXTURE_DIR) / "r3_j13.json").string();
    const auto a = invoke({"solve", "--algo", "fuzzy-de", "--seed", "1", "--iters", "50", fixture});
    const auto b = invoke({"solve", "--algo", "fuzzy-de", "--seed", "1", "--iters", "50", fixture});
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("makespan "), std::string::npos);
    EXPECT_NE(a.out.find("assignment 0:"), std::string::npos);
}

TEST_F(CliTest, SolveSingleResource) {
    save_instance(GridInstance::from_speeds_and_lengths(std::vector<double>{4.0},
                                                        std::vector<double>{6.0, 10.0}),
                  path("one.json"));
    for (const char* algo : {"de", "ga", "sa", "fuzzy-pso", "fuzzy-de"}) {
        const auto r = invoke({"solve", "--algo", algo, "--iters", "10", path("one.json")});
        ASSERT_EQ(r.code, cli::kOk) << r.err;
        EXPECT_NE(r.out.find("makespan 4\n"), std::string::npos) << algo << ": " << r.out;
    }
}

TEST_F(CliTest, SolveWritesTrace) {
    const std::string fixture = (fs::path(GRIDSCHED_FIXTURE_DIR) / "r3_j13.json").string();
    const auto r = invoke({"solve", "--algo", "ga", "--iters", "30", "--trace", path("t.csv"), fixture});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(count_lines(path("t.csv")), 32u);  // header + initial + 30 generations
}

TEST_F(CliTest, SolveErrors) {
    EXPECT_EQ(invoke({"solve", path("missing.json")}).code, cli::kIoError);
    const std::string fixture = (fs::path(GRIDSCHED_FIXTURE_DIR) / "r3_j13.json").string();
    EXPECT_EQ(invoke({"solve", "--algo", "tabu", fixture}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"solve", "--np", "3", fixture}).code, cli::kUsageError);
    std::ofstream(path("bad.json")) << "{\"resources\": [";
    EXPECT_EQ(invoke({"solve", path("bad.json")}).code, cli::kIoError);
}

TEST_F(CliTest, BenchRowCountsAndTables) {
    const auto r = invoke({"bench", "--fixtures", "--algos", "fuzzy-de,de", "--runs", "5", "--seed",
                           "9", "--np", "10", "--iters", "10", "--out", path("out")});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(count_lines(dir_ / "out" / "runs.csv"), 1u + 2 * 4 * 5);
    EXPECT_NE(r.out.find("Relative performance"), std::string::npos);
    EXPECT_NE(r.out.find("(10,50)"), std::string::npos);

    // The Fuzzy DE row of the relative table is all zeros.
    std::istringstream lines(r.out.substr(r.out.find("Relative performance")));
    std::string line;
    bool seen = false;
    while (std::getline(lines, line)) {
        if (line.rfind("Fuzzy DE", 0) != 0) continue;
        seen = true;
        std::istringstream cells(line.substr(std::string("Fuzzy DE").size()));
        double v;
        int count = 0;
        while (cells >> v) {
            EXPECT_EQ(v, 0.0);
            ++count;
        }
        EXPECT_EQ(count, 5);
    }
    EXPECT_TRUE(seen);
}

TEST_F(CliTest, BenchSerialAndParallelAgree) {
    const std::vector<std::string> base{"bench", "--fixtures", "--algos", "ga,fuzzy-pso", "--runs",
                                        "3", "--np", "8", "--iters", "8"};
    auto serial = base;
    serial.insert(serial.end(), {"--serial", "--out", path("s")});
    auto parallel = base;
    parallel.insert(parallel.end(), {"--out", path("p")});
    ASSERT_EQ(invoke(serial).code, 0);
    ASSERT_EQ(invoke(parallel).code, 0);
    EXPECT_EQ(slurp(dir_ / "s" / "traces.csv"), slurp(dir_ / "p" / "traces.csv"));
    // Makespan columns agree; wall times differ.
    auto makespans = [](const std::string& text) {
        std::vector<std::string> out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) out.push_back(line.substr(0, line.rfind(',')));
        return out;
    };
    EXPECT_EQ(makespans(slurp(dir_ / "s" / "runs.csv")), makespans(slurp(dir_ / "p" / "runs.csv")));
}

TEST_F(CliTest, BenchUsageErrors) {
    EXPECT_EQ(invoke({"bench", "--runs", "2"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"bench", "--fixtures", "--algos", "nope"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"bench", "--fixtures", "--runs", "0"}).code, cli::kUsageError);
}

TEST_F(CliTest, OracleExitCodes) {
    save_instance(GridInstance::from_speeds_and_lengths(std::vector<double>{2.0},
                                                        std::vector<double>{3.0, 5.0}),
                  path("one.json"));
    const auto one = invoke({"oracle", path("one.json")});
    ASSERT_EQ(one.code, cli::kOk) << one.err;
    EXPECT_NE(one.out.find("makespan 4\n"), std::string::npos);

    const auto big = invoke({"oracle", (fs::path(GRIDSCHED_FIXTURE_DIR) / "r10_j50.json").string()});
    EXPECT_EQ(big.code, cli::kOracleBudget);
    EXPECT_FALSE(big.err.empty());
}

TEST_F(CliTest, OracleOnThirteenJobFixture) {
    const auto r = invoke({"oracle", (fs::path(GRIDSCHED_FIXTURE_DIR) / "r3_j13.json").string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("enumerated 1594323"), std::string::npos);
}

}  // namespace
