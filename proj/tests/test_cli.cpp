#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsii/cli.hpp"
#include "lsii/errors.hpp"
#include "lsii/noise.hpp"

using namespace lsii;
using namespace lsii::cli;
namespace fs = std::filesystem;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    return f;
}

Table parse(const std::string& text) {
    Table t;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
        } else if (t.header.empty()) {
            t.header = split(line);
        } else {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

std::string comment_value(const Table& t, const std::string& key) {
    for (const auto& c : t.comments) {
        if (c.rfind("# " + key + "=", 0) == 0) return c.substr(key.size() + 3);
    }
    return {};
}

fs::path temp_dir() {
    auto d = fs::temp_directory_path() / ("lsii_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto p = temp_dir() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string simulated_csv(const std::string& design, std::size_t T, int seed) {
    const auto r = run({"simulate", "--design", design, "--T", std::to_string(T), "--seed", std::to_string(seed)});
    EXPECT_EQ(r.code, 0) << r.err;
    return write_file(design + "_" + std::to_string(T) + "_" + std::to_string(seed) + ".csv", r.out);
}
}  // namespace

TEST(Formatting, SeventeenSignificantDigitsRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 0.0}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(NAN), "nan");
    EXPECT_EQ(format_double(INFINITY), "inf");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(Lists, GridAndBounds) {
    EXPECT_EQ(parse_list("0.1,0.5, 0.9"), (std::vector<double>{0.1, 0.5, 0.9}));
    EXPECT_THROW(parse_list("0.1,x"), lsii::ParseError);
    const auto b = parse_bounds("-0.5,0.6");
    EXPECT_EQ(b.lower, -0.5);
    EXPECT_EQ(b.upper, 0.6);
    EXPECT_THROW(parse_bounds("0.6,-0.5"), lsii::ParseError);
}

TEST(ConfigFile, ParsesAndRejectsUnknownKeys) {
    const auto c = parse_config(R"({"model":"ls_ma1","grid":[0.2,0.5],"bandwidth":"rule_of_thumb","H":3,"seed":9,
        "bootstrap":{"block_size":12,"replications":50},"bounds":{"theta":[-0.5,0.5]}})");
    EXPECT_EQ(c.grid, (std::vector<double>{0.2, 0.5}));
    EXPECT_EQ(c.H, 3u);
    EXPECT_EQ(c.seed, std::optional<std::uint64_t>(9));
    EXPECT_FALSE(c.bandwidth.has_value());
    EXPECT_EQ(c.bootstrap.block_size, 12u);
    EXPECT_EQ(c.bootstrap.replications, 50u);
    EXPECT_EQ(c.bounds.at("theta").upper, 0.5);
    EXPECT_THROW(parse_config(R"({"modle":"ls_ma1"})"), lsii::ParseError);
    EXPECT_THROW(parse_config(R"({"H":"two"})"), lsii::ParseError);
    EXPECT_THROW(parse_config("{\n\"H\": 2,,\n}"), lsii::ParseError);
}

TEST(BootstrapDefaults, PinnedValues) {
    const BootstrapSettings s;
    EXPECT_EQ(s.block_size, 10u);
    EXPECT_EQ(s.window_fraction, 0.11);
    EXPECT_EQ(s.replications, 999u);
}

TEST(InputCsv, ColumnSelectionAndErrors) {
    const auto d = parse_input_csv("t,value,x\n1,0.5,2\n2,-0.25,3\n", "", {"x"});
    EXPECT_EQ(d.values, (std::vector<double>{0.5, -0.25}));
    EXPECT_EQ(d.regressors.at(0), (std::vector<double>{2, 3}));
    EXPECT_EQ(parse_input_csv("# c\n1.5\n2.5\n", "", {}).values, (std::vector<double>{1.5, 2.5}));
    try {
        parse_input_csv("value\n1.0\n2.0\nabc\n", "", {});
        FAIL();
    } catch (const lsii::ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
    EXPECT_THROW(parse_input_csv("a,b\n1,2\n3\n", "", {}), lsii::ParseError);
    EXPECT_THROW(parse_input_csv("a,b\n1,2\n", "c", {}), lsii::ParseError);
}

TEST(Simulate, SchemaAndDeterminism) {
    const auto a = run({"simulate", "--design", "ls_ma1_b", "--T", "300", "--seed", "4"});
    const auto b = run({"simulate", "--design", "ls_ma1_b", "--T", "300", "--seed", "4"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
    const auto t = parse(a.out);
    EXPECT_EQ(t.header, (std::vector<std::string>{"t", "u", "value"}));
    ASSERT_EQ(t.rows.size(), 300u);
    EXPECT_EQ(t.rows[299][0], "300");
    EXPECT_EQ(std::stod(t.rows[299][1]), 1.0);
    EXPECT_EQ(comment_value(t, "seed"), "4");
    EXPECT_NE(run({"simulate", "--design", "ls_ma1_b", "--T", "300", "--seed", "5"}).out, a.out);
}

TEST(Simulate, SeedFromEnvironment) {
    ::setenv("LSII_SEED", "31", 1);
    const auto env = run({"simulate", "--T", "100"});
    const auto flag = run({"simulate", "--T", "100", "--seed", "31"});
    const auto override_env = run({"simulate", "--T", "100", "--seed", "32"});
    ::unsetenv("LSII_SEED");
    EXPECT_EQ(env.out, flag.out);
    EXPECT_NE(env.out, override_env.out);
    EXPECT_EQ(comment_value(parse(override_env.out), "seed"), "32");
}

TEST(Estimate, ConstantDesign) {
    const auto path = simulated_csv("ls_ma1_c", 1000, 11);
    const auto r = run({"estimate", path, "--grid", "0.5", "--seed", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = parse(r.out);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.header[0], "u");
    EXPECT_EQ(t.header[1], "theta_theta");
    EXPECT_NEAR(std::stod(t.rows[0][1]), 0.5, 0.1);
    EXPECT_NEAR(std::stod(comment_value(t, "h")), 1.06 * std::pow(1000.0, -0.2), 1e-12);
    EXPECT_EQ(comment_value(t, "H"), "2");

    const auto fixed = run({"estimate", path, "--grid", "0.5", "--seed", "11", "--bandwidth", "0.3"});
    EXPECT_EQ(std::stod(comment_value(parse(fixed.out), "h")), 0.3);
}

TEST(Estimate, BoundsFlagsApply) {
    const auto path = simulated_csv("ls_ma1_c", 1000, 12);
    const auto r = run({"estimate", path, "--grid", "0.3,0.7", "--theta-bounds", "-0.2,0.2"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& row : parse(r.out).rows) EXPECT_LE(std::stod(row[1]), 0.2);
    EXPECT_EQ(run({"estimate", path, "--bounds", "nosuch=0,1"}).code, 3);
}

TEST(Estimate, RegressorsAreRemoved) {
    auto eps = NoiseStream({13, 0, 0}).draw(600);
    std::string text = "value,x\n";
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const double x = std::sin(0.05 * t);
        text += format_double(eps[t] + 5.0 * x) + "," + format_double(x) + "\n";
    }
    const auto path = write_file("reg.csv", text);
    const auto with = run({"estimate", path, "--grid", "0.5", "--config", write_file("reg.json", R"({"regressors":["x"]})")});
    ASSERT_EQ(with.code, 0) << with.err;
    EXPECT_LT(std::abs(std::stod(parse(with.out).rows[0][1])), 0.2);
}

TEST(Estimate, ErrorExitCodes) {
    const auto bad = write_file("bad.csv", "value\n0.1\n0.2\n0.3\noops\n");
    const auto r = run({"estimate", bad});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
    EXPECT_EQ(run({"estimate", (temp_dir() / "missing.csv").string()}).code, 2);
    const auto good = simulated_csv("ls_ma1_c", 200, 14);
    EXPECT_EQ(run({"estimate", good, "--grid", "0.5", "--out", "/nonexistent_dir/x.csv"}).code, 2);
    EXPECT_EQ(run({"estimate", good, "--config", write_file("unk.json", R"({"colour":1})")}).code, 3);
    EXPECT_EQ(run({"estimate", good, "--H", "many"}).code, 3);
}

TEST(Montecarlo, SummarySchemaAndThreadIndependence) {
    const std::vector<std::string> base{"montecarlo", "--design", "ls_ma1_b", "--replications", "12", "--seed", "2"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto four = base;
    four.insert(four.end(), {"--threads", "4"});
    const auto a = run(one), b = run(four), c = run(one);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    const auto t = parse(a.out);
    EXPECT_EQ(t.header, (std::vector<std::string>{"u", "truth", "q05", "q50", "q95", "bias", "rmse", "n_fail"}));
    ASSERT_EQ(t.rows.size(), 11u);
    for (const auto& row : t.rows) {
        const double u = std::stod(row[0]);
        EXPECT_NEAR(std::stod(row[1]), 0.25 + u - u * u, 1e-12);
        EXPECT_LE(std::stod(row[2]), std::stod(row[3]));
        EXPECT_LE(std::stod(row[3]), std::stod(row[4]));
    }
}

TEST(Montecarlo, StudyFailureExitCode) {
    const auto cfg = write_file("fail.json", R"({"tolerance":1e-300,"max_iterations":2})");
    const auto r = run({"montecarlo", "--design", "ls_ma1_c", "--replications", "3", "--config", cfg});
    EXPECT_EQ(r.code, 5);
    EXPECT_EQ(parse(r.out).rows.size(), 11u);
}

TEST(Bootstrap, BandsAndNesting) {
    const auto path = simulated_csv("ls_ma1_c", 400, 15);
    const auto narrow = run({"bootstrap", path, "--grid", "0.3,0.7", "--boot-reps", "10", "--seed", "1"});
    const auto wide = run({"bootstrap", path, "--grid", "0.3,0.7", "--boot-reps", "10", "--seed", "1", "--level", "0.99"});
    ASSERT_EQ(narrow.code, 0) << narrow.err;
    const auto a = parse(narrow.out), b = parse(wide.out);
    EXPECT_EQ(a.header, (std::vector<std::string>{"u", "estimate", "lo", "hi", "level", "n_dropped"}));
    EXPECT_EQ(comment_value(a, "R"), "10");
    EXPECT_EQ(comment_value(a, "b"), "10");
    ASSERT_EQ(a.rows.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LE(std::stod(a.rows[i][2]), std::stod(a.rows[i][3]));
        EXPECT_LE(std::stod(b.rows[i][2]), std::stod(a.rows[i][2]));
        EXPECT_GE(std::stod(b.rows[i][3]), std::stod(a.rows[i][3]));
    }
}

TEST(ArchTestCommand, OutputAndDegenerateInput) {
    const auto path = simulated_csv("ls_ma1_c", 500, 16);
    const auto r = run({"arch-test", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = parse(r.out);
    EXPECT_EQ(t.header, (std::vector<std::string>{"statistic", "dof", "pvalue", "lags", "critical_01"}));
    EXPECT_EQ(t.rows[0][1], "5");
    EXPECT_NEAR(std::stod(t.rows[0][4]), 15.08, 0.01);
    std::string flat = "value\n";
    for (int i = 0; i < 100; ++i) flat += "2\n";
    EXPECT_EQ(run({"arch-test", write_file("flat.csv", flat)}).code, 4);
}

TEST(Output, FileEqualsStdout) {
    const auto out = (temp_dir() / "sim_out.csv").string();
    const auto to_file = run({"simulate", "--T", "60", "--seed", "3", "--out", out});
    ASSERT_EQ(to_file.code, 0);
    EXPECT_EQ(slurp(out), run({"simulate", "--T", "60", "--seed", "3"}).out);
}

TEST(Binary, RunsAsAProcess) {
    const auto out = (temp_dir() / "bin_out.csv").string();
    const std::string cmd = std::string(LSII_BINARY) + " simulate --T 80 --seed 6 --out " + out + " 2>/dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_EQ(slurp(out), run({"simulate", "--T", "80", "--seed", "6"}).out);
    const std::string bad = std::string(LSII_BINARY) + " estimate /nonexistent.csv 2>/dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}
