#include "cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace cli = catgate::cli;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "catgate");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

// Runs the installed executable through the shell; returns (exit code, stdout).
std::pair<int, std::string> shell(const std::string& args)
{
    const std::string cmd = std::string(CATGATE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {-1, {}};
    std::string text;
    std::array<char, 4096> buf{};
    while (const std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        text.append(buf.data(), got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, text};
}

std::vector<std::vector<std::string>> csv_records(const std::string& text)
{
    std::vector<std::vector<std::string>> records;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        for (std::string f; std::getline(ls, f, ',');)
            fields.push_back(f);
        records.push_back(fields);
    }
    return records;
}

} // namespace

TEST(FormatNumber, SeventeenDigitsRoundTrip)
{
    EXPECT_EQ(cli::format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(cli::format_number(2.0), "2");
    EXPECT_EQ(cli::format_number(-1.5e-300), "-1.5000000000000001e-300");
    for (double v : {1.0 / 3.0, std::sqrt(2.0), 6.02214076e23, -4.9e-324})
        EXPECT_EQ(std::strtod(cli::format_number(v).c_str(), nullptr), v);
}

TEST(ParseCommand, KnownAndUnknownNames)
{
    for (auto c : {cli::Command::fidelity_scan, cli::Command::cat_fidelity, cli::Command::wigner,
                   cli::Command::prob_density, cli::Command::mixed_fidelity, cli::Command::scl_map})
        EXPECT_EQ(cli::parse_command(cli::command_name(c)), c);
    EXPECT_THROW(cli::parse_command("plot"), std::invalid_argument);
}

TEST(CatFidelity, PerfectCatRows)
{
    const auto r = invoke({"cat-fidelity", "--n", "1,5,15", "--ym-equals-x0"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto rec = csv_records(r.out);
    ASSERT_EQ(rec.size(), 4u);
    const auto& header = rec[0];
    const auto col = std::find(header.begin(), header.end(), "F_cat") - header.begin();
    ASSERT_LT(col, static_cast<long>(header.size()));
    const std::array<double, 3> expected{0.9734, 0.9948, 0.9983};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(rec[i + 1][0], std::to_string(std::array{1, 5, 15}[i]));
        EXPECT_NEAR(std::stod(rec[i + 1][col]), expected[i], 5e-4);
    }
}

TEST(Wigner, BothEnginesAgreeInMetadata)
{
    const auto r = invoke({"wigner", "--n", "0", "--x0", "0", "--p0", "0", "--ym", "0", "--engine", "both", "--format",
                           "json", "--x-range", "-3:3:31", "--p-range", "-3:3:31"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_LT(doc["metadata"]["max_abs_difference"].get<double>(), 1e-8);
    EXPECT_EQ(doc["rows"].size(), 31u * 31u);
    EXPECT_EQ(doc["columns"], (nlohmann::json{"x", "p", "W_mehler", "W_quadrature"}));
}

TEST(ProbDensity, VacuumAtOrigin)
{
    const auto r = invoke({"prob-density", "--n", "0", "--x0", "0", "--ym", "0"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto rec = csv_records(r.out);
    ASSERT_EQ(rec.size(), 2u);
    EXPECT_EQ(rec[0].back(), "P");
    EXPECT_NEAR(std::stod(rec[1].back()), 0.39894, 5e-6);
    EXPECT_NEAR(std::stod(rec[1].back()), 1.0 / std::sqrt(2.0 * 3.14159265358979323846), 1e-15);
}

TEST(Json, DocumentShape)
{
    const auto r = invoke({"mixed-fidelity", "--n", "5", "--d", "0.1,1", "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    for (const char* key : {"config", "columns", "rows", "metadata"})
        EXPECT_TRUE(doc.contains(key)) << key;
    EXPECT_EQ(doc["config"]["command"], "mixed-fidelity");
    EXPECT_EQ(doc["rows"].size(), 2u);
    for (const auto& row : doc["rows"])
        EXPECT_EQ(row.size(), doc["columns"].size());
}

TEST(Determinism, ByteIdenticalReruns)
{
    const std::vector<std::vector<std::string>> configs{
        {"fidelity-scan", "--n", "1:4", "--x0", "0,1"},
        {"cat-fidelity", "--n", "10", "--x0", "0,1.5,2"},
        {"wigner", "--n", "3", "--x-range", "-2:2:9", "--p-range", "-4:4:9", "--format", "json"},
        {"prob-density", "--n", "1,5", "--ym", "0:5:11"},
        {"scl-map", "--samples", "16"},
    };
    for (const auto& c : configs) {
        const auto a = invoke(c), b = invoke(c);
        ASSERT_EQ(a.status, 0) << c[0] << ": " << a.err;
        EXPECT_EQ(a.out, b.out) << c[0];
        EXPECT_EQ(a.out.find('\r'), std::string::npos);
    }
}

TEST(Output, WritesRequestedFile)
{
    const auto path = std::filesystem::temp_directory_path() / "catgate_cli_test.csv";
    std::filesystem::remove(path);
    const auto r = invoke({"prob-density", "--n", "2", "--ym", "1", "--out", path.string()});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str(), invoke({"prob-density", "--n", "2", "--ym", "1"}).out);
    std::filesystem::remove(path);
}

TEST(ExitCodes, InvalidConfigurationNamesTheKey)
{
    auto r = invoke({"wigner", "--x-range", "1:0:1"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("--x-range"), std::string::npos) << r.err;

    r = invoke({"mixed-fidelity", "--d", "-1"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("d"), std::string::npos) << r.err;

    r = invoke({"prob-density", "--bogus", "3"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("--bogus"), std::string::npos) << r.err;

    r = invoke({"cat-fidelity", "--n", "x"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("--n"), std::string::npos) << r.err;
}

TEST(ExitCodes, NumericalFailure)
{
    const auto r = invoke({"cat-fidelity", "--n", "2", "--ym", "40", "--x0", "0"});
    EXPECT_EQ(r.status, 3);
    EXPECT_NE(r.err.find("zero probability"), std::string::npos) << r.err;
}

TEST(Executable, ExitStatusAndOutput)
{
    auto [status, out] = shell("prob-density --n 0 --ym 0");
    EXPECT_EQ(status, 0);
    EXPECT_NE(out.find("0.3989422804014327"), std::string::npos) << out;
    EXPECT_EQ(shell("fidelity-scan --n 0 --ym 60 --x0 0").first, 3);
    EXPECT_EQ(shell("nonsense").first, 2);
    EXPECT_EQ(shell("--help").first, 0);
}
