#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spincc/cli.hpp"
#include "spincc/json_io.hpp"
#include "spincc/text.hpp"

using namespace spincc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell; stderr is discarded.
Result run_binary(const std::string& args) {
  std::string command = std::string(SPINCC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, "", ""};
  std::string out;
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe)) out.append(buffer, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

std::map<std::string, std::string> plain_lines(const std::string& text) {
  std::map<std::string, std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find(" = ");
    if (eq != std::string::npos) lines[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return lines;
}

fs::path temp_corpus(const std::string& name, const nlohmann::json& j) {
  fs::path path = fs::temp_directory_path() / ("spincc_" + name + "_" + std::to_string(::getpid()) + ".json");
  std::ofstream(path) << j.dump(2);
  return path;
}

nlohmann::json golden() {
  std::ifstream in(std::string(SPINCC_DATA_DIR) + "/golden.json");
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"sigma", "--n", "10", "--k", "2"}).code, cli::kExitOk);
  EXPECT_EQ(run({"sq", "--n", "6", "--i", "1", "--poly", "w2"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"sq", "--n", "10", "--i", "1", "--poly", "w2+"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"sq", "--n", "10", "--i", "1", "--poly", "c1"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"delta-seq", "--k", "9"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"wall", "classify", "--pair", "{\"A\":[[2]],\"b\":[0]}"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"wall", "classify", "--pair", "{\"A\":[[1]]"}).code, cli::kExitBadInput);
  EXPECT_EQ(run({"ek", "--k", "2", "--sigma", "4", "--q", "q1^2[W]=4"}).code, cli::kExitOk);
  EXPECT_EQ(run({"ek", "--k", "2", "--sigma", "4", "--q", "q1^2[W]=4", "--p", "p1^2[W]=16"}).code,
            cli::kExitBadInput);
  EXPECT_EQ(run({"spin8-check"}).code, cli::kExitInternal);
  EXPECT_EQ(run({"spin8-check", "--form", "presentation"}).code, cli::kExitOk);
  Result bad = run({"sq", "--n", "6", "--i", "1", "--poly", "w2"});
  EXPECT_TRUE(bad.out.empty());
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, HelpListsEverySubcommand) {
  Result help = run({"--help"});
  EXPECT_EQ(help.code, cli::kExitOk);
  for (const char* name : {"sq", "sigma", "derived-w2", "f-free", "delta-seq", "weyl", "theta", "transition",
                           "spin8-check", "torsion-mul", "genus", "signature-q", "ek", "wu", "wall", "selftest"}) {
    EXPECT_NE(help.out.find("  " + std::string(name) + " "), std::string::npos) << name;
  }
}

TEST(Cli, Examples) {
  EXPECT_EQ(run({"sigma", "--n", "10", "--k", "2"}).out, "sigma(x1) = w3\nsigma(x2) = w2*w3 + w5\n");
  EXPECT_EQ(run({"theta", "--n", "4"}).out, "theta4 = y^2 - y*c1\n");
  EXPECT_EQ(run({"transition", "--poly", "p1^2"}).out, "result = 4*q1^2\n");
  EXPECT_EQ(plain_lines(run({"--format", "latex", "delta-seq", "--k", "2", "--steps", "1"}).out)["\\delta^{1}(u)"],
            "-2y^{2} + 2y c_{1} - c_{2}");
  auto wall = plain_lines(run({"wall", "classify", "--pair", "{\"A\":[[1]],\"b\":[3]}"}).out);
  EXPECT_EQ(wall["smoothable"], "false");
  EXPECT_EQ(wall["mu"], "1/28");
  EXPECT_EQ(plain_lines(run({"ek", "--k", "2", "--sigma", "4", "--p", "p1^2[W]=16"}).out)["mu"], "0");
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> commands{
      {"derived-w2", "--n", "16", "--steps", "3"},
      {"--format", "json", "weyl", "--n", "12", "--steps", "3"},
      {"selftest", "--prop", "--cases", "5", "--seed", "9"},
  };
  for (const auto& c : commands) {
    Result a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, EmittedPolynomialsParseBack) {
  std::vector<std::vector<std::string>> commands{
      {"sigma", "--n", "10", "--k", "3"},
      {"derived-w2", "--n", "16", "--steps", "3"},
      {"f-free", "--n", "12", "--poly", "w2w6 + w8"},
      {"delta-seq", "--k", "8", "--steps", "3"},
      {"weyl", "--n", "16", "--steps", "3"},
      {"theta", "--n", "8"},
      {"transition", "--direction", "q2p", "--poly", "q4 + q1q3"},
      {"genus", "--m", "4", "--type", "L"},
      {"signature-q", "--m", "3"},
      {"wu", "--k", "4"},
      {"ek", "--k", "3"},
  };
  for (const auto& c : commands) {
    Result plain = run(c);
    ASSERT_EQ(plain.code, cli::kExitOk) << c[0];
    std::vector<std::string> as_json{"--format", "json"};
    as_json.insert(as_json.end(), c.begin(), c.end());
    Result json = run(as_json);
    ASSERT_EQ(json.code, cli::kExitOk) << c[0];
    auto lines = plain_lines(plain.out);
    nlohmann::json j = nlohmann::json::parse(json.out);
    int polys = 0;
    for (const auto& [key, value] : j.items()) {
      if (!value.is_object() || !value.contains("ring")) continue;
      ++polys;
      ASSERT_TRUE(lines.count(key)) << c[0] << " " << key;
      if (value["ring"]["mod"] != 0) {
        Poly p = poly_from_json(value);
        EXPECT_EQ(render(p), lines[key]) << c[0] << " " << key;
        EXPECT_EQ(parse(lines[key], p.ring()), p) << c[0] << " " << key;
      } else {
        RatPoly p = rat_poly_from_json(value);
        EXPECT_EQ(render(p), lines[key]) << c[0] << " " << key;
        EXPECT_EQ(parse_rational(lines[key], p.ring()), p) << c[0] << " " << key;
      }
    }
    EXPECT_GT(polys, 0) << c[0];
  }
}

TEST(Cli, SelftestDetectsCorpusMutation) {
  nlohmann::json corpus = golden();
  fs::path clean = temp_corpus("clean", corpus);
  Result ok = run({"selftest", "--corpus", clean.string(), "--filter", "delta"});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.out;
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);

  bool mutated = false;
  for (auto& entry : corpus["entries"]) {
    if (entry["id"] == "delta.k8.d2") {
      std::string expect = entry["expect"];
      auto at = expect.find("c4 - c1c3");
      ASSERT_NE(at, std::string::npos);
      entry["expect"] = expect.replace(at, 9, "c4 + c1c3");
      mutated = true;
    }
  }
  ASSERT_TRUE(mutated);
  fs::path broken = temp_corpus("mutated", corpus);
  Result bad = run({"selftest", "--corpus", broken.string(), "--filter", "delta"});
  EXPECT_EQ(bad.code, cli::kExitInternal);
  EXPECT_NE(bad.out.find("FAIL delta.k8.d2"), std::string::npos) << bad.out;
  EXPECT_NE(bad.out.find("PASS delta.k8.d1"), std::string::npos);
  EXPECT_EQ(bad.out.find("sigma."), std::string::npos);

  // the environment variable selects the corpus when --corpus is absent
  ::setenv("SPINCC_CORPUS", broken.c_str(), 1);
  Result env = run_binary("selftest --filter delta.k8.d2");
  ::unsetenv("SPINCC_CORPUS");
  EXPECT_EQ(env.code, cli::kExitInternal);
  EXPECT_NE(env.out.find("FAIL delta.k8.d2"), std::string::npos) << env.out;
  fs::remove(clean);
  fs::remove(broken);
}

TEST(Cli, BinaryMatchesInProcessRun) {
  Result binary = run_binary("derived-w2 --n 16 --steps 2");
  Result in_process = run({"derived-w2", "--n", "16", "--steps", "2"});
  EXPECT_EQ(binary.code, in_process.code);
  EXPECT_EQ(binary.out, in_process.out);
  EXPECT_EQ(run_binary("sq --n 6 --i 1 --poly w2").code, cli::kExitBadInput);
  EXPECT_EQ(run_binary("spin8-check").code, cli::kExitInternal);
  Result full = run_binary("selftest");
  EXPECT_EQ(full.code, cli::kExitOk) << full.out;
}
