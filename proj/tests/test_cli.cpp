#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "oracles.hpp"

using namespace digisurf;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "digisurf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), {in, out, err});
  return {code, out.str(), err.str()};
}

Result pipe(const Result& prev, std::vector<std::string> args) {
  EXPECT_EQ(prev.code, 0) << prev.err;
  return run(std::move(args), prev.out);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("digisurf_cli_" + name);
}

}  // namespace

TEST(Cli, GenNerveCheckPipeline) {
  const auto cover = run({"gen", "--word", "torus", "--rows", "4", "--cols", "4"});
  ASSERT_EQ(cover.code, 0);
  EXPECT_EQ(cover_from_json_string(cover.out).cells.size(), 16u);
  const auto graph = pipe(cover, {"nerve"});
  const auto g = graph_from_json_string(graph.out);
  EXPECT_EQ(g.size(), 16u);
  const auto check = pipe(graph, {"check"});
  EXPECT_EQ(check.code, 0);
  const auto j = nlohmann::json::parse(check.out);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["euler"], 0);
  EXPECT_EQ(j["points"], 16);
}

TEST(Cli, GenRejectsOddRows) {
  const auto r = run({"gen", "--word", "torus", "--rows", "3", "--cols", "4"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("even"), std::string::npos);
}

TEST(Cli, GenSphereReportsVerificationFailure) {
  const auto r = run({"gen", "--word", "sphere", "--rows", "4", "--cols", "4"});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_NE(r.err.find("\"verdict\":\"fail\""), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"gen", "--word", "torus"}).code, cli::kUsage);
  EXPECT_EQ(run({"gen", "--word", "hexagon", "--rows", "4", "--cols", "4"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"nerve", "--format", "svg"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, NerveRejectsCorruptCover) {
  EXPECT_EQ(run({"nerve"}, "{\"word\":\"torus\"").code, cli::kUsage);
  const auto aligned = run({"gen", "--word", "torus", "--rows", "4", "--cols", "4", "--aligned"});
  ASSERT_EQ(aligned.code, 0);
  const auto r = pipe(aligned, {"nerve"});
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_NE(r.err.find("LL-a"), std::string::npos);
  EXPECT_EQ(pipe(aligned, {"verify"}).code, cli::kNegative);
}

TEST(Cli, NerveDot) {
  const auto cover = run({"gen", "--word", "projective", "--rows", "4", "--cols", "4"});
  const auto dot = pipe(cover, {"nerve", "--format", "dot"});
  EXPECT_EQ(dot.out.rfind("graph {", 0), 0u);
}

TEST(Cli, CheckVerdicts) {
  const auto oct = run({"surface", "--name", "minimal-2-sphere"});
  auto j = nlohmann::json::parse(pipe(oct, {"check"}).out);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["sphere"], "sphere");
  EXPECT_EQ(j["euler"], 2);

  const std::string k4 =
      R"({"points":["a","b","c","d"],"edges":[["a","b"],["a","c"],["a","d"],["b","c"],["b","d"],["c","d"]]})";
  const auto r = run({"check"}, k4);
  EXPECT_EQ(r.code, cli::kNegative);
  EXPECT_NE(r.out.find("not a digital manifold"), std::string::npos);

  const std::string c5 =
      R"({"points":["a","b","c","d","e"],"edges":[["a","b"],["b","c"],["c","d"],["d","e"],["a","e"]]})";
  j = nlohmann::json::parse(run({"check"}, c5).out);
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_EQ(j["sphere"], "sphere");
  EXPECT_EQ(j["euler"], 0);
}

TEST(Cli, CompressAndWeight) {
  const auto ico = run({"surface", "--name", "icosahedron"});
  const auto trace_path = temp_file("trace.json");
  const auto c = pipe(ico, {"compress", "--trace", trace_path.string()});
  EXPECT_EQ(graph_from_json_string(c.out).size(), 6u);
  std::ifstream trace_file(trace_path);
  const auto trace = nlohmann::json::parse(trace_file);
  EXPECT_EQ(trace["initial"], 12);
  EXPECT_EQ(trace["final"], 6);
  EXPECT_EQ(trace["steps"].size(), 6u);
  std::filesystem::remove(trace_path);

  EXPECT_EQ(pipe(ico, {"weight"}).out, "6\n");
  EXPECT_EQ(pipe(run({"surface", "--name", "minimal-1-sphere"}), {"weight"}).out, "4\n");
}

TEST(Cli, CompressIsIdempotent) {
  const auto hex = run({"surface", "--name", "hex-torus"});
  const auto trace_path = temp_file("idem.json");
  const auto c = pipe(hex, {"compress", "--trace", trace_path.string()});
  EXPECT_EQ(c.out, hex.out);
  std::ifstream trace_file(trace_path);
  EXPECT_TRUE(nlohmann::json::parse(trace_file)["steps"].empty());
  std::filesystem::remove(trace_path);
}

TEST(Cli, CompressIsDeterministic) {
  const auto g = pipe(run({"gen", "--word", "torus", "--rows", "4", "--cols", "8"}), {"nerve"});
  EXPECT_EQ(pipe(g, {"compress"}).out, pipe(g, {"compress"}).out);
  EXPECT_EQ(pipe(g, {"compress", "--seed", "3"}).out, pipe(g, {"compress", "--seed", "3"}).out);
}

TEST(Cli, CompressRejectsNonManifold) {
  const std::string k4 =
      R"({"points":["a","b","c","d"],"edges":[["a","b"],["a","c"],["a","d"],["b","c"],["b","d"],["c","d"]]})";
  EXPECT_EQ(run({"compress"}, k4).code, cli::kNegative);
  EXPECT_EQ(run({"weight"}, k4).code, cli::kNegative);
}

TEST(Cli, Iso) {
  const auto a = temp_file("a.json");
  const auto b = temp_file("b.json");
  ASSERT_EQ(run({"surface", "--name", "minimal-2-sphere", "-o", a.string()}).code, 0);
  const auto proj = pipe(run({"gen", "--word", "projective", "--rows", "4", "--cols", "4"}), {"nerve"});
  ASSERT_EQ(pipe(proj, {"compress", "-o", b.string()}).code, 0);
  const auto same = run({"iso", a.string(), a.string()});
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out, "isomorphic\n");
  const auto diff = run({"iso", a.string(), b.string()});
  EXPECT_EQ(diff.code, cli::kNegative);
  EXPECT_EQ(diff.out, "not-isomorphic\n");
  EXPECT_EQ(run({"iso", a.string(), "/nonexistent/file.json"}).code, cli::kUsage);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, ContractibleAndResourceCutoff) {
  const std::string p3 = R"({"points":["a","b","c"],"edges":[["a","b"],["b","c"]]})";
  const auto r = run({"contractible"}, p3);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"contractible\""), std::string::npos);
  // A 9-point block disk needs a search above a cutoff of 5.
  std::string block = R"({"points":["a","b","c","d","e","f","g","h","i"],"edges":[)"
                      R"(["a","b"],["b","c"],["d","e"],["e","f"],["g","h"],["h","i"],)"
                      R"(["a","d"],["d","g"],["b","e"],["e","h"],["c","f"],["f","i"],)"
                      R"(["a","e"],["b","d"],["b","f"],["c","e"],["d","h"],["e","g"],["e","i"],["f","h"]]})";
  EXPECT_EQ(run({"contractible"}, block).code, 0);
  EXPECT_EQ(run({"contractible", "--max-points", "5"}, block).code, cli::kResource);
}

TEST(Cli, DataArtifactsAreReproducible) {
  for (const std::string word : {"torus", "projective", "klein"}) {
    for (const std::string size : {"4", "6", "8"}) {
      const std::string stem = std::string(DIGISURF_DATA_DIR) + "/" + word + "-" + size + "x" + size;
      std::ifstream graph_file(stem + "-compressed.json");
      std::ifstream trace_file(stem + "-trace.json");
      ASSERT_TRUE(graph_file && trace_file) << stem;
      std::stringstream graph_text, trace_text;
      graph_text << graph_file.rdbuf();
      trace_text << trace_file.rdbuf();
      const auto trace_path = temp_file("regen.json");
      const auto nerve =
          pipe(run({"gen", "--word", word, "--rows", size, "--cols", size}), {"nerve"});
      const auto c = pipe(nerve, {"compress", "--trace", trace_path.string()});
      EXPECT_EQ(c.out, graph_text.str()) << stem;
      std::ifstream regen(trace_path);
      std::stringstream regen_text;
      regen_text << regen.rdbuf();
      EXPECT_EQ(regen_text.str(), trace_text.str()) << stem;
      std::filesystem::remove(trace_path);
    }
  }
}

TEST(Cli, DataArtifactsAreCompressedByDefinition) {
  for (const std::string word : {"torus", "projective", "klein"}) {
    for (const std::string size : {"4", "6", "8"}) {
      const std::string path =
          std::string(DIGISURF_DATA_DIR) + "/" + word + "-" + size + "x" + size + "-compressed.json";
      std::ifstream file(path);
      ASSERT_TRUE(file) << path;
      std::stringstream text;
      text << file.rdbuf();
      const auto a = oracle::matrix_of(graph_from_json_string(text.str()));
      EXPECT_EQ(oracle::manifold_dimension(a), 2) << path;
      EXPECT_EQ(oracle::euler(a), word == "torus" || word == "klein" ? 0 : 1) << path;
      EXPECT_FALSE(oracle::has_simple_pair(a, 2)) << path;
    }
  }
}
