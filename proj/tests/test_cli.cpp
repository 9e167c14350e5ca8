#include "symrigid/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

using namespace symrigid;

namespace {

const std::string kCli = SYMRIGID_CLI_PATH;
const std::string kData = SYMRIGID_DATA_DIR;

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
CliResult run(const std::string& args) {
  CliResult r;
  const std::string cmd = kCli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args) {
  const CliResult r = run(args);
  EXPECT_EQ(r.code, 0) << r.out;
  return parse_document(r.out);
}

std::string data(const std::string& name) { return kData + "/" + name; }

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("symrigid_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Writes a symmetric spherical framework sampled from the lift of `gg`.
std::string write_sampled(const TempDir& dir, const std::string& name, const GainGraph& gg) {
  const SymmetricGraph sg = lift(gg);
  FrameworkDocument doc{sample_spherical(sg, 2, std::vector<char>(sg.graph.n, 0), 3), sg.group, sg.action};
  const std::string path = dir.file(name);
  write_document(path, framework_to_json(doc));
  return path;
}

}  // namespace

TEST(Analyze, TriangleIsIsostatic) {
  const Json j = run_json("analyze " + data("triangle.json"));
  EXPECT_EQ(j["analysis"]["is_inf_rigid"], true);
  EXPECT_EQ(j["analysis"]["is_isostatic"], true);
  EXPECT_FALSE(j.contains("forced"));
}

TEST(Analyze, K4MinusEdgeWithHalfTurn) {
  const Json j = run_json("analyze --exact " + data("k4_minus_edge_c2.json"));
  EXPECT_EQ(j["analysis"]["rank"], 5);
  EXPECT_EQ(j["analysis"]["is_inf_rigid"], true);
  EXPECT_EQ(j["forced"]["forced_rigid"], true);
  EXPECT_EQ(j["combinatorial"]["predicted_forced_rigid"], true);
}

TEST(Analyze, SquareIsFlexible) {
  const Json j = run_json("analyze " + data("square.json"));
  EXPECT_EQ(j["analysis"]["is_inf_rigid"], false);
  EXPECT_EQ(j["analysis"]["nullity"], 4);
}

TEST(Analyze, WritesOutputFile) {
  TempDir dir;
  const CliResult r = run("analyze " + data("square.json") + " -o " + dir.file("r.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(read_document(dir.file("r.json"))["analysis"]["nullity"], 4);
}

TEST(Gain, K4MinusEdgeQuotient) {
  const Json a = run_json("gain " + data("k4_minus_edge_quotient.json") + " --k 2 --l 3 --m 1");
  EXPECT_EQ(a["gain"]["sparse"], true);
  EXPECT_EQ(a["gain"]["tight"], true);
  const Json b = run_json("gain " + data("k4_minus_edge_quotient.json") + " --k 2 --l 3 --m 2 --find-tight");
  EXPECT_EQ(b["gain"]["spanning_tight"], true);
  EXPECT_EQ(b["gain"]["witness"].size(), 2u);
}

TEST(Gain, TwoLoopsViolate) {
  const Json j = run_json("gain " + data("two_loops.json") + " --k 2 --l 3 --m 1");
  EXPECT_EQ(j["gain"]["sparse"], false);
  EXPECT_EQ(j["gain"]["violating"], Json::array({0, 1}));
}

TEST(Gain, RejectsBadParameters) {
  EXPECT_EQ(run("gain " + data("two_loops.json") + " --k 2 --l 4 --m 1").code, 2);
}

TEST(Transfer, ToSphereMarksFormerLines) {
  const Json j = run_json("transfer " + data("mirror_pointline_forced.json") + " --op to-sphere --check");
  EXPECT_EQ(j["space"], "spherical");
  EXPECT_EQ(j["X"], Json::array({0, 1}));
}

TEST(Transfer, PairMirrorToHalfTurnPassesCheck) {
  TempDir dir;
  const std::string in =
      write_sampled(dir, "cs.json", GainGraph{2, {{0, 1, 0}, {0, 1, 1}, {0, 0, 1}}, augment(make_schoenflies(2, "Cs"))});
  const std::string out = dir.file("c2.json");
  const CliResult r = run("transfer " + in + " --op pair --subgroup trivial --check -o " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  const FrameworkDocument doc = framework_from_json(read_document(out));
  ASSERT_TRUE(doc.group);
  EXPECT_TRUE(same_matrix_set(pair_representation(augment(make_schoenflies(2, "Cs")), Subgroup{{0}}).reps(),
                              doc.group->reps()));
}

TEST(Transfer, PairWithoutIndexTwoSubgroupFails) {
  TempDir dir;
  const std::string in =
      write_sampled(dir, "c3.json", GainGraph{2, {{0, 1, 0}, {0, 1, 1}}, augment(make_schoenflies(2, "Cn", 3))});
  const CliResult r = run("transfer " + in + " --op pair");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("no index-2 subgroup"), std::string::npos) << r.out;
}

TEST(Transfer, RoundTripAndRotationChecks) {
  TempDir dir;
  const std::string sphere = dir.file("s.json");
  ASSERT_EQ(run("transfer " + data("mirror_pointline_forced.json") + " --op to-sphere -o " + sphere).code, 0);
  EXPECT_EQ(run("transfer " + sphere + " --op to-ph --check").code, 0);
  EXPECT_EQ(run("transfer " + sphere + " --op invert --vertices 2,3 --check").code, 0);
  EXPECT_EQ(run("transfer " + sphere + " --op double-cover --check").code, 0);
  const CliResult rot = run("transfer " + sphere + " --op rotate --matrix '[[1,0,0],[0,0,-1],[0,1,0]]' --check");
  EXPECT_EQ(rot.code, 0) << rot.out;
  EXPECT_EQ(run("transfer " + sphere + " --op rotate --matrix '[[1,0,0],[0,1,0],[0,0,2]]'").code, 2);
}

TEST(Transfer, ReversedFixedNormalHasNoSymmetricImage) {
  const CliResult r = run("transfer " + data("grab_bucket.json") + " --op to-sphere");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("NotSymmetric"), std::string::npos) << r.out;
}

TEST(Transfer, InvertNeedsWholeOrbits) {
  TempDir dir;
  const std::string sphere = dir.file("s.json");
  ASSERT_EQ(run("transfer " + data("mirror_pointline_forced.json") + " --op to-sphere -o " + sphere).code, 0);
  const CliResult r = run("transfer " + sphere + " --op invert --vertices 3");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("NotOrbitClosed"), std::string::npos) << r.out;
}

TEST(Sample, GainGraphToSymmetricFramework) {
  const Json j = run_json("sample " + data("k4_minus_edge_quotient.json") + " --space euclidean --d 2 --seed 7 --regular");
  const FrameworkDocument doc = framework_from_json(j);
  ASSERT_TRUE(doc.group);
  EXPECT_TRUE(validate_symmetric(doc.fw, *doc.group, doc.action));
  EXPECT_EQ(run("sample " + data("k4_minus_edge_quotient.json") + " --space spherical --d 2").code, 2);
}

TEST(Verify, SuitesReportPassCounts) {
  const CliResult r = run("verify --suite inversion --trials 100 --seed 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("inversion: 100/100 pass"), std::string::npos) << r.out;
  const CliResult f = run("verify --suite fixture");
  EXPECT_EQ(f.code, 0) << f.out;
}

TEST(ExitCodes, BadInputs) {
  EXPECT_EQ(run("analyze /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --suite nosuch").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
