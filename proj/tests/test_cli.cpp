#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

namespace {

using json = nlohmann::json;
using trilink::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "trilink");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(std::vector<std::string> args) {
  const auto r = invoke(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

const std::string kData = TRILINK_TEST_DATA;

TEST(Cli, InvariantsBorromean) {
  const json r = report({"invariants", "--preset", "borromean", "--grid", "128"});
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r["pairwise"]["rounded"][i], 0);
    EXPECT_EQ(r["degrees"]["rounded"][i], 0);
  }
  EXPECT_EQ(r["mu"]["rounded"], -1);
  EXPECT_NEAR(r["mu"]["raw"].get<double>(), -1.0, 1e-4);
  EXPECT_NEAR(r["mu"]["whitehead_raw"].get<double>(), r["mu"]["raw"].get<double>(), 1e-9);
  EXPECT_EQ(r["link"]["name"], "borromean");
  EXPECT_EQ(r["flags"]["grid"], 128);
  EXPECT_EQ(r["flags"]["samples"], 512);
  EXPECT_TRUE(r["timings_s"].contains("mu_fourier"));
}

TEST(Cli, InvariantsSplitUnlink) {
  const json r = report({"invariants", "--preset", "split-unlink", "--grid", "32"});
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r["pairwise"]["rounded"][i], 0);
    EXPECT_EQ(r["degrees"]["rounded"][i], 0);
  }
  EXPECT_EQ(r["mu"]["rounded"], 0);
}

TEST(Cli, InvariantsHopfPlusSplitSkipsMu) {
  const json r = report({"invariants", "--link", kData + "/hopf_plus_split.json", "--grid", "64"});
  EXPECT_EQ(std::abs(r["pairwise"]["rounded"][0].get<int>()), 1);
  EXPECT_EQ(r["degrees"]["rounded"], r["pairwise"]["rounded"]);
  EXPECT_TRUE(r["mu"].is_null());
  EXPECT_EQ(r["link"]["fnv1a64"].get<std::string>().size(), 16u);
}

TEST(Cli, ExitCodes) {
  const auto bad = invoke({"invariants", "--link", kData + "/bad.cfg"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("parse error"), std::string::npos);
  EXPECT_EQ(invoke({"invariants", "--link", kData + "/missing.json"}).code, 2);
  EXPECT_EQ(invoke({"mu", "--preset", "trefoil"}).code, 2);
  EXPECT_EQ(invoke({"mu", "--link", kData + "/hopf_plus_split.json", "--grid", "32"}).code, 3);
  EXPECT_EQ(invoke({"mu", "--preset", "borromean", "--method", "helicity", "--grid", "32"}).code, 1);
  EXPECT_EQ(invoke({"mu", "--method", "guess"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"dump", "--what", "phi2d", "--grid", "4", "--out", "/nonexistent/dir/x.csv"}).code, 5);
}

TEST(Cli, MuFourierAtFullResolution) {
  const json r = report({"mu", "--preset", "borromean", "--grid", "256", "--method", "fourier"});
  EXPECT_NEAR(r["mu"]["raw"].get<double>(), -1.0, 1e-6);
  EXPECT_EQ(r["mu"]["cutoff"], 127);
}

TEST(Cli, MuHelicityMatchesFourierAtSameTruncation) {
  const json hel =
      report({"mu", "--preset", "borromean", "--grid", "16", "--method", "helicity", "--cutoff", "8"});
  const json four =
      report({"mu", "--preset", "borromean", "--grid", "16", "--method", "fourier", "--cutoff", "8"});
  EXPECT_NEAR(hel["mu"]["raw"].get<double>(), four["mu"]["raw"].get<double>(), 1e-6);
  EXPECT_TRUE(four["mu"].contains("raw_full_range"));
}

TEST(Cli, MuSphericalAndWhitehead) {
  const json sph = report({"mu", "--preset", "borromean", "--method", "spherical", "--grid", "128"});
  EXPECT_EQ(sph["mu"]["rounded"], -1);
  const json wh = report({"mu", "--preset", "borromean-reversed", "--method", "whitehead", "--grid", "64"});
  EXPECT_EQ(wh["mu"]["rounded"], 1);
}

TEST(Cli, DumpFormRowCount) {
  const auto r = invoke({"dump", "--preset", "borromean", "--grid", "32", "--what", "form"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "j,k,l,s,t,u,px,py,pz");
  long rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 32768);

  const auto field = invoke({"dump", "--preset", "split-unlink", "--grid", "8", "--what", "field"});
  EXPECT_EQ(field.out.substr(0, field.out.find('\n')), "j,k,l,s,t,u,Fx,Fy,Fz");
}

TEST(Cli, DumpIsDeterministic) {
  const auto path = std::filesystem::temp_directory_path() / "trilink_phi2d_test.csv";
  const std::vector<std::string> args{"dump", "--what", "phi2d", "--cutoff", "15", "--out", path.string()};
  ASSERT_EQ(invoke(args).code, 0);
  auto slurp = [&] {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string first = slurp();
  ASSERT_EQ(invoke(args).code, 0);
  EXPECT_EQ(slurp(), first);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 241 * 241 + 1);
  std::filesystem::remove(path);

  const auto a = invoke({"dump", "--preset", "borromean", "--grid", "16", "--what", "form"});
  const auto b = invoke({"dump", "--preset", "borromean", "--grid", "16", "--what", "form"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BridgeCheck) {
  const json r = report({"bridge-check", "--trials", "1000000", "--seed", "7"});
  EXPECT_EQ(r["trials"], 1000000);
  EXPECT_GT(r["min_gap"].get<double>(), -1.0);
  EXPECT_LT(r["max_scaling_relative_error"].get<double>(), 1e-10);
  EXPECT_TRUE(r["non_antipodal"].get<bool>());
  const json again = report({"bridge-check", "--trials", "1000", "--seed", "7"});
  const json twice = report({"bridge-check", "--trials", "1000", "--seed", "7"});
  EXPECT_EQ(again, twice);
}

TEST(Cli, HumanOutput) {
  const auto r = invoke({"invariants", "--preset", "split-unlink", "--grid", "16", "--human"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("lk (p,q,r)"), std::string::npos);
  EXPECT_NE(r.out.find("mu          0"), std::string::npos);
}

}  // namespace
