#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "vk/cli/report.hpp"

using namespace vk::cli;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun vk_run(const std::string& args) {
  const std::string cmd = std::string(VK_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(VK_SAMPLES) + "/" + name; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "vk_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Catalog, Names) {
  EXPECT_EQ(catalog("delta62").triangles().size(), 35u);
  EXPECT_EQ(vk::complexes::to_json(catalog("xk:3")), vk::complexes::to_json(vk::complexes::complex_Xk(3)));
  EXPECT_EQ(catalog("pk:5").homology().describe(1), "Z/5");
  EXPECT_TRUE(vk::octa::is_flag(catalog("opk:3")).flag);
  EXPECT_EQ(catalog("fkt:[a,b]").homology().describe(1), catalog("bowtie").homology().describe(1));
  for (const char* bad : {"delta7", "pk:", "pk:x", "xk:0", "fkt:a", "opk:3x"}) EXPECT_THROW(catalog(bad), vk::InputError) << bad;
}

TEST(Reports, EnvelopeAndEncoding) {
  const json r = baumslag_report(1, 1, 3);
  EXPECT_EQ(r.at("schema"), "vk-report/1");
  EXPECT_EQ(r.at("command"), "baumslag");
  EXPECT_TRUE(r.at("versions").contains("gmp"));
  EXPECT_FALSE(r.contains("timing"));
  BigInt huge;
  huge.set_str("123456789012345678901234567890", 10);
  EXPECT_EQ(big_from(big_json(huge)), huge);
  EXPECT_EQ(big_from(big_json(BigInt(-7))), BigInt(-7));
  std::vector<BigInt> v{0, 3, 0, huge, -1};
  EXPECT_EQ(from_sparse(sparse_json(v), v.size()), v);
  EXPECT_THROW(from_sparse(json::parse("[[9,1]]"), 3), vk::InputError);
}

TEST(Verify, TamperedReportsFail) {
  json ob = obstruction_report(from_catalog("xk:3"), vk::vankampen::Ring::Z, 2);
  ASSERT_TRUE(ob["verdicts"]["vanishes"].get<bool>());
  ASSERT_TRUE(verify(ob).ok());
  json t = ob;
  t["certificates"]["witness"][0][1] = t["certificates"]["witness"][0][1].get<long long>() + 1;
  EXPECT_FALSE(verify(t).ok());
  t = ob;
  t["certificates"]["vector"][0][1] = 5;
  EXPECT_FALSE(verify(t).ok());
  t = ob;
  t["certificates"]["map"]["points"][0][0] = 1;
  EXPECT_FALSE(verify(t).ok());
  t = ob;
  t["inputs"]["complex"]["triangles"].erase(0);
  EXPECT_FALSE(verify(t).ok());

  json nm = obstruction_report(from_catalog("delta62"), vk::vankampen::Ring::Z2, 2);
  ASSERT_TRUE(verify(nm).ok());
  nm["certificates"]["non_membership"]["y"] = json::array();
  EXPECT_FALSE(verify(nm).ok());
}

TEST(Verify, RootWordAlteredByOneLetter) {
  json r = prop42_report(3, 2);
  ASSERT_TRUE(verify(r).ok());
  auto expr = r["certificates"]["root_expression"].get<std::string>();
  ASSERT_EQ(expr.substr(0, 2), "a ");
  expr[0] = 'b';
  r["certificates"]["root_expression"] = expr;
  r["verdicts"]["root"] = expr;
  EXPECT_FALSE(verify(r).ok());

  json f = root_report("a^3 b^3", 3, 3);
  ASSERT_FALSE(f["verdicts"]["exists"].get<bool>());
  ASSERT_TRUE(verify(f).ok());
  f["certificates"]["failure"]["degree"] = 2;
  EXPECT_FALSE(verify(f).ok());
}

TEST(Verify, OtherKinds) {
  json cg = cg_report("random:4", vk::spatial::random_straight_K6(4));
  ASSERT_TRUE(verify(cg).ok());
  EXPECT_EQ(cg["verdicts"]["omega_mod2"], 1);
  cg["certificates"]["linking"][3]["lk"] = 2;
  EXPECT_FALSE(verify(cg).ok());

  json b = baumslag_report(2, 2, 2);
  ASSERT_TRUE(verify(b).ok());
  b["certificates"]["image_a"]["shift"] = 0;
  EXPECT_FALSE(verify(b).ok());

  OctaOptions oo;
  oo.op = "prop52";
  oo.subdivide = 2;
  json p = octa_report(from_catalog("pk:3"), oo);
  ASSERT_TRUE(p["verdicts"]["holds"].get<bool>());
  ASSERT_TRUE(verify(p).ok());
  p["verdicts"]["vhat"] = p["verdicts"]["v"].get<int>() + 1;
  EXPECT_FALSE(verify(p).ok());

  json w = word_report("[a,b]^3", "depth", 2, 3, 2);
  ASSERT_TRUE(verify(w).ok());
  EXPECT_EQ(w["verdicts"]["depth"], 2);
  w["verdicts"]["depth"] = 3;
  EXPECT_FALSE(verify(w).ok());

  EXPECT_THROW(verify(json{{"schema", "other"}}), vk::InputError);
  EXPECT_THROW(verify(json{{"schema", kSchema}, {"command", "nope"}}), vk::InputError);
}

TEST(Pipeline, ShortCircuitAndDegenerateK) {
  const json two = pipeline_xk_report(2, 2, 0);
  EXPECT_TRUE(two["verdicts"]["short_circuit"].get<bool>());
  EXPECT_FALSE(two["certificates"]["stages"].contains("baumslag"));
  const json one = pipeline_xk_report(1, 2, 0);
  EXPECT_TRUE(one["verdicts"]["obstruction_Z_vanishes"].get<bool>());
  EXPECT_TRUE(one["verdicts"]["not_kth_power"].is_null());
  EXPECT_TRUE(verify(two).ok());
  EXPECT_TRUE(verify(one).ok());
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(vk_run("--help").code, 0);
  EXPECT_EQ(vk_run("build nope").code, 2);
  EXPECT_EQ(vk_run("word --expr 'a^'").code, 2);
  EXPECT_EQ(vk_run("obstruction delta62 --ring Q").code, 2);
  EXPECT_EQ(vk_run("cg --twisted 2").code, 2);
  EXPECT_EQ(vk_run("baumslag --p 7 --r 1 --s 49 --budget 1000").code, 3);
  EXPECT_EQ(vk_run("octa --op k44 --cycle 21").code, 2);
  EXPECT_EQ(vk_run("verify " + sample("delta62.json")).code, 2);
}

TEST(Binary, RoundTripAndDeterminism) {
  const auto out = scratch("ob.json");
  ASSERT_EQ(vk_run("obstruction " + sample("delta62.json") + " --seed 5 --out " + out.string()).code, 0);
  const CliRun again = vk_run("obstruction " + sample("delta62.json") + " --seed 5");
  std::ifstream in(out);
  std::stringstream first;
  first << in.rdbuf();
  EXPECT_EQ(first.str(), again.out);
  const CliRun v = vk_run("verify " + out.string());
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(json::parse(v.out)["verdicts"]["verified"].get<bool>());

  const CliRun cg = vk_run("cg --input " + sample("k6_twisted3.json"));
  ASSERT_EQ(cg.code, 0);
  EXPECT_EQ(json::parse(cg.out)["verdicts"]["omega"], 3);
  const CliRun human = vk_run("--human word --expr 'a b a^-1' --op reduce");
  EXPECT_NE(human.out.find("cyclic_core = b"), std::string::npos);
}

TEST(Samples, ReportsVerify) {
  int seen = 0;
  for (const auto& e : fs::directory_iterator(sample("reports"))) {
    std::ifstream in(e.path());
    EXPECT_TRUE(verify(json::parse(in)).ok()) << e.path();
    ++seen;
  }
  EXPECT_GE(seen, 4);
}
