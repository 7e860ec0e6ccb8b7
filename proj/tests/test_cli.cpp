#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ldesc/cli.hpp"
#include "ldesc/serialize.hpp"

using namespace ldesc;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ldesc_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string exported(const std::vector<std::string>& args, const std::string& name) {
    std::vector<std::string> a{"export-bundle"};
    a.insert(a.end(), args.begin(), args.end());
    const CliRun r = run(a);
    EXPECT_EQ(r.code, 0) << r.err;
    return write(name, r.out);
  }

  fs::path dir_;
};

Json result_of(const CliRun& r) { return Json::parse(r.out)["result"]; }

}  // namespace

TEST_F(CliTest, DescendQ8ExitsZero) {
  const std::string b = exported({"q8", "--ell", "5"}, "q8.json");
  const CliRun r = run({"descend", b, "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = result_of(r);
  for (const auto& [k, v] : res["certificates"].items()) EXPECT_TRUE(v.get<bool>()) << k;
  EXPECT_EQ(res["group_order"], 8);
  EXPECT_EQ(Json::parse(r.out)["command"], "descend");
}

TEST_F(CliTest, DescendMuEllExitsTwo) {
  const std::string b = exported({"prop5", "--ell", "5"}, "p5.json");
  const CliRun r = run({"descend", b, "--no-timing"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(result_of(r)["certificates"]["hypothesis_2e_lt_ell_minus_1"].get<bool>());
}

TEST_F(CliTest, InputErrorsExitOne) {
  const CliRun bad = run({"descend", write("bad.json", "{\"schema\": 1,\n  \"field\": [1, 2,\n")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line"), std::string::npos);

  const CliRun missing = run({"descend", write("m.json", R"({"schema":1,"field":{"n":1,"ell":5},"form":{"kind":"symmetric","gram":[[1]]}})")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("generators"), std::string::npos);

  const CliRun schema = run({"descend", write("s.json", R"({"schema":2})")});
  EXPECT_EQ(schema.code, 1);
  EXPECT_NE(schema.err.find("schema"), std::string::npos);

  const CliRun entry = run({"descend", write("e.json", R"({"schema":1,"field":{"n":1,"ell":5},"form":{"kind":"symmetric","gram":[["x"]]},"generators":[]})")});
  EXPECT_EQ(entry.code, 1);
  EXPECT_NE(entry.err.find("form.gram[0][0]"), std::string::npos);

  EXPECT_EQ(run({"descend", (dir_ / "absent.json").string()}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"verify", "nonsense", "--ell", "5"}).code, 1);
}

TEST_F(CliTest, FlagsOverrideBundleOptions) {
  const std::string b = exported({"q8", "--ell", "5"}, "q8.json");
  const CliRun r = run({"descend", b, "--max-group-order", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("GroupTooLarge"), std::string::npos);
}

TEST_F(CliTest, VerifyExitCodes) {
  const CliRun p6 = run({"verify", "prop6", "--ell", "5", "--no-timing"});
  EXPECT_EQ(p6.code, 0);
  EXPECT_TRUE(result_of(p6)["verdict"].get<bool>());
  const CliRun lemma = run({"verify", "lemma", "--ell", "3", "--no-timing"});
  EXPECT_EQ(lemma.code, 0);
  EXPECT_EQ(result_of(lemma)["counts"]["candidates"], 27);
  const CliRun two = run({"verify", "lemma", "--ell", "2"});
  EXPECT_EQ(two.code, 1);
  EXPECT_NE(two.err.find("CharTwo"), std::string::npos);
  EXPECT_EQ(run({"verify", "prop5", "--ell", "7", "--no-timing"}).code, 0);
  const CliRun text = run({"verify", "lemma", "--ell", "5", "--format", "text", "--no-timing"});
  EXPECT_NE(text.out.find("verdict: true"), std::string::npos);
}

TEST_F(CliTest, CharpolyTable) {
  const std::string b = exported({"prop6", "--ell", "5"}, "p6.json");
  const CliRun r = run({"charpoly", b, "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = result_of(r);
  EXPECT_EQ(res["table"].size(), res["group_order"].get<std::size_t>());
  EXPECT_EQ(res["table"].size(), 40u);
  // (t^2 + 1)^2 = 1 + 2t^2 + t^4, each coefficient a rational vector
  int count = 0;
  for (const auto& row : res["table"]) {
    std::vector<std::string> lead;
    for (const auto& c : row["over_K"]) {
      lead.push_back(c[0].get<std::string>());
      for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != "0") lead.back() = "?";
    }
    if (lead == std::vector<std::string>{"1", "0", "2", "0", "1"}) ++count;
  }
  EXPECT_EQ(count, 6);
}

TEST_F(CliTest, TrivialGroupSingleRow) {
  const std::string b =
      write("t.json", R"({"schema":1,"field":{"n":1,"ell":5},"form":{"kind":"symmetric","gram":[[1,0],[0,1]]},"generators":[]})");
  const CliRun r = run({"charpoly", b, "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json table = result_of(r)["table"];
  ASSERT_EQ(table.size(), 1u);
  // (t - 1)^2
  EXPECT_EQ(table[0]["over_K"], Json::parse(R"([["1"],["-2"],["1"]])"));
  EXPECT_EQ(table[0]["reduced"], Json::parse("[[1],[3],[1]]"));
}

TEST_F(CliTest, BalanceSubcommand) {
  const std::string b = exported({"ramified", "--ell", "7", "--odd-scale"}, "r.json");
  const CliRun r = run({"balance", b, "--no-timing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = result_of(r);
  EXPECT_EQ(res["scale_m"], -1);
  EXPECT_LE(res["chain_length"].get<int>(), res["length_bound"].get<int>());
}

TEST_F(CliTest, ReportsAreDeterministic) {
  const std::string b = exported({"ramified", "--ell", "11"}, "r.json");
  const CliRun a = run({"descend", b, "--no-timing"}), c = run({"descend", b, "--no-timing"});
  EXPECT_EQ(a.out, c.out);
  // With timing the reports differ in the timing block at most.
  Json ta = Json::parse(run({"descend", b}).out), tc = Json::parse(run({"descend", b}).out);
  ASSERT_TRUE(ta.contains("timing"));
  ta.erase("timing");
  tc.erase("timing");
  EXPECT_EQ(ta.dump(), tc.dump());
  EXPECT_EQ(ta.dump(2) + "\n", a.out);
}

TEST_F(CliTest, OutFlagWritesFile) {
  const std::string b = exported({"z4", "--ell", "7"}, "z4.json");
  const std::string out = (dir_ / "report.json").string();
  const CliRun r = run({"descend", b, "--out", out, "--no-timing"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["result"]["f0"]["kind"], "hermitian");
  EXPECT_EQ(j["input_digest"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = LDESC_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  const std::string q8 = exported({"q8", "--ell", "13"}, "q8.json");
  const std::string p5 = exported({"prop5", "--ell", "7"}, "p5.json");
  EXPECT_EQ(status("descend " + q8), 0);
  EXPECT_EQ(status("descend " + p5), 2);
  EXPECT_EQ(status("descend " + write("bad.json", "not json")), 1);
  EXPECT_EQ(status("verify lemma --ell 2"), 1);
  EXPECT_EQ(status("verify prop6 --ell 5"), 0);
  EXPECT_EQ(status("--help"), 0);
}

TEST(Serialize, BundleRoundTrip) {
  for (const Bundle& b : {q8_bundle(13), z4_hermitian_bundle(7), ramified_hermitian_bundle(7, true), prop6_bundle(5)}) {
    const Json j = bundle_to_json(b);
    const Bundle c = bundle_from_json(j);
    EXPECT_EQ(c.form.gram(), b.form.gram());
    EXPECT_EQ(c.form.kind(), b.form.kind());
    EXPECT_EQ(c.generators, b.generators);
    EXPECT_EQ(c.form.field()->uniformizer(), b.form.field()->uniformizer());
    EXPECT_EQ(bundle_to_json(c).dump(), j.dump());
  }
}

TEST(Serialize, RationalEntriesAndScalars) {
  const Json j = Json::parse(
      R"({"schema":1,"field":{"n":4,"ell":5},"form":{"kind":"symmetric","gram":[["1/2",0],[0,["3","-2/7"]]]},"generators":[]})");
  const Bundle b = bundle_from_json(j);
  const Field& F = b.form.field();
  EXPECT_EQ(b.form.gram()(0, 0), F->rational(mpq_class(1, 2)));
  EXPECT_EQ(b.form.gram()(1, 1), F->element({mpq_class(3), mpq_class(-2, 7)}));
  try {
    bundle_from_json(Json::parse(R"({"schema":1,"field":{"n":4,"ell":5},"form":{"kind":"symmetric","gram":[["1/0"]]},"generators":[]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
  }
}

TEST(Serialize, Sha256KnownValue) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Serialize, EnumerationCapSpellings) {
  const std::string base = R"({"schema":1,"field":{"n":1,"ell":5},"form":{"kind":"symmetric","gram":[[1]]},"generators":[],)";
  EXPECT_EQ(bundle_from_text(base + R"("options":{"enumeration_cap":7}})").options.enum_cap, 7u);
  EXPECT_EQ(bundle_from_text(base + R"("options":{"enum_cap":9}})").options.enum_cap, 9u);
  EXPECT_EQ(bundle_to_json(bundle_from_text(base + R"("options":{"enum_cap":9}})"))["options"]["enumeration_cap"], 9);
}
