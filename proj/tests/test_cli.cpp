#include "bpchain/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bpchain;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bpchain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CacheDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("bpchain-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::vector<std::string> with_cache(std::vector<std::string> a) const {
    a.push_back("--cache-dir");
    a.push_back(dir_.string());
    return a;
  }
  std::size_t files() const {
    if (!std::filesystem::exists(dir_)) return 0;
    return static_cast<std::size_t>(std::distance(std::filesystem::directory_iterator(dir_), {}));
  }
  std::filesystem::path dir_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, PSeriesTable) {
  const auto r = run({"pseries", "--p", "3", "--max-degree", "16", "--no-cache"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\n0 | 0 | 3\n"));
  EXPECT_TRUE(contains(r.out, "\n1 | 2 | 0\n"));
  EXPECT_TRUE(contains(r.out, "\n2 | 4 | -8*v1\n"));  // -8 = 1 mod 3
  EXPECT_TRUE(contains(r.out, "PASS a_2 = v_1 mod (p)"));
  EXPECT_TRUE(contains(r.out, "PASS a_8 = v_2 mod (p, v_1)"));
}

TEST(Cli, HomologyRows) {
  const auto r = run({"homology", "--p", "3", "--n", "1", "--max-degree", "8", "--no-cache"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "\n1 | 1 | 3\n"));
  EXPECT_TRUE(contains(r.out, "\n2 | - | 0\n"));
  EXPECT_TRUE(contains(r.out, "# valid degrees 1..7"));
  const auto b = run({"homology", "--p", "3", "--n", "2", "--max-degree", "6", "--bigraded", "--no-cache"});
  EXPECT_TRUE(contains(b.out, "\n3 | 1 | 3\n"));
  EXPECT_TRUE(contains(b.out, "\n4 | 2 | 3,3\n"));
}

TEST(Cli, HomologyJsonRoundTrip) {
  const auto r = run({"homology", "--p", "3", "--n", "2", "--max-degree", "10", "--format", "json", "--no-cache"});
  ASSERT_EQ(r.code, 0);
  const auto t = HomologyTable::from_json(nlohmann::json::parse(r.out));
  EXPECT_EQ(t.to_json().dump(2) + "\n", r.out);
  EXPECT_EQ(t.at(2), FinitePGroup({1}));
  EXPECT_EQ(t.to_json().at("valid_degrees"), nlohmann::json({1, 9}));
}

TEST(Cli, CsvFlattening) {
  const auto r = run({"homology", "--p", "3", "--n", "1", "--max-degree", "6", "--format", "csv", "--no-cache"});
  EXPECT_EQ(r.out, "degree,odd_count,exponents,free_rank\n1,1,1,0\n2,0,,0\n3,1,1,0\n4,0,,0\n5,1,2,0\n");
}

TEST(Cli, VerifyMainJson) {
  const auto r = run({"verify", "main", "--p", "3", "--n", "2", "--max-degree", "20", "--format", "json", "--no-cache"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "PASS");
  EXPECT_EQ(j.at("valid_degrees"), nlohmann::json({1, 19}));
  const auto& cell = j.at("cells").at(0);
  for (const char* field : {"degree", "bucket", "lhs", "rhs", "verdict"}) EXPECT_TRUE(cell.contains(field)) << field;
}

TEST(Cli, FailExitsOne) {
  const auto r = run({"verify", "main", "--p", "3", "--n", "2", "--max-degree", "12", "--negative-control", "--no-cache"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "verdict: FAIL"));
}

TEST(Cli, WarningsStillExitZero) {
  const auto k = run({"verify", "kernel", "--p", "3", "--k", "2", "--max-degree", "10", "--no-cache"});
  EXPECT_EQ(k.code, 0);
  EXPECT_TRUE(contains(k.err, "VACUOUS"));
  const auto s = run({"verify", "squeeze", "--p", "3", "--k", "2", "--l", "1", "--max-degree", "20", "--no-cache"});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(contains(s.err, "INCONCLUSIVE"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"homology", "--p", "4", "--n", "1", "--max-degree", "6", "--no-cache"}).code, 2);
  EXPECT_EQ(run({"homology", "--p", "3", "--n", "1", "--max-degree", "0", "--no-cache"}).code, 2);
  EXPECT_EQ(run({"homology", "--p", "3", "--max-degree", "6", "--no-cache"}).code, 2);
  EXPECT_EQ(run({"verify", "squeeze", "--p", "3", "--k", "1", "--l", "1", "--max-degree", "6", "--no-cache"}).code, 2);
  EXPECT_EQ(run({"homology", "--p", "3", "--n", "1", "--max-degree", "6", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, PrimeTwoNeedsTheProbeFlag) {
  const auto r = run({"verify", "main", "--p", "2", "--n", "2", "--max-degree", "8", "--no-cache"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "conjectural at p=2"));
  const auto probe =
      run({"verify", "main", "--p", "2", "--n", "2", "--max-degree", "8", "--conjecture-probe", "--no-cache"});
  EXPECT_TRUE(contains(probe.out, "CONJECTURE PROBE"));
  const auto json = run({"verify", "main", "--p", "2", "--n", "2", "--max-degree", "8", "--conjecture-probe",
                         "--format", "json", "--no-cache"});
  EXPECT_EQ(nlohmann::json::parse(json.out).at("label"), "conjecture probe");
  EXPECT_EQ(run({"stretch", "--p", "2", "--k", "1", "--n", "2"}).code, 2);
}

TEST(Cli, CohomologyCommands) {
  const auto p2 = run({"p2-example"});
  EXPECT_EQ(p2.code, 0);
  EXPECT_TRUE(contains(p2.out, "Delta^*(s1*s2*s3) = s^3"));
  EXPECT_TRUE(contains(p2.out, "verdict: PASS"));
  EXPECT_EQ(run({"vandermonde", "--p", "3", "--k", "2"}).code, 0);
  EXPECT_EQ(run({"vandermonde", "--p", "3", "--k", "1", "--negative-control"}).code, 1);
  EXPECT_EQ(run({"stretch", "--p", "5", "--k", "3", "--n", "4"}).code, 0);
  EXPECT_EQ(run({"stretch", "--p", "3", "--k", "2", "--n", "2"}).code, 1);
}

TEST_F(CacheDir, HitMissAndKeying) {
  const auto args = with_cache({"homology", "--p", "3", "--n", "2", "--max-degree", "10"});
  const auto first = run(args);
  ASSERT_EQ(first.code, 0);
  const std::size_t after_first = files();
  EXPECT_EQ(after_first, 2u);  // p-series and homology
  const auto second = run(args);
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(files(), after_first);
  run(with_cache({"homology", "--p", "3", "--n", "2", "--max-degree", "11"}));
  EXPECT_EQ(files(), after_first + 2);  // changing D changes both keys
  EXPECT_EQ(run({"homology", "--p", "3", "--n", "2", "--max-degree", "10", "--no-cache"}).out, first.out);
}

TEST_F(CacheDir, AuditMatches) {
  const auto args = with_cache({"pseries", "--p", "3", "--max-degree", "20"});
  run(args);
  auto audited = args;
  audited.push_back("--audit");
  const auto r = run(audited);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.err, "audit: pseries"));
}

TEST_F(CacheDir, AuditDetectsTampering) {
  const auto args = with_cache({"homology", "--p", "3", "--n", "1", "--max-degree", "8"});
  run(args);
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    if (e.path().filename().string().rfind("homology", 0) != 0) continue;
    std::ifstream in(e.path());
    std::string header, body;
    std::getline(in, header);
    std::getline(in, body);
    in.close();
    auto j = nlohmann::json::parse(body);
    j["rows"][0]["exponents"] = {2};
    std::ofstream(e.path()) << header << '\n' << j.dump();
  }
  EXPECT_TRUE(contains(run(args).out, "\n1 | 1 | 9\n"));  // without audit the tampered entry is served
  auto audited = args;
  audited.push_back("--audit");
  const auto r = run(audited);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, "differs from the cached bytes"));
}

TEST_F(CacheDir, CorruptPayloadIsRecomputed) {
  const auto args = with_cache({"homology", "--p", "3", "--n", "1", "--max-degree", "8"});
  const auto clean = run(args);
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    std::ifstream in(e.path());
    std::string header;
    std::getline(in, header);
    in.close();
    std::ofstream(e.path()) << header << "\n{not json";
  }
  const auto r = run(args);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, clean.out);
  EXPECT_TRUE(contains(r.err, "discarding corrupt cache entry"));
  EXPECT_EQ(run(args).err, "");  // rewritten cleanly
}

TEST_F(CacheDir, UnwritableDirectoryDegradesToWarning) {
  std::filesystem::create_directories(dir_);
  const auto blocker = dir_ / "file";
  std::ofstream(blocker) << "x";
  const auto r = run({"pseries", "--p", "3", "--max-degree", "8", "--cache-dir", (blocker / "sub").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.err, "warning: "));
  EXPECT_TRUE(contains(r.out, "PASS a_0 = p"));
}

TEST(CacheKey, Digest) {
  const CacheKey a{1, "pseries", {{"p", "3"}, {"degree_bound", "16"}}};
  CacheKey b = a;
  b.inputs[1].second = "17";
  EXPECT_NE(a.digest(), b.digest());
  EXPECT_EQ(a.digest().size(), 16u);
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
}
