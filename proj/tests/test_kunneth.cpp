#include "bpchain/kunneth.hpp"
#include "bpchain/probes.hpp"

#include <gtest/gtest.h>

using namespace bpchain;

namespace {

const Prime p3(3);
const Prime p5(5);

const PSeriesTable& bp3() {
  static const PSeriesTable t = compute_p_series(p3, 24);
  return t;
}

FinitePGroup z(std::vector<int> e) { return FinitePGroup(std::move(e)); }

int first_failure(const VerificationReport& r, const std::string& kind) {
  for (const auto& c : r.cells)
    if (c.kind == kind && c.verdict == Verdict::fail) return c.degree;
  return -1;
}

}  // namespace

TEST(NPower, HandComputedGroups) {
  const NPowerPresentation n1(bp3(), 1, 12);
  EXPECT_EQ(n1.group(1), z({1}));  // 3 z_0 = 0
  EXPECT_EQ(n1.group(2), FinitePGroup());
  EXPECT_EQ(n1.group(3), z({1}));  // 3 z_1 + a_1 z_0 with a_1 = 0
  EXPECT_EQ(n1.group(5), z({2}));  // 3 z_2 - 8 v_1 z_0 and 3 v_1 z_0
  const NPowerPresentation n2(bp3(), 2, 8);
  EXPECT_EQ(n2.rank(2), 1u);
  EXPECT_EQ(n2.group(2), z({1}));
  for (int d = 1; d <= 8; d += 2) EXPECT_TRUE(n2.group(d).is_trivial()) << d;
}

TEST(NPower, DegreeFiveRelationMatrix) {
  const NPowerPresentation n1(bp3(), 1, 6);
  const auto& gens = n1.generators(5);
  ASSERT_EQ(gens.size(), 2u);
  const SparseMatrix& r = n1.relations(5);
  ASSERT_EQ(r.cols(), 2u);
  const std::size_t z2 = n1.index(5, {{0, }, {2}});
  const std::size_t v1z0 = n1.index(5, {{1}, {0}});
  std::multiset<std::pair<std::string, std::string>> cols;
  for (std::size_t c = 0; c < 2; ++c)
    cols.emplace(r.get(z2, c).get_str(), r.get(v1z0, c).get_str());
  EXPECT_EQ(cols, (std::multiset<std::pair<std::string, std::string>>{{"0", "3"}, {"3", "-8"}}));
}

TEST(NPower, InsufficientSeriesIsAnError) {
  EXPECT_THROW(NPowerPresentation(compute_p_series(p3, 8), 1, 10), Error);
  EXPECT_THROW(NPowerPresentation(bp3(), 0, 10), Error);
}

TEST(NPower, PresentationOrderDoesNotMatter) {
  const auto base = n_power_table(bp3(), 2, 20);
  for (std::uint64_t seed : {1u, 7u, 99u})
    for (auto rule : {PivotRule::lex_first, PivotRule::lex_last, PivotRule::column_major}) {
      ComputeOptions o;
      o.shuffle_seed = seed;
      o.rule = rule;
      EXPECT_EQ(n_power_table(bp3(), 2, 20, o), base) << seed;
    }
}

TEST(NPower, MatchesChainHomologyForOneFactor) {
  const auto cx = assemble_complex(bp3(), 1, 20);
  const ChainHomology h(cx);
  const auto np = n_power_table(bp3(), 1, 20);
  for (int d = 1; d <= 19; ++d) EXPECT_EQ(h.group(d), np.at(d)) << d;
}

TEST(LModule, Generators) {
  EXPECT_TRUE(l_module_table(p3, 0).generator_degrees.empty());
  EXPECT_EQ(l_module_table(p3, 1).generator_degrees, (std::vector<int>{2, 4}));
  const auto l2 = l_module_table(p3, 2).generator_degrees;
  ASSERT_EQ(l2.size(), 8u);
  EXPECT_EQ(l2.front(), 2);
  EXPECT_EQ(l2.back(), 16);
  EXPECT_EQ(l_module_table(p3, 1, true).generator_degrees, (std::vector<int>{2, 4, 6}));
}

TEST(Words, Subscripts) {
  const auto words = summand_words(3);
  ASSERT_EQ(words.size(), 8u);
  EXPECT_EQ(words.front().render(), "L0.L0.L0");
  EXPECT_EQ(words[5].render(), "N.L1.N");
  EXPECT_EQ(words[5].subscripts(), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(word_shifts(words[0], p3, 20).empty());
  EXPECT_EQ(word_shifts(words[5], p3, 20), (std::vector<int>{2, 4}));
}

TEST(Rhs, BaseCaseIsN) {
  const auto rhs = rhs_main_table(bp3(), 1, 20);
  const auto np = n_power_table(bp3(), 1, 20);
  for (int d = 1; d <= 20; ++d) EXPECT_EQ(rhs.total.at(d), np.at(d)) << d;
}

TEST(Rhs, LowDegreesForTwoFactors) {
  const auto rhs = rhs_main_table(bp3(), 2, 12);
  EXPECT_EQ(rhs.total.at(2), z({1}));
  EXPECT_EQ(rhs.by_level.at(2, 2), z({1}));
  // N.L1 in degree 3: N_1 shifted by y_1.
  EXPECT_EQ(rhs.by_last.at(3, 1), z({1}));
  EXPECT_EQ(rhs.by_level.at(3, 1), z({1}));
}

TEST(Tor, LowestDegreesByHand) {
  const auto tor = tor_table(bp3(), 1, 8);
  EXPECT_TRUE(tor.at(0).is_trivial());
  EXPECT_TRUE(tor.at(1).is_trivial());
  EXPECT_EQ(tor.at(2), z({1}));  // kernel of 3 : N_1 -> N_1
}

TEST(Tor, EqualsNTensorL) {
  for (std::size_t k : {1u, 2u}) {
    const auto r = verify_tor(bp3(), k, 20);
    EXPECT_EQ(r.overall(), Verdict::pass) << k;
    EXPECT_EQ(r.count(Verdict::fail), 0u);
  }
  EXPECT_EQ(verify_tor(compute_p_series(p5, 20), 1, 20).overall(), Verdict::pass);
}

TEST(TheoremMain, PassesOnSmallWindows) {
  for (std::size_t n : {1u, 2u}) {
    const auto r = verify_theorem_main(bp3(), n, 20);
    EXPECT_EQ(r.overall(), Verdict::pass) << n;
    EXPECT_FALSE(r.conjecture_probe);
    EXPECT_EQ(r.max_degree, 19);
  }
}

TEST(TheoremMain, NegativeControlFailsWhereTheExtraGeneratorLands) {
  MainOptions o;
  o.inclusive_l_range = true;
  const auto r = verify_theorem_main(bp3(), 2, 20, o);
  EXPECT_EQ(r.overall(), Verdict::fail);
  // the extra y_3 (degree 6) pairs with N_1, so the first discrepancy is degree 7.
  EXPECT_EQ(first_failure(r, "total"), 7);
}

TEST(TheoremMain, PrimeTwoIsLabelledAProbe) {
  const auto r = verify_theorem_main(compute_p_series(Prime(2), 10), 2, 10);
  EXPECT_TRUE(r.conjecture_probe);
  EXPECT_EQ(r.to_json().at("label"), "conjecture probe");
}

TEST(Level, PassesAndBucketsAreConsistent) {
  const auto r = verify_level(bp3(), 2, 20);
  EXPECT_EQ(r.overall(), Verdict::pass);
  EXPECT_GT(r.count(Verdict::pass), 0u);
}

TEST(KernelLemma, HandCells) {
  const auto r = verify_kernel_lemma(bp3(), 1, 12);
  EXPECT_EQ(r.overall(), Verdict::pass);
  EXPECT_TRUE(r.cells.at(0).lhs.is_trivial());  // degree 1: N_1 injects into H_1
  EXPECT_EQ(r.cells.at(4).degree, 5);
  EXPECT_EQ(r.cells.at(4).lhs, z({1}));          // generated by v_1 z_0, of order 3 in Z/9
}

TEST(KernelLemma, PassesForTwoFactors) {
  EXPECT_EQ(verify_kernel_lemma(bp3(), 2, 20).overall(), Verdict::pass);
}

TEST(KernelLemma, VacuousWithoutRoom) {
  const auto r = verify_kernel_lemma(bp3(), 2, 10);
  EXPECT_EQ(r.overall(), Verdict::vacuous);
}

TEST(Squeeze, Evidence) {
  const auto r = squeeze_evidence(bp3(), 2, 1, 20);
  EXPECT_NE(r.overall(), Verdict::fail);
  bool toral_killed = false;
  for (const auto& c : r.cells)
    if (c.kind == "nilpotence" && c.degree == 2) toral_killed = c.verdict == Verdict::pass;
  EXPECT_TRUE(toral_killed);
  EXPECT_GT(r.count(Verdict::pass), 0u);
  EXPECT_THROW(squeeze_evidence(bp3(), 2, 2, 20), Error);
  EXPECT_THROW(squeeze_evidence(bp3(), 1, 1, 20), Error);
}

TEST(Annihilator, ConnerFloydPattern) {
  const auto r2 = annihilator_probe(bp3(), 2, 20);
  EXPECT_EQ(r2.overall(), Verdict::pass);
  std::map<int, std::string> notes;
  for (const auto& c : r2.cells)
    if (c.kind == "annihilator") notes[*c.bucket] = c.note;
  EXPECT_EQ(notes.at(0), "v_0 * toral = 0");
  EXPECT_EQ(notes.at(1), "v_1 * toral = 0");
  EXPECT_EQ(notes.at(2), "v_2 * toral != 0");
  const auto r1 = annihilator_probe(bp3(), 1, 8);
  EXPECT_EQ(r1.overall(), Verdict::pass);
}

TEST(Report, JsonRoundTrip) {
  const auto r = verify_tor(bp3(), 1, 10);
  const auto back = VerificationReport::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_THROW(VerificationReport::from_json(nlohmann::json::object()), Error);
}

TEST(Report, OverallVerdictRules) {
  VerificationReport r;
  EXPECT_EQ(r.overall(), Verdict::vacuous);
  r.cells.push_back({1, std::nullopt, "x", {}, {}, Verdict::vacuous, ""});
  EXPECT_EQ(r.overall(), Verdict::vacuous);
  r.cells.push_back({2, std::nullopt, "x", {}, {}, Verdict::pass, ""});
  EXPECT_EQ(r.overall(), Verdict::pass);
  r.cells.push_back({3, std::nullopt, "x", {}, {}, Verdict::inconclusive, ""});
  EXPECT_EQ(r.overall(), Verdict::inconclusive);
  r.cells.push_back({4, std::nullopt, "x", {}, {}, Verdict::fail, ""});
  EXPECT_EQ(r.overall(), Verdict::fail);
}
