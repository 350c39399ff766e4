#include <gtest/gtest.h>

#include "pogroup/suites.hpp"

using namespace pogroup;

namespace {

void print_failures(const SuiteReport &r) {
  for (auto &c : r.checks)
    if (c.verdict != Verdict::Pass) ADD_FAILURE() << r.suite << " " << c.subject << " " << c.check << ": " << c.detail;
}

}  // namespace

TEST(Suites, CorpusPasses) {
  auto r = run_corpus(corpus());
  print_failures(r);
  EXPECT_GT(r.checks.size(), 15u);
}

TEST(Suites, CorpusBudgetAndNegativeControl) {
  auto entries = corpus();
  std::vector<CorpusEntry> lex;
  for (auto &e : entries)
    if (e.name == "lex-integers") lex.push_back(e);
  auto r = run_corpus(lex, {}, 1);
  bool flagged = false;
  for (auto &c : r.checks)
    if (c.check == "classification") flagged = c.verdict == Verdict::Unknown;
  EXPECT_TRUE(flagged);
  EXPECT_EQ(r.count(Verdict::Fail), 0u);

  CorpusEntry bad;
  bad.name = "corrupted";
  bad.group = product_integers(2);
  bad.atoms = Mat{ints({1, 0})};
  auto f = run_corpus({bad});
  ASSERT_EQ(f.checks.size(), 1u);
  EXPECT_EQ(f.checks[0].verdict, Verdict::Fail);
  EXPECT_EQ(f.exit_code(), 1);
}

TEST(Suites, TfaeSeeded) {
  auto r = tfae_suite(7, 60);
  print_failures(r);
  EXPECT_EQ(r.checks.size(), 60u);
}

TEST(Suites, BoxOracleFindsKnownViolation) {
  // 2Z inside Z: 1 + 1 lies in 2Z but 1 does not
  auto v = detail::box_violation({ints({1})}, Module::lattice(1, {ints({2})}), 1, 3);
  ASSERT_TRUE(v);
  EXPECT_FALSE(detail::box_violation({ints({1, 0}), ints({0, 1})}, Module::lattice(2, {ints({1, 0})}), 2, 3));
}

TEST(Suites, SumpropAndMutation) {
  auto r = sumprop_suite(3, 20);
  print_failures(r);
  auto m = sumprop_suite(3, 0, true);
  EXPECT_EQ(m.exit_code(), 1);
}

TEST(Suites, StructureAndLes) {
  print_failures(structure_suite());
  print_failures(les_suite());
}
