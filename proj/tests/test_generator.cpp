#include "support.hpp"

#include <jt/generator.hpp>

#include <doctest.h>

using namespace jt;
using namespace jt_test;

TEST_CASE("generated frames are deterministic and valid")
{
  fuzz_config cfg;
  cfg.max_defined_atoms = 3;
  auto a = generate_random_frame(cfg, 0);
  auto b = generate_random_frame(cfg, 0);
  CHECK(a.frame.rules() == b.frame.rules());
  CHECK(a.frame.atoms() == b.frame.atoms());
  CHECK(a.base_rules == b.base_rules);

  cfg.seed = 2;
  std::size_t differ = 0;
  for (std::size_t i = 0; i < 20; ++i)
    {
      fuzz_config other = cfg;
      other.seed = 1;
      differ += generate_random_frame(cfg, i).frame.rules() != generate_random_frame(other, i).frame.rules();
    }
  CHECK(differ > 10);
}

TEST_CASE("generated frames respect the bounds")
{
  fuzz_config cfg;
  for (std::size_t i = 0; i < 300; ++i)
    {
      auto g = generate_random_frame(cfg, i);
      std::size_t defined = 0, open = 0;
      for (const auto& name : g.frame.atoms().names())
        (name[0] == 'd' ? defined : open)++;
      CHECK(defined >= 1);
      CHECK(defined <= cfg.max_defined_atoms);
      CHECK(open <= cfg.max_open_atoms);
      std::map<fact, std::size_t> cases;
      for (const auto& r : g.base_rules)
        {
          ++cases[r.head];
          CHECK(r.body.size() >= 1);
          CHECK(r.body.size() <= cfg.max_body_size);
        }
      for (const auto& [head, n] : cases)
        CHECK(n <= cfg.max_cases_per_head);
      CHECK(g.attempts >= 1);
    }
}

TEST_CASE("generated frames are nearly always complementary")
{
  fuzz_config cfg;
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < 1000; ++i)
    rejected += !generate_random_frame(cfg, i).complementary;
  CHECK(rejected <= 10);
}

TEST_CASE("config validation")
{
  fuzz_config cfg;
  cfg.max_body_size = 0;
  CHECK_THROWS_AS(cfg.validate(), error);
  cfg = {};
  cfg.evaluations = {"wf"};
  CHECK_THROWS_AS(cfg.validate(), error);
  cfg = {};
  cfg.evaluations.clear();
  CHECK_THROWS_AS(cfg.validate(), error);
  cfg = {};
  cfg.sample_count = 0;
  CHECK_THROWS_AS(cfg.validate(), error);
  CHECK_NOTHROW(fuzz_config{}.validate());
}

TEST_CASE("fuzzing")
{
  fuzz_config cfg;
  cfg.frame_count = 0;
  auto empty = fuzz_consistency(cfg);
  CHECK(empty.frames_tested == 0);
  CHECK(empty.violations.empty());
  CHECK(empty.theorem_holds());

  cfg.frame_count = 60;
  cfg.inject_regression = true;
  auto report = fuzz_consistency(cfg);
  CHECK(report.frames_tested == 61);
  CHECK(report.complementarity_failures >= 1);
  CHECK(report.theorem_holds());
  CHECK(report.noncomplementary_violation_count == 0);

  cfg.allow_noncomplementary = true;
  auto permissive = fuzz_consistency(cfg);
  CHECK(permissive.theorem_holds());
  CHECK(permissive.noncomplementary_violation_count > 0);
  bool injected = false;
  for (const auto& v : permissive.noncomplementary_violations)
    injected = injected || v.frame_index == 60;
  CHECK(injected);

  cfg.threads = 1;
  auto serial = fuzz_report_json(fuzz_consistency(cfg));
  cfg.threads = 4;
  CHECK(fuzz_report_json(fuzz_consistency(cfg)) == serial);
}

TEST_CASE("sampled fuzzing records seeds")
{
  fuzz_config cfg;
  cfg.frame_count = 5;
  cfg.allow_noncomplementary = true;
  cfg.inject_regression = true;
  cfg.mode = interpretation_mode::sampled;
  cfg.sample_count = 4;
  auto report = fuzz_consistency(cfg);
  CHECK(report.interpretations_checked == 6 * 2 * 4);
  REQUIRE_FALSE(report.noncomplementary_violations.empty());
  CHECK(report.noncomplementary_violations[0].seed.has_value());
}

TEST_CASE("the contradictory frame")
{
  auto frame = contradictory_frame();
  CHECK(frame.rule_count() == 2);
  CHECK_FALSE(check_complementarity(frame).complementary);
}
