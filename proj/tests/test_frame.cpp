#include "support.hpp"

#include <jt/generator.hpp>
#include <jt/random.hpp>

#include <doctest.h>

using namespace jt;
using namespace jt_test;

namespace
{
  frame_data data_of(std::vector<std::string> names, std::set<atom_id> defined,
                     std::vector<rule> rules)
  {
    return {vocabulary(names), std::move(defined), std::move(rules)};
  }

  std::vector<std::string> diagnostics_of(frame_data data)
  {
    try
      {
        validate_frame(std::move(data));
      }
    catch (const frame_error& e)
      {
        return e.diagnostics();
      }
    return {};
  }

  const auto p = fact::atom(0);
  const auto q = fact::atom(1);
  const auto r = fact::atom(2);
  const auto s = fact::atom(3);
  const auto t = fact::logical(truth_value::t);
  const auto f = fact::logical(truth_value::f);
}

TEST_CASE("fact sets")
{
  auto a = make_fact_set({r, p, p, ~q});
  CHECK(a == fact_set{p, ~q, r});
  CHECK(complement(a) == fact_set{~p, q, ~r});
  CHECK(is_subset({p, r}, a));
  CHECK_FALSE(is_subset({q}, a));
  CHECK(intersects(a, {r, s}));
  CHECK_FALSE(intersects(a, {q, s}));
}

TEST_CASE("validation")
{
  SUBCASE("a frame with both signs ruled is valid")
  {
    auto frame = validate_frame(data_of({"p", "q"}, {0}, {{p, {q}}, {~p, {~q}}}));
    CHECK(frame.is_defined(p));
    CHECK(frame.is_defined(~p));
    CHECK(frame.is_open(q));
    CHECK(frame.is_open(t));
    CHECK_FALSE(frame.is_defined(t));
    CHECK(frame.defined_facts() == std::vector<fact>{p, ~p});
    CHECK(frame.open_atoms() == std::vector<fact>{q});
    CHECK(frame.rule_count() == 2);
  }
  SUBCASE("a defined fact without rules")
  {
    auto d = diagnostics_of(data_of({"p", "q"}, {0}, {{p, {q}}}));
    REQUIRE(d.size() == 1);
    CHECK(d[0] == "defined fact ~p has no rules");
  }
  SUBCASE("empty body")
  {
    auto d = diagnostics_of(data_of({"p"}, {0}, {{p, {}}, {~p, {t}}}));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == "rule for p has an empty body");
    CHECK(d[1] == "defined fact p has no rules");
  }
  SUBCASE("every problem is listed")
  {
    auto d = diagnostics_of(data_of({"p", "q"}, {0}, {{t, {p}}, {q, {p}}, {p, {fact::atom(7)}}}));
    CHECK(d.size() == 5);
  }
  SUBCASE("duplicate bodies collapse")
  {
    auto frame = validate_frame(data_of({"p"}, {0}, {{p, {t}}, {p, {t}}, {~p, {f}}}));
    CHECK(frame.cases(p).size() == 1);
  }
}

TEST_CASE("cases")
{
  auto before = frame_of(read_data("prerepair.jt"));
  CHECK(before.cases(F(before, "p")) == std::vector<fact_set>{S(before, {"q", "~r"})});
  CHECK_THROWS_AS(before.cases(F(before, "q")), error);

  auto repaired = frame_of(read_data("repaired.jt"));
  auto np = F(repaired, "~p");
  CHECK(repaired.cases(np) == std::vector<fact_set>{S(repaired, {"~q"}), S(repaired, {"r"})});
  CHECK(repaired.case_index(np, S(repaired, {"r"})) == 1u);
  CHECK_FALSE(repaired.case_index(np, S(repaired, {"q"})).has_value());

  auto occ = repaired.occurrences(F(repaired, "~r"));
  REQUIRE(occ.size() == 1);
  CHECK(occ[0].head == F(repaired, "p"));
}

TEST_CASE("selection functions")
{
  auto one = frame_of("p <- q, ~r. ~p <- t.");
  auto sel = enumerate_selection_functions(one, F(one, "p"));
  REQUIRE(sel.size() == 2);
  CHECK(sel[0].image() == S(one, {"q"}));
  CHECK(sel[1].image() == S(one, {"~r"}));

  auto two = frame_of("p <- q, ~r. p <- s. ~p <- t.");
  sel = enumerate_selection_functions(two, F(two, "p"));
  REQUIRE(sel.size() == 2);
  CHECK(sel[0].image() == S(two, {"q", "s"}));
  CHECK(sel[1].image() == S(two, {"~r", "s"}));

  auto single = frame_of("p <- q. ~p <- t.");
  CHECK(enumerate_selection_functions(single, F(single, "p")).size() == 1);

  CHECK_THROWS_AS(enumerate_selection_functions(single, F(single, "q")), error);

  auto wide = frame_of("p <- a, b, c. p <- d, e, g. ~p <- t.");
  CHECK(enumerate_selection_functions(wide, F(wide, "p")).size() == 9);
  CHECK_THROWS_AS(enumerate_selection_functions(wide, F(wide, "p"), 8), capacity_error);
}

TEST_CASE("complement rules")
{
  CHECK(complement_rules({{p, {q, ~r}}}) == std::vector<rule>{{~p, {~q}}, {~p, {r}}});
  CHECK(complement_rules({{p, {q, ~r}}, {p, {s}}}) ==
        std::vector<rule>{{~p, {~q, ~s}}, {~p, {r, ~s}}});
  CHECK(complement_rules({{p, {q}}}) == std::vector<rule>{{~p, {~q}}});
  // equal images collapse
  CHECK(complement_rules({{p, {q, r}}, {p, {q}}}) ==
        std::vector<rule>{{~p, {~q}}, {~p, {~q, ~r}}});
  CHECK_THROWS_AS(complement_rules({{p, {q}}, {~p, {r}}}), error);
  CHECK_THROWS_AS(complement_rules({{p, {}}}), error);
  CHECK_THROWS_AS(complement_rules({{p, {q, r}}, {p, {s, ~s}}}, 3), capacity_error);
}

TEST_CASE("complementation")
{
  CHECK(complementation({{p, {q, ~r}}}) ==
        std::vector<rule>{{p, {q, ~r}}, {~p, {~q}}, {~p, {r}}});
  CHECK(complementation({}).empty());
  CHECK(complementation({{p, {t}}}) == std::vector<rule>{{p, {t}}, {~p, {f}}});
}

TEST_CASE("dropping subsumed rules")
{
  auto rules = drop_subsumed_rules({{~p, {~q}}, {~p, {r}}, {~p, {q, r}}, {p, {q}}});
  CHECK(rules == std::vector<rule>{{p, {q}}, {~p, {~q}}, {~p, {r}}});
}

TEST_CASE("complementarity of the small worked example")
{
  auto before = frame_of(read_data("prerepair.jt"));
  auto report = check_complementarity(before);
  CHECK_FALSE(report.complementary);
  REQUIRE_FALSE(report.violations.empty());
  const auto& v = report.violations[0];
  CHECK(v.head == F(before, "p"));
  CHECK(v.condition == 1);
  REQUIRE(v.uncovered_selection.has_value());
  CHECK(v.uncovered_selection->image() == S(before, {"~r"}));

  CHECK(check_complementarity(frame_of(read_data("repaired.jt"))).complementary);
  CHECK(check_complementarity(frame_of(read_data("redundant.jt"))).complementary);
}

TEST_CASE("contradictory rules are not complementary")
{
  auto frame = frame_of(read_data("contradictory.jt"));
  auto report = check_complementarity(frame);
  CHECK_FALSE(report.complementary);
  CHECK(report.violations[0].uncovered_selection->image() == fact_set{t});

  auto inter = rule_intersection_check(frame);
  CHECK_FALSE(inter.passed);
  REQUIRE(inter.failures.size() == 2);
  CHECK(inter.failures[0].body == fact_set{t});
  CHECK(inter.failures[0].opposite_body == fact_set{t});
}

TEST_CASE("condition 2 is reported on its own")
{
  // every selection for ~p is covered, but no selection for ~p
  // complements into the case {r} of p
  auto frame = frame_of("p <- q. p <- r. ~p <- ~q, ~r. ~p <- ~q, s.");
  auto report = check_complementarity(frame);
  CHECK_FALSE(report.complementary);
  bool condition2 = false;
  for (const auto& v : report.violations)
    condition2 = condition2 || (v.condition == 2 && v.head == F(frame, "p"));
  CHECK(condition2);
  CHECK(oracle::complementary(frame) == false);
}

TEST_CASE("rule intersection")
{
  CHECK(rule_intersection_check(frame_of(read_data("repaired.jt"))).passed);
  auto empty = validate_frame(data_of({"q"}, {}, {}));
  CHECK(rule_intersection_check(empty).passed);
  CHECK(check_complementarity(empty).complementary);
}

TEST_CASE("rendering")
{
  auto frame = frame_of(read_data("repaired.jt"));
  CHECK(to_string(frame.atoms(), S(frame, {"~r", "q"})) == "q, ~r");
  CHECK(to_string(frame.atoms(), frame.rules()[0]) == "p <- q, ~r.");
}

namespace
{
  // A random frame over p, q (defined) and o (open). The negative rules
  // are either independent of the positive ones or their complement,
  // sometimes with one extra rule, so both verdicts are common.
  justification_frame random_two_signed(random_source& rng)
  {
    auto random_body = [&] {
      std::vector<fact> body;
      for (auto k = rng.between(1, 2); k > 0; --k)
        body.push_back(rng.chance(1, 8) ? fact::logical(static_cast<truth_value>(rng.below(3)))
                                        : fact::atom(static_cast<atom_id>(rng.below(3)),
                                                     rng.chance(1, 2)));
      return make_fact_set(body);
    };
    std::size_t defined = rng.between(1, 2);
    frame_data data;
    data.atoms = vocabulary(std::vector<std::string>{"p", "q", "o"});
    for (atom_id a = 0; a < defined; ++a)
      {
        data.defined.insert(a);
        std::vector<rule> pos;
        for (auto c = rng.between(1, 3); c > 0; --c)
          pos.push_back({fact::atom(a), random_body()});
        std::vector<rule> neg;
        if (rng.chance(1, 2))
          {
            neg = complement_rules(pos);
            if (rng.chance(1, 3))
              neg.push_back({fact::atom(a, true), random_body()});
          }
        else
          for (auto c = rng.between(1, 3); c > 0; --c)
            neg.push_back({fact::atom(a, true), random_body()});
        data.rules.insert(data.rules.end(), pos.begin(), pos.end());
        data.rules.insert(data.rules.end(), neg.begin(), neg.end());
      }
    return validate_frame(std::move(data));
  }
}

TEST_CASE("the complementarity checker agrees with full enumeration")
{
  random_source rng(7);
  std::size_t yes = 0;
  for (int n = 0; n < 3000; ++n)
    {
      auto frame = random_two_signed(rng);
      bool expected = oracle::complementary(frame);
      CHECK(check_complementarity(frame).complementary == expected);
      yes += expected;
      if (expected)
        CHECK(rule_intersection_check(frame).passed);
    }
  // both verdicts must actually occur
  CHECK(yes > 50);
  CHECK(yes < 2950);

  // full enumeration over a complemented frame is exponential in the
  // number of cases, so keep the generated programs small
  fuzz_config cfg;
  cfg.max_defined_atoms = 3;
  cfg.max_cases_per_head = 2;
  cfg.max_body_size = 2;
  for (std::size_t i = 0; i < 300; ++i)
    {
      auto g = generate_random_frame(cfg, i);
      CHECK(g.complementary == oracle::complementary(g.frame));
    }
}

TEST_CASE("violation witnesses are genuine")
{
  random_source rng(11);
  for (int n = 0; n < 1000; ++n)
    {
      auto frame = random_two_signed(rng);
      for (const auto& v : check_complementarity(frame).violations)
        {
          if (v.condition == 1)
            {
              auto img = complement(v.uncovered_selection->image());
              for (const auto& a : frame.cases(~v.head))
                CHECK_FALSE(is_subset(a, img));
            }
          else
            for (const auto& sel : enumerate_selection_functions(frame, ~v.head))
              CHECK_FALSE(is_subset(complement(sel.image()), *v.unmatched_case));
        }
    }
}

TEST_CASE("complementation of a one-signed program is complementary")
{
  random_source rng(3);
  for (int n = 0; n < 500; ++n)
    {
      std::vector<rule> rules;
      for (atom_id a = 0; a < 2; ++a)
        for (auto c = rng.between(1, 3); c > 0; --c)
          {
            std::vector<fact> body;
            for (auto k = rng.between(1, 3); k > 0; --k)
              body.push_back(fact::atom(static_cast<atom_id>(rng.below(4)), rng.chance(1, 2)));
            rules.push_back({fact::atom(a, a == 1), make_fact_set(body)});
          }
      frame_data data{vocabulary(std::vector<std::string>{"a", "b", "c", "d"}), {}, complementation(rules)};
      data.defined = defined_from_heads(data.rules);
      auto frame = validate_frame(std::move(data));
      CHECK(check_complementarity(frame).complementary);
    }
}

TEST_CASE("complementing twice weakens the original cases")
{
  random_source rng(5);
  for (int n = 0; n < 500; ++n)
    {
      std::vector<rule> rules;
      for (auto c = rng.between(1, 2); c > 0; --c)
        {
          std::vector<fact> body;
          for (auto k = rng.between(1, 2); k > 0; --k)
            body.push_back(fact::atom(1 + static_cast<atom_id>(rng.below(3)), rng.chance(1, 2)));
          rules.push_back({p, make_fact_set(body)});
        }
      for (const auto& back : complement_rules(complement_rules(rules)))
        {
          CHECK(back.head == p);
          bool weakens = false;
          for (const auto& orig : rules)
            weakens = weakens || is_subset(orig.body, back.body);
          CHECK(weakens);
        }
    }
}

TEST_CASE("checking is bounded by the cap")
{
  std::string text = "#complement.\n";
  for (int c = 0; c < 13; ++c)
    {
      text += "p <- ";
      for (int k = 0; k < 3; ++k)
        text += (k ? ", a" : "a") + std::to_string(3 * c + k);
      text += ".\n";
    }
  CHECK_THROWS_AS(frame_of(text), capacity_error);
}
