#include <jt/frame.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace jt
{
  fact_set make_fact_set(std::vector<fact> facts)
  {
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
    return facts;
  }

  fact_set complement(const fact_set& facts)
  {
    fact_set out;
    out.reserve(facts.size());
    for (auto x : facts)
      out.push_back(~x);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_subset(const fact_set& a, const fact_set& b)
  {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  bool intersects(const fact_set& a, const fact_set& b)
  {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end())
      {
        if (*i == *j)
          return true;
        if (*i < *j)
          ++i;
        else
          ++j;
      }
    return false;
  }

  std::set<atom_id> defined_from_heads(const std::vector<rule>& rules)
  {
    std::set<atom_id> out;
    for (const auto& r : rules)
      if (!r.head.is_logical())
        out.insert(r.head.atom());
    return out;
  }

  namespace
  {
    std::string join_lines(const std::vector<std::string>& lines)
    {
      std::string out = "invalid justification frame";
      for (const auto& l : lines)
        out += "\n  " + l;
      return out;
    }
  }

  frame_error::frame_error(std::vector<std::string> diagnostics)
    : error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics))
  {
  }

  justification_frame validate_frame(frame_data candidate)
  {
    std::vector<std::string> problems;
    const auto& atoms = candidate.atoms;
    auto name = [&](fact x) { return atoms.to_string(x); };

    for (auto a : candidate.defined)
      if (a >= atoms.size())
        problems.push_back("defined atom #" + std::to_string(a) + " is outside the universe");

    justification_frame frame;
    frame.atoms_ = atoms;
    frame.defined_.assign(atoms.size(), false);
    for (auto a : candidate.defined)
      if (a < atoms.size())
        frame.defined_[a] = true;
    frame.cases_.assign(atoms.fact_count(), {});

    for (const auto& r : candidate.rules)
      {
        bool ok = true;
        if (r.head.is_logical())
          {
            problems.push_back("logical fact '" + name(r.head) + "' cannot be defined");
            ok = false;
          }
        else if (!atoms.contains(r.head))
          {
            problems.push_back("rule head " + name(r.head) + " is outside the universe");
            ok = false;
          }
        else if (!frame.defined_[r.head.atom()])
          {
            problems.push_back("rule head " + name(r.head) + " is not a defined fact");
            ok = false;
          }
        if (r.body.empty())
          {
            problems.push_back("rule for " + name(r.head) + " has an empty body");
            ok = false;
          }
        for (auto y : r.body)
          if (!atoms.contains(y))
            {
              problems.push_back("rule for " + name(r.head) + " uses fact " + name(y) +
                                 " outside the universe");
              ok = false;
            }
        if (ok)
          frame.cases_[r.head.code()].push_back(make_fact_set(r.body));
      }

    for (atom_id a = 0; a < atoms.size(); ++a)
      {
        if (!frame.defined_[a])
          continue;
        for (bool neg : {false, true})
          {
            auto x = fact::atom(a, neg);
            auto& cs = frame.cases_[x.code()];
            if (cs.empty())
              problems.push_back("defined fact " + name(x) + " has no rules");
            std::sort(cs.begin(), cs.end());
            cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
            frame.defined_facts_.push_back(x);
          }
      }

    if (!problems.empty())
      throw frame_error(std::move(problems));

    frame.occurrences_.assign(atoms.fact_count(), {});
    for (auto x : frame.defined_facts_)
      {
        const auto& cs = frame.cases_[x.code()];
        for (std::uint32_t i = 0; i < cs.size(); ++i)
          for (auto y : cs[i])
            frame.occurrences_[y.code()].push_back({x, i});
      }
    return frame;
  }

  const std::vector<fact_set>& justification_frame::cases(fact x) const
  {
    if (!is_defined(x))
      throw error("fact " + atoms_.to_string(x) + " is not defined");
    return cases_[x.code()];
  }

  std::optional<std::size_t> justification_frame::case_index(fact x, const fact_set& body) const
  {
    const auto& cs = cases(x);
    auto it = std::lower_bound(cs.begin(), cs.end(), body);
    if (it == cs.end() || *it != body)
      return std::nullopt;
    return static_cast<std::size_t>(it - cs.begin());
  }

  std::vector<fact> justification_frame::open_atoms() const
  {
    std::vector<fact> out;
    for (atom_id a = 0; a < defined_.size(); ++a)
      if (!defined_[a])
        out.push_back(fact::atom(a));
    return out;
  }

  std::vector<rule> justification_frame::rules() const
  {
    std::vector<rule> out;
    for (auto x : defined_facts_)
      for (const auto& b : cases_[x.code()])
        out.push_back({x, b});
    return out;
  }

  std::size_t justification_frame::rule_count() const noexcept
  {
    std::size_t n = 0;
    for (auto x : defined_facts_)
      n += cases_[x.code()].size();
    return n;
  }

  namespace
  {
    std::size_t selection_count(const std::vector<fact_set>& cases, std::size_t cap)
    {
      std::size_t n = 1;
      for (const auto& c : cases)
        {
          n *= c.size();
          if (n > cap)
            throw capacity_error("more than " + std::to_string(cap) +
                                 " selection functions");
        }
      return n;
    }

    // Odometer over the cases; calls f with the current choice vector.
    template <class F>
    void for_each_selection(const std::vector<fact_set>& cases, std::size_t cap, F&& f)
    {
      selection_count(cases, cap);
      std::vector<std::size_t> pos(cases.size(), 0);
      std::vector<fact> choice(cases.size());
      for (std::size_t i = 0; i < cases.size(); ++i)
        choice[i] = cases[i][0];
      while (true)
        {
          f(choice);
          std::size_t i = cases.size();
          while (i > 0)
            {
              --i;
              if (++pos[i] < cases[i].size())
                {
                  choice[i] = cases[i][pos[i]];
                  break;
                }
              pos[i] = 0;
              choice[i] = cases[i][0];
              if (i == 0)
                return;
            }
          if (cases.empty())
            return;
        }
    }
  }

  std::vector<selection_function>
  enumerate_selection_functions(const justification_frame& frame, fact x, std::size_t cap)
  {
    const auto& cs = frame.cases(x);
    std::vector<selection_function> out;
    out.reserve(selection_count(cs, cap));
    for_each_selection(cs, cap, [&](const std::vector<fact>& choice) {
      out.push_back({x, choice});
    });
    return out;
  }

  std::vector<rule> complement_rules(const std::vector<rule>& rules, std::size_t cap)
  {
    std::map<fact, std::vector<fact_set>> by_head;
    for (const auto& r : rules)
      {
        if (r.body.empty())
          throw error("complement_rules: empty body");
        by_head[r.head].push_back(make_fact_set(r.body));
      }
    for (const auto& [head, _] : by_head)
      if (!head.is_logical() && head.negative() && by_head.count(~head))
        throw error("complement_rules: atom defined on both signs");

    std::set<rule> out;
    for (auto& [head, cases] : by_head)
      {
        std::sort(cases.begin(), cases.end());
        cases.erase(std::unique(cases.begin(), cases.end()), cases.end());
        for_each_selection(cases, cap, [&](const std::vector<fact>& choice) {
          out.insert({~head, complement(make_fact_set(choice))});
        });
      }
    return {out.begin(), out.end()};
  }

  std::vector<rule> complementation(const std::vector<rule>& rules, std::size_t cap)
  {
    std::set<rule> out;
    for (const auto& r : rules)
      out.insert({r.head, make_fact_set(r.body)});
    for (auto& r : complement_rules(rules, cap))
      out.insert(std::move(r));
    return {out.begin(), out.end()};
  }

  std::vector<rule> drop_subsumed_rules(const std::vector<rule>& rules)
  {
    std::map<fact, std::vector<fact_set>> by_head;
    for (const auto& r : rules)
      by_head[r.head].push_back(make_fact_set(r.body));
    std::vector<rule> out;
    for (auto& [head, cases] : by_head)
      {
        std::sort(cases.begin(), cases.end());
        cases.erase(std::unique(cases.begin(), cases.end()), cases.end());
        for (const auto& a : cases)
          {
            bool subsumed = std::any_of(cases.begin(), cases.end(), [&](const fact_set& b) {
              return b.size() < a.size() && is_subset(b, a);
            });
            if (!subsumed)
              out.push_back({head, a});
          }
      }
    return out;
  }

  namespace
  {
    // Searches for a selection function of `head` whose complemented image
    // contains no case of ~head. Choosing an element already in the image
    // never enlarges it, and coverage is monotone in the image, so such
    // choices dominate and the search only branches on unhit cases.
    class uncovered_selection_search
    {
    public:
      uncovered_selection_search(const justification_frame& frame, fact head, std::size_t cap)
        : cases_(frame.cases(head)), in_image_(frame.fact_count(), 0),
          targets_of_(frame.fact_count()), cap_(cap), head_(head)
      {
        for (const auto& b : frame.cases(~head))
          {
            auto target = complement(b);
            auto j = missing_.size();
            missing_.push_back(target.size());
            for (auto y : target)
              targets_of_[y.code()].push_back(j);
          }
        choice_.resize(cases_.size());
      }

      std::optional<selection_function> run()
      {
        if (search(0))
          return selection_function{head_, choice_};
        return std::nullopt;
      }

    private:
      void add(fact y)
      {
        if (in_image_[y.code()]++ == 0)
          for (auto j : targets_of_[y.code()])
            if (--missing_[j] == 0)
              ++covered_;
      }

      void remove(fact y)
      {
        if (--in_image_[y.code()] == 0)
          for (auto j : targets_of_[y.code()])
            if (missing_[j]++ == 0)
              --covered_;
      }

      bool search(std::size_t i)
      {
        if (++nodes_ > cap_)
          throw capacity_error("complementarity check exceeded " + std::to_string(cap_) +
                               " search nodes");
        if (covered_ > 0)
          return false;
        if (i == cases_.size())
          return true;
        for (auto y : cases_[i])
          if (in_image_[y.code()])
            {
              choice_[i] = y;
              return search(i + 1);
            }
        for (auto y : cases_[i])
          {
            add(y);
            choice_[i] = y;
            bool found = search(i + 1);
            remove(y);
            if (found)
              {
                choice_[i] = y;
                return true;
              }
          }
        return false;
      }

      const std::vector<fact_set>& cases_;
      std::vector<std::uint32_t> in_image_;
      std::vector<std::vector<std::size_t>> targets_of_;
      std::vector<std::size_t> missing_;
      std::size_t covered_ = 0;
      std::vector<fact> choice_;
      std::size_t nodes_ = 0;
      std::size_t cap_;
      fact head_;
    };
  }

  complementarity_report check_complementarity(const justification_frame& frame, std::size_t cap)
  {
    complementarity_report report;
    for (auto x : frame.defined_facts())
      {
        // Condition 1: every selection for x is covered by a case of ~x.
        if (auto s = uncovered_selection_search(frame, x, cap).run())
          report.violations.push_back({x, 1, std::move(s), std::nullopt});

        // Condition 2: a selection S for ~x with ~im(S) inside A exists
        // iff every case of ~x meets ~A.
        const auto& opposite = frame.cases(~x);
        for (const auto& a : frame.cases(x))
          {
            auto na = complement(a);
            bool matched = std::all_of(opposite.begin(), opposite.end(),
                                       [&](const fact_set& b) { return intersects(b, na); });
            if (!matched)
              report.violations.push_back({x, 2, std::nullopt, a});
          }
      }
    report.complementary = report.violations.empty();
    return report;
  }

  intersection_report rule_intersection_check(const justification_frame& frame)
  {
    intersection_report report;
    for (auto x : frame.defined_facts())
      for (const auto& a : frame.cases(x))
        for (const auto& b : frame.cases(~x))
          if (!intersects(a, complement(b)))
            report.failures.push_back({x, a, b});
    report.passed = report.failures.empty();
    return report;
  }

  std::string to_string(const vocabulary& atoms, const fact_set& facts)
  {
    std::string out;
    for (std::size_t i = 0; i < facts.size(); ++i)
      {
        if (i)
          out += ", ";
        out += atoms.to_string(facts[i]);
      }
    return out;
  }

  std::string to_string(const vocabulary& atoms, const rule& r)
  {
    return atoms.to_string(r.head) + " <- " + to_string(atoms, r.body) + ".";
  }
}
