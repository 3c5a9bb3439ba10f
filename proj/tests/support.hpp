#pragma once

// Shared helpers for the test binaries, plus a reference implementation
// ("oracle") of the core notions written the slow, obvious way. It uses
// only the frame's case lists and interpretation lookup from the library.

#include <jt/frame.hpp>
#include <jt/justification.hpp>
#include <jt/rule_document.hpp>
#include <jt/random.hpp>
#include <jt/solver.hpp>
#include <jt/witness.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace jt_test
{
  using namespace jt;

  inline justification_frame frame_of(const std::string& text)
  {
    return build_frame(parse_rule_document(text, parse_options{true}));
  }

  inline std::string read_data(const std::string& name)
  {
    std::ifstream in(std::string(JT_DATA_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  /// Interpretation from "q=t r=f"; unmentioned atoms are u.
  inline interpretation interp_of(const justification_frame& frame, const std::string& text)
  {
    std::vector<truth_value> values(frame.atoms().size(), truth_value::u);
    std::istringstream in(text);
    std::string token;
    while (in >> token)
      {
        auto eq = token.find('=');
        values.at(*frame.atoms().find(token.substr(0, eq))) = *parse_truth_value(token.substr(eq + 1));
      }
    return interpretation(values);
  }

  inline fact F(const justification_frame& frame, const std::string& text)
  {
    return frame.atoms().parse_fact(text);
  }

  inline fact_set S(const justification_frame& frame, const std::vector<std::string>& xs)
  {
    std::vector<fact> out;
    for (const auto& x : xs)
      out.push_back(F(frame, x));
    return make_fact_set(out);
  }

  inline interpretation random_interpretation(random_source& rng, std::size_t atoms)
  {
    std::vector<truth_value> v(atoms);
    for (auto& x : v)
      x = static_cast<truth_value>(rng.below(3));
    return interpretation(v);
  }

  /// A total refuter strategy with uniformly random picks.
  inline refuter_strategy random_refuter(const justification_frame& frame, random_source& rng)
  {
    refuter_strategy s;
    for (auto z : frame.defined_facts())
      {
        selection_function sel{z, {}};
        for (const auto& a : frame.cases(z))
          sel.choice.push_back(a[rng.below(a.size())]);
        s.selections.emplace(z, std::move(sel));
      }
    return s;
  }

  /// Defined facts reachable from x over all cases (not just chosen ones).
  inline std::set<fact> reachable_from(const justification_frame& frame, fact x)
  {
    std::set<fact> seen{x};
    std::vector<fact> todo{x};
    while (!todo.empty())
      {
        auto z = todo.back();
        todo.pop_back();
        for (const auto& a : frame.cases(z))
          for (auto y : a)
            if (frame.is_defined(y) && seen.insert(y).second)
              todo.push_back(y);
      }
    return seen;
  }

  namespace oracle
  {
    inline truth_value value(const interpretation& interp, fact x)
    {
      if (x.is_logical())
        return x.logical_value();
      auto v = interp.atom_values().at(x.atom());
      return x.negative() ? negate(v) : v;
    }

    /// Every way to pick one element from each list.
    inline void choices(const std::vector<fact_set>& lists,
                        const std::function<void(const std::vector<fact>&)>& f)
    {
      std::vector<fact> pick;
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == lists.size())
          return f(pick);
        for (auto y : lists[i])
          {
            pick.push_back(y);
            go(i + 1);
            pick.pop_back();
          }
      };
      go(0);
    }

    inline bool subset(const fact_set& a, const std::set<fact>& b)
    {
      for (auto y : a)
        if (!b.count(y))
          return false;
      return true;
    }

    /// Both conditions, by full enumeration of selection functions.
    inline bool complementary(const justification_frame& frame)
    {
      for (auto x : frame.defined_facts())
        {
          bool ok = true;
          choices(frame.cases(x), [&](const std::vector<fact>& s) {
            std::set<fact> neg;
            for (auto y : s)
              neg.insert(~y);
            bool covered = false;
            for (const auto& a : frame.cases(~x))
              covered = covered || subset(a, neg);
            ok = ok && covered;
          });
          for (const auto& a : frame.cases(x))
            {
              std::set<fact> in(a.begin(), a.end());
              bool matched = false;
              choices(frame.cases(~x), [&](const std::vector<fact>& s) {
                bool inside = true;
                for (auto y : s)
                  inside = inside && in.count(~y);
                matched = matched || inside;
              });
              ok = ok && matched;
            }
          if (!ok)
            return false;
        }
      return true;
    }

    /// Branch evaluation written out from the definitions; returns the
    /// value of the branch's image under I.
    inline truth_value branch_value(const std::string& be, const std::vector<fact>& path,
                                    bool infinite, const interpretation& interp)
    {
      if (be == "sp")
        return value(interp, path.size() >= 2 ? path[1] : path[0]);
      if (infinite)
        return truth_value::u;
      return value(interp, path.back());
    }

    /// jval by walking every simple path of the unfolding; a path that
    /// revisits a fact on itself stands for its (infinite) lasso.
    inline truth_value jval(const justification_frame& frame, const std::map<fact, fact_set>& choice,
                            fact root, const std::string& be, const interpretation& interp)
    {
      truth_value best = truth_value::t;
      std::vector<fact> path;
      std::function<void(fact)> walk = [&](fact z) {
        bool repeat = std::find(path.begin(), path.end(), z) != path.end();
        path.push_back(z);
        if (repeat)
          best = std::min(best, branch_value(be, path, true, interp));
        else if (!frame.is_defined(z))
          best = std::min(best, branch_value(be, path, false, interp));
        else
          for (auto y : choice.at(z))
            walk(y);
        path.pop_back();
      };
      walk(root);
      return best;
    }

    /// Supported value: maximum jval over every choice function on all
    /// defined facts.
    inline truth_value supported_value(const justification_frame& frame, fact x,
                                       const std::string& be, const interpretation& interp)
    {
      if (!frame.is_defined(x))
        return value(interp, x);
      const auto& defined = frame.defined_facts();
      std::map<fact, fact_set> choice;
      truth_value best = truth_value::f;
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (best == truth_value::t)
          return;
        if (i == defined.size())
          {
            best = std::max(best, jval(frame, choice, x, be, interp));
            return;
          }
        for (const auto& a : frame.cases(defined[i]))
          {
            choice[defined[i]] = a;
            go(i + 1);
          }
      };
      go(0);
      return best;
    }
  }
}
