#include <jt/justification.hpp>

#include <algorithm>

namespace jt
{
  branch_descriptor complement(const branch_descriptor& b)
  {
    auto flip = [](const std::vector<fact>& xs) {
      std::vector<fact> out;
      out.reserve(xs.size());
      for (auto x : xs)
        out.push_back(~x);
      return out;
    };
    if (auto f = std::get_if<finite_branch>(&b))
      return finite_branch{flip(f->prefix), ~f->terminal};
    const auto& p = std::get<periodic_branch>(b);
    return periodic_branch{flip(p.prefix), flip(p.cycle)};
  }

  branch_descriptor normalize(branch_descriptor b)
  {
    auto p = std::get_if<periodic_branch>(&b);
    if (!p || p->cycle.empty())
      return b;
    auto& cycle = p->cycle;
    auto n = cycle.size();
    for (std::size_t period = 1; period < n; ++period)
      {
        if (n % period)
          continue;
        bool repeats = true;
        for (std::size_t i = period; i < n && repeats; ++i)
          repeats = cycle[i] == cycle[i - period];
        if (repeats)
          {
            cycle.resize(period);
            break;
          }
      }
    while (!p->prefix.empty() && p->prefix.back() == cycle.back())
      {
        p->prefix.pop_back();
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
      }
    return b;
  }

  fact first_fact(const branch_descriptor& b)
  {
    if (auto f = std::get_if<finite_branch>(&b))
      return f->prefix.empty() ? f->terminal : f->prefix.front();
    const auto& p = std::get<periodic_branch>(b);
    return p.prefix.empty() ? p.cycle.at(0) : p.prefix.front();
  }

  bool is_finite(const branch_descriptor& b) noexcept
  {
    return std::holds_alternative<finite_branch>(b);
  }

  namespace
  {
    const fact_set& chosen_case(const justification_frame& frame,
                                const positional_justification& j, fact z)
    {
      auto it = j.choice.find(z);
      if (it == j.choice.end())
        throw error("justification has no case for defined fact " + frame.atoms().to_string(z));
      return it->second;
    }

    class supported_evaluation_impl final : public branch_evaluation
    {
    public:
      std::string_view name() const noexcept override { return "sp"; }
      evaluation_kind kind() const noexcept override { return evaluation_kind::supported; }

      fact eval_finite(std::span<const fact> prefix, fact terminal) const override
      {
        return prefix.size() >= 2 ? prefix[1] : terminal;
      }

      fact eval_infinite(std::span<const fact> prefix, std::span<const fact> cycle) const override
      {
        if (prefix.size() >= 2)
          return prefix[1];
        if (prefix.size() == 1)
          return cycle[0];
        return cycle.size() >= 2 ? cycle[1] : cycle[0];
      }

      truth_value graph_value(const justification_frame& frame, const positional_justification& j,
                              const interpretation& interp) const override
      {
        const auto& body = chosen_case(frame, j, j.root);
        auto v = truth_value::t;
        for (auto y : body)
          v = std::min(v, interp(y));
        return v;
      }
    };

    class kripke_kleene_evaluation_impl final : public branch_evaluation
    {
    public:
      std::string_view name() const noexcept override { return "kk"; }
      evaluation_kind kind() const noexcept override { return evaluation_kind::kripke_kleene; }

      fact eval_finite(std::span<const fact>, fact terminal) const override { return terminal; }

      fact eval_infinite(std::span<const fact>, std::span<const fact>) const override
      {
        return fact::logical(truth_value::u);
      }

      // Open leaves reachable from the root, plus u if a cycle is reachable.
      truth_value graph_value(const justification_frame& frame, const positional_justification& j,
                              const interpretation& interp) const override
      {
        enum : std::uint8_t { white, grey, black };
        std::vector<std::uint8_t> colour(frame.fact_count(), white);
        auto value = truth_value::t;
        struct entry
        {
          fact z;
          const fact_set* body;
          std::size_t next;
        };
        std::vector<entry> stack;
        auto enter = [&](fact z) {
          colour[z.code()] = grey;
          stack.push_back({z, &chosen_case(frame, j, z), 0});
        };
        enter(j.root);
        while (!stack.empty())
          {
            auto& top = stack.back();
            if (top.next == top.body->size())
              {
                colour[top.z.code()] = black;
                stack.pop_back();
                continue;
              }
            auto y = (*top.body)[top.next++];
            if (!frame.is_defined(y))
              value = std::min(value, interp(y));
            else if (colour[y.code()] == grey)
              value = std::min(value, truth_value::u);
            else if (colour[y.code()] == white)
              enter(y);
          }
        return value;
      }
    };
  }

  const branch_evaluation& supported_evaluation()
  {
    static const supported_evaluation_impl instance;
    return instance;
  }

  const branch_evaluation& kripke_kleene_evaluation()
  {
    static const kripke_kleene_evaluation_impl instance;
    return instance;
  }

  const branch_evaluation& builtin_evaluation(std::string_view name)
  {
    if (name == "sp")
      return supported_evaluation();
    if (name == "kk")
      return kripke_kleene_evaluation();
    throw error("unknown branch evaluation '" + std::string(name) + "' (expected sp or kk)");
  }

  fact eval_branch(const branch_evaluation& be, const branch_descriptor& b)
  {
    if (auto f = std::get_if<finite_branch>(&b))
      return be.eval_finite(f->prefix, f->terminal);
    const auto& p = std::get<periodic_branch>(b);
    return be.eval_infinite(p.prefix, p.cycle);
  }

  negation_report check_respects_negation(const branch_evaluation& be,
                                          std::span<const branch_descriptor> samples)
  {
    negation_report report;
    for (const auto& b : samples)
      {
        ++report.checked;
        auto v = eval_branch(be, b);
        auto nv = eval_branch(be, complement(b));
        if (nv != ~v)
          report.failures.push_back({b, v, nv});
      }
    report.passed = report.failures.empty();
    return report;
  }

  justification_report verify_justification(const justification_frame& frame,
                                            const positional_justification& j)
  {
    justification_report report;
    const auto& atoms = frame.atoms();
    if (!frame.is_defined(j.root))
      report.problems.push_back("root " + atoms.to_string(j.root) + " is not a defined fact");
    for (const auto& [z, body] : j.choice)
      {
        if (!frame.is_defined(z))
          {
            report.problems.push_back("choice for non-defined fact " + atoms.to_string(z));
            continue;
          }
        if (!frame.case_index(z, body))
          report.problems.push_back("chosen body {" + to_string(atoms, body) +
                                    "} is not a case of " + atoms.to_string(z));
      }
    if (frame.is_defined(j.root))
      {
        std::vector<bool> seen(frame.fact_count(), false);
        std::vector<fact> todo{j.root};
        seen[j.root.code()] = true;
        while (!todo.empty())
          {
            auto z = todo.back();
            todo.pop_back();
            auto it = j.choice.find(z);
            if (it == j.choice.end())
              {
                report.problems.push_back("leaf with defined label " + atoms.to_string(z) +
                                          " (not locally complete)");
                continue;
              }
            for (auto y : it->second)
              if (frame.is_defined(y) && !seen[y.code()])
                {
                  seen[y.code()] = true;
                  todo.push_back(y);
                }
          }
      }
    report.valid = report.problems.empty();
    return report;
  }

  positional_justification
  glue_justifications(const justification_frame& frame, fact x, const fact_set& body,
                      const std::map<fact, positional_justification>& children)
  {
    const auto& atoms = frame.atoms();
    if (!frame.case_index(x, body))
      throw error("glue: {" + to_string(atoms, body) + "} is not a case of " + atoms.to_string(x));

    positional_justification out{x, {{x, body}}};
    for (auto y : body)
      if (frame.is_defined(y) && !children.count(y))
        throw error("glue: missing child justification for " + atoms.to_string(y));
    for (const auto& [y, child] : children)
      {
        if (!std::binary_search(body.begin(), body.end(), y) || !frame.is_defined(y))
          throw error("glue: " + atoms.to_string(y) + " is not a defined element of the body");
        if (child.root != y)
          throw error("glue: child for " + atoms.to_string(y) + " is rooted elsewhere");
        for (const auto& [z, b] : child.choice)
          {
            auto [it, inserted] = out.choice.emplace(z, b);
            if (!inserted && it->second != b)
              throw conflict_error("glue: conflicting cases for " + atoms.to_string(z) +
                                   ": {" + to_string(atoms, it->second) + "} vs {" +
                                   to_string(atoms, b) + "}");
          }
      }
    return out;
  }

  std::vector<fact> reachable_defined(const justification_frame& frame,
                                      const positional_justification& j)
  {
    std::vector<bool> seen(frame.fact_count(), false);
    std::vector<fact> out;
    std::vector<fact> todo{j.root};
    seen[j.root.code()] = true;
    while (!todo.empty())
      {
        auto z = todo.back();
        todo.pop_back();
        out.push_back(z);
        for (auto y : chosen_case(frame, j, z))
          if (frame.is_defined(y) && !seen[y.code()])
            {
              seen[y.code()] = true;
              todo.push_back(y);
            }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::set<branch_descriptor> enumerate_bounded_branches(const justification_frame& frame,
                                                         const positional_justification& j,
                                                         std::size_t depth)
  {
    std::set<branch_descriptor> out;
    if (depth == 0)
      return out;
    std::vector<fact> path{j.root};
    std::function<void()> walk = [&]() {
      auto it = j.choice.find(path.back());
      if (it == j.choice.end())
        return;
      for (auto y : it->second)
        {
          if (!frame.is_defined(y))
            {
              if (path.size() + 1 <= depth)
                out.insert(finite_branch{path, y});
              continue;
            }
          for (std::size_t i = 0; i < path.size(); ++i)
            if (path[i] == y)
              out.insert(normalize(periodic_branch{
                {path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i)},
                {path.begin() + static_cast<std::ptrdiff_t>(i), path.end()}}));
          if (path.size() < depth)
            {
              path.push_back(y);
              walk();
              path.pop_back();
            }
        }
    };
    walk();
    return out;
  }

  truth_value jval_graph(const justification_frame& frame, const positional_justification& j,
                         const interpretation& interp, const branch_evaluation& be)
  {
    return be.graph_value(frame, j, interp);
  }

  namespace
  {
    class strategy_enumerator
    {
    public:
      strategy_enumerator(const justification_frame& frame,
                          const std::function<bool(const positional_justification&)>& visit,
                          std::size_t cap)
        : frame_(frame), visit_(visit), cap_(cap), chosen_(frame.fact_count(), -1)
      {
      }

      void run(fact root)
      {
        root_ = root;
        frame_.cases(root);
        search({root});
      }

    private:
      bool search(std::vector<fact> pending)
      {
        while (!pending.empty() && chosen_[pending.back().code()] >= 0)
          pending.pop_back();
        if (pending.empty())
          {
            if (++count_ > cap_)
              throw capacity_error("more than " + std::to_string(cap_) +
                                   " positional justifications");
            positional_justification j{root_, {}};
            for (auto z : assigned_)
              j.choice.emplace(z, frame_.cases(z)[static_cast<std::size_t>(chosen_[z.code()])]);
            return visit_(j);
          }
        auto z = pending.back();
        pending.pop_back();
        const auto& cs = frame_.cases(z);
        assigned_.push_back(z);
        for (std::size_t i = 0; i < cs.size(); ++i)
          {
            chosen_[z.code()] = static_cast<int>(i);
            auto next = pending;
            for (auto it = cs[i].rbegin(); it != cs[i].rend(); ++it)
              if (frame_.is_defined(*it) && chosen_[it->code()] < 0)
                next.push_back(*it);
            if (!search(std::move(next)))
              {
                chosen_[z.code()] = -1;
                assigned_.pop_back();
                return false;
              }
          }
        chosen_[z.code()] = -1;
        assigned_.pop_back();
        return true;
      }

      const justification_frame& frame_;
      const std::function<bool(const positional_justification&)>& visit_;
      std::size_t cap_;
      std::size_t count_ = 0;
      fact root_;
      std::vector<int> chosen_;
      std::vector<fact> assigned_;
    };
  }

  void for_each_positional_justification(
    const justification_frame& frame, fact x,
    const std::function<bool(const positional_justification&)>& visit, std::size_t cap)
  {
    strategy_enumerator(frame, visit, cap).run(x);
  }

  std::string to_string(const vocabulary& atoms, const branch_descriptor& b)
  {
    std::string out;
    auto append = [&](fact x) {
      if (!out.empty())
        out += " -> ";
      out += atoms.to_string(x);
    };
    if (auto f = std::get_if<finite_branch>(&b))
      {
        for (auto x : f->prefix)
          append(x);
        append(f->terminal);
        return out;
      }
    const auto& p = std::get<periodic_branch>(b);
    for (auto x : p.prefix)
      append(x);
    std::string cyc;
    for (auto x : p.cycle)
      cyc += (cyc.empty() ? "" : " -> ") + atoms.to_string(x);
    out += (out.empty() ? "(" : " -> (") + cyc + ")^w";
    return out;
  }
}
