#include <jt/serialize.hpp>
#include <jt/witness.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace jt
{
  const selection_function& refuter_strategy::at(fact z) const
  {
    auto it = selections.find(z);
    if (it == selections.end())
      throw error("refuter strategy has no selection for fact code " + std::to_string(z.code()));
    return it->second;
  }

  fact refuter_strategy::select(const justification_frame& frame, fact z, const fact_set& body) const
  {
    auto i = frame.case_index(z, body);
    if (!i)
      throw error("body is not a case of " + frame.atoms().to_string(z));
    return at(z).choice.at(*i);
  }

  bool induced_selection_contains(const refuter_strategy& s, const branch_descriptor& b, fact x)
  {
    if (first_fact(b) != x)
      return false;
    std::vector<fact> seq;
    bool wraps = false;
    if (auto f = std::get_if<finite_branch>(&b))
      {
        seq = f->prefix;
        seq.push_back(f->terminal);
      }
    else
      {
        const auto& p = std::get<periodic_branch>(b);
        seq = p.prefix;
        seq.insert(seq.end(), p.cycle.begin(), p.cycle.end());
        wraps = true;
      }
    auto step_ok = [&](fact z, fact y) {
      auto it = s.selections.find(z);
      if (it == s.selections.end())
        return false;
      const auto& choice = it->second.choice;
      return std::find(choice.begin(), choice.end(), y) != choice.end();
    };
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (!step_ok(seq[i], seq[i + 1]))
        return false;
    if (wraps)
      {
        const auto& cycle = std::get<periodic_branch>(b).cycle;
        if (!step_ok(cycle.back(), cycle.front()))
          return false;
      }
    return true;
  }

  namespace
  {
    const fact_set& choice_at(const justification_frame& frame, const positional_justification& j,
                              fact z)
    {
      auto it = j.choice.find(z);
      if (it == j.choice.end())
        throw error("justification has no case for defined fact " + frame.atoms().to_string(z));
      return it->second;
    }

    // Walks a positional strategy pairwise; `next` yields the successor of a
    // defined fact. Stops at an open fact or at the first repeated fact.
    branch_descriptor walk(const justification_frame& frame, fact start,
                           const std::function<fact(fact)>& next)
    {
      std::vector<fact> path;
      std::vector<std::uint32_t> index(frame.fact_count(), UINT32_MAX);
      auto z = start;
      while (frame.is_defined(z))
        {
          if (index[z.code()] != UINT32_MAX)
            {
              auto i = static_cast<std::ptrdiff_t>(index[z.code()]);
              return normalize(
                periodic_branch{{path.begin(), path.begin() + i}, {path.begin() + i, path.end()}});
            }
          index[z.code()] = static_cast<std::uint32_t>(path.size());
          path.push_back(z);
          z = next(z);
        }
      return finite_branch{std::move(path), z};
    }

    positional_justification build_strategy(const justification_frame& frame, fact root,
                                            const std::function<const fact_set&(fact)>& pick)
    {
      positional_justification j{root, {}};
      std::vector<fact> todo{root};
      while (!todo.empty())
        {
          auto z = todo.back();
          todo.pop_back();
          if (j.choice.count(z))
            continue;
          const auto& body = pick(z);
          j.choice.emplace(z, body);
          for (auto it = body.rbegin(); it != body.rend(); ++it)
            if (frame.is_defined(*it) && !j.choice.count(*it))
              todo.push_back(*it);
        }
      return j;
    }

    void require_builtin(const branch_evaluation& be)
    {
      if (be.kind() == evaluation_kind::custom)
        throw error("strategy extraction supports only the sp and kk evaluations");
    }

    void require_defined(const justification_frame& frame, fact x)
    {
      if (!frame.is_defined(x))
        throw error("fact " + frame.atoms().to_string(x) + " is not defined");
    }
  }

  branch_descriptor follow_refuter(const justification_frame& frame,
                                   const positional_justification& j, const refuter_strategy& s)
  {
    return walk(frame, j.root, [&](fact z) { return s.select(frame, z, choice_at(frame, j, z)); });
  }

  positional_justification extract_prover_strategy(const justification_frame& frame,
                                                   const interpretation& interp,
                                                   const branch_evaluation& be, fact x)
  {
    require_builtin(be);
    require_defined(frame, x);
    auto first_case = [&](fact z) -> const fact_set& { return frame.cases(z).front(); };

    if (be.kind() == evaluation_kind::supported)
      {
        const auto& cs = frame.cases(x);
        std::size_t best = 0;
        auto best_value = truth_value::f;
        for (std::size_t i = 0; i < cs.size(); ++i)
          {
            auto worst = truth_value::t;
            for (auto y : cs[i])
              worst = std::min(worst, interp(y));
            if (i == 0 || worst > best_value)
              {
                best = i;
                best_value = worst;
              }
          }
        return build_strategy(frame, x, [&](fact z) -> const fact_set& {
          return z == x ? cs[best] : first_case(z);
        });
      }

    auto regions = compute_kk_regions(frame, interp);
    if (regions.in_true(x))
      return build_strategy(frame, x, [&](fact z) -> const fact_set& {
        return frame.cases(z)[regions.true_case[z.code()]];
      });
    if (regions.in_nonfalse(x))
      return build_strategy(frame, x, [&](fact z) -> const fact_set& {
        return frame.cases(z)[regions.nonfalse_case[z.code()]];
      });
    return build_strategy(frame, x, first_case);
  }

  refuter_strategy extract_refuter_strategy(const justification_frame& frame,
                                            const interpretation& interp,
                                            const branch_evaluation& be, fact x)
  {
    require_builtin(be);
    require_defined(frame, x);
    refuter_strategy s;

    if (be.kind() == evaluation_kind::supported)
      {
        // A minimizing element per case bounds the second branch element.
        for (auto z : frame.defined_facts())
          {
            selection_function sel{z, {}};
            for (const auto& body : frame.cases(z))
              sel.choice.push_back(*std::min_element(
                body.begin(), body.end(), [&](fact a, fact b) { return interp(a) < interp(b); }));
            s.selections.emplace(z, std::move(sel));
          }
        return s;
      }

    auto regions = compute_kk_regions(frame, interp);
    for (auto z : frame.defined_facts())
      {
        selection_function sel{z, {}};
        for (const auto& body : frame.cases(z))
          {
            fact pick = body.front();
            if (!regions.in_nonfalse(z))
              {
                // Head towards an f-valued open fact through facts that
                // left the nonfalse region earlier.
                std::uint32_t best_rank = kk_regions::none;
                bool found = false;
                for (auto y : body)
                  if (!frame.is_defined(y) && interp(y) == truth_value::f)
                    {
                      pick = y;
                      found = true;
                      break;
                    }
                if (!found)
                  for (auto y : body)
                    if (frame.is_defined(y) && regions.false_rank[y.code()] < best_rank)
                      {
                        best_rank = regions.false_rank[y.code()];
                        pick = y;
                      }
              }
            else if (!regions.in_true(z))
              {
                // Stay out of the true region or stop at a non-t open fact.
                for (auto y : body)
                  if (frame.is_defined(y) ? !regions.in_true(y) : interp(y) != truth_value::t)
                    {
                      pick = y;
                      break;
                    }
              }
            sel.choice.push_back(pick);
          }
        s.selections.emplace(z, std::move(sel));
      }
    return s;
  }

  positional_justification dualize(const justification_frame& frame, const refuter_strategy& s,
                                    fact x)
  {
    require_defined(frame, x);
    const auto& atoms = frame.atoms();
    return build_strategy(frame, ~x, [&](fact w) -> const fact_set& {
      auto z = ~w;
      auto image = s.at(z).image();
      auto allowed = complement(image);
      for (const auto& body : frame.cases(w))
        if (is_subset(body, allowed))
          return body;
      throw dualization_error("no case of " + atoms.to_string(w) + " lies inside ~{" +
                                to_string(atoms, image) + "}",
                              z, image);
    });
  }

  branch_descriptor common_opposite_branch(const justification_frame& frame,
                                           const positional_justification& jx,
                                           const positional_justification& jnx)
  {
    if (jnx.root != ~jx.root)
      throw error("common_opposite_branch: justifications are not rooted in opposite facts");
    const auto& atoms = frame.atoms();
    return walk(frame, jx.root, [&](fact y) {
      const auto& a = choice_at(frame, jx, y);
      auto nb = complement(choice_at(frame, jnx, ~y));
      for (auto z : a)
        if (std::binary_search(nb.begin(), nb.end(), z))
          return z;
      throw error("empty intersection between {" + to_string(atoms, a) + "} and ~{" +
                  to_string(atoms, choice_at(frame, jnx, ~y)) + "}");
    });
  }

  witness_pair make_witness_pair(const justification_frame& frame, const interpretation& interp,
                                 const branch_evaluation& be, fact x)
  {
    require_builtin(be);
    require_defined(frame, x);
    witness_pair w;
    w.x = x;
    w.value = supported_value(frame, interp, x, be);
    w.interp = interp;
    w.evaluation = std::string(be.name());
    w.positive = extract_prover_strategy(frame, interp, be, x);
    w.negative = dualize(frame, extract_refuter_strategy(frame, interp, be, x), x);

    const auto& atoms = frame.atoms();
    auto positive_value = jval_graph(frame, w.positive, interp, be);
    auto negative_value = jval_graph(frame, w.negative, interp, be);
    if (positive_value != w.value || negative_value != negate(w.value))
      throw error(std::string("witness for ") + atoms.to_string(x) +
                  " failed verification: supported value " + to_char(w.value) +
                  ", positive side " + to_char(positive_value) + ", negative side " +
                  to_char(negative_value));

    for (const auto* j : {&w.positive, &w.negative})
      {
        auto depth = reachable_defined(frame, *j).size() + 1;
        for (const auto& b : enumerate_bounded_branches(frame, *j, depth))
          w.audit.push_back({b, interp(eval_branch(be, b))});
      }
    return w;
  }

  std::string export_witness_dot(const vocabulary& atoms, const witness_pair& w)
  {
    std::ostringstream out;
    auto graph = [&](const char* name, const positional_justification& j) {
      std::set<fact> nodes{j.root};
      for (const auto& [head, body] : j.choice)
        {
          nodes.insert(head);
          nodes.insert(body.begin(), body.end());
        }
      std::map<fact, std::size_t> id;
      for (auto x : nodes)
        id.emplace(x, id.size());
      out << "digraph " << name << " {\n";
      out << "  label=\"" << atoms.to_string(j.root) << "\";\n";
      for (auto x : nodes)
        out << "  n" << id[x] << " [label=\"" << atoms.to_string(x) << "\""
            << (x == j.root ? ", shape=doublecircle" : "") << "];\n";
      for (const auto& [head, body] : j.choice)
        for (auto y : body)
          out << "  n" << id[head] << " -> n" << id[y] << ";\n";
      out << "}\n";
    };
    graph("positive", w.positive);
    graph("negative", w.negative);
    return out.str();
  }

  std::string export_witness_json(const vocabulary& atoms, const witness_pair& w)
  {
    auto audit = json::array();
    for (const auto& a : w.audit)
      audit.push_back(
        {{"branch", branch_to_json(atoms, a.branch)}, {"value", std::string(1, to_char(a.value))}});
    json out = {{"fact", fact_to_json(atoms, w.x)},
                {"value", std::string(1, to_char(w.value))},
                {"interpretation", interpretation_to_json(atoms, w.interp)},
                {"evaluation", w.evaluation},
                {"positive", strategy_to_json(atoms, w.positive)},
                {"negative", strategy_to_json(atoms, w.negative)},
                {"audit", std::move(audit)}};
    return out.dump(2) + "\n";
  }

  witness_pair parse_witness_json(const vocabulary& atoms, const std::string& text)
  {
    json j;
    try
      {
        j = json::parse(text);
      }
    catch (const json::exception& e)
      {
        throw error(std::string("witness JSON: ") + e.what());
      }
    auto value_of = [](const json& v) {
      auto tv = v.is_string() ? parse_truth_value(v.get<std::string>()) : std::nullopt;
      if (!tv)
        throw error("witness JSON: bad truth value " + v.dump());
      return *tv;
    };
    try
      {
        witness_pair w;
        w.x = fact_from_json(atoms, j.at("fact"));
        w.value = value_of(j.at("value"));
        w.interp = interpretation_from_json(atoms, j.at("interpretation"));
        w.evaluation = j.at("evaluation").get<std::string>();
        w.positive = strategy_from_json(atoms, j.at("positive"));
        w.negative = strategy_from_json(atoms, j.at("negative"));
        for (const auto& a : j.at("audit"))
          w.audit.push_back({branch_from_json(atoms, a.at("branch")), value_of(a.at("value"))});
        return w;
      }
    catch (const json::exception& e)
      {
        throw error(std::string("witness JSON: ") + e.what());
      }
  }
}
