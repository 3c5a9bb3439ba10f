#include <jt/serialize.hpp>

namespace jt
{
  json fact_to_json(const vocabulary& atoms, fact x) { return atoms.to_string(x); }

  fact fact_from_json(const vocabulary& atoms, const json& j)
  {
    if (!j.is_string())
      throw error("expected a fact string, got " + j.dump());
    return atoms.parse_fact(j.get<std::string>());
  }

  json facts_to_json(const vocabulary& atoms, const std::vector<fact>& xs)
  {
    auto out = json::array();
    for (auto x : xs)
      out.push_back(fact_to_json(atoms, x));
    return out;
  }

  std::vector<fact> facts_from_json(const vocabulary& atoms, const json& j)
  {
    if (!j.is_array())
      throw error("expected an array of facts, got " + j.dump());
    std::vector<fact> out;
    for (const auto& e : j)
      out.push_back(fact_from_json(atoms, e));
    return out;
  }

  json interpretation_to_json(const vocabulary& atoms, const interpretation& interp)
  {
    auto out = json::object();
    for (std::size_t i = 0; i < interp.atom_count(); ++i)
      out[atoms.name(static_cast<atom_id>(i))] = std::string(1, to_char(interp.atom_values()[i]));
    return out;
  }

  interpretation interpretation_from_json(const vocabulary& atoms, const json& j)
  {
    if (!j.is_object())
      throw error("expected an interpretation object, got " + j.dump());
    std::map<std::string, truth_value> assignment;
    for (const auto& [k, v] : j.items())
      {
        auto tv = v.is_string() ? parse_truth_value(v.get<std::string>()) : std::nullopt;
        if (!tv)
          throw error("bad truth value for '" + k + "': " + v.dump());
        assignment[k] = *tv;
      }
    return make_interpretation(atoms, assignment);
  }

  json branch_to_json(const vocabulary& atoms, const branch_descriptor& b)
  {
    if (auto f = std::get_if<finite_branch>(&b))
      return {{"kind", "finite"},
              {"prefix", facts_to_json(atoms, f->prefix)},
              {"terminal", fact_to_json(atoms, f->terminal)}};
    const auto& p = std::get<periodic_branch>(b);
    return {{"kind", "periodic"},
            {"prefix", facts_to_json(atoms, p.prefix)},
            {"cycle", facts_to_json(atoms, p.cycle)}};
  }

  branch_descriptor branch_from_json(const vocabulary& atoms, const json& j)
  {
    auto kind = j.at("kind").get<std::string>();
    auto prefix = facts_from_json(atoms, j.at("prefix"));
    if (kind == "finite")
      return finite_branch{std::move(prefix), fact_from_json(atoms, j.at("terminal"))};
    if (kind == "periodic")
      {
        auto cycle = facts_from_json(atoms, j.at("cycle"));
        if (cycle.empty())
          throw error("periodic branch with an empty cycle");
        return periodic_branch{std::move(prefix), std::move(cycle)};
      }
    throw error("unknown branch kind '" + kind + "'");
  }

  json strategy_to_json(const vocabulary& atoms, const positional_justification& j)
  {
    auto choices = json::array();
    for (const auto& [head, body] : j.choice)
      choices.push_back({{"head", fact_to_json(atoms, head)}, {"body", facts_to_json(atoms, body)}});
    return {{"root", fact_to_json(atoms, j.root)}, {"choices", std::move(choices)}};
  }

  positional_justification strategy_from_json(const vocabulary& atoms, const json& j)
  {
    positional_justification out{fact_from_json(atoms, j.at("root")), {}};
    for (const auto& c : j.at("choices"))
      out.choice.emplace(fact_from_json(atoms, c.at("head")),
                         make_fact_set(facts_from_json(atoms, c.at("body"))));
    return out;
  }

  json consistency_report_to_json(const vocabulary& atoms, const std::string& frame_text,
                                  const consistency_report& report)
  {
    auto list = [&](const std::vector<consistency_violation>& vs) {
      auto out = json::array();
      for (const auto& v : vs)
        out.push_back({{"fact", fact_to_json(atoms, v.x)},
                       {"interpretation", interpretation_to_json(atoms, v.interp)},
                       {"sv", std::string(1, to_char(v.sv))},
                       {"svComplement", std::string(1, to_char(v.sv_complement))}});
      return out;
    };
    json out = {{"frame", frame_text},
                {"be", report.evaluation},
                {"violations", list(report.violations)},
                {"inequalityViolations", list(report.inequality_violations)},
                {"exhaustive", report.exhaustive},
                {"interpretationsChecked", report.interpretations_checked}};
    if (report.seed)
      out["seed"] = *report.seed;
    return out;
  }
}
