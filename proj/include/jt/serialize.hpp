#pragma once

#include <jt/justification.hpp>
#include <jt/solver.hpp>

#include <json.hpp>

namespace jt
{
  using json = nlohmann::json;

  json fact_to_json(const vocabulary& atoms, fact x);
  fact fact_from_json(const vocabulary& atoms, const json& j);

  json facts_to_json(const vocabulary& atoms, const std::vector<fact>& xs);
  std::vector<fact> facts_from_json(const vocabulary& atoms, const json& j);

  /// {"q": "t", ...}, one key per positive atom.
  json interpretation_to_json(const vocabulary& atoms, const interpretation& interp);
  interpretation interpretation_from_json(const vocabulary& atoms, const json& j);

  /// {"kind":"finite","prefix":[...],"terminal":x} or
  /// {"kind":"periodic","prefix":[...],"cycle":[...]}.
  json branch_to_json(const vocabulary& atoms, const branch_descriptor& b);
  branch_descriptor branch_from_json(const vocabulary& atoms, const json& j);

  /// {"root":x, "choices":[{"head":z, "body":[...]}]}.
  json strategy_to_json(const vocabulary& atoms, const positional_justification& j);
  positional_justification strategy_from_json(const vocabulary& atoms, const json& j);

  /// {"frame":text, "be":..., "violations":[...], "exhaustive":bool, "seed":int?}.
  json consistency_report_to_json(const vocabulary& atoms, const std::string& frame_text,
                                  const consistency_report& report);
}
