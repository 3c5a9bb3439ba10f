#pragma once

#include <jt/justification.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jt
{
  /// Supported value under the supported evaluation: the best case's
  /// worst element. Open facts take their interpreted value.
  truth_value supported_value_sp(const justification_frame& frame, const interpretation& interp,
                                 fact x);

  /// The two regions that determine Kripke-Kleene supported values.
  ///
  /// The true region is the least set X such that z is in X iff some case
  /// of z consists of members of X and t-valued open facts. The nonfalse
  /// region is the greatest set Y such that z is in Y iff some case of z
  /// consists of members of Y and open facts that are not f. Ranks record
  /// the order in which facts entered X (resp. left Y); they are what
  /// makes the extracted strategies reach their targets.
  struct kk_regions
  {
    static constexpr std::uint32_t none = UINT32_MAX;

    std::vector<std::uint32_t> true_rank;     // by fact code; none outside X
    std::vector<std::uint32_t> true_case;     // case that put the fact into X
    std::vector<std::uint32_t> false_rank;    // by fact code; none inside Y
    std::vector<std::uint32_t> nonfalse_case; // a case surviving in Y

    bool in_true(fact x) const { return true_rank[x.code()] != none; }
    bool in_nonfalse(fact x) const { return false_rank[x.code()] == none; }
  };

  kk_regions compute_kk_regions(const justification_frame& frame, const interpretation& interp);

  truth_value supported_value_kk(const justification_frame& frame, const interpretation& interp,
                                 fact x);

  /// Maximum jval over every positional justification rooted at x.
  truth_value supported_value_brute(const justification_frame& frame,
                                    const interpretation& interp, fact x,
                                    const branch_evaluation& be,
                                    std::size_t cap = default_strategy_cap);

  /// Closed form for SP, fixpoints for KK, brute force otherwise.
  truth_value supported_value(const justification_frame& frame, const interpretation& interp,
                              fact x, const branch_evaluation& be);

  /// Support operator output; no involution constraint is imposed.
  using raw_valuation = std::map<fact, truth_value>;

  raw_valuation support_operator(const justification_frame& frame, const interpretation& interp,
                                 const branch_evaluation& be);

  struct model_violation
  {
    fact x;
    truth_value supported;
    truth_value actual;
  };

  struct model_check
  {
    bool is_model = true;
    std::vector<model_violation> violations;
  };

  model_check is_model(const justification_frame& frame, const interpretation& interp,
                       const branch_evaluation& be);

  /// Calls f on every interpretation of the frame's atoms, first atom
  /// most significant, values in truth order.
  template <class F>
  void for_each_interpretation(std::size_t atom_count, F&& f)
  {
    std::vector<truth_value> values(atom_count, truth_value::f);
    while (true)
      {
        f(interpretation(values));
        std::size_t i = atom_count;
        while (true)
          {
            if (i == 0)
              return;
            --i;
            if (values[i] != truth_value::t)
              {
                values[i] = static_cast<truth_value>(static_cast<int>(values[i]) + 1);
                break;
              }
            values[i] = truth_value::f;
          }
      }
  }

  inline constexpr std::size_t default_model_atom_cap = 12;

  std::vector<interpretation> enumerate_models(const justification_frame& frame,
                                               const branch_evaluation& be,
                                               std::size_t max_atoms = default_model_atom_cap);

  struct sweep_options
  {
    /// Sweep exhaustively when 3^atoms is at most this many interpretations.
    std::uint64_t max_exhaustive = 531441;
    /// Samples drawn otherwise.
    std::size_t samples = 50;
    std::uint64_t seed = 0;
    /// Always sample, even when exhaustive would fit.
    bool force_sampling = false;
  };

  struct consistency_violation
  {
    fact x;
    interpretation interp;
    truth_value sv;
    truth_value sv_complement;
  };

  struct consistency_report
  {
    std::string evaluation;
    bool exhaustive = true;
    std::optional<std::uint64_t> seed;
    std::size_t interpretations_checked = 0;
    /// SV(~x, I) != ~SV(x, I).
    std::vector<consistency_violation> violations;
    /// SV(x, I) >_t ~SV(~x, I), checked on its own.
    std::vector<consistency_violation> inequality_violations;

    bool consistent() const { return violations.empty() && inequality_violations.empty(); }
  };

  consistency_report consistency_sweep(const justification_frame& frame,
                                       const branch_evaluation& be,
                                       const sweep_options& options = {});
}
