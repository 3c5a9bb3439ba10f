#pragma once

#include <jt/frame.hpp>

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jt
{
  /// A rule-choice strategy: one chosen case per defined fact. Its
  /// unfolding from `root` is a tree-like justification.
  struct positional_justification
  {
    fact root;
    std::map<fact, fact_set> choice;

    bool operator==(const positional_justification&) const = default;
  };

  /// A branch ending in an open fact: prefix (defined facts) then terminal.
  struct finite_branch
  {
    std::vector<fact> prefix;
    fact terminal;

    auto operator<=>(const finite_branch&) const = default;
  };

  /// The infinite branch prefix . cycle^omega; cycle is nonempty.
  struct periodic_branch
  {
    std::vector<fact> prefix;
    std::vector<fact> cycle;

    auto operator<=>(const periodic_branch&) const = default;
  };

  using branch_descriptor = std::variant<finite_branch, periodic_branch>;

  /// Elementwise complement.
  branch_descriptor complement(const branch_descriptor& b);

  /// Canonical form of a descriptor: a periodic branch gets a primitive
  /// cycle and the shortest prefix, so equal infinite words compare equal.
  branch_descriptor normalize(branch_descriptor b);

  /// First element of the branch.
  fact first_fact(const branch_descriptor& b);
  bool is_finite(const branch_descriptor& b) noexcept;

  enum class evaluation_kind
  {
    supported,
    kripke_kleene,
    custom,
  };

  /// Maps branches to facts. Implementations also supply the value of a
  /// positional justification over all branches of its unfolding.
  class branch_evaluation
  {
  public:
    virtual ~branch_evaluation() = default;

    virtual std::string_view name() const noexcept = 0;
    virtual evaluation_kind kind() const noexcept { return evaluation_kind::custom; }

    virtual fact eval_finite(std::span<const fact> prefix, fact terminal) const = 0;
    /// Must depend only on the infinite word prefix . cycle^omega.
    virtual fact eval_infinite(std::span<const fact> prefix, std::span<const fact> cycle) const = 0;

    /// min over every branch b of the unfolding of I(B(b)).
    virtual truth_value graph_value(const justification_frame& frame,
                                    const positional_justification& j,
                                    const interpretation& interp) const = 0;
  };

  /// The supported (completion) evaluation: a branch maps to its second
  /// element, a lone open fact to itself.
  const branch_evaluation& supported_evaluation();
  /// Kripke-Kleene: finite branches map to their last element, infinite
  /// ones to u.
  const branch_evaluation& kripke_kleene_evaluation();
  /// Looks up "sp" or "kk"; throws jt::error otherwise.
  const branch_evaluation& builtin_evaluation(std::string_view name);

  fact eval_branch(const branch_evaluation& be, const branch_descriptor& b);

  struct negation_failure
  {
    branch_descriptor branch;
    fact value;
    fact complement_value;
  };

  struct negation_report
  {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<negation_failure> failures;
  };

  /// Checks B(~b) = ~B(b) on every sample.
  negation_report check_respects_negation(const branch_evaluation& be,
                                          std::span<const branch_descriptor> samples);

  struct justification_report
  {
    bool valid = true;
    std::vector<std::string> problems;
  };

  /// Checks that every choice is a case of its fact and that every
  /// defined fact reachable from the root has a choice.
  justification_report verify_justification(const justification_frame& frame,
                                            const positional_justification& j);

  /// Raised when glued children disagree on the case of a shared fact.
  class conflict_error : public error
  {
  public:
    using error::error;
  };

  /// Builds the strategy rooted at x that uses case `body` at x and the
  /// given child strategies below; one child per defined element of body.
  positional_justification
  glue_justifications(const justification_frame& frame, fact x, const fact_set& body,
                      const std::map<fact, positional_justification>& children);

  /// Defined facts reachable from the root along chosen cases (root included).
  std::vector<fact> reachable_defined(const justification_frame& frame,
                                      const positional_justification& j);

  /// Finite branches with |prefix| + 1 <= depth and periodic branches with
  /// |prefix| + |cycle| <= depth, all in normal form.
  std::set<branch_descriptor> enumerate_bounded_branches(const justification_frame& frame,
                                                         const positional_justification& j,
                                                         std::size_t depth);

  /// jval of the unfolding under the evaluation's own graph evaluator.
  truth_value jval_graph(const justification_frame& frame, const positional_justification& j,
                         const interpretation& interp, const branch_evaluation& be);

  inline constexpr std::size_t default_strategy_cap = 10'000'000;

  /// Enumerates every positional justification rooted at x whose domain
  /// is exactly the set of facts reachable from x. The callback returns
  /// false to stop early. Throws capacity_error past `cap` strategies.
  void for_each_positional_justification(
    const justification_frame& frame, fact x,
    const std::function<bool(const positional_justification&)>& visit,
    std::size_t cap = default_strategy_cap);

  std::string to_string(const vocabulary& atoms, const branch_descriptor& b);
}
