#pragma once

#include <jt/solver.hpp>

#include <map>
#include <string>
#include <vector>

namespace jt
{
  /// A selection function for every defined fact. Following it from the
  /// root of any justification picks out one branch, so the strategy
  /// induces a branch selection.
  struct refuter_strategy
  {
    std::map<fact, selection_function> selections;

    const selection_function& at(fact z) const;
    /// The element selected from case `body` of z.
    fact select(const justification_frame& frame, fact z, const fact_set& body) const;

    bool operator==(const refuter_strategy&) const = default;
  };

  /// True iff every step z -> y of b (b starting at x) has y in im(S_z).
  bool induced_selection_contains(const refuter_strategy& s, const branch_descriptor& b, fact x);

  /// The branch of j's unfolding obtained by letting s pick the child
  /// at every defined fact.
  branch_descriptor follow_refuter(const justification_frame& frame,
                                   const positional_justification& j, const refuter_strategy& s);

  /// A strategy rooted at x whose jval equals SV(x, I).
  positional_justification extract_prover_strategy(const justification_frame& frame,
                                                   const interpretation& interp,
                                                   const branch_evaluation& be, fact x);

  /// A total refuter strategy whose induced branch in every justification
  /// of x has value at most SV(x, I).
  refuter_strategy extract_refuter_strategy(const justification_frame& frame,
                                            const interpretation& interp,
                                            const branch_evaluation& be, fact x);

  /// Raised by dualize when some ~z has no case inside ~im(S_z).
  class dualization_error : public error
  {
  public:
    dualization_error(std::string message, fact z, fact_set image)
      : error(std::move(message)), z_(z), image_(std::move(image))
    {
    }
    fact offending_fact() const noexcept { return z_; }
    const fact_set& image() const noexcept { return image_; }

  private:
    fact z_;
    fact_set image_;
  };

  /// Strategy rooted at ~x choosing, at each reached ~z, the least case
  /// contained in ~im(S_z). Every branch b' of the result has ~b' in the
  /// selection induced by s.
  positional_justification dualize(const justification_frame& frame, const refuter_strategy& s,
                                   fact x);

  /// A branch b of jx's unfolding such that ~b is a branch of jnx's.
  branch_descriptor common_opposite_branch(const justification_frame& frame,
                                           const positional_justification& jx,
                                           const positional_justification& jnx);

  struct audit_entry
  {
    branch_descriptor branch;
    truth_value value;

    bool operator==(const audit_entry&) const = default;
  };

  /// Explanation pair: a justification of the fact achieving its
  /// supported value and a justification of its complement achieving the
  /// complementary value.
  struct witness_pair
  {
    fact x;
    truth_value value;
    interpretation interp;
    std::string evaluation;
    positional_justification positive;
    positional_justification negative;
    std::vector<audit_entry> audit;

    bool operator==(const witness_pair&) const = default;
  };

  /// Throws jt::error if either side fails to reach its expected value.
  witness_pair make_witness_pair(const justification_frame& frame, const interpretation& interp,
                                 const branch_evaluation& be, fact x);

  std::string export_witness_dot(const vocabulary& atoms, const witness_pair& w);
  std::string export_witness_json(const vocabulary& atoms, const witness_pair& w);
  witness_pair parse_witness_json(const vocabulary& atoms, const std::string& text);
}
