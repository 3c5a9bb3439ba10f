#pragma once

#include <jt/lattice.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jt
{
  /// A finite set of facts, kept sorted and duplicate-free.
  using fact_set = std::vector<fact>;

  fact_set make_fact_set(std::vector<fact> facts);
  /// Elementwise complement, re-sorted.
  fact_set complement(const fact_set& facts);
  bool is_subset(const fact_set& a, const fact_set& b);
  bool intersects(const fact_set& a, const fact_set& b);

  struct rule
  {
    fact head;
    fact_set body;

    auto operator<=>(const rule&) const = default;
  };

  inline constexpr std::size_t default_selection_cap = 1'000'000;

  /// Unvalidated frame input.
  struct frame_data
  {
    vocabulary atoms;
    std::set<atom_id> defined;
    std::vector<rule> rules;
  };

  /// Atoms occurring (with either sign) as a rule head.
  std::set<atom_id> defined_from_heads(const std::vector<rule>& rules);

  /// Frame validation failure; lists every violated condition.
  class frame_error : public error
  {
  public:
    explicit frame_error(std::vector<std::string> diagnostics);
    const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

  private:
    std::vector<std::string> diagnostics_;
  };

  /// A validated justification frame. Defined-ness attaches to atoms, so
  /// the defined facts are closed under complement, and logical facts are
  /// never defined. Cases of each head are sorted and deduplicated.
  class justification_frame
  {
  public:
    justification_frame() = default;

    const vocabulary& atoms() const noexcept { return atoms_; }
    std::uint32_t fact_count() const noexcept { return atoms_.fact_count(); }

    bool contains(fact x) const noexcept { return atoms_.contains(x); }
    bool is_defined(fact x) const noexcept
    {
      return !x.is_logical() && x.atom() < defined_.size() && defined_[x.atom()];
    }
    bool is_open(fact x) const noexcept { return contains(x) && !is_defined(x); }
    bool is_defined_atom(atom_id a) const noexcept { return defined_.at(a); }

    /// JF(x); throws jt::error when x is not defined.
    const std::vector<fact_set>& cases(fact x) const;
    std::optional<std::size_t> case_index(fact x, const fact_set& body) const;

    /// Defined facts in fact order (positive before negative per atom).
    const std::vector<fact>& defined_facts() const noexcept { return defined_facts_; }
    std::vector<fact> open_atoms() const;
    std::vector<rule> rules() const;
    std::size_t rule_count() const noexcept;

    /// Occurrences of a fact in bodies, as (head, case index) pairs.
    struct occurrence
    {
      fact head;
      std::uint32_t case_index;
    };
    const std::vector<occurrence>& occurrences(fact x) const
    {
      return occurrences_.at(x.code());
    }

    friend justification_frame validate_frame(frame_data candidate);

  private:
    vocabulary atoms_;
    std::vector<bool> defined_;
    std::vector<std::vector<fact_set>> cases_;  // indexed by fact code
    std::vector<fact> defined_facts_;
    std::vector<std::vector<occurrence>> occurrences_;
  };

  /// Throws frame_error listing every violation.
  justification_frame validate_frame(frame_data candidate);

  /// Selection function for `head`: `choice[i]` is the element picked
  /// from the i-th case of `head` in frame order.
  struct selection_function
  {
    fact head;
    std::vector<fact> choice;

    fact_set image() const { return make_fact_set(choice); }
    auto operator<=>(const selection_function&) const = default;
  };

  std::vector<selection_function>
  enumerate_selection_functions(const justification_frame& frame, fact x,
                                std::size_t cap = default_selection_cap);

  /// C(R): one rule ~x <- ~im(S) per selection function S of every head.
  /// The input must define each atom on one sign only.
  std::vector<rule> complement_rules(const std::vector<rule>& rules,
                                     std::size_t cap = default_selection_cap);

  /// CC(R) = R u C(R), sorted and deduplicated.
  std::vector<rule> complementation(const std::vector<rule>& rules,
                                    std::size_t cap = default_selection_cap);

  /// Drops bodies that are strict supersets of another body of the same head.
  std::vector<rule> drop_subsumed_rules(const std::vector<rule>& rules);

  struct complementarity_violation
  {
    fact head;
    int condition;  // 1 or 2
    /// Condition 1: a selection for `head` no case of ~head fits inside.
    std::optional<selection_function> uncovered_selection;
    /// Condition 2: a case of `head` no selection for ~head fits under.
    std::optional<fact_set> unmatched_case;
  };

  struct complementarity_report
  {
    bool complementary = true;
    std::vector<complementarity_violation> violations;
  };

  /// Checks both complementarity conditions for every defined fact.
  /// `cap` bounds the number of search nodes spent per head.
  complementarity_report check_complementarity(const justification_frame& frame,
                                               std::size_t cap = default_selection_cap);

  struct intersection_failure
  {
    fact head;
    fact_set body;
    fact_set opposite_body;
  };

  struct intersection_report
  {
    bool passed = true;
    std::vector<intersection_failure> failures;
  };

  /// Checks A n ~B != {} for every pair x <- A, ~x <- B.
  intersection_report rule_intersection_check(const justification_frame& frame);

  std::string to_string(const vocabulary& atoms, const fact_set& facts);
  std::string to_string(const vocabulary& atoms, const rule& r);
}
