#pragma once

#include <jt/frame.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace jt
{
  struct source_span
  {
    std::size_t line = 0;
    std::size_t column = 0;
  };

  /// `name` or `~name`; names t, f and u denote logical facts.
  struct literal
  {
    bool negated = false;
    std::string name;

    bool is_logical() const noexcept { return vocabulary::is_reserved(name); }

    // Logical facts first (f < u < t, negation applied), then atoms by
    // name with the positive literal first.
    std::strong_ordering operator<=>(const literal& o) const;
    bool operator==(const literal& o) const = default;
  };

  std::string to_string(const literal& l);

  struct rule_statement
  {
    literal head;
    std::vector<literal> body;  // sorted, duplicate-free
    source_span span;

    bool operator==(const rule_statement& o) const
    {
      return head == o.head && body == o.body;
    }
  };

  struct open_declaration
  {
    std::vector<std::string> atoms;
    source_span span;

    bool operator==(const open_declaration& o) const { return atoms == o.atoms; }
  };

  /// Parsed rule file. Equality ignores source spans.
  struct rule_document
  {
    std::vector<open_declaration> open_declarations;
    std::vector<rule_statement> rules;
    bool auto_complement = false;

    bool operator==(const rule_document&) const = default;
  };

  class parse_error : public error
  {
  public:
    parse_error(const std::string& message, source_span at);
    source_span where() const noexcept { return at_; }

  private:
    source_span at_;
  };

  struct parse_options
  {
    /// Treat undeclared body-only atoms as open instead of rejecting them.
    bool implicit_open = false;
  };

  /// Grammar: statements end in `.`; `#open a b.` declares open atoms;
  /// `#complement.` requests complementation; rules read
  /// `LIT <- LIT {, LIT}.`; `%` starts a line comment.
  rule_document parse_rule_document(std::string_view text, const parse_options& options = {});

  /// Canonical text: open declarations in order, then the directive,
  /// then the rules in order with sorted bodies.
  std::string render_rule_document(const rule_document& doc);

  /// Builds and validates the frame (applying complementation when
  /// requested). Atoms are interned in lexicographic name order. Throws
  /// frame_error or jt::error.
  justification_frame build_frame(const rule_document& doc);

  /// Document listing the frame's open atoms and all of its rules.
  rule_document frame_to_document(const justification_frame& frame);

  /// Whitespace-separated `atom=value` tokens, value in {t, f, u}.
  interpretation parse_interpretation(std::string_view text, const vocabulary& atoms);
}
