#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jt
{
  /// Base class of every error raised by the engine.
  class error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Raised when an enumeration would exceed its configured cap.
  class capacity_error : public error
  {
  public:
    using error::error;
  };

  /// Three-valued truth lattice. The enumerator order is the truth
  /// order, so the built-in comparison operators implement <=_t.
  enum class truth_value : std::uint8_t
  {
    f = 0,
    u = 1,
    t = 2,
  };

  constexpr truth_value negate(truth_value v) noexcept
  {
    return static_cast<truth_value>(2 - static_cast<int>(v));
  }

  /// Least element of a nonempty collection; throws std::invalid_argument
  /// on an empty one.
  truth_value truth_min(std::span<const truth_value> values);
  truth_value truth_max(std::span<const truth_value> values);

  inline truth_value truth_min(std::initializer_list<truth_value> values)
  {
    return truth_min(std::span<const truth_value>(values.begin(), values.size()));
  }
  inline truth_value truth_max(std::initializer_list<truth_value> values)
  {
    return truth_max(std::span<const truth_value>(values.begin(), values.size()));
  }

  char to_char(truth_value v) noexcept;
  std::optional<truth_value> parse_truth_value(std::string_view text) noexcept;

  using atom_id = std::uint32_t;

  /// A fact is either one of the three logical facts or a signed atom.
  ///
  /// Facts are packed into a single code: logical facts occupy codes
  /// 0 (f), 1 (u) and 2 (t); atom `a` with sign `s` has code 3 + 2a + s.
  /// Complementation is therefore a constant-time code flip, and logical
  /// facts can never be confused with atoms.
  class fact
  {
  public:
    constexpr fact() noexcept = default;

    static constexpr fact logical(truth_value v) noexcept
    {
      return fact(static_cast<std::uint32_t>(v));
    }
    static constexpr fact atom(atom_id id, bool negative = false) noexcept
    {
      return fact(3 + 2 * id + (negative ? 1u : 0u));
    }
    static constexpr fact from_code(std::uint32_t code) noexcept
    {
      return fact(code);
    }

    constexpr bool is_logical() const noexcept { return code_ < 3; }
    constexpr truth_value logical_value() const noexcept
    {
      return static_cast<truth_value>(code_);
    }
    constexpr atom_id atom() const noexcept { return (code_ - 3) / 2; }
    constexpr bool negative() const noexcept { return ((code_ - 3) & 1u) != 0; }
    constexpr fact positive() const noexcept
    {
      return is_logical() ? *this : fact::atom(atom());
    }
    constexpr std::uint32_t code() const noexcept { return code_; }

    /// The involution: flips the sign of an atom, t <-> f, u fixed.
    constexpr fact operator~() const noexcept
    {
      if (is_logical())
        return fact(2 - code_);
      return fact(3 + ((code_ - 3) ^ 1u));
    }

    constexpr auto operator<=>(const fact&) const noexcept = default;

  private:
    constexpr explicit fact(std::uint32_t code) noexcept : code_(code) {}
    std::uint32_t code_ = 1;
  };

  constexpr fact complement_fact(fact x) noexcept { return ~x; }

  /// Interned atom names. Atom ids are dense and stable.
  class vocabulary
  {
  public:
    vocabulary() = default;
    explicit vocabulary(const std::vector<std::string>& names);

    atom_id intern(std::string_view name);
    std::optional<atom_id> find(std::string_view name) const;
    const std::string& name(atom_id id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    /// Number of fact codes (logical facts plus both signs of every atom).
    std::uint32_t fact_count() const noexcept
    {
      return 3 + 2 * static_cast<std::uint32_t>(names_.size());
    }
    bool contains(fact x) const noexcept
    {
      return x.is_logical() || x.atom() < names_.size();
    }

    std::string to_string(fact x) const;
    /// Parses `t`, `~p`, ... against this vocabulary; throws jt::error.
    fact parse_fact(std::string_view text) const;

    static bool is_reserved(std::string_view name) noexcept;

    bool operator==(const vocabulary& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, atom_id> index_;
  };

  /// Total three-valued assignment on the fact space. One value is
  /// stored per positive atom; the involution and logical facts fix the
  /// rest.
  class interpretation
  {
  public:
    interpretation() = default;
    explicit interpretation(std::vector<truth_value> atom_values)
      : values_(std::move(atom_values))
    {
    }

    /// Throws jt::error if x names an atom outside the space.
    truth_value lookup(fact x) const;
    truth_value operator()(fact x) const { return lookup(x); }

    const std::vector<truth_value>& atom_values() const noexcept { return values_; }
    std::size_t atom_count() const noexcept { return values_.size(); }

    auto operator<=>(const interpretation&) const = default;

  private:
    std::vector<truth_value> values_;
  };

  /// Builds an interpretation from an assignment keyed by positive atom
  /// names; every atom of `atoms` must be covered.
  interpretation make_interpretation(const vocabulary& atoms,
                                     const std::map<std::string, truth_value>& assignment);

  std::string to_string(const vocabulary& atoms, const interpretation& interp);
}
