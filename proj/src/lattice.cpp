#include <jt/lattice.hpp>

#include <algorithm>
#include <sstream>

namespace jt
{
  truth_value truth_min(std::span<const truth_value> values)
  {
    if (values.empty())
      throw std::invalid_argument("truth_min: empty collection");
    return *std::min_element(values.begin(), values.end());
  }

  truth_value truth_max(std::span<const truth_value> values)
  {
    if (values.empty())
      throw std::invalid_argument("truth_max: empty collection");
    return *std::max_element(values.begin(), values.end());
  }

  char to_char(truth_value v) noexcept
  {
    switch (v)
      {
      case truth_value::f:
        return 'f';
      case truth_value::u:
        return 'u';
      case truth_value::t:
        return 't';
      }
    return '?';
  }

  std::optional<truth_value> parse_truth_value(std::string_view text) noexcept
  {
    if (text == "t")
      return truth_value::t;
    if (text == "f")
      return truth_value::f;
    if (text == "u")
      return truth_value::u;
    return std::nullopt;
  }

  vocabulary::vocabulary(const std::vector<std::string>& names)
  {
    for (const auto& n : names)
      intern(n);
  }

  bool vocabulary::is_reserved(std::string_view name) noexcept
  {
    return name == "t" || name == "f" || name == "u";
  }

  atom_id vocabulary::intern(std::string_view name)
  {
    if (is_reserved(name))
      throw error("'" + std::string(name) + "' is a logical fact, not an atom");
    if (name.empty())
      throw error("empty atom name");
    auto key = std::string(name);
    if (auto it = index_.find(key); it != index_.end())
      return it->second;
    auto id = static_cast<atom_id>(names_.size());
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
  }

  std::optional<atom_id> vocabulary::find(std::string_view name) const
  {
    if (auto it = index_.find(std::string(name)); it != index_.end())
      return it->second;
    return std::nullopt;
  }

  std::string vocabulary::to_string(fact x) const
  {
    if (x.is_logical())
      return std::string(1, to_char(x.logical_value()));
    if (x.atom() >= names_.size())
      return (x.negative() ? "~#" : "#") + std::to_string(x.atom());
    return (x.negative() ? "~" : "") + names_[x.atom()];
  }

  fact vocabulary::parse_fact(std::string_view text) const
  {
    bool negative = false;
    if (!text.empty() && text.front() == '~')
      {
        negative = true;
        text.remove_prefix(1);
      }
    if (auto v = parse_truth_value(text))
      {
        auto l = fact::logical(*v);
        return negative ? ~l : l;
      }
    auto id = find(text);
    if (!id)
      throw error("unknown atom '" + std::string(text) + "'");
    return fact::atom(*id, negative);
  }

  truth_value interpretation::lookup(fact x) const
  {
    if (x.is_logical())
      return x.logical_value();
    if (x.atom() >= values_.size())
      throw error("interpretation: unknown atom #" + std::to_string(x.atom()));
    auto v = values_[x.atom()];
    return x.negative() ? negate(v) : v;
  }

  interpretation make_interpretation(const vocabulary& atoms,
                                     const std::map<std::string, truth_value>& assignment)
  {
    std::vector<std::optional<truth_value>> slots(atoms.size());
    for (const auto& [name, value] : assignment)
      {
        if (!name.empty() && name.front() == '~')
          throw error("interpretation: negative atom key '" + name + "'");
        if (vocabulary::is_reserved(name))
          throw error("interpretation: logical fact '" + name + "' cannot be assigned");
        auto id = atoms.find(name);
        if (!id)
          throw error("interpretation: unknown atom '" + name + "'");
        slots[*id] = value;
      }
    std::vector<truth_value> values;
    values.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i)
      {
        if (!slots[i])
          throw error("interpretation: missing value for atom '" +
                      atoms.name(static_cast<atom_id>(i)) + "'");
        values.push_back(*slots[i]);
      }
    return interpretation(std::move(values));
  }

  std::string to_string(const vocabulary& atoms, const interpretation& interp)
  {
    std::ostringstream out;
    for (std::size_t i = 0; i < interp.atom_count(); ++i)
      {
        if (i)
          out << ' ';
        out << atoms.name(static_cast<atom_id>(i)) << '='
            << to_char(interp.atom_values()[i]);
      }
    return out.str();
  }
}
