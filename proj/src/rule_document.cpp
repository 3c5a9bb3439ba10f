#include <jt/rule_document.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace jt
{
  std::strong_ordering literal::operator<=>(const literal& o) const
  {
    auto key = [](const literal& l) {
      if (l.is_logical())
        {
          auto v = *parse_truth_value(l.name);
          return std::make_tuple(0, static_cast<int>(l.negated ? negate(v) : v), std::string(),
                                 l.negated);
        }
      return std::make_tuple(1, 0, l.name, l.negated);
    };
    return key(*this) <=> key(o);
  }

  std::string to_string(const literal& l) { return (l.negated ? "~" : "") + l.name; }

  parse_error::parse_error(const std::string& message, source_span at)
    : error(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message), at_(at)
  {
  }

  namespace
  {
    bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    class parser
    {
    public:
      parser(std::string_view text, const parse_options& options)
        : text_(text), options_(options)
      {
      }

      rule_document run()
      {
        rule_document doc;
        skip_space();
        while (!at_end())
          {
            if (peek() == '#')
              directive(doc);
            else
              doc.rules.push_back(statement());
            skip_space();
          }
        check(doc);
        return doc;
      }

    private:
      bool at_end() const { return pos_ >= text_.size(); }
      char peek() const { return at_end() ? '\0' : text_[pos_]; }
      source_span here() const { return {line_, column_}; }

      void advance()
      {
        if (text_[pos_] == '\n')
          {
            ++line_;
            column_ = 1;
          }
        else
          ++column_;
        ++pos_;
      }

      void skip_space()
      {
        while (!at_end())
          {
            if (peek() == '%')
              while (!at_end() && peek() != '\n')
                advance();
            else if (std::isspace(static_cast<unsigned char>(peek())))
              advance();
            else
              break;
          }
      }

      [[noreturn]] void fail(const std::string& message) const { throw parse_error(message, here()); }

      std::string describe_next() const
      {
        if (at_end())
          return "end of input";
        return std::string("'") + peek() + "'";
      }

      std::string identifier()
      {
        if (!ident_start(peek()))
          fail("expected identifier, found " + describe_next());
        auto start = pos_;
        while (!at_end() && ident_char(peek()))
          advance();
        return std::string(text_.substr(start, pos_ - start));
      }

      void expect(char c)
      {
        skip_space();
        if (peek() != c)
          fail(std::string("expected '") + c + "', found " + describe_next());
        advance();
      }

      literal lit()
      {
        skip_space();
        literal l;
        if (peek() == '~')
          {
            l.negated = true;
            advance();
            skip_space();
          }
        l.name = identifier();
        return l;
      }

      void directive(rule_document& doc)
      {
        auto span = here();
        advance();
        auto name = identifier();
        if (name == "open")
          {
            open_declaration decl{{}, span};
            skip_space();
            while (peek() != '.')
              {
                auto at = here();
                auto atom = identifier();
                if (vocabulary::is_reserved(atom))
                  throw parse_error("logical fact '" + atom + "' cannot be declared open", at);
                decl.atoms.push_back(atom);
                skip_space();
              }
            advance();
            doc.open_declarations.push_back(std::move(decl));
          }
        else if (name == "complement")
          {
            expect('.');
            doc.auto_complement = true;
          }
        else
          throw parse_error("unknown directive '#" + name + "'", span);
      }

      rule_statement statement()
      {
        rule_statement st;
        st.span = here();
        st.head = lit();
        if (st.head.is_logical())
          throw parse_error("rule head '" + to_string(st.head) + "' is a logical fact", st.span);
        skip_space();
        if (text_.substr(pos_, 2) != "<-")
          fail("expected '<-', found " + describe_next());
        advance();
        advance();
        skip_space();
        if (peek() == '.')
          fail("empty rule body");
        while (true)
          {
            auto at = here();
            auto l = lit();
            if (!l.is_logical() && !first_use_.count(l.name))
              first_use_.emplace(l.name, at);
            st.body.push_back(std::move(l));
            skip_space();
            if (peek() == ',')
              {
                advance();
                continue;
              }
            if (peek() == '.')
              {
                advance();
                break;
              }
            fail("expected ',' or '.', found " + describe_next());
          }
        std::sort(st.body.begin(), st.body.end());
        st.body.erase(std::unique(st.body.begin(), st.body.end()), st.body.end());
        return st;
      }

      void check(const rule_document& doc) const
      {
        std::set<std::string> heads;
        for (const auto& r : doc.rules)
          heads.insert(r.head.name);
        std::set<std::string> open;
        for (const auto& decl : doc.open_declarations)
          for (const auto& a : decl.atoms)
            {
              if (heads.count(a))
                throw parse_error("atom '" + a + "' has rules and cannot be declared open", decl.span);
              if (!open.insert(a).second)
                throw parse_error("duplicate open declaration of '" + a + "'", decl.span);
            }
        if (options_.implicit_open)
          return;
        for (const auto& r : doc.rules)
          for (const auto& l : r.body)
            if (!l.is_logical() && !heads.count(l.name) && !open.count(l.name))
              throw parse_error("undeclared atom '" + l.name + "' (declare it with #open)",
                                first_use_.at(l.name));
      }

      std::string_view text_;
      parse_options options_;
      std::size_t pos_ = 0;
      std::size_t line_ = 1;
      std::size_t column_ = 1;
      std::map<std::string, source_span> first_use_;
    };

    fact to_fact(const vocabulary& atoms, const literal& l)
    {
      if (l.is_logical())
        {
          auto f = fact::logical(*parse_truth_value(l.name));
          return l.negated ? ~f : f;
        }
      return fact::atom(*atoms.find(l.name), l.negated);
    }

    literal to_literal(const vocabulary& atoms, fact x)
    {
      if (x.is_logical())
        return {false, std::string(1, to_char(x.logical_value()))};
      return {x.negative(), atoms.name(x.atom())};
    }
  }

  rule_document parse_rule_document(std::string_view text, const parse_options& options)
  {
    return parser(text, options).run();
  }

  std::string render_rule_document(const rule_document& doc)
  {
    std::ostringstream out;
    for (const auto& decl : doc.open_declarations)
      {
        out << "#open";
        for (const auto& a : decl.atoms)
          out << ' ' << a;
        out << ".\n";
      }
    if (doc.auto_complement)
      out << "#complement.\n";
    for (const auto& r : doc.rules)
      {
        auto body = r.body;
        std::sort(body.begin(), body.end());
        out << to_string(r.head) << " <- ";
        for (std::size_t i = 0; i < body.size(); ++i)
          out << (i ? ", " : "") << to_string(body[i]);
        out << ".\n";
      }
    return out.str();
  }

  justification_frame build_frame(const rule_document& doc)
  {
    std::set<std::string> names;
    for (const auto& decl : doc.open_declarations)
      names.insert(decl.atoms.begin(), decl.atoms.end());
    for (const auto& r : doc.rules)
      {
        if (!r.head.is_logical())
          names.insert(r.head.name);
        for (const auto& l : r.body)
          if (!l.is_logical())
            names.insert(l.name);
      }
    frame_data data;
    data.atoms = vocabulary(std::vector<std::string>(names.begin(), names.end()));

    for (const auto& r : doc.rules)
      {
        if (r.head.is_logical())
          throw error("rule head '" + to_string(r.head) + "' is a logical fact");
        std::vector<fact> body;
        for (const auto& l : r.body)
          body.push_back(to_fact(data.atoms, l));
        data.rules.push_back({to_fact(data.atoms, r.head), make_fact_set(std::move(body))});
      }

    if (doc.auto_complement)
      {
        std::map<atom_id, bool> sign;
        for (const auto& r : data.rules)
          {
            auto [it, inserted] = sign.emplace(r.head.atom(), r.head.negative());
            if (!inserted && it->second != r.head.negative())
              throw error("complementation requires rules for one sign per atom, but '" +
                          data.atoms.name(r.head.atom()) + "' has rules for both");
          }
        data.rules = complementation(data.rules);
      }
    data.defined = defined_from_heads(data.rules);
    return validate_frame(std::move(data));
  }

  rule_document frame_to_document(const justification_frame& frame)
  {
    rule_document doc;
    const auto& atoms = frame.atoms();
    auto open = frame.open_atoms();
    if (!open.empty())
      {
        open_declaration decl;
        for (auto a : open)
          decl.atoms.push_back(atoms.name(a.atom()));
        doc.open_declarations.push_back(std::move(decl));
      }
    for (const auto& r : frame.rules())
      {
        rule_statement st;
        st.head = to_literal(atoms, r.head);
        for (auto y : r.body)
          st.body.push_back(to_literal(atoms, y));
        std::sort(st.body.begin(), st.body.end());
        doc.rules.push_back(std::move(st));
      }
    return doc;
  }

  interpretation parse_interpretation(std::string_view text, const vocabulary& atoms)
  {
    std::map<std::string, truth_value> assignment;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token)
      {
        auto eq = token.find('=');
        if (eq == std::string::npos)
          throw error("interpretation: expected atom=value, got '" + token + "'");
        auto name = token.substr(0, eq);
        auto value = parse_truth_value(token.substr(eq + 1));
        if (!value)
          throw error("interpretation: bad value in '" + token + "' (expected t, f or u)");
        if (!assignment.emplace(name, *value).second)
          throw error("interpretation: atom '" + name + "' assigned twice");
      }
    return make_interpretation(atoms, assignment);
  }
}
