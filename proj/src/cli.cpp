#include <jt/cli.hpp>
#include <jt/generator.hpp>
#include <jt/rule_document.hpp>
#include <jt/serialize.hpp>
#include <jt/witness.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace jt
{
  namespace
  {
    std::string read_file(const std::string& path)
    {
      std::ifstream in(path, std::ios::binary);
      if (!in)
        throw error("cannot read '" + path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    struct frame_source
    {
      std::string path;
      bool implicit_open = false;

      rule_document document() const
      {
        return parse_rule_document(read_file(path), parse_options{implicit_open});
      }
      justification_frame frame() const { return build_frame(document()); }
    };

    std::string values_line(const justification_frame& frame, const raw_valuation& values)
    {
      std::string out;
      for (const auto& [x, v] : values)
        {
          if (!out.empty())
            out += ' ';
          out += frame.atoms().to_string(x) + "=" + to_char(v);
        }
      return out;
    }

    void print_complementarity(const justification_frame& frame,
                               const complementarity_report& report, std::ostream& out)
    {
      const auto& atoms = frame.atoms();
      out << "complementary: " << (report.complementary ? "yes" : "no") << "\n";
      for (const auto& v : report.violations)
        {
          if (v.condition == 1)
            {
              const auto& s = *v.uncovered_selection;
              const auto& cases = frame.cases(v.head);
              out << "  condition 1 fails at " << atoms.to_string(v.head) << ": selection";
              for (std::size_t i = 0; i < cases.size(); ++i)
                out << (i ? "," : "") << " {" << to_string(atoms, cases[i]) << "} -> "
                    << atoms.to_string(s.choice[i]);
              out << " leaves no case of " << atoms.to_string(~v.head) << " inside {"
                  << to_string(atoms, complement(s.image())) << "}\n";
            }
          else
            out << "  condition 2 fails at " << atoms.to_string(v.head) << ": case {"
                << to_string(atoms, *v.unmatched_case) << "} has no selection for "
                << atoms.to_string(~v.head) << " complementing into it\n";
        }
    }

    int cmd_validate(const frame_source& src, std::ostream& out)
    {
      auto frame = src.frame();
      out << "valid: " << frame.atoms().size() << " atoms, " << frame.defined_facts().size()
          << " defined facts, " << frame.rule_count() << " rules\n";
      return exit_ok;
    }

    int cmd_complement(const frame_source& src, std::ostream& out)
    {
      auto doc = src.document();
      doc.auto_complement = true;
      out << render_rule_document(frame_to_document(build_frame(doc)));
      return exit_ok;
    }

    int cmd_check_comp(const frame_source& src, std::ostream& out)
    {
      auto frame = src.frame();
      auto report = check_complementarity(frame);
      print_complementarity(frame, report, out);
      auto inter = rule_intersection_check(frame);
      out << "rule intersection: " << (inter.passed ? "pass" : "fail") << "\n";
      for (const auto& f : inter.failures)
        out << "  " << frame.atoms().to_string(f.head) << " <- " << to_string(frame.atoms(), f.body)
            << "  vs  " << frame.atoms().to_string(~f.head) << " <- "
            << to_string(frame.atoms(), f.opposite_body) << "\n";
      return report.complementary ? exit_ok : exit_violations;
    }

    int cmd_solve(const frame_source& src, const std::string& be_name, const std::string& interp_path,
                  bool all, bool check, std::ostream& out)
    {
      auto frame = src.frame();
      const auto& be = builtin_evaluation(be_name);
      if (!all)
        {
          auto interp = parse_interpretation(read_file(interp_path), frame.atoms());
          for (const auto& [x, v] : support_operator(frame, interp, be))
            out << frame.atoms().to_string(x) << ' ' << to_char(v) << "\n";
          return exit_ok;
        }
      if (check)
        {
          auto report = consistency_sweep(frame, be);
          auto text = render_rule_document(frame_to_document(frame));
          out << consistency_report_to_json(frame.atoms(), text, report).dump(2) << "\n";
          return report.consistent() ? exit_ok : exit_violations;
        }
      if (frame.atoms().size() > default_model_atom_cap)
        throw capacity_error("--all-interps over more than " +
                             std::to_string(default_model_atom_cap) + " atoms");
      for_each_interpretation(frame.atoms().size(), [&](const interpretation& interp) {
        out << to_string(frame.atoms(), interp) << " | "
            << values_line(frame, support_operator(frame, interp, be)) << "\n";
      });
      return exit_ok;
    }

    int cmd_models(const frame_source& src, const std::string& be_name, std::ostream& out)
    {
      auto frame = src.frame();
      auto models = enumerate_models(frame, builtin_evaluation(be_name));
      for (const auto& m : models)
        out << to_string(frame.atoms(), m) << "\n";
      out << "models: " << models.size() << "\n";
      return exit_ok;
    }

    int cmd_explain(const frame_source& src, const std::string& be_name, const std::string& fact_text,
                    const std::string& interp_path, const std::string& format, std::ostream& out)
    {
      auto frame = src.frame();
      const auto& be = builtin_evaluation(be_name);
      auto x = frame.atoms().parse_fact(fact_text);
      if (!frame.is_defined(x))
        throw error("fact " + fact_text + " is not defined");
      auto interp = parse_interpretation(read_file(interp_path), frame.atoms());
      auto report = check_complementarity(frame);
      if (!report.complementary)
        {
          out << "cannot explain: the frame is not complementary\n";
          print_complementarity(frame, report, out);
          return exit_violations;
        }
      auto w = make_witness_pair(frame, interp, be, x);
      out << (format == "dot" ? export_witness_dot(frame.atoms(), w)
                              : export_witness_json(frame.atoms(), w));
      return exit_ok;
    }

    std::vector<std::string> split_commas(const std::vector<std::string>& items)
    {
      std::vector<std::string> out;
      for (const auto& item : items)
        {
          std::istringstream in(item);
          std::string part;
          while (std::getline(in, part, ','))
            if (!part.empty())
              out.push_back(part);
        }
      return out;
    }
  }

  int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
  {
    CLI::App app{"Justification frames: complementation, supported values, witnesses, fuzzing",
                 "jt"};
    app.require_subcommand(1);

    frame_source src;
    std::string be_name = "sp";
    std::string interp_path;
    std::string fact_text;
    std::string format = "json";
    bool all_interps = false;
    bool check = false;

    auto add_file = [&](CLI::App* sub) {
      sub->add_option("FILE", src.path, "Rule file")->required();
      sub->add_flag("--implicit-open", src.implicit_open,
                    "Treat undeclared body atoms as open instead of rejecting them");
    };
    auto add_be = [&](CLI::App* sub) {
      sub->add_option("--be", be_name, "Branch evaluation")
        ->check(CLI::IsMember({"sp", "kk"}))
        ->required();
    };

    auto* validate = app.add_subcommand("validate", "Parse and validate a rule file");
    add_file(validate);
    auto* comp = app.add_subcommand("complement", "Print the complementation of a rule file");
    add_file(comp);
    auto* check_comp = app.add_subcommand("check-comp", "Check complementarity");
    add_file(check_comp);

    auto* solve = app.add_subcommand("solve", "Supported values of every defined fact");
    add_file(solve);
    add_be(solve);
    auto* interp_opt = solve->add_option("--interp", interp_path, "Interpretation file");
    auto* all_opt = solve->add_flag("--all-interps", all_interps, "Tabulate every interpretation");
    interp_opt->excludes(all_opt);
    solve->add_flag("--check", check,
                    "With --all-interps: print the consistency report as JSON instead");

    auto* models = app.add_subcommand("models", "Enumerate models");
    add_file(models);
    add_be(models);

    auto* explain = app.add_subcommand("explain", "Witness pair for a fact");
    add_file(explain);
    add_be(explain);
    explain->add_option("--fact", fact_text, "Defined fact, e.g. p or ~p")->required();
    explain->add_option("--interp", interp_path, "Interpretation file")->required();
    explain->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot", "json"}));

    fuzz_config cfg;
    std::vector<std::string> evaluations;
    std::size_t samples = 0;
    auto* fuzz = app.add_subcommand("fuzz", "Property-test consistency on generated frames");
    fuzz->add_option("--seed", cfg.seed, "Random seed");
    fuzz->add_option("--frames", cfg.frame_count, "Number of generated frames");
    fuzz->add_option("--max-defined", cfg.max_defined_atoms, "Defined atoms per frame (max)")
      ->check(CLI::PositiveNumber);
    fuzz->add_option("--max-open", cfg.max_open_atoms, "Open atoms per frame (max)");
    fuzz->add_option("--max-cases", cfg.max_cases_per_head, "Cases per head (max)")
      ->check(CLI::PositiveNumber);
    fuzz->add_option("--max-body", cfg.max_body_size, "Body size (max)")->check(CLI::PositiveNumber);
    fuzz->add_option("--be", evaluations, "Evaluations (sp, kk; comma separated)");
    fuzz->add_option("--samples", samples,
                     "Sample this many interpretations per frame instead of sweeping")
      ->check(CLI::PositiveNumber);
    fuzz->add_option("--max-exhaustive", cfg.max_exhaustive,
                     "Largest exhaustive sweep (interpretations per frame)");
    fuzz->add_flag("--allow-noncomplementary", cfg.allow_noncomplementary,
                   "Also sweep frames that fail the complementarity check");
    fuzz->add_flag("--inject-regression", cfg.inject_regression,
                   "Append the contradictory frame {x <- t; ~x <- t}");
    fuzz->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");

    std::vector<std::string> storage{"jt"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage)
      argv.push_back(s.c_str());

    try
      {
        app.parse(static_cast<int>(argv.size()), argv.data());
      }
    catch (const CLI::CallForHelp&)
      {
        out << app.help();
        return exit_ok;
      }
    catch (const CLI::ParseError& e)
      {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_invalid;
      }

    try
      {
        if (validate->parsed())
          return cmd_validate(src, out);
        if (comp->parsed())
          return cmd_complement(src, out);
        if (check_comp->parsed())
          return cmd_check_comp(src, out);
        if (solve->parsed())
          {
            if (!all_interps && interp_path.empty())
              {
                err << "error: solve needs --interp FILE or --all-interps\n";
                return exit_invalid;
              }
            return cmd_solve(src, be_name, interp_path, all_interps, check, out);
          }
        if (models->parsed())
          return cmd_models(src, be_name, out);
        if (explain->parsed())
          return cmd_explain(src, be_name, fact_text, interp_path, format, out);
        if (fuzz->parsed())
          {
            if (!evaluations.empty())
              cfg.evaluations = split_commas(evaluations);
            if (samples)
              {
                cfg.mode = interpretation_mode::sampled;
                cfg.sample_count = samples;
              }
            auto report = fuzz_consistency(cfg);
            out << fuzz_report_json(report);
            err << "fuzz: " << report.frames_tested << " frames in " << std::fixed
                << std::setprecision(2) << report.elapsed_seconds << " s\n";
            bool clean = report.theorem_holds() && report.noncomplementary_violation_count == 0;
            return clean ? exit_ok : exit_violations;
          }
      }
    catch (const capacity_error& e)
      {
        err << "capacity error: " << e.what() << "\n";
        return exit_capacity;
      }
    catch (const error& e)
      {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
      }
    return exit_invalid;
  }
}
