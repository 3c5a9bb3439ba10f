#include <jt/generator.hpp>
#include <jt/random.hpp>
#include <jt/rule_document.hpp>
#include <jt/serialize.hpp>

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

namespace jt
{
  void fuzz_config::validate() const
  {
    if (max_defined_atoms == 0 || max_cases_per_head == 0 || max_body_size == 0)
      throw error("fuzz: atom, case and body bounds must be positive");
    if (sample_count == 0)
      throw error("fuzz: sample count must be at least 1");
    if (evaluations.empty())
      throw error("fuzz: no evaluations selected");
    for (const auto& e : evaluations)
      builtin_evaluation(e);
  }

  namespace
  {
    constexpr std::size_t max_attempts = 16;

    std::string atom_name(char prefix, std::size_t i) { return prefix + std::to_string(i); }
  }

  generated_frame generate_random_frame(const fuzz_config& cfg, std::size_t index)
  {
    random_source rng(cfg.seed, index);
    std::string last_problem;
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt)
      {
        auto defined = static_cast<std::size_t>(rng.between(1, cfg.max_defined_atoms));
        auto open = static_cast<std::size_t>(rng.between(0, cfg.max_open_atoms));

        std::vector<std::string> names;
        for (std::size_t i = 0; i < defined; ++i)
          names.push_back(atom_name('d', i));
        for (std::size_t i = 0; i < open; ++i)
          names.push_back(atom_name('o', i));
        frame_data data;
        data.atoms = vocabulary(names);

        auto random_fact = [&] {
          if (rng.chance(1, 10))
            return fact::logical(static_cast<truth_value>(rng.below(3)));
          return fact::atom(static_cast<atom_id>(rng.below(names.size())), rng.chance(1, 2));
        };

        std::vector<rule> base;
        for (std::size_t a = 0; a < defined; ++a)
          {
            auto head = fact::atom(static_cast<atom_id>(a), rng.chance(1, 2));
            auto cases = rng.between(1, cfg.max_cases_per_head);
            for (std::uint64_t c = 0; c < cases; ++c)
              {
                auto size = rng.between(1, cfg.max_body_size);
                std::vector<fact> body;
                for (std::uint64_t k = 0; k < size; ++k)
                  body.push_back(random_fact());
                base.push_back({head, make_fact_set(std::move(body))});
              }
          }

        try
          {
            data.rules = complementation(base);
            data.defined = defined_from_heads(data.rules);
            generated_frame out;
            out.frame = validate_frame(std::move(data));
            out.base_rules = std::move(base);
            out.complementary = check_complementarity(out.frame).complementary;
            out.attempts = attempt;
            return out;
          }
        catch (const error& e)
          {
            last_problem = e.what();
          }
      }
    throw error("fuzz: frame " + std::to_string(index) + " not generated after " +
                std::to_string(max_attempts) + " attempts: " + last_problem);
  }

  justification_frame contradictory_frame()
  {
    frame_data data;
    data.atoms = vocabulary(std::vector<std::string>{"x"});
    auto x = fact::atom(0);
    auto t = fact::logical(truth_value::t);
    data.rules = {{x, {t}}, {~x, {t}}};
    data.defined = {0};
    return validate_frame(std::move(data));
  }

  namespace
  {
    struct frame_outcome
    {
      bool complementary = true;
      std::size_t interpretations = 0;
      std::size_t violation_count = 0;
      std::size_t inequality_count = 0;
      std::size_t noncomplementary_count = 0;
      std::vector<fuzz_violation> violations;
      std::vector<fuzz_violation> inequality_violations;
      std::vector<fuzz_violation> noncomplementary_violations;
    };

    std::uint64_t sweep_seed(std::uint64_t seed, std::size_t index, std::size_t evaluation)
    {
      random_source rng(seed ^ 0x9e3779b97f4a7c15ull, index * 8 + evaluation);
      return rng.next();
    }

    frame_outcome run_frame(const fuzz_config& cfg, std::size_t index)
    {
      frame_outcome out;
      justification_frame frame;
      if (index < cfg.frame_count)
        {
          auto g = generate_random_frame(cfg, index);
          frame = std::move(g.frame);
          out.complementary = g.complementary;
        }
      else
        {
          frame = contradictory_frame();
          out.complementary = check_complementarity(frame).complementary;
        }
      if (!out.complementary && !cfg.allow_noncomplementary)
        return out;

      std::string text;
      for (std::size_t e = 0; e < cfg.evaluations.size(); ++e)
        {
          const auto& be = builtin_evaluation(cfg.evaluations[e]);
          sweep_options options;
          options.max_exhaustive = cfg.max_exhaustive;
          options.samples = cfg.sample_count;
          options.seed = sweep_seed(cfg.seed, index, e);
          options.force_sampling = cfg.mode == interpretation_mode::sampled;
          auto report = consistency_sweep(frame, be, options);
          out.interpretations += report.interpretations_checked;

          auto record = [&](const std::vector<consistency_violation>& from,
                            std::vector<fuzz_violation>& into, std::size_t& count) {
            count += from.size();
            for (const auto& v : from)
              {
                if (into.size() >= cfg.max_reported)
                  break;
                if (text.empty())
                  text = render_rule_document(frame_to_document(frame));
                into.push_back({index, text, report.evaluation, report.seed, v, frame.atoms()});
              }
          };
          if (out.complementary)
            {
              record(report.violations, out.violations, out.violation_count);
              record(report.inequality_violations, out.inequality_violations, out.inequality_count);
            }
          else
            {
              record(report.violations, out.noncomplementary_violations, out.noncomplementary_count);
              record(report.inequality_violations, out.noncomplementary_violations,
                     out.noncomplementary_count);
            }
        }
      return out;
    }
  }

  fuzz_report fuzz_consistency(const fuzz_config& cfg)
  {
    cfg.validate();
    auto start = std::chrono::steady_clock::now();
    const std::size_t total = cfg.frame_count + (cfg.inject_regression ? 1 : 0);

    std::vector<frame_outcome> outcomes(total);
    std::vector<std::exception_ptr> failures(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (auto i = next++; i < total; i = next++)
        {
          try
            {
              outcomes[i] = run_frame(cfg, i);
            }
          catch (...)
            {
              failures[i] = std::current_exception();
            }
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
    if (threads <= 1)
      worker();
    else
      {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
          pool.emplace_back(worker);
      }
    for (const auto& failure : failures)
      if (failure)
        std::rethrow_exception(failure);

    fuzz_report report;
    report.seed = cfg.seed;
    report.frames_tested = total;
    auto append = [&](std::vector<fuzz_violation>& into, std::vector<fuzz_violation>& from) {
      for (auto& v : from)
        if (into.size() < cfg.max_reported)
          into.push_back(std::move(v));
    };
    for (auto& o : outcomes)
      {
        if (!o.complementary)
          ++report.complementarity_failures;
        report.interpretations_checked += o.interpretations;
        report.violation_count += o.violation_count;
        report.inequality_violation_count += o.inequality_count;
        report.noncomplementary_violation_count += o.noncomplementary_count;
        append(report.violations, o.violations);
        append(report.inequality_violations, o.inequality_violations);
        append(report.noncomplementary_violations, o.noncomplementary_violations);
      }
    report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  std::string fuzz_report_json(const fuzz_report& report)
  {
    auto list = [](const std::vector<fuzz_violation>& vs) {
      auto out = json::array();
      for (const auto& v : vs)
        {
          json entry = {{"frameIndex", v.frame_index},
                        {"frame", v.frame_text},
                        {"be", v.evaluation},
                        {"fact", fact_to_json(v.atoms, v.violation.x)},
                        {"interpretation", interpretation_to_json(v.atoms, v.violation.interp)},
                        {"sv", std::string(1, to_char(v.violation.sv))},
                        {"svComplement", std::string(1, to_char(v.violation.sv_complement))}};
          if (v.seed)
            entry["seed"] = *v.seed;
          out.push_back(std::move(entry));
        }
      return out;
    };
    json out = {{"seed", report.seed},
                {"framesTested", report.frames_tested},
                {"complementarityFailures", report.complementarity_failures},
                {"interpretationsChecked", report.interpretations_checked},
                {"violationCount", report.violation_count},
                {"inequalityViolationCount", report.inequality_violation_count},
                {"noncomplementaryViolationCount", report.noncomplementary_violation_count},
                {"violations", list(report.violations)},
                {"inequalityViolations", list(report.inequality_violations)},
                {"noncomplementaryViolations", list(report.noncomplementary_violations)}};
    return out.dump(2) + "\n";
  }
}
