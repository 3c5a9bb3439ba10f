#include <jt/solver.hpp>
#include <jt/random.hpp>

#include <algorithm>
#include <deque>

namespace jt
{
  namespace
  {
    void require_known(const justification_frame& frame, fact x)
    {
      if (!frame.contains(x))
        throw error("unknown fact " + frame.atoms().to_string(x));
    }

    // Flat numbering of (head, case) pairs.
    struct case_numbering
    {
      std::vector<std::uint32_t> offset;  // by head code
      std::uint32_t total = 0;

      explicit case_numbering(const justification_frame& frame)
        : offset(frame.fact_count(), 0)
      {
        for (auto x : frame.defined_facts())
          {
            offset[x.code()] = total;
            total += static_cast<std::uint32_t>(frame.cases(x).size());
          }
      }

      std::uint32_t id(fact head, std::uint32_t i) const { return offset[head.code()] + i; }
    };

    truth_value sp_value(const justification_frame& frame, const interpretation& interp, fact x)
    {
      auto best = truth_value::f;
      for (const auto& body : frame.cases(x))
        {
          auto worst = truth_value::t;
          for (auto y : body)
            worst = std::min(worst, interp(y));
          best = std::max(best, worst);
          if (best == truth_value::t)
            break;
        }
      return best;
    }

    truth_value kk_value(const kk_regions& regions, fact x)
    {
      if (regions.in_true(x))
        return truth_value::t;
      return regions.in_nonfalse(x) ? truth_value::u : truth_value::f;
    }

    // Supported values of every defined fact, indexed by fact code.
    std::vector<truth_value> all_supported_values(const justification_frame& frame,
                                                  const interpretation& interp,
                                                  const branch_evaluation& be)
    {
      std::vector<truth_value> out(frame.fact_count(), truth_value::u);
      switch (be.kind())
        {
        case evaluation_kind::supported:
          for (auto x : frame.defined_facts())
            out[x.code()] = sp_value(frame, interp, x);
          break;
        case evaluation_kind::kripke_kleene:
          {
            auto regions = compute_kk_regions(frame, interp);
            for (auto x : frame.defined_facts())
              out[x.code()] = kk_value(regions, x);
            break;
          }
        case evaluation_kind::custom:
          for (auto x : frame.defined_facts())
            out[x.code()] = supported_value_brute(frame, interp, x, be);
          break;
        }
      return out;
    }
  }

  truth_value supported_value_sp(const justification_frame& frame, const interpretation& interp,
                                 fact x)
  {
    require_known(frame, x);
    if (!frame.is_defined(x))
      return interp(x);
    return sp_value(frame, interp, x);
  }

  kk_regions compute_kk_regions(const justification_frame& frame, const interpretation& interp)
  {
    const case_numbering ids(frame);
    const auto n = frame.fact_count();
    kk_regions r;
    r.true_rank.assign(n, kk_regions::none);
    r.true_case.assign(n, kk_regions::none);
    r.false_rank.assign(n, kk_regions::none);
    r.nonfalse_case.assign(n, kk_regions::none);

    // Least fixpoint: cases become satisfied once all their defined
    // elements are in X; a non-t open element kills a case for good.
    {
      std::vector<std::uint32_t> missing(ids.total, 0);
      std::vector<bool> dead(ids.total, false);
      std::deque<fact> queue;
      std::uint32_t rank = 0;
      auto admit = [&](fact head, std::uint32_t i) {
        if (r.true_rank[head.code()] != kk_regions::none)
          return;
        r.true_rank[head.code()] = rank++;
        r.true_case[head.code()] = i;
        queue.push_back(head);
      };
      for (auto x : frame.defined_facts())
        {
          const auto& cs = frame.cases(x);
          for (std::uint32_t i = 0; i < cs.size(); ++i)
            {
              auto c = ids.id(x, i);
              for (auto y : cs[i])
                {
                  if (frame.is_defined(y))
                    ++missing[c];
                  else if (interp(y) != truth_value::t)
                    dead[c] = true;
                }
            }
        }
      for (auto x : frame.defined_facts())
        {
          const auto& cs = frame.cases(x);
          for (std::uint32_t i = 0; i < cs.size(); ++i)
            if (!dead[ids.id(x, i)] && missing[ids.id(x, i)] == 0)
              admit(x, i);
        }
      while (!queue.empty())
        {
          auto z = queue.front();
          queue.pop_front();
          for (const auto& occ : frame.occurrences(z))
            {
              auto c = ids.id(occ.head, occ.case_index);
              if (!dead[c] && --missing[c] == 0)
                admit(occ.head, occ.case_index);
            }
        }
    }

    // Greatest fixpoint: start from every defined fact, drop facts whose
    // cases have all died. A case dies on an f-valued open element or a
    // dropped defined element.
    {
      std::vector<bool> alive(ids.total, true);
      std::vector<std::uint32_t> alive_count(n, 0);
      std::deque<fact> queue;
      std::uint32_t rank = 0;
      auto drop = [&](fact z) {
        r.false_rank[z.code()] = rank++;
        queue.push_back(z);
      };
      for (auto x : frame.defined_facts())
        {
          const auto& cs = frame.cases(x);
          for (std::uint32_t i = 0; i < cs.size(); ++i)
            {
              auto c = ids.id(x, i);
              for (auto y : cs[i])
                if (!frame.is_defined(y) && interp(y) == truth_value::f)
                  {
                    alive[c] = false;
                    break;
                  }
              if (alive[c])
                ++alive_count[x.code()];
            }
        }
      for (auto x : frame.defined_facts())
        if (alive_count[x.code()] == 0)
          drop(x);
      while (!queue.empty())
        {
          auto z = queue.front();
          queue.pop_front();
          for (const auto& occ : frame.occurrences(z))
            {
              auto c = ids.id(occ.head, occ.case_index);
              if (!alive[c])
                continue;
              alive[c] = false;
              if (--alive_count[occ.head.code()] == 0)
                drop(occ.head);
            }
        }
      for (auto x : frame.defined_facts())
        {
          if (r.false_rank[x.code()] != kk_regions::none)
            continue;
          const auto& cs = frame.cases(x);
          for (std::uint32_t i = 0; i < cs.size(); ++i)
            if (alive[ids.id(x, i)])
              {
                r.nonfalse_case[x.code()] = i;
                break;
              }
        }
    }
    return r;
  }

  truth_value supported_value_kk(const justification_frame& frame, const interpretation& interp,
                                 fact x)
  {
    require_known(frame, x);
    if (!frame.is_defined(x))
      return interp(x);
    return kk_value(compute_kk_regions(frame, interp), x);
  }

  truth_value supported_value_brute(const justification_frame& frame,
                                    const interpretation& interp, fact x,
                                    const branch_evaluation& be, std::size_t cap)
  {
    require_known(frame, x);
    if (!frame.is_defined(x))
      return interp(x);
    auto best = truth_value::f;
    for_each_positional_justification(
      frame, x,
      [&](const positional_justification& j) {
        best = std::max(best, jval_graph(frame, j, interp, be));
        return best != truth_value::t;
      },
      cap);
    return best;
  }

  truth_value supported_value(const justification_frame& frame, const interpretation& interp,
                              fact x, const branch_evaluation& be)
  {
    switch (be.kind())
      {
      case evaluation_kind::supported:
        return supported_value_sp(frame, interp, x);
      case evaluation_kind::kripke_kleene:
        return supported_value_kk(frame, interp, x);
      case evaluation_kind::custom:
        break;
      }
    return supported_value_brute(frame, interp, x, be);
  }

  raw_valuation support_operator(const justification_frame& frame, const interpretation& interp,
                                 const branch_evaluation& be)
  {
    auto values = all_supported_values(frame, interp, be);
    raw_valuation out;
    for (auto x : frame.defined_facts())
      out.emplace(x, values[x.code()]);
    return out;
  }

  model_check is_model(const justification_frame& frame, const interpretation& interp,
                       const branch_evaluation& be)
  {
    model_check check;
    auto values = all_supported_values(frame, interp, be);
    for (auto x : frame.defined_facts())
      if (values[x.code()] != interp(x))
        check.violations.push_back({x, values[x.code()], interp(x)});
    check.is_model = check.violations.empty();
    return check;
  }

  std::vector<interpretation> enumerate_models(const justification_frame& frame,
                                               const branch_evaluation& be,
                                               std::size_t max_atoms)
  {
    auto atoms = frame.atoms().size();
    if (atoms > max_atoms)
      throw capacity_error("model enumeration over " + std::to_string(atoms) +
                           " atoms exceeds the cap of " + std::to_string(max_atoms));
    std::vector<interpretation> models;
    for_each_interpretation(atoms, [&](const interpretation& interp) {
      if (is_model(frame, interp, be).is_model)
        models.push_back(interp);
    });
    return models;
  }

  consistency_report consistency_sweep(const justification_frame& frame,
                                       const branch_evaluation& be, const sweep_options& options)
  {
    consistency_report report;
    report.evaluation = std::string(be.name());
    const auto atoms = frame.atoms().size();

    std::uint64_t total = 1;
    bool fits = true;
    for (std::size_t i = 0; i < atoms && fits; ++i)
      {
        total *= 3;
        fits = total <= options.max_exhaustive;
      }
    report.exhaustive = fits && !options.force_sampling;

    auto check = [&](const interpretation& interp) {
      ++report.interpretations_checked;
      auto values = all_supported_values(frame, interp, be);
      for (auto x : frame.defined_facts())
        {
          auto sv = values[x.code()];
          auto svc = values[(~x).code()];
          if (svc != negate(sv))
            report.violations.push_back({x, interp, sv, svc});
          if (sv > negate(svc))
            report.inequality_violations.push_back({x, interp, sv, svc});
        }
    };

    if (report.exhaustive)
      for_each_interpretation(atoms, check);
    else
      {
        report.seed = options.seed;
        random_source rng(options.seed);
        std::vector<truth_value> values(atoms);
        for (std::size_t s = 0; s < options.samples; ++s)
          {
            for (auto& v : values)
              v = static_cast<truth_value>(rng.below(3));
            check(interpretation(values));
          }
      }
    return report;
  }
}
