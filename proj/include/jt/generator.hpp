#pragma once

#include <jt/solver.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace jt
{
  enum class interpretation_mode
  {
    /// Exhaustive when 3^atoms <= max_exhaustive, else sample_count samples.
    exhaustive,
    /// Always sample_count samples.
    sampled,
  };

  struct fuzz_config
  {
    std::uint64_t seed = 1;
    std::size_t frame_count = 1000;
    std::size_t max_defined_atoms = 6;
    std::size_t max_open_atoms = 2;
    std::size_t max_cases_per_head = 3;
    std::size_t max_body_size = 3;
    std::vector<std::string> evaluations{"sp", "kk"};
    interpretation_mode mode = interpretation_mode::exhaustive;
    std::size_t sample_count = 50;
    std::uint64_t max_exhaustive = 6561;
    /// Also sweep frames the complementarity checker rejects.
    bool allow_noncomplementary = false;
    /// Append the frame {x <- t; ~x <- t} as an extra regression case.
    bool inject_regression = false;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// Violations kept per list in the report (all are counted).
    std::size_t max_reported = 100;

    /// Throws jt::error on non-positive bounds or an empty evaluation list.
    void validate() const;
  };

  struct generated_frame
  {
    justification_frame frame;
    /// The one-signed program the frame was complemented from.
    std::vector<rule> base_rules;
    bool complementary = false;
    std::size_t attempts = 0;
  };

  /// Deterministic in (cfg.seed, index): a random one-signed program over
  /// fresh atoms, complemented, validated and checked for complementarity.
  generated_frame generate_random_frame(const fuzz_config& cfg, std::size_t index);

  /// The frame {x <- t; ~x <- t}.
  justification_frame contradictory_frame();

  struct fuzz_violation
  {
    std::size_t frame_index;
    std::string frame_text;
    std::string evaluation;
    std::optional<std::uint64_t> seed;
    consistency_violation violation;
    vocabulary atoms;
  };

  struct fuzz_report
  {
    std::uint64_t seed = 0;
    std::size_t frames_tested = 0;
    std::size_t complementarity_failures = 0;
    std::size_t interpretations_checked = 0;
    std::size_t violation_count = 0;
    std::size_t inequality_violation_count = 0;
    std::size_t noncomplementary_violation_count = 0;
    /// Equality violations on complementary frames.
    std::vector<fuzz_violation> violations;
    /// Inequality violations on complementary frames.
    std::vector<fuzz_violation> inequality_violations;
    /// Violations on frames the checker rejected (permissive mode only).
    std::vector<fuzz_violation> noncomplementary_violations;
    double elapsed_seconds = 0;

    bool theorem_holds() const { return violation_count == 0 && inequality_violation_count == 0; }
  };

  fuzz_report fuzz_consistency(const fuzz_config& cfg);

  /// Report JSON without timing, so equal inputs give equal bytes.
  std::string fuzz_report_json(const fuzz_report& report);
}
