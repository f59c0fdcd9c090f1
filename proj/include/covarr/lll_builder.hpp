#pragma once

#include <cstdint>

#include "covarr/array.hpp"
#include "covarr/bounds.hpp"
#include "covarr/field.hpp"

#include <nlohmann/json_fwd.hpp>

namespace covarr {

/// Certificate data for the concatenation builder: r independent random
/// blow-up copies of the q^t-row optimal array, each t-set escaping coverage
/// with probability p_bound = (1 - c_{t,q})^r, each bad event depending on at
/// most d_bound = t*C(k,t-1) - 1 others. lll_ok records e*p*(d+1) <= 1.
struct BuilderPlan {
  uint32_t t = 0;
  uint64_t k = 0;
  uint64_t v = 0;  // target alphabet
  uint64_t q = 0;  // prime power actually used, q >= v
  uint64_t r = 0;  // copies
  uint64_t n_total = 0;  // r * q^t
  ExactFraction p_bound;
  BigInt d_bound;
  bool lll_ok = false;
};

enum class BuildStrategy { restart, resample };

struct BuilderConfig {
  uint64_t seed = 0;
  BuildStrategy strategy = BuildStrategy::restart;
  uint32_t max_attempts = 64;
  uint64_t max_resamples = 1'000'000;
  uint32_t extra_copies = 0;
  uint32_t threads = 1;
};

struct BuildOutcome {
  ArrayMatrix array;
  BuilderPlan plan;
  uint64_t attempts = 0;
  uint64_t resamples = 0;
  bool verified = false;
};

/// ceil(((t-1) lg k + lg(e t)) / lg(1/(1 - c_{t,v}))); prime powers only.
uint64_t required_copies(uint32_t t, uint64_t k, uint64_t v);

/// Plan for target alphabet v (any v >= 2; non-prime-powers go through the
/// next prime power q).
BuilderPlan make_plan(uint32_t t, uint64_t k, uint64_t v);

/// Same plan with the copy count overridden, for certificate inspection.
BuilderPlan plan_with_copies(uint32_t t, uint64_t k, uint64_t v, uint64_t r);

/// Concatenates r (+ extra) independent random blow-ups of the optimal array
/// over the given field to k columns, then verifies. restart redraws
/// everything on failure; resample redraws only the assignments feeding the
/// lexicographically first uncovered t-set. Throws Errc::gave_up when the
/// configured limits are exhausted.
BuildOutcome build_covering(uint32_t t, uint64_t k, const FieldSpec& field,
                            const BuilderConfig& config);

/// Covering array over any alphabet v >= 2: prime powers delegate directly,
/// other alphabets build over q = next_prime_power(v) and project down.
/// The outcome is verified at alphabet v.
BuildOutcome build_covering_any_v(uint32_t t, uint64_t k, uint64_t v, const BuilderConfig& config);

/// Least r >= 1 with ((q+1)/q^2)^r <= epsilon, decided exactly.
uint64_t required_copies_almost(uint64_t q, double epsilon);

/// Almost-covering builder: required_copies_almost copies, restarted until
/// the exact coverage report certifies an uncovered fraction <= epsilon.
BuildOutcome build_almost(uint32_t t, uint64_t k, const FieldSpec& field, double epsilon,
                          const BuilderConfig& config);

/// Canonical JSON build report (no timing: output is byte-reproducible).
nlohmann::json build_report_json(const BuildOutcome& outcome, const BuilderConfig& config);

}  // namespace covarr
