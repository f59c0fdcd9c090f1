#include "covarr/lll_builder.hpp"

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include "covarr/constructions.hpp"
#include "covarr/rng.hpp"

namespace covarr {

namespace {

using Big50 = boost::multiprecision::cpp_bin_float_50;

bool lll_certificate(const ExactFraction& p_bound, const BigInt& d_bound) {
  Big50 lhs = boost::multiprecision::exp(Big50(1)) * (Big50(p_bound.num()) / Big50(p_bound.den())) *
              Big50(d_bound + 1);
  return lhs <= 1;
}

// One assignment cell: copy ell, column j, redraw counter n. The counter
// scheme makes draws independent of evaluation order and thread count.
uint32_t draw_assignment(uint64_t seed, uint64_t ell, uint64_t j, uint64_t n, uint64_t base_cols) {
  return static_cast<uint32_t>(Rng(Rng::derive(seed, ell, j, n)).below(base_cols));
}

ArrayMatrix concatenate_copies(const ArrayMatrix& base,
                               const std::vector<std::vector<uint32_t>>& assignments) {
  const uint32_t per_copy = base.rows();
  const uint32_t k = static_cast<uint32_t>(assignments.front().size());
  ArrayMatrix out(per_copy * static_cast<uint32_t>(assignments.size()), k, base.alphabet());
  for (uint32_t ell = 0; ell < assignments.size(); ++ell)
    for (uint32_t r = 0; r < per_copy; ++r)
      for (uint32_t j = 0; j < k; ++j)
        out.set(ell * per_copy + r, j, base.at(r, assignments[ell][j]));
  return out;
}

}  // namespace

uint64_t required_copies(uint32_t t, uint64_t k, uint64_t v) {
  return copies_for_covering(t, k, v);
}

BuilderPlan plan_with_copies(uint32_t t, uint64_t k, uint64_t v, uint64_t r) {
  if (t < 2) fail(Errc::bad_argument, "strength must be >= 2");
  if (k < t) fail(Errc::k_less_than_t, "need k >= t");
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  BuilderPlan plan;
  plan.t = t;
  plan.k = k;
  plan.v = v;
  plan.q = next_prime_power(v);
  plan.r = r;
  uint64_t qt = 0;
  if (!pow_u64(plan.q, t, qt)) fail(Errc::order_too_large, "q^t overflows");
  plan.n_total = r * qt;
  ExactFraction one_minus_c = ExactFraction(BigInt(1)) - c_tv(t, plan.q);
  plan.p_bound = one_minus_c.pow(r);
  plan.d_bound = BigInt(t) * binomial(k, t - 1) - 1;
  plan.lll_ok = lll_certificate(plan.p_bound, plan.d_bound);
  return plan;
}

BuilderPlan make_plan(uint32_t t, uint64_t k, uint64_t v) {
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  uint64_t q = next_prime_power(v);
  return plan_with_copies(t, k, v, required_copies(t, k, q));
}

namespace {

FieldSpec field_for(uint64_t q) {
  uint64_t p = 0;
  uint32_t m = 0;
  if (!is_prime_power(q, &p, &m)) fail(Errc::not_prime_power, "not a prime power");
  return FieldSpec::make(p, m);
}

struct BuildContext {
  ArrayMatrix base;
  BuilderPlan plan;
  uint64_t r_total = 0;
  uint64_t k = 0;
};

BuildContext prepare(uint32_t t, uint64_t k, const FieldSpec& field, const BuilderConfig& config) {
  if (t < 2) fail(Errc::bad_argument, "strength must be >= 2");
  if (k < t) fail(Errc::k_less_than_t, "need k >= t");
  BuildContext ctx{build_a_opt(field, t), make_plan(t, k, field.q()), 0, k};
  ctx.r_total = ctx.plan.r + config.extra_copies;
  return ctx;
}

CoverageOptions verify_options(const BuilderConfig& config) {
  CoverageOptions opt;
  opt.threads = config.threads;
  return opt;
}

}  // namespace

BuildOutcome build_covering(uint32_t t, uint64_t k, const FieldSpec& field,
                            const BuilderConfig& config) {
  BuildContext ctx = prepare(t, k, field, config);
  const uint64_t K = ctx.base.cols();
  CoverageOptions vopt = verify_options(config);

  std::vector<std::vector<uint32_t>> assignments(
      ctx.r_total, std::vector<uint32_t>(static_cast<size_t>(k), 0));

  if (config.strategy == BuildStrategy::restart) {
    if (config.max_attempts < 1) fail(Errc::bad_argument, "max_attempts must be >= 1");
    for (uint32_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
      const uint64_t n = attempt - 1;  // redraw counter shared by all cells
      for (uint64_t ell = 0; ell < ctx.r_total; ++ell)
        for (uint64_t j = 0; j < k; ++j)
          assignments[ell][j] = draw_assignment(config.seed, ell, j, n, K);
      ArrayMatrix candidate = concatenate_copies(ctx.base, assignments);
      if (verify_covering(candidate, t, vopt).covering)
        return {std::move(candidate), ctx.plan, attempt, 0, true};
    }
    fail(Errc::gave_up, "no covering array after " + std::to_string(config.max_attempts) +
                            " attempts; consider extra_copies");
  }

  // resample: redraw only the assignments feeding one violated t-set.
  std::vector<std::vector<uint64_t>> counters(ctx.r_total,
                                              std::vector<uint64_t>(static_cast<size_t>(k), 0));
  for (uint64_t ell = 0; ell < ctx.r_total; ++ell)
    for (uint64_t j = 0; j < k; ++j)
      assignments[ell][j] = draw_assignment(config.seed, ell, j, 0, K);
  uint64_t resamples = 0;
  for (;;) {
    ArrayMatrix candidate = concatenate_copies(ctx.base, assignments);
    VerifyResult res = verify_covering(candidate, t, vopt);
    if (res.covering) return {std::move(candidate), ctx.plan, 1, resamples, true};
    if (resamples >= config.max_resamples)
      fail(Errc::gave_up, "resample limit " + std::to_string(config.max_resamples) +
                              " reached; consider extra_copies");
    ++resamples;
    for (uint64_t ell = 0; ell < ctx.r_total; ++ell)
      for (uint32_t j : res.witness->indices)
        assignments[ell][j] = draw_assignment(config.seed, ell, j, ++counters[ell][j], K);
  }
}

BuildOutcome build_covering_any_v(uint32_t t, uint64_t k, uint64_t v,
                                  const BuilderConfig& config) {
  if (v < 2) fail(Errc::bad_argument, "alphabet size must be >= 2");
  uint64_t q = next_prime_power(v);
  FieldSpec field = field_for(q);
  BuildOutcome outcome = build_covering(t, k, field, config);
  outcome.plan.v = v;
  if (q == v) return outcome;
  outcome.array = project_alphabet(outcome.array, static_cast<uint32_t>(v));
  outcome.verified = verify_covering(outcome.array, t, verify_options(config)).covering;
  return outcome;
}

uint64_t required_copies_almost(uint64_t q, double epsilon) {
  return copies_for_almost(q, epsilon);
}

BuildOutcome build_almost(uint32_t t, uint64_t k, const FieldSpec& field, double epsilon,
                          const BuilderConfig& config) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    fail(Errc::bad_epsilon, "epsilon must lie in (0, 1]; use build_covering for full coverage");
  if (t < 2) fail(Errc::bad_argument, "strength must be >= 2");
  if (k < t) fail(Errc::k_less_than_t, "need k >= t");

  ArrayMatrix base = build_a_opt(field, t);
  const uint64_t K = base.cols();
  uint64_t r = required_copies_almost(field.q(), epsilon) + config.extra_copies;
  BuilderPlan plan = plan_with_copies(t, k, field.q(), r);
  CoverageOptions vopt = verify_options(config);

  // The epsilon certificate is exact: uncovered/total <= epsilon decided in
  // integer arithmetic with epsilon's exact dyadic value.
  ExactFraction eps = ExactFraction::from_double_exact(epsilon);

  std::vector<std::vector<uint32_t>> assignments(r, std::vector<uint32_t>(static_cast<size_t>(k), 0));
  if (config.max_attempts < 1) fail(Errc::bad_argument, "max_attempts must be >= 1");
  for (uint32_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
    const uint64_t n = attempt - 1;
    for (uint64_t ell = 0; ell < r; ++ell)
      for (uint64_t j = 0; j < k; ++j)
        assignments[ell][j] = draw_assignment(config.seed, ell, j, n, K);
    ArrayMatrix candidate = concatenate_copies(base, assignments);
    CoverageReport report = coverage_report(candidate, t, vopt);
    BigInt uncovered = report.total - report.covered;
    if (ExactFraction(uncovered, report.total) <= eps)
      return {std::move(candidate), plan, attempt, 0, true};
  }
  fail(Errc::gave_up, "epsilon target not met after " + std::to_string(config.max_attempts) +
                          " attempts");
}

nlohmann::json build_report_json(const BuildOutcome& outcome, const BuilderConfig& config) {
  nlohmann::json j;
  j["t"] = outcome.plan.t;
  j["k"] = outcome.plan.k;
  j["v"] = outcome.plan.v;
  j["q"] = outcome.plan.q;
  j["copies"] = outcome.plan.r;
  j["extra_copies"] = config.extra_copies;
  j["n_total"] = outcome.plan.n_total;
  j["n"] = outcome.array.rows();
  j["p_bound"] = {{"num", outcome.plan.p_bound.num().str()},
                  {"den", outcome.plan.p_bound.den().str()},
                  {"decimal", outcome.plan.p_bound.to_double()}};
  j["d_bound"] = outcome.plan.d_bound.str();
  j["lll_ok"] = outcome.plan.lll_ok;
  j["strategy"] = config.strategy == BuildStrategy::restart ? "restart" : "resample";
  j["seed"] = config.seed;
  j["attempts"] = outcome.attempts;
  j["resamples"] = outcome.resamples;
  j["verified"] = outcome.verified;
  return j;
}

}  // namespace covarr
