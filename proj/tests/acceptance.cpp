// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Runs the library directly plus the CLI for the
// reproducibility criterion.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "covarr/array.hpp"
#include "covarr/array_io.hpp"
#include "covarr/bounds.hpp"
#include "covarr/constructions.hpp"
#include "covarr/field.hpp"
#include "covarr/lagrangian.hpp"
#include "covarr/lll_builder.hpp"
#include "covarr/rng.hpp"

using namespace covarr;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename Fn>
void run_criterion(int id, const std::string& name, Fn&& fn) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  criterion(id, name, ok, detail.str());
}

FieldSpec field_of(uint64_t q) {
  uint64_t p = 0;
  uint32_t m = 0;
  is_prime_power(q, &p, &m);
  return FieldSpec::make(p, m);
}

// ---- 1: coverage of the optimal array equals c * k^t / t! exactly ---------
bool crit_optimal_equality(std::ostringstream& detail) {
  const std::vector<std::pair<uint64_t, uint32_t>> cases{
      {2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {2, 4}};
  bool ok = true;
  for (auto [q, t] : cases) {
    FieldSpec f = field_of(q);
    ArrayMatrix a = build_a_opt(f, t);
    uint64_t brute = coverage_report(a, t).covered;
    BigInt closed = cov_a_opt_exact(f, t);
    BigInt k_pow = bigpow(a.cols(), t);
    ExactFraction formula = c_tv(t, q) * ExactFraction(k_pow, factorial(t));
    bool match = BigInt(brute) == closed && formula.is_integer() && formula.num() == closed;
    ok &= match;
    detail << "(" << q << "," << t << ")=" << brute << (match ? " " : "! ");
  }
  return ok;
}

// ---- 2: exhaustive maximum over all 4x3 and 4x4 binary arrays -------------
bool crit_exhaustive_max(std::ostringstream& detail) {
  uint64_t max3 = 0;
  for (uint32_t mask = 0; mask < (1u << 12); ++mask) {
    std::vector<uint32_t> data(12);
    for (uint32_t b = 0; b < 12; ++b) data[b] = (mask >> b) & 1;
    ArrayMatrix a(4, 3, 2, std::move(data));
    max3 = std::max(max3, coverage_report(a, 2).covered);
  }
  uint64_t max4 = 0;
  for (uint32_t mask = 0; mask < (1u << 16); ++mask) {
    std::vector<uint32_t> data(16);
    for (uint32_t b = 0; b < 16; ++b) data[b] = (mask >> b) & 1;
    ArrayMatrix a(4, 4, 2, std::move(data));
    max4 = std::max(max4, coverage_report(a, 2).covered);
  }
  detail << "max(4x3)=" << max3 << " max(4x4)=" << max4;
  return max3 == 3 && max4 >= 4 && max4 <= 5;
}

// ---- 3: balanced blow-up equality ------------------------------------------
bool crit_blowup_equality(std::ostringstream& detail) {
  ArrayMatrix base22 = build_a_opt(field_of(2), 2);
  bool ok = true;
  for (uint32_t k : {6u, 9u, 12u}) {
    uint64_t covered = coverage_report(blow_up(base22, k, BlowupMode::balanced).array, 2).covered;
    uint64_t expected = 2 * k * k / (3 * 2);  // (2/3) k^2 / 2!
    ok &= covered == expected;
    detail << "k=" << k << ":" << covered << (covered == expected ? " " : "!=expected ");
  }
  ArrayMatrix base23 = build_a_opt(field_of(2), 3);
  uint64_t covered14 = coverage_report(blow_up(base23, 14, BlowupMode::balanced).array, 3).covered;
  detail << "k=14:" << covered14;
  return ok && covered14 == 224;
}

// ---- 4: random blow-up expectation -----------------------------------------
bool crit_random_blowup_mean(std::ostringstream& detail) {
  ArrayMatrix base = build_a_opt(field_of(2), 2);
  const int seeds = 200;
  double sum = 0;
  for (int s = 0; s < seeds; ++s)
    sum += coverage_report(blow_up(base, 30, BlowupMode::random, s).array, 2).ratio;
  double mean = sum / seeds;
  detail << "mean=" << mean;
  return std::abs(mean - 2.0 / 3.0) <= 0.02;
}

// ---- 5: certified covering-array builder -----------------------------------
bool crit_builder(std::ostringstream& detail) {
  struct Case {
    uint32_t t;
    uint64_t k;
    uint64_t q;
  };
  bool ok = true;
  for (Case c : {Case{2, 10, 2}, Case{2, 20, 3}, Case{3, 8, 2}}) {
    BuilderConfig config;
    config.seed = 1;
    BuildOutcome out = build_covering(c.t, c.k, field_of(c.q), config);
    uint64_t qt = 1;
    for (uint32_t i = 0; i < c.t; ++i) qt *= c.q;
    uint64_t expected_rows = required_copies(c.t, c.k, c.q) * qt;
    bool match = out.verified && out.array.rows() == expected_rows && out.plan.lll_ok &&
                 verify_covering(out.array, c.t).covering;
    ok &= match;
    detail << "(" << c.t << "," << c.k << "," << c.q << ")N=" << out.array.rows()
           << (match ? " " : "! ");
  }
  return ok;
}

// ---- 6: random-array coverage probability ----------------------------------
bool crit_random_probability(std::ostringstream& detail) {
  const int trials = 100000;
  int hits = 0;
  for (int s = 0; s < trials; ++s)
    if (covers(build_random(2, 4, 2, s), {{0, 1}})) ++hits;
  double p = static_cast<double>(hits) / trials;
  detail << "p=" << p;
  return std::abs(p - 0.09375) <= 0.005;
}

// ---- 7: Lagrangian laboratory ----------------------------------------------
bool crit_lagrangian(std::ostringstream& detail) {
  LagrangianInstance h22 = build_h(2, 2);
  bool ok = h22.n_vertices == 16 && h22.edges.size() == 12;
  detail << "V=" << h22.n_vertices << " E=" << h22.edges.size();

  std::vector<uint32_t> c1{0, 0, 1, 1}, c2{0, 1, 0, 1}, c3{0, 1, 1, 0};
  std::vector<double> x(h22.n_vertices, 0.0);
  x[h22.vertex_index(c1)] = x[h22.vertex_index(c2)] = x[h22.vertex_index(c3)] = 1.0 / 3.0;
  double w = weight_poly(h22, x);
  ok &= std::abs(w - 1.0 / 3.0) < 1e-15;
  detail << " w=" << w;

  OptimizeResult best = optimize_lagrangian(h22, 100, 300, 2024);
  ok &= std::abs(best.value - 1.0 / 3.0) <= 1e-6;
  ok &= best.value <= 1.0 / 3.0 + 1e-9;
  detail << " opt=" << best.value;

  // analytic gradient vs central differences, 100 random legal weightings
  bool grad_ok = true;
  const double step = 0x1.0p-13;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::vector<double> y(h22.n_vertices);
    double sum = 0;
    for (double& yi : y) {
      yi = -std::log(1.0 - rng.unit());
      sum += yi;
    }
    for (double& yi : y) yi /= sum;
    std::vector<double> grad = weight_gradient(h22, y);
    for (uint64_t u = 0; u < h22.n_vertices; ++u) {
      std::vector<double> hi = y, lo = y;
      hi[u] += step;
      lo[u] -= step;
      double fd = (weight_poly_at(h22, hi) - weight_poly_at(h22, lo)) / (2 * step);
      if (std::abs(fd - grad[u]) > 1e-6 * std::max(1.0, std::abs(grad[u]))) grad_ok = false;
    }
  }
  ok &= grad_ok;
  detail << " grad=" << (grad_ok ? "ok" : "bad");

  LagrangianInstance h32 = build_h(3, 2);
  OptimizeResult best32 = optimize_lagrangian(h32, 30, 250, 7);
  ok &= best32.value <= 24.0 / 294.0 + 1e-6;
  detail << " opt32=" << best32.value;
  return ok;
}

// ---- 8: block maxima ---------------------------------------------------------
bool crit_maxima(std::ostringstream& detail) {
  bool ok = true;
  for (uint32_t t = 2; t <= 4; ++t) {
    for (uint32_t K = t; K <= 8; ++K) {
      double closed = maxima_closed_form(K, t);
      double brute = maxima_bruteforce(K, t, 16);
      if (std::abs(closed - brute) > 1e-6) {
        ok = false;
        detail << "(K=" << K << ",t=" << t << ") ";
      }
    }
  }
  if (ok) detail << "all (K,t) grids within 1e-6";
  return ok;
}

// ---- 9: orthogonal-array structure ------------------------------------------
bool crit_oa_structure(std::ostringstream& detail) {
  bool ok = true;
  const std::vector<std::pair<uint64_t, uint32_t>> lambda_cases{{2, 3}, {2, 4}, {3, 3}};
  for (auto [q, t] : lambda_cases) {
    OaCheckResult oa = verify_oa(build_a_opt(field_of(q), t), 2);
    uint64_t expected = 1;
    for (uint32_t i = 0; i + 2 < t; ++i) expected *= q;
    bool match = oa.is_oa && oa.lambda == expected;
    ok &= match;
    detail << "(" << q << "," << t << ")l=" << oa.lambda << (match ? " " : "! ");
  }
  // every covered t-set restricts to an index-1 orthogonal array
  const std::vector<std::pair<uint64_t, uint32_t>> cases{
      {2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {2, 4}};
  for (auto [q, t] : cases) {
    FieldSpec f = field_of(q);
    ArrayMatrix a = build_a_opt(f, t);
    std::vector<uint32_t> combo(t);
    for (uint32_t i = 0; i < t; ++i) combo[i] = i;
    for (;;) {
      ColumnSet qset{combo};
      if (covers(a, qset)) {
        ArrayMatrix sub(a.rows(), t, a.alphabet());
        for (uint32_t r = 0; r < a.rows(); ++r)
          for (uint32_t i = 0; i < t; ++i) sub.set(r, i, a.at(r, combo[i]));
        OaCheckResult oa = verify_oa(sub, t);
        if (!oa.is_oa || oa.lambda != 1) {
          ok = false;
          detail << "bad OA at q=" << q << " t=" << t << " ";
        }
      }
      int pos = static_cast<int>(t) - 1;
      while (pos >= 0 && combo[pos] == a.cols() - t + static_cast<uint32_t>(pos)) --pos;
      if (pos < 0) break;
      ++combo[pos];
      for (uint32_t j = pos + 1; j < t; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return ok;
}

// ---- 10: bounds module -------------------------------------------------------
bool crit_bounds(std::ostringstream& detail) {
  bool ok = exact_can_strength2_binary(3) == 4 && exact_can_strength2_binary(4) == 5 &&
            exact_can_strength2_binary(10) == 6;
  detail << "katona(3,4,10)=(" << exact_can_strength2_binary(3) << ","
         << exact_can_strength2_binary(4) << "," << exact_can_strength2_binary(10) << ")";
  for (uint64_t v = 2; v <= 64 && ok; ++v) {
    ExactFraction floor_bound =
        ExactFraction(BigInt(1)) -
        ExactFraction(BigInt(v + 1), BigInt(v) * BigInt(v));
    for (uint32_t t = 2; t <= 8; ++t)
      if (!(c_tv(t, v) >= floor_bound)) {
        ok = false;
        detail << " c floor fails at (" << t << "," << v << ")";
      }
  }
  for (uint32_t t : {3, 4, 5}) {
    for (uint64_t v : {4, 5, 7, 8, 9}) {
      BoundsTable table = d_bound_table(t, v);
      if (!table.d_new || !(*table.d_new < table.d_gss)) {
        ok = false;
        detail << " d_new !< d_gss at (" << t << "," << v << ")";
      }
    }
  }
  if (ok) detail << ", c-floor grid ok, d_new < d_gss grid ok";
  return ok;
}

// ---- 11: almost-covering builder ---------------------------------------------
bool crit_almost(std::ostringstream& detail) {
  BuilderConfig config;
  config.seed = 3;
  FieldSpec f2 = field_of(2);
  BuildOutcome loose = build_almost(2, 12, f2, 0.75, config);
  BuildOutcome tight = build_almost(2, 12, f2, 0.5, config);
  detail << "eps=3/4 N=" << loose.array.rows() << " eps=1/2 N=" << tight.array.rows();
  CoverageReport lr = coverage_report(loose.array, 2);
  CoverageReport tr = coverage_report(tight.array, 2);
  bool eps_ok = (lr.total - BigInt(lr.covered)) * 4 <= 3 * lr.total &&
                (tr.total - BigInt(tr.covered)) * 2 <= tr.total;
  return loose.verified && loose.array.rows() == 4 && tight.verified &&
         tight.array.rows() == 12 && eps_ok;
}

// ---- 12: general alphabets via projection --------------------------------------
bool crit_any_v(std::ostringstream& detail) {
  BuilderConfig config;
  config.seed = 5;
  BuildOutcome out = build_covering_any_v(2, 8, 6, config);
  detail << "N=" << out.array.rows() << " v=" << out.array.alphabet() << " q=" << out.plan.q;
  return out.verified && out.array.alphabet() == 6 && out.plan.q == 7 &&
         verify_covering(out.array, 2).covering;
}

// ---- 13: byte reproducibility ---------------------------------------------------
std::string run_and_capture(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool crit_reproducible(std::ostringstream& detail) {
  bool ok = true;

  // library level: builder and coverage across thread counts and runs
  for (uint32_t threads : {1u, 4u}) {
    BuilderConfig config;
    config.seed = 9;
    config.threads = threads;
    BuildOutcome a = build_covering(2, 12, field_of(2), config);
    BuildOutcome b = build_covering(2, 12, field_of(2), config);
    ok &= to_ca_text(a.array) == to_ca_text(b.array) && a.attempts == b.attempts;
  }
  BuilderConfig one, four;
  one.seed = four.seed = 9;
  one.threads = 1;
  four.threads = 4;
  ok &= to_ca_text(build_covering(2, 12, field_of(2), one).array) ==
        to_ca_text(build_covering(2, 12, field_of(2), four).array);

  ArrayMatrix sampled_target = build_random(2, 6, 40, 4);
  CoverageOptions co1, co4;
  co1.threads = 1;
  co4.threads = 4;
  CoverageReport s1 = coverage_sampled(sampled_target, 2, 20000, 5, co1);
  CoverageReport s4 = coverage_sampled(sampled_target, 2, 20000, 5, co4);
  ok &= s1.covered == s4.covered && s1.uncovered == s4.uncovered;
  detail << "library=" << (ok ? "ok" : "bad");

  // CLI level: byte-identical stdout and array files across runs and threads
  const std::string cli = COVARR_CLI_PATH;
  const std::string out1 = "/tmp/covarr_acc_1.ca";
  const std::string out2 = "/tmp/covarr_acc_2.ca";
  std::string report1 = run_and_capture(cli + " build --t 2 --k 10 --v 2 --seed 7 --threads 1 -o " +
                                        out1 + " --json");
  std::string report2 = run_and_capture(cli + " build --t 2 --k 10 --v 2 --seed 7 --threads 4 -o " +
                                        out2 + " --json");
  bool cli_ok = !report1.empty() && report1 == report2 && slurp(out1) == slurp(out2);
  std::string again = run_and_capture(cli + " build --t 2 --k 10 --v 2 --seed 7 --threads 1 -o " +
                                      out1 + " --json");
  cli_ok &= again == report1;
  ok &= cli_ok;
  detail << " cli=" << (cli_ok ? "ok" : "bad");
  return ok;
}

}  // namespace

int main() {
  run_criterion(1, "optimal array coverage equals the closed form", crit_optimal_equality);
  run_criterion(2, "exhaustive 4x3 / 4x4 coverage maxima", crit_exhaustive_max);
  run_criterion(3, "balanced blow-up coverage equality", crit_blowup_equality);
  run_criterion(4, "random blow-up mean coverage", crit_random_blowup_mean);
  run_criterion(5, "certified builder sizes and verification", crit_builder);
  run_criterion(6, "random 4x2 coverage probability", crit_random_probability);
  run_criterion(7, "Lagrangian lab values, optimizer, gradients", crit_lagrangian);
  run_criterion(8, "simplex block maxima closed form", crit_maxima);
  run_criterion(9, "orthogonal-array structure of optimal arrays", crit_oa_structure);
  run_criterion(10, "bound formulas and grids", crit_bounds);
  run_criterion(11, "almost-covering builder certificates", crit_almost);
  run_criterion(12, "general alphabet via next prime power", crit_any_v);
  run_criterion(13, "byte reproducibility across runs and threads", crit_reproducible);

  if (failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", failures);
  return 1;
}
