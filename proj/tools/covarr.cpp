// covarr: construct, verify, and bound covering arrays from the command line.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "covarr/array.hpp"
#include "covarr/array_io.hpp"
#include "covarr/bounds.hpp"
#include "covarr/constructions.hpp"
#include "covarr/field.hpp"
#include "covarr/lagrangian.hpp"
#include "covarr/lll_builder.hpp"

namespace {

using nlohmann::json;
using namespace covarr;

FieldSpec field_from_order(uint64_t q) {
  uint64_t p = 0;
  uint32_t m = 0;
  if (!is_prime_power(q, &p, &m))
    fail(Errc::not_prime_power, std::to_string(q) + " is not a prime power");
  return FieldSpec::make(p, m);
}

void emit_array(const ArrayMatrix& a, const std::string& out_path) {
  if (out_path.empty())
    write_array(a, std::cout);
  else
    write_array_file(a, out_path);
}

json fraction_json(const ExactFraction& f) {
  return {{"num", f.num().str()}, {"den", f.den().str()}, {"decimal", f.to_double()}};
}

json leading_term(double value) { return {{"value", value}, {"kind", "leading_term"}}; }

json bigint_json(const BigInt& n) {
  if (n >= 0 && n <= BigInt(~uint64_t{0})) return n.convert_to<uint64_t>();
  return n.str();
}

json emit_bounds(uint32_t t, uint64_t k, uint64_t v, std::optional<double> epsilon) {
  json j;
  j["t"] = t;
  j["k"] = k;
  j["v"] = v;
  bool pp = is_prime_power(v);
  j["prime_power"] = pp;
  j["c"] = fraction_json(c_tv(t, v));

  CovmaxBounds cm = covmax_bounds(t, k, v);
  json cov;
  cov["upper"] = fraction_json(cm.upper);
  if (cm.lower) cov["lower"] = fraction_json(*cm.lower);
  j["covmax"] = cov;

  if (pp) {
    j["copies"] = copies_for_covering(t, k, v);
    j["can_new"] = bigint_json(can_upper_new(t, k, v));
  } else {
    j["next_prime_power"] = next_prime_power(v);
  }
  j["can_gss"] = leading_term(can_upper_gss(t, k, v));
  if (t == 2 && v == 2) j["can_exact_katona"] = exact_can_strength2_binary(k);

  BoundsTable table = d_bound_table(t, v);
  json d;
  d["gss"] = leading_term(table.d_gss);
  d["fs"] = leading_term(table.d_fs);
  if (table.d_sc) {
    d["sc"] = leading_term(*table.d_sc);
    d["sc"]["log_base"] = 2;
  }
  if (table.d_new) d["new"] = leading_term(*table.d_new);
  if (table.d_new_simplified) d["new_simplified"] = leading_term(*table.d_new_simplified);
  if (table.d_new_large_v)
    d["new_large_v"] = {{"value", *table.d_new_large_v},
                        {"kind", "leading_term_large_v_unverified"}};
  if (table.d_exact_t2) d["exact_t2"] = *table.d_exact_t2;
  j["d"] = d;

  if (epsilon) {
    AcanBounds acan = acan_bounds(t, v, *epsilon);
    json a;
    a["epsilon"] = *epsilon;
    a["scdv"] = acan.scdv;
    if (acan.scdv_pp) a["scdv_pp"] = *acan.scdv_pp;
    if (acan.new_bound) a["new"] = bigint_json(*acan.new_bound);
    if (acan.copies) a["copies"] = *acan.copies;
    j["acan"] = a;
  }
  return j;
}

struct CliError {
  int code;
};

int run(int argc, char** argv) {
  CLI::App app{"covering array construction, verification, and bounds"};
  app.require_subcommand(1);

  // ---- construct ----------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "build an array and write it in CA format");
  construct->require_subcommand(1);
  std::string out_path;

  uint64_t q = 0;
  uint32_t t = 2;
  auto* aopt = construct->add_subcommand("a-opt", "optimal q^t-row array over GF(q)");
  aopt->add_option("--q", q, "field order (prime power)")->required();
  aopt->add_option("--t", t, "strength")->required();
  aopt->add_option("-o,--output", out_path, "output file (default stdout)");
  aopt->callback([&] { emit_array(build_a_opt(field_from_order(q), t), out_path); });

  uint32_t v32 = 2, k32 = 2, n32 = 1;
  auto* block = construct->add_subcommand("block", "v^t-row block-constant array");
  block->add_option("--v", v32, "alphabet size")->required();
  block->add_option("--t", t, "strength")->required();
  block->add_option("--k", k32, "columns")->required();
  block->add_option("-o,--output", out_path, "output file (default stdout)");
  block->callback([&] { emit_array(build_block(v32, t, k32), out_path); });

  uint64_t seed = 0;
  auto* random = construct->add_subcommand("random", "uniform random array");
  random->add_option("--v", v32, "alphabet size")->required();
  random->add_option("--n", n32, "rows")->required();
  random->add_option("--k", k32, "columns")->required();
  random->add_option("--seed", seed, "generator seed")->required();
  random->add_option("-o,--output", out_path, "output file (default stdout)");
  random->callback([&] { emit_array(build_random(v32, n32, k32, seed), out_path); });

  std::string input_path, mode_name = "balanced";
  bool seed_given = false;
  auto* blowup = construct->add_subcommand("blow-up", "copy base columns up to k columns");
  blowup->add_option("-i,--input", input_path, "base array file")->required();
  blowup->add_option("--k", k32, "target columns")->required();
  blowup->add_option("--mode", mode_name, "balanced|random")
      ->check(CLI::IsMember({"balanced", "random"}));
  auto* blowup_seed = blowup->add_option("--seed", seed, "generator seed (random mode)");
  blowup->add_option("-o,--output", out_path, "output file (default stdout)");
  blowup->callback([&] {
    seed_given = blowup_seed->count() > 0;
    BlowupMode mode = mode_name == "random" ? BlowupMode::random : BlowupMode::balanced;
    if (mode == BlowupMode::random && !seed_given)
      fail(Errc::bad_argument, "--seed is required for random blow-ups");
    ArrayMatrix base = read_array_file(input_path);
    emit_array(blow_up(base, k32, mode, seed).array, out_path);
  });

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "check full t-coverage; exit 1 when uncovered");
  std::string array_path;
  uint32_t threads = 1;
  bool as_json = false;
  verify->add_option("file", array_path, "array file")->required();
  verify->add_option("--t", t, "strength")->required();
  verify->add_option("--threads", threads, "worker threads (does not affect results)");
  verify->add_flag("--json", as_json, "machine-readable output");
  verify->callback([&] {
    ArrayMatrix a = read_array_file(array_path);
    CoverageOptions opt;
    opt.threads = threads;
    VerifyResult res = verify_covering(a, t, opt);
    if (as_json) {
      json j;
      j["covering"] = res.covering;
      j["t"] = t;
      if (res.witness)
        j["witness"] = res.witness->indices;
      else
        j["witness"] = nullptr;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "covering: " << (res.covering ? "true" : "false") << '\n';
      if (res.witness) {
        std::cout << "first uncovered:";
        for (uint32_t c : res.witness->indices) std::cout << ' ' << c;
        std::cout << '\n';
      }
    }
    if (!res.covering) throw CliError{1};
  });

  // ---- coverage -----------------------------------------------------------
  auto* coverage = app.add_subcommand("coverage", "count covered t-sets (exact or sampled)");
  uint64_t samples = 0;
  uint32_t witness_cap = 16;
  bool all_witnesses = false;
  coverage->add_option("file", array_path, "array file")->required();
  coverage->add_option("--t", t, "strength")->required();
  auto* samples_opt =
      coverage->add_option("--samples", samples, "sample count (sampled estimate)");
  auto* seed_opt = coverage->add_option("--seed", seed, "generator seed (sampled estimate)");
  coverage->add_option("--threads", threads, "worker threads (does not affect results)");
  coverage->add_option("--witness-cap", witness_cap, "max uncovered witnesses reported");
  coverage->add_flag("--all-witnesses", all_witnesses, "report every uncovered set");
  coverage->add_flag("--json", as_json, "machine-readable output");
  coverage->callback([&] {
    if (samples_opt->count() > 0 && seed_opt->count() == 0)
      fail(Errc::bad_argument, "--seed is required with --samples");
    ArrayMatrix a = read_array_file(array_path);
    CoverageOptions opt;
    opt.threads = threads;
    opt.witness_cap = witness_cap;
    opt.collect_all_witnesses = all_witnesses;
    CoverageReport report = samples_opt->count() > 0
                                ? coverage_sampled(a, t, samples, seed, opt)
                                : coverage_report(a, t, opt);
    if (as_json) {
      std::cout << report_to_json(a, report).dump(2) << '\n';
    } else {
      if (report.exact)
        std::cout << "covered " << report.covered << " of " << report.total.str()
                  << " t-sets (ratio " << report.ratio << ")\n";
      else
        std::cout << "sampled ratio " << report.ratio << " +- " << report.stderr_ << " ("
                  << report.covered << "/" << samples << " samples covered)\n";
      for (const auto& w : report.uncovered) {
        std::cout << "uncovered:";
        for (uint32_t c : w.indices) std::cout << ' ' << c;
        std::cout << '\n';
      }
    }
  });

  // ---- build --------------------------------------------------------------
  auto* build = app.add_subcommand("build", "randomized covering-array builder");
  uint64_t k64 = 2, v64 = 2;
  std::string strategy_name = "restart";
  uint32_t extra_copies = 0, max_attempts = 64;
  uint64_t max_resamples = 1'000'000;
  bool almost = false;
  double epsilon = 0;
  build->add_option("--t", t, "strength")->required();
  build->add_option("--k", k64, "columns")->required();
  build->add_option("--v", v64, "alphabet size")->required();
  build->add_option("--seed", seed, "generator seed")->required();
  build->add_option("--strategy", strategy_name, "restart|resample")
      ->check(CLI::IsMember({"restart", "resample"}));
  build->add_option("--extra-copies", extra_copies, "copies beyond the certified count");
  build->add_option("--max-attempts", max_attempts, "restart limit");
  build->add_option("--max-resamples", max_resamples, "resample limit");
  build->add_flag("--almost", almost, "epsilon-almost coverage instead of full coverage");
  auto* eps_opt = build->add_option("--epsilon", epsilon, "uncovered fraction bound");
  build->add_option("--threads", threads, "worker threads (does not affect results)");
  build->add_option("-o,--output", out_path, "array output file")->required();
  build->add_flag("--json", as_json, "machine-readable report");
  build->callback([&] {
    if (almost && eps_opt->count() == 0)
      fail(Errc::bad_argument, "--almost requires --epsilon");
    BuilderConfig config;
    config.seed = seed;
    config.strategy =
        strategy_name == "resample" ? BuildStrategy::resample : BuildStrategy::restart;
    config.max_attempts = max_attempts;
    config.max_resamples = max_resamples;
    config.extra_copies = extra_copies;
    config.threads = threads;
    auto started = std::chrono::steady_clock::now();
    // --almost needs a prime-power alphabet; field_from_order rejects others.
    BuildOutcome outcome = almost ? build_almost(t, k64, field_from_order(v64), epsilon, config)
                                  : build_covering_any_v(t, k64, v64, config);
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    write_array_file(outcome.array, out_path);
    std::cerr << "elapsed_ms " << elapsed << '\n';
    json report = build_report_json(outcome, config);
    if (almost) report["epsilon"] = epsilon;
    if (as_json)
      std::cout << report.dump(2) << '\n';
    else
      std::cout << "built N=" << outcome.array.rows() << " k=" << outcome.array.cols()
                << " v=" << outcome.array.alphabet() << " verified="
                << (outcome.verified ? "true" : "false") << " attempts=" << outcome.attempts
                << " resamples=" << outcome.resamples << '\n';
  });

  // ---- bounds -------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "closed-form bound table as JSON");
  bounds->add_option("--t", t, "strength")->required();
  bounds->add_option("--k", k64, "columns")->required();
  bounds->add_option("--v", v64, "alphabet size")->required();
  auto* bounds_eps = bounds->add_option("--epsilon", epsilon, "almost-coverage fraction");
  bounds->callback([&] {
    std::optional<double> eps;
    if (bounds_eps->count() > 0) eps = epsilon;
    std::cout << emit_bounds(t, k64, v64, eps).dump(2) << '\n';
  });

  // ---- lagrangian ---------------------------------------------------------
  auto* lagrangian = app.add_subcommand("lagrangian", "coverage-hypergraph statistics as JSON");
  uint32_t restarts = 100, iters = 400;
  lagrangian->add_option("--t", t, "strength")->required();
  lagrangian->add_option("--v", v32, "alphabet size")->required();
  lagrangian->add_option("--seed", seed, "optimizer seed")->required();
  lagrangian->add_option("--restarts", restarts, "random restarts");
  lagrangian->add_option("--iters", iters, "ascent iterations per start");
  lagrangian->callback([&] {
    LagrangianInstance inst = build_h(t, v32);
    OptimizeResult res = optimize_lagrangian(inst, restarts, iters, seed);
    ExactFraction bound = c_tv(t, v32) / ExactFraction(factorial(t));
    SupportCheck support = support_oa_check(inst, res.weighting);
    json j;
    j["t"] = t;
    j["v"] = v32;
    j["vertices"] = inst.n_vertices;
    j["edges"] = inst.edges.size();
    j["best_value"] = res.value;
    j["bound"] = fraction_json(bound);
    j["within_bound"] = res.value <= bound.to_double() + 1e-9;
    j["support_size"] = support.support_size;
    j["support_size_ok"] = support.support_size_ok;
    j["support_is_oa"] = support.is_oa;
    std::cout << j.dump(2) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    return e.code;
  } catch (const covarr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == covarr::Errc::gave_up ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
