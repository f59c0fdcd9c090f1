#include "covarr/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covarr/array.hpp"
#include "covarr/bigint.hpp"
#include "covarr/bounds.hpp"
#include "covarr/constructions.hpp"
#include "covarr/field.hpp"
#include "covarr/rng.hpp"

namespace covarr {

namespace {

double kahan_sum(const std::vector<double>& terms) {
  double sum = 0, comp = 0;
  for (double term : terms) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> x) {
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cum = 0, tau = 0;
  size_t rho = 0;
  double cum_at_rho = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    cum += sorted[i];
    if (sorted[i] - (cum - 1.0) / static_cast<double>(i + 1) > 0) {
      rho = i;
      cum_at_rho = cum;
    }
  }
  tau = (cum_at_rho - 1.0) / static_cast<double>(rho + 1);
  for (double& xi : x) xi = std::max(xi - tau, 0.0);
  return x;
}

}  // namespace

std::vector<uint32_t> LagrangianInstance::vertex_vector(uint64_t index) const {
  if (index >= n_vertices) fail(Errc::bad_argument, "vertex index out of range");
  std::vector<uint32_t> vec(vector_len);
  for (uint64_t pos = vector_len; pos-- > 0;) {
    vec[pos] = static_cast<uint32_t>(index % v);
    index /= v;
  }
  return vec;
}

uint64_t LagrangianInstance::vertex_index(const std::vector<uint32_t>& vec) const {
  if (vec.size() != vector_len) fail(Errc::bad_argument, "vector length mismatch");
  uint64_t index = 0;
  for (uint32_t digit : vec) {
    if (digit >= v) fail(Errc::bad_argument, "symbol out of range");
    index = index * v + digit;
  }
  return index;
}

LagrangianInstance build_h(uint32_t t, uint32_t v, const InstanceLimits& limits) {
  if (t < 1 || v < 2) fail(Errc::bad_argument, "need t >= 1 and v >= 2");
  LagrangianInstance inst;
  inst.t = t;
  inst.v = v;
  if (!pow_u64(v, t, inst.vector_len))
    fail(Errc::instance_too_large, "v^t overflows the vertex vector length");
  // n_vertices = v^(v^t), clamped against the vertex limit
  uint64_t n = 1;
  for (uint64_t i = 0; i < inst.vector_len; ++i) {
    if (n > limits.max_vertices / v)
      fail(Errc::instance_too_large, "vertex count v^(v^t) exceeds the limit");
    n *= v;
  }
  if (n > limits.max_vertices)
    fail(Errc::instance_too_large, "vertex count v^(v^t) exceeds the limit");
  inst.n_vertices = n;

  // Only vectors with every symbol appearing exactly v^(t-1) times can lie in
  // an edge, so edge enumeration runs over those.
  const uint64_t per_symbol = inst.vector_len / v;
  std::vector<uint64_t> balanced;
  std::vector<std::vector<uint32_t>> decoded;
  for (uint64_t idx = 0; idx < inst.n_vertices; ++idx) {
    std::vector<uint32_t> vec = inst.vertex_vector(idx);
    std::vector<uint64_t> histogram(v, 0);
    for (uint32_t digit : vec) ++histogram[digit];
    if (std::all_of(histogram.begin(), histogram.end(),
                    [&](uint64_t h) { return h == per_symbol; })) {
      balanced.push_back(idx);
      decoded.push_back(std::move(vec));
    }
  }

  BigInt candidates = binomial(balanced.size(), t);
  if (candidates > BigInt(limits.max_edge_candidates))
    fail(Errc::instance_too_large, "edge enumeration exceeds the candidate budget");

  // Lexicographic combinations over the ascending balanced list give edges in
  // lexicographic order of sorted index tuples.
  if (balanced.size() >= t) {
    std::vector<uint64_t> combo(t);
    for (uint32_t i = 0; i < t; ++i) combo[i] = i;
    std::vector<uint8_t> seen(inst.vector_len, 0);
    for (;;) {
      std::fill(seen.begin(), seen.end(), 0);
      uint64_t distinct = 0;
      for (uint64_t row = 0; row < inst.vector_len; ++row) {
        uint64_t tuple = 0;
        uint64_t scale = 1;
        for (uint32_t i = 0; i < t; ++i) {
          tuple += uint64_t{decoded[combo[i]][row]} * scale;
          scale *= v;
        }
        if (!seen[tuple]) {
          seen[tuple] = 1;
          ++distinct;
        }
      }
      if (distinct == inst.vector_len) {  // all v^t tuples present
        std::vector<uint64_t> edge(t);
        for (uint32_t i = 0; i < t; ++i) edge[i] = balanced[combo[i]];
        inst.edges.push_back(std::move(edge));
      }
      // advance combination
      int pos = static_cast<int>(t) - 1;
      while (pos >= 0 &&
             combo[static_cast<size_t>(pos)] ==
                 balanced.size() - t + static_cast<uint64_t>(pos))
        --pos;
      if (pos < 0) break;
      ++combo[static_cast<size_t>(pos)];
      for (uint32_t j = static_cast<uint32_t>(pos) + 1; j < t; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return inst;
}

void check_weighting(const LagrangianInstance& inst, const std::vector<double>& x) {
  if (x.size() != inst.n_vertices)
    fail(Errc::illegal_weighting, "weighting dimension does not match the vertex count");
  double sum = 0, comp = 0;
  for (double xi : x) {
    if (!(xi >= 0.0)) fail(Errc::illegal_weighting, "negative weight");
    double y = xi - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (std::abs(sum - 1.0) > 1e-12) fail(Errc::illegal_weighting, "weights do not sum to 1");
}

double weight_poly_at(const LagrangianInstance& inst, const std::vector<double>& x) {
  std::vector<double> terms;
  terms.reserve(inst.edges.size());
  for (const auto& edge : inst.edges) {
    double prod = 1.0;
    for (uint64_t u : edge) prod *= x[u];
    terms.push_back(prod);
  }
  return kahan_sum(terms);
}

double weight_poly(const LagrangianInstance& inst, const std::vector<double>& x) {
  check_weighting(inst, x);
  return weight_poly_at(inst, x);
}

std::vector<double> weight_gradient(const LagrangianInstance& inst, const std::vector<double>& x) {
  if (x.size() != inst.n_vertices)
    fail(Errc::illegal_weighting, "weighting dimension does not match the vertex count");
  std::vector<double> grad(x.size(), 0.0);
  for (const auto& edge : inst.edges) {
    for (size_t i = 0; i < edge.size(); ++i) {
      double prod = 1.0;
      for (size_t j = 0; j < edge.size(); ++j)
        if (j != i) prod *= x[edge[j]];
      grad[edge[i]] += prod;
    }
  }
  return grad;
}

namespace {

struct AscentResult {
  std::vector<double> x;
  double value = 0;
};

AscentResult ascend(const LagrangianInstance& inst, std::vector<double> x, uint32_t iters) {
  double value = weight_poly_at(inst, x);
  double step = 0.25;
  for (uint32_t it = 0; it < iters && step > 1e-14; ++it) {
    std::vector<double> grad = weight_gradient(inst, x);
    std::vector<double> trial(x.size());
    for (size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * grad[i];
    trial = project_simplex(std::move(trial));
    double trial_value = weight_poly_at(inst, trial);
    if (trial_value > value) {
      x = std::move(trial);
      value = trial_value;
      step *= 1.25;
    } else {
      step *= 0.5;
    }
  }
  return {std::move(x), value};
}

std::vector<double> uniform_on(const LagrangianInstance& inst, const std::vector<uint64_t>& support) {
  std::vector<double> x(inst.n_vertices, 0.0);
  for (uint64_t u : support) x[u] = 1.0 / static_cast<double>(support.size());
  return x;
}

}  // namespace

OptimizeResult optimize_lagrangian(const LagrangianInstance& inst, uint32_t restarts,
                                   uint32_t iters, uint64_t seed) {
  if (inst.n_vertices == 0) fail(Errc::bad_argument, "empty instance");
  std::vector<std::vector<double>> starts;

  // uniform over all vertices
  starts.push_back(std::vector<double>(inst.n_vertices, 1.0 / static_cast<double>(inst.n_vertices)));

  // uniform over vertices of positive degree
  {
    std::vector<uint64_t> active;
    for (const auto& edge : inst.edges)
      for (uint64_t u : edge) active.push_back(u);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    if (!active.empty()) starts.push_back(uniform_on(inst, active));
  }

  // single-edge starts
  const size_t edge_starts = std::min<size_t>(inst.edges.size(), 32);
  for (size_t e = 0; e < edge_starts; ++e) starts.push_back(uniform_on(inst, inst.edges[e]));

  // the linear-algebraic column support, when the alphabet admits one
  uint64_t p = 0;
  uint32_t m = 0;
  if (is_prime_power(inst.v, &p, &m)) {
    try {
      FieldSpec field = FieldSpec::make(p, m);
      ArrayMatrix a = build_a_opt(field, inst.t);
      std::vector<uint64_t> support;
      std::vector<uint32_t> column(a.rows());
      for (uint32_t c = 0; c < a.cols(); ++c) {
        for (uint32_t r = 0; r < a.rows(); ++r) column[r] = a.at(r, c);
        support.push_back(inst.vertex_index(column));
      }
      starts.push_back(uniform_on(inst, support));
    } catch (const Error&) {
      // construction out of range; optimizer falls back to generic starts
    }
  }

  // seeded Dirichlet(1) restarts
  for (uint32_t rest = 0; rest < restarts; ++rest) {
    Rng rng(Rng::derive(seed, 0xd141, rest));
    std::vector<double> x(inst.n_vertices);
    double sum = 0;
    for (double& xi : x) {
      xi = -std::log(1.0 - rng.unit());
      sum += xi;
    }
    for (double& xi : x) xi /= sum;
    starts.push_back(std::move(x));
  }

  OptimizeResult best;
  best.value = -1;
  for (auto& start : starts) {
    AscentResult res = ascend(inst, std::move(start), iters);
    if (res.value > best.value) {
      best.value = res.value;
      best.weighting = std::move(res.x);
    }
  }
  return best;
}

SupportCheck support_oa_check(const LagrangianInstance& inst, const std::vector<double>& x,
                              double threshold) {
  check_weighting(inst, x);
  std::vector<uint64_t> support;
  for (uint64_t u = 0; u < x.size(); ++u)
    if (x[u] > threshold) support.push_back(u);
  if (support.empty()) fail(Errc::empty_support, "no vertex above the support threshold");

  SupportCheck out;
  out.support_size = support.size();
  out.support_size_ok = support.size() <= (inst.vector_len - 1) / (inst.v - 1);
  if (support.size() < 2) {
    out.is_oa = false;  // a single column cannot meet a strength-2 requirement
    return out;
  }
  ArrayMatrix a(static_cast<uint32_t>(inst.vector_len), static_cast<uint32_t>(support.size()),
                inst.v);
  for (uint32_t c = 0; c < support.size(); ++c) {
    std::vector<uint32_t> vec = inst.vertex_vector(support[c]);
    for (uint32_t r = 0; r < inst.vector_len; ++r) a.set(r, c, vec[r]);
  }
  out.is_oa = verify_oa(a, 2).is_oa;
  return out;
}

double maxima_closed_form(uint32_t K, uint32_t t) {
  if (t < 2 || K < t) fail(Errc::k_less_than_t, "need K >= t >= 2");
  return std::pow(1.0 - 1.0 / static_cast<double>(K), static_cast<double>(t) - 1.0);
}

namespace {

double blockmax_objective(const std::vector<double>& x, uint32_t t) {
  double sum = 0;
  for (double xi : x) sum += xi * std::pow(1.0 - xi, static_cast<double>(t) - 1.0);
  return sum;
}

std::vector<double> blockmax_gradient(const std::vector<double>& x, uint32_t t) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double one_minus = 1.0 - x[i];
    double base = t >= 3 ? std::pow(one_minus, static_cast<double>(t) - 2.0) : 1.0;
    g[i] = base * (1.0 - static_cast<double>(t) * x[i]);
  }
  return g;
}

}  // namespace

double maxima_bruteforce(uint32_t K, uint32_t t, uint32_t resolution) {
  if (t < 2 || K < t) fail(Errc::k_less_than_t, "need K >= t >= 2");
  double best = 0;
  // symmetric candidates: 1/j on j coordinates
  for (uint32_t j = 1; j <= K; ++j) {
    std::vector<double> x(K, 0.0);
    for (uint32_t i = 0; i < j; ++i) x[i] = 1.0 / static_cast<double>(j);
    best = std::max(best, blockmax_objective(x, t));
  }
  // projected-ascent restarts
  uint32_t restarts = std::max<uint32_t>(resolution, 4);
  for (uint32_t rest = 0; rest < restarts; ++rest) {
    Rng rng(Rng::derive(0x6d61c5, K, t, rest));
    std::vector<double> x(K);
    double sum = 0;
    for (double& xi : x) {
      xi = -std::log(1.0 - rng.unit());
      sum += xi;
    }
    for (double& xi : x) xi /= sum;
    double value = blockmax_objective(x, t);
    double step = 0.25;
    for (uint32_t it = 0; it < 400 && step > 1e-14; ++it) {
      std::vector<double> g = blockmax_gradient(x, t);
      std::vector<double> trial(K);
      for (uint32_t i = 0; i < K; ++i) trial[i] = x[i] + step * g[i];
      trial = project_simplex(std::move(trial));
      double trial_value = blockmax_objective(trial, t);
      if (trial_value > value) {
        x = std::move(trial);
        value = trial_value;
        step *= 1.25;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, value);
  }
  return best;
}

uint64_t link_degree_check(const LagrangianInstance& inst, uint64_t vertex) {
  if (vertex >= inst.n_vertices) fail(Errc::bad_argument, "vertex index out of range");
  uint64_t degree = 0;
  for (const auto& edge : inst.edges)
    if (std::find(edge.begin(), edge.end(), vertex) != edge.end()) ++degree;
  if (degree == 0) fail(Errc::isolated_vertex, "vertex lies in no edge");
  return degree;
}

}  // namespace covarr
