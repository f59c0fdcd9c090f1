#pragma once

#include <cstdint>
#include <vector>

#include "covarr/errors.hpp"

namespace covarr {

struct InstanceLimits {
  uint64_t max_vertices = uint64_t{1} << 16;
  /// Cap on candidate t-subsets examined during edge enumeration.
  uint64_t max_edge_candidates = uint64_t{1} << 20;
};

/// The t-uniform coverage hypergraph at parameters (t, v): vertices are all
/// vectors of [v]^(v^t) (indexed canonically, big-endian base v, so index
/// order equals lexicographic vector order); a t-set of vertices is an edge
/// iff the v^t x t matrix of its vectors contains every tuple of [v]^t among
/// its rows. Edges are stored as sorted index tuples in lexicographic order.
struct LagrangianInstance {
  uint32_t t = 0;
  uint32_t v = 0;
  uint64_t vector_len = 0;   // v^t
  uint64_t n_vertices = 0;   // v^(v^t)
  std::vector<std::vector<uint64_t>> edges;

  std::vector<uint32_t> vertex_vector(uint64_t index) const;
  uint64_t vertex_index(const std::vector<uint32_t>& vec) const;
};

LagrangianInstance build_h(uint32_t t, uint32_t v, const InstanceLimits& limits = {});

/// Legal weighting: non-negative entries over all vertices summing to 1
/// within 1e-12. Throws Errc::illegal_weighting otherwise.
void check_weighting(const LagrangianInstance& inst, const std::vector<double>& x);

/// Weight polynomial sum_e prod_{u in e} x(u), compensated summation.
/// Checks legality; use weight_poly_at for raw evaluation (finite-difference
/// oracles perturb off the simplex).
double weight_poly(const LagrangianInstance& inst, const std::vector<double>& x);
double weight_poly_at(const LagrangianInstance& inst, const std::vector<double>& x);

/// Exact gradient of the weight polynomial from the edge list.
std::vector<double> weight_gradient(const LagrangianInstance& inst, const std::vector<double>& x);

struct OptimizeResult {
  std::vector<double> weighting;
  double value = 0;
};

/// Multi-start projected gradient ascent on the probability simplex with
/// step halving. Starts include deterministic structured candidates (uniform,
/// uniform on balanced vertices, single edges, and the linear-algebraic
/// column support when v is a prime power) plus seeded Dirichlet restarts.
/// Deterministic per seed; ties broken by restart order.
OptimizeResult optimize_lagrangian(const LagrangianInstance& inst, uint32_t restarts,
                                   uint32_t iters, uint64_t seed);

struct SupportCheck {
  bool is_oa = false;           // columns of weight > threshold form a strength-2 OA
  bool support_size_ok = false; // support <= (v^t - 1)/(v - 1)
  uint64_t support_size = 0;
};

SupportCheck support_oa_check(const LagrangianInstance& inst, const std::vector<double>& x,
                              double threshold = 1e-8);

/// (1 - 1/K)^(t-1): the maximum of sum x_i (1 - x_i)^(t-1) on the simplex.
double maxima_closed_form(uint32_t K, uint32_t t);

/// Independent maximization of the same objective: symmetric-point candidates
/// plus projected-ascent restarts (resolution controls the restart count).
double maxima_bruteforce(uint32_t K, uint32_t t, uint32_t resolution);

/// Degree of the vertex; throws Errc::isolated_vertex on degree zero.
uint64_t link_degree_check(const LagrangianInstance& inst, uint64_t vertex);

}  // namespace covarr
