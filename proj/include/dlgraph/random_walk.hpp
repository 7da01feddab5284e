#pragma once

#include <cstdint>

#include "dlgraph/dl_graph.hpp"

namespace dlg {

/// Lower bound on the graph distance: every step moves two tree
/// coordinates by one, so d(x,y) >= ceil(sum_j d_T(x_j,y_j) / 2).
int distance_lower_bound(const DLVertex& x, const DLVertex& y);

/// One move kind of a group-invariant step law: the typed move plus the
/// label of the descending edge.
struct StepEntry {
  MoveType move;
  Label label = 0;
  double prob = 0.0;
};

/// Walk setup.  An empty law means the uniform nearest-neighbour walk; a
/// custom law must have total mass 1 and is invariant under the
/// vertex-stabilizing isometries by construction (it only sees the move
/// type and label).
struct WalkConfig {
  DLParams params;
  int steps = 0;
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<StepEntry> law;
  bool record_hor = false;
};

void validate_config(const WalkConfig& config);

struct TrajectorySummary {
  DLVertex final_vertex;
  std::vector<int> min_busemann;            // per coordinate, over the path
  bool returned_to_start = false;           // hit the start again after step 0
  std::vector<std::vector<int>> hor_track;  // per step, when requested
};

/// Runs the trials; trial i draws from a substream derived from
/// (seed, i), so extending the trial count keeps earlier trajectories.
std::vector<TrajectorySummary> simulate(const WalkConfig& config);

struct DriftReport {
  // exact one-step expectations of the Busemann coordinates
  std::vector<long> alpha_num;
  long alpha_den = 1;
  std::vector<double> alpha;
  std::vector<double> empirical;       // mean of h(Z_{j,n})/n over trials
  std::vector<double> standard_error;  // of the empirical mean
  int steps = 0;
  int trials = 0;
};

/// Exact drift of the configured law (uniform: (d q_j - sum q) / D).
std::vector<double> theoretical_drift(const WalkConfig& config);

DriftReport drift(const WalkConfig& config);

struct BoundaryCoordinateReport {
  double alpha = 0.0;
  bool expected_lower = false;       // positive drift heads to the lower boundary
  double stabilized_fraction = 0.0;  // horocycle-1 ancestor constant over the last half
  double mean_final_busemann = 0.0;
  double mean_meet_level = 0.0;      // level of confluent(Z_{n/2}, Z_n)
  double mean_min_busemann = 0.0;
};

struct BoundaryReport {
  std::vector<BoundaryCoordinateReport> coords;
  int steps = 0;
  int trials = 0;
};

/// Empirical witness of boundary convergence: positive-drift coordinates
/// stabilize ancestors, the rest sink toward the root end.
BoundaryReport boundary_convergence(const WalkConfig& config);

/// The ray approximation: k_j = ceil(alpha_j n) for j < d from the exact
/// rational drift, the last coordinate balancing to sum zero; each
/// coordinate is the horocycle-k_j point of its boundary ray.
DLVertex ray_projection(const DLParams& params, const std::vector<BoundaryApproxPoint>& xi,
                        int n, const std::vector<long>& alpha_num, long alpha_den);

}  // namespace dlg
