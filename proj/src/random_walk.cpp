#include "dlgraph/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dlg {

int distance_lower_bound(const DLVertex& x, const DLVertex& y) {
  int total = 0;
  for (std::size_t j = 0; j < x.coords.size(); ++j) total += distance(x.coords[j], y.coords[j]);
  return (total + 1) / 2;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1)));
}

// unbiased uniform draw in [0, n), stable across platforms
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t bound = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= bound);
  return x % n;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<StepEntry> uniform_law(const DLParams& params) {
  std::vector<StepEntry> law;
  const double p = 1.0 / params.degree();
  for (int up = 0; up < params.dim(); ++up)
    for (int down = 0; down < params.dim(); ++down) {
      if (up == down) continue;
      for (Label l = 0; l < static_cast<Label>(params.qs[static_cast<std::size_t>(down)]); ++l)
        law.push_back(StepEntry{MoveType{down, up}, l, p});
    }
  return law;
}

}  // namespace

void validate_config(const WalkConfig& config) {
  config.params.validate();
  if (config.steps < 0) throw std::invalid_argument("walk: steps must be >= 0");
  if (config.trials < 1) throw std::invalid_argument("walk: trials must be >= 1");
  if (config.law.empty()) return;
  double mass = 0.0;
  for (const auto& entry : config.law) {
    const int d = config.params.dim();
    if (entry.move.down < 0 || entry.move.down >= d || entry.move.up < 0 || entry.move.up >= d ||
        entry.move.down == entry.move.up)
      throw std::invalid_argument("walk: bad move in step law");
    if (entry.label >= static_cast<Label>(config.params.qs[static_cast<std::size_t>(entry.move.down)]))
      throw std::invalid_argument("walk: label out of range in step law");
    if (entry.prob < 0.0) throw std::invalid_argument("walk: negative probability in step law");
    mass += entry.prob;
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw std::invalid_argument("walk: step law mass must be 1");
}

std::vector<double> theoretical_drift(const WalkConfig& config) {
  validate_config(config);
  const int d = config.params.dim();
  std::vector<double> alpha(static_cast<std::size_t>(d), 0.0);
  if (config.law.empty()) {
    const int total = std::accumulate(config.params.qs.begin(), config.params.qs.end(), 0);
    for (int j = 0; j < d; ++j)
      alpha[static_cast<std::size_t>(j)] =
          static_cast<double>(d * config.params.qs[static_cast<std::size_t>(j)] - total) /
          config.params.degree();
    return alpha;
  }
  for (const auto& entry : config.law) {
    alpha[static_cast<std::size_t>(entry.move.down)] += entry.prob;
    alpha[static_cast<std::size_t>(entry.move.up)] -= entry.prob;
  }
  return alpha;
}

namespace {

// Walk engine shared by the reports: calls visit(step, vertex) after every
// step, including step 0 at the start.
template <typename Visit>
void run_trial(const WalkConfig& config, int trial, const std::vector<StepEntry>& law,
               const std::vector<double>& cumulative, Visit&& visit) {
  auto rng = trial_rng(config.seed, trial);
  DLVertex x = dl_origin(config.params);
  visit(0, x);
  for (int step = 1; step <= config.steps; ++step) {
    std::size_t pick;
    if (cumulative.empty()) {
      pick = static_cast<std::size_t>(uniform_below(rng, law.size()));
    } else {
      const double u = uniform_unit(rng);
      pick = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      if (pick >= law.size()) pick = law.size() - 1;
    }
    const StepEntry& e = law[pick];
    auto& down_coord = x.coords[static_cast<std::size_t>(e.move.down)];
    auto& up_coord = x.coords[static_cast<std::size_t>(e.move.up)];
    down_coord = successor(down_coord, e.label,
                           config.params.qs[static_cast<std::size_t>(e.move.down)]);
    up_coord = predecessor(up_coord);
    visit(step, x);
  }
}

struct LawTables {
  std::vector<StepEntry> law;
  std::vector<double> cumulative;  // empty for the uniform walk
};

LawTables law_tables(const WalkConfig& config) {
  LawTables t;
  if (config.law.empty()) {
    t.law = uniform_law(config.params);
    return t;
  }
  t.law = config.law;
  double acc = 0.0;
  for (const auto& e : t.law) {
    acc += e.prob;
    t.cumulative.push_back(acc);
  }
  t.cumulative.back() = 1.0;
  return t;
}

}  // namespace

std::vector<TrajectorySummary> simulate(const WalkConfig& config) {
  validate_config(config);
  const LawTables tables = law_tables(config);
  const DLVertex origin = dl_origin(config.params);
  std::vector<TrajectorySummary> out;
  out.reserve(static_cast<std::size_t>(config.trials));
  for (int trial = 0; trial < config.trials; ++trial) {
    TrajectorySummary s;
    s.min_busemann.assign(static_cast<std::size_t>(config.params.dim()), 0);
    run_trial(config, trial, tables.law, tables.cumulative, [&](int step, const DLVertex& x) {
      for (std::size_t j = 0; j < x.coords.size(); ++j)
        s.min_busemann[j] = std::min(s.min_busemann[j], x.coords[j].h);
      if (step > 0 && x == origin) s.returned_to_start = true;
      if (config.record_hor) s.hor_track.push_back(hor(x));
      if (step == config.steps) s.final_vertex = x;
    });
    out.push_back(std::move(s));
  }
  return out;
}

DriftReport drift(const WalkConfig& config) {
  validate_config(config);
  if (config.steps < 1) throw std::invalid_argument("drift: needs at least one step");
  const LawTables tables = law_tables(config);
  const int d = config.params.dim();

  DriftReport report;
  report.steps = config.steps;
  report.trials = config.trials;
  report.alpha = theoretical_drift(config);
  report.alpha_den = config.params.degree();
  if (config.law.empty()) {
    const long total = std::accumulate(config.params.qs.begin(), config.params.qs.end(), 0L);
    for (int j = 0; j < d; ++j)
      report.alpha_num.push_back(static_cast<long>(d) * config.params.qs[static_cast<std::size_t>(j)] - total);
  }

  std::vector<double> sum(static_cast<std::size_t>(d), 0.0), sumsq(static_cast<std::size_t>(d), 0.0);
  for (int trial = 0; trial < config.trials; ++trial) {
    run_trial(config, trial, tables.law, tables.cumulative, [&](int step, const DLVertex& x) {
      if (step != config.steps) return;
      for (int j = 0; j < d; ++j) {
        const double v = static_cast<double>(x.coords[static_cast<std::size_t>(j)].h) / config.steps;
        sum[static_cast<std::size_t>(j)] += v;
        sumsq[static_cast<std::size_t>(j)] += v * v;
      }
    });
  }
  for (int j = 0; j < d; ++j) {
    const double mean = sum[static_cast<std::size_t>(j)] / config.trials;
    report.empirical.push_back(mean);
    const double var =
        std::max(0.0, sumsq[static_cast<std::size_t>(j)] / config.trials - mean * mean);
    report.standard_error.push_back(std::sqrt(var / std::max(1, config.trials - 1)));
  }
  return report;
}

BoundaryReport boundary_convergence(const WalkConfig& config) {
  validate_config(config);
  if (config.steps < 2) throw std::invalid_argument("boundary_convergence: needs steps >= 2");
  const LawTables tables = law_tables(config);
  const int d = config.params.dim();
  const auto alpha = theoretical_drift(config);
  const int half = config.steps / 2;

  BoundaryReport report;
  report.steps = config.steps;
  report.trials = config.trials;
  report.coords.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    report.coords[static_cast<std::size_t>(j)].alpha = alpha[static_cast<std::size_t>(j)];
    report.coords[static_cast<std::size_t>(j)].expected_lower = alpha[static_cast<std::size_t>(j)] > 0;
  }

  std::vector<int> stabilized(static_cast<std::size_t>(d), 0);
  std::vector<double> meet_sum(static_cast<std::size_t>(d), 0.0);
  std::vector<double> final_sum(static_cast<std::size_t>(d), 0.0);
  std::vector<double> min_sum(static_cast<std::size_t>(d), 0.0);

  std::vector<TreeVertex> anchors(static_cast<std::size_t>(d));
  std::vector<bool> anchored(static_cast<std::size_t>(d));
  std::vector<bool> stable(static_cast<std::size_t>(d));
  std::vector<TreeVertex> midpoint(static_cast<std::size_t>(d));
  std::vector<int> min_b(static_cast<std::size_t>(d));

  for (int trial = 0; trial < config.trials; ++trial) {
    std::fill(anchored.begin(), anchored.end(), false);
    std::fill(stable.begin(), stable.end(), true);
    std::fill(min_b.begin(), min_b.end(), 0);
    run_trial(config, trial, tables.law, tables.cumulative, [&](int step, const DLVertex& x) {
      for (int j = 0; j < d; ++j) {
        const TreeVertex& c = x.coords[static_cast<std::size_t>(j)];
        min_b[static_cast<std::size_t>(j)] = std::min(min_b[static_cast<std::size_t>(j)], c.h);
        if (step == half) midpoint[static_cast<std::size_t>(j)] = c;
        if (step >= half) {
          // ancestor on horocycle 1, when the walk is deep enough
          if (c.h < 1) {
            stable[static_cast<std::size_t>(j)] = false;
          } else if (!anchored[static_cast<std::size_t>(j)]) {
            anchors[static_cast<std::size_t>(j)] = ancestor_at(c, 1);
            anchored[static_cast<std::size_t>(j)] = true;
          } else if (stable[static_cast<std::size_t>(j)] &&
                     ancestor_at(c, 1) != anchors[static_cast<std::size_t>(j)]) {
            stable[static_cast<std::size_t>(j)] = false;
          }
        }
        if (step == config.steps) {
          final_sum[static_cast<std::size_t>(j)] += c.h;
          meet_sum[static_cast<std::size_t>(j)] +=
              confluent(midpoint[static_cast<std::size_t>(j)], c).h;
          min_sum[static_cast<std::size_t>(j)] += min_b[static_cast<std::size_t>(j)];
          if (anchored[static_cast<std::size_t>(j)] && stable[static_cast<std::size_t>(j)])
            ++stabilized[static_cast<std::size_t>(j)];
        }
      }
    });
  }
  for (int j = 0; j < d; ++j) {
    auto& c = report.coords[static_cast<std::size_t>(j)];
    c.stabilized_fraction = static_cast<double>(stabilized[static_cast<std::size_t>(j)]) / config.trials;
    c.mean_final_busemann = final_sum[static_cast<std::size_t>(j)] / config.trials;
    c.mean_meet_level = meet_sum[static_cast<std::size_t>(j)] / config.trials;
    c.mean_min_busemann = min_sum[static_cast<std::size_t>(j)] / config.trials;
  }
  return report;
}

DLVertex ray_projection(const DLParams& params, const std::vector<BoundaryApproxPoint>& xi,
                        int n, const std::vector<long>& alpha_num, long alpha_den) {
  params.validate();
  const int d = params.dim();
  if (static_cast<int>(xi.size()) != d)
    throw std::invalid_argument("ray_projection: one boundary point per coordinate required");
  if (static_cast<int>(alpha_num.size()) != d || alpha_den <= 0)
    throw std::invalid_argument("ray_projection: drift must come as numerators over one denominator");
  if (n < 0) throw std::invalid_argument("ray_projection: n must be >= 0");

  std::vector<int> k(static_cast<std::size_t>(d), 0);
  int partial = 0;
  for (int j = 0; j + 1 < d; ++j) {
    const long num = alpha_num[static_cast<std::size_t>(j)] * n;
    // exact ceiling of num/alpha_den
    long kj = num / alpha_den;
    if (num > 0 && num % alpha_den != 0) ++kj;
    k[static_cast<std::size_t>(j)] = static_cast<int>(kj);
    partial += static_cast<int>(kj);
  }
  k[static_cast<std::size_t>(d - 1)] = -partial;

  DLVertex out;
  out.coords.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j)
    out.coords.push_back(ray_point(xi[static_cast<std::size_t>(j)], k[static_cast<std::size_t>(j)]));
  return out;
}

}  // namespace dlg
