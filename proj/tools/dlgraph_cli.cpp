// Command line front end: every subcommand validates its parameters, runs
// one library operation, and writes a provenance-stamped CSV or JSON file.
// Exit codes: 0 success, 2 validation/usage error, 3 verification failure.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dlgraph/cayley.hpp"
#include "dlgraph/cell_complex.hpp"
#include "dlgraph/json_io.hpp"
#include "dlgraph/random_walk.hpp"
#include "dlgraph/spectral_basis.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t cap = dlg::kDefaultBallCap;
};

void write_output(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opts.out);
  if (!f) throw std::invalid_argument("cannot open output file: " + opts.out);
  f << text;
}

std::string csv_header(const std::string& command, const std::string& params) {
  std::ostringstream os;
  os << "# dlgraph " << dlg::kLibraryVersion << "\n# command=" << command << " " << params << "\n";
  return os.str();
}

json json_base(const std::string& command) {
  json j;
  j["version"] = dlg::kLibraryVersion;
  j["command"] = command;
  return j;
}

std::string qs_string(const std::vector<int>& qs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < qs.size(); ++i) os << (i ? "," : "") << qs[i];
  return os.str();
}

dlg::CoefficientRing make_ring(const std::string& kind, int q, int d,
                               const std::vector<unsigned>& ells,
                               const std::vector<std::string>& fields) {
  if (kind == "zq") {
    if (!ells.empty())
      return dlg::CoefficientRing::integers_mod(q, std::vector<dlg::RingElem>(ells.begin(), ells.end()));
    return dlg::CoefficientRing::integers_mod_default(q, d);
  }
  if (kind == "fq") {
    std::vector<dlg::FieldSpec> specs;
    for (const auto& f : fields) {
      dlg::FieldSpec spec;
      const auto caret = f.find('^');
      spec.p = std::stoi(f.substr(0, caret));
      spec.s = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
      specs.push_back(spec);
    }
    if (specs.empty()) throw std::invalid_argument("fq ring needs --fields p^s entries");
    if (!ells.empty())
      return dlg::CoefficientRing::field_product(std::move(specs),
                                                 std::vector<dlg::RingElem>(ells.begin(), ells.end()));
    return dlg::CoefficientRing::field_product_default(std::move(specs), d);
  }
  throw std::invalid_argument("unknown ring kind: " + kind);
}

std::vector<dlg::StepEntry> load_law(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open law file: " + path);
  json j;
  f >> j;
  std::vector<dlg::StepEntry> law;
  for (const auto& e : j) {
    dlg::StepEntry entry;
    entry.move.down = e.at("down").get<int>();
    entry.move.up = e.at("up").get<int>();
    entry.label = e.at("label").get<dlg::Label>();
    entry.prob = e.at("prob").get<double>();
    law.push_back(entry);
  }
  return law;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diestel-Leader graph toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<int> qs;
  int dim = 3;
  int q_scalar = 2;
  int radius = 3;
  int hmax = 8;
  int height = 4;
  int nmax = 10;
  int steps = 1000;
  int trials = 100;
  int depth = 32;
  int place = 0;
  bool vectors = false;
  std::string ring_kind = "zq";
  std::string law_file;
  std::string dump_file;
  std::vector<unsigned> ells;
  std::vector<std::string> fields;
  std::vector<int> depths;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out, "output file (default stdout)");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--cap", opts.cap, "size guard for enumerations");
  };
  auto add_ring = [&](CLI::App* cmd) {
    cmd->add_option("--ring", ring_kind, "coefficient ring: zq or fq")
        ->check(CLI::IsMember({"zq", "fq"}));
    cmd->add_option("--ell", ells, "distinguished ring elements (indices)")->delimiter(',');
    cmd->add_option("--fields", fields, "field factors p^s for fq rings")->delimiter(',');
  };

  auto* growth = app.add_subcommand("growth", "sphere sizes around the origin");
  growth->add_option("--q", qs, "branching numbers")->delimiter(',')->required();
  growth->add_option("--radius", radius, "ball radius")->required();
  growth->add_option("--dump", dump_file, "also write the ball as a json graph dump");
  add_common(growth);

  auto* spectrum = app.add_subcommand("spectrum", "union of Dirichlet spectra up to a height");
  spectrum->add_option("--q", qs)->delimiter(',')->required();
  spectrum->add_option("--hmax", hmax)->required();
  add_common(spectrum);

  auto* eig = app.add_subcommand("eig", "eigensystem of one Dirichlet block");
  eig->add_option("--q", qs)->delimiter(',')->required();
  eig->add_option("--height", height)->required();
  eig->add_flag("--vectors", vectors, "include eigenvectors (json)");
  add_common(eig);

  auto* basis = app.add_subcommand("basis-check", "orthonormal eigenbasis of a polyhedron");
  basis->add_option("--q", qs)->delimiter(',')->required();
  basis->add_option("--depths", depths, "anchor depths above the origin")->delimiter(',')->required();
  basis->add_option("--dump", dump_file, "write every basis function with its provenance");
  add_common(basis);

  auto* retp = app.add_subcommand("return-prob", "spectral return probabilities");
  retp->add_option("--q", qs)->delimiter(',')->required();
  retp->add_option("--nmax", nmax)->required();
  retp->add_option("--hmax", hmax, "spectral truncation height");
  add_common(retp);

  auto* cayley = app.add_subcommand("cayley-verify", "group ball vs graph ball isomorphism");
  cayley->add_option("--d", dim)->required();
  cayley->add_option("--q", q_scalar, "ring size for zq");
  cayley->add_option("--radius", radius);
  cayley->add_option("--dump", dump_file, "write the group ball elements as json");
  add_ring(cayley);
  add_common(cayley);

  auto* pres = app.add_subcommand("presentation-check", "relators evaluate to the identity");
  pres->add_option("--d", dim)->required();
  pres->add_option("--q", q_scalar, "ring size for zq");
  add_ring(pres);
  add_common(pres);

  auto* autom = app.add_subcommand("automaton-check", "state machine vs ring computation");
  autom->add_option("--q", q_scalar)->required();
  autom->add_option("--ell", ells, "distinguished ring elements")->delimiter(',');
  autom->add_option("--place", place, "which distinguished element drives the machine");
  autom->add_option("--depth", depth);
  autom->add_option("--trials", trials);
  add_common(autom);

  auto* euler = app.add_subcommand("euler", "octahedron cell counts and Euler characteristic");
  euler->add_option("--q", qs)->delimiter(',')->required();
  euler->add_option("--radius", radius)->required();
  add_common(euler);

  bool boundary = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "random walk trajectories");
  simulate_cmd->add_option("--q", qs)->delimiter(',')->required();
  simulate_cmd->add_option("--steps", steps)->required();
  simulate_cmd->add_option("--trials", trials)->required();
  simulate_cmd->add_option("--law", law_file, "json file with a custom step law");
  simulate_cmd->add_flag("--boundary", boundary,
                         "emit the boundary-convergence report instead of per-trial rows");
  add_common(simulate_cmd);

  auto* drift_cmd = app.add_subcommand("drift", "empirical vs closed-form drift");
  drift_cmd->add_option("--q", qs)->delimiter(',')->required();
  drift_cmd->add_option("--steps", steps)->required();
  drift_cmd->add_option("--trials", trials)->required();
  drift_cmd->add_option("--law", law_file, "json file with a custom step law");
  add_common(drift_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (growth->parsed()) {
      const dlg::DLParams params{qs};
      const auto g = dlg::ball(params, dlg::dl_origin(params), radius, opts.cap);
      std::vector<std::size_t> spheres(static_cast<std::size_t>(radius) + 1, 0);
      for (int d : g.distance) ++spheres[static_cast<std::size_t>(d)];
      if (!dump_file.empty()) {
        std::ofstream f(dump_file);
        if (!f) throw std::invalid_argument("cannot open dump file: " + dump_file);
        f << dlg::graph_to_json(g).dump(2) << '\n';
      }
      if (opts.format == "json") {
        json j = json_base("growth");
        j["params"] = {{"q", qs}, {"radius", radius}, {"cap", opts.cap}};
        j["spheres"] = spheres;
        write_output(opts, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << csv_header("growth", "q=" + qs_string(qs) + " radius=" + std::to_string(radius));
        os << "r,sphere_size\n";
        for (std::size_t r = 0; r < spheres.size(); ++r) os << r << ',' << spheres[r] << '\n';
        write_output(opts, os.str());
      }
      return 0;
    }

    if (spectrum->parsed()) {
      const auto interval = dlg::spec_interval(qs);
      const auto values = dlg::spec_union(qs, hmax);
      if (opts.format == "json") {
        json j = json_base("spectrum");
        j["params"] = {{"q", qs}, {"hmax", hmax}};
        j["rho"] = interval.rho;
        j["rho_prime"] = interval.rho_prime;
        j["eigenvalues"] = values;
        write_output(opts, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << csv_header("spectrum", "q=" + qs_string(qs) + " hmax=" + std::to_string(hmax));
        os << "h,index,eigenvalue\n";
        os.precision(17);
        for (int h = 2; h <= hmax; ++h) {
          const auto eigs = dlg::eig_dirichlet(qs, h);
          for (std::size_t i = 0; i < eigs.pairs.size(); ++i)
            os << h << ',' << i << ',' << eigs.pairs[i].eigenvalue << '\n';
        }
        write_output(opts, os.str());
      }
      return 0;
    }

    if (eig->parsed()) {
      const auto eigs = dlg::eig_dirichlet(qs, height);
      if (opts.format == "json") {
        json j = json_base("eig");
        j["params"] = {{"q", qs}, {"height", height}};
        json vals = json::array();
        for (const auto& p : eigs.pairs) vals.push_back(p.eigenvalue);
        j["eigenvalues"] = std::move(vals);
        if (vectors) {
          json vecs = json::array();
          for (const auto& p : eigs.pairs) vecs.push_back(p.eigenvector);
          j["eigenvectors"] = std::move(vecs);
        }
        write_output(opts, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << csv_header("eig", "q=" + qs_string(qs) + " height=" + std::to_string(height));
        os << "index,eigenvalue\n";
        os.precision(17);
        for (std::size_t i = 0; i < eigs.pairs.size(); ++i)
          os << i << ',' << eigs.pairs[i].eigenvalue << '\n';
        write_output(opts, os.str());
      }
      return 0;
    }

    if (basis->parsed()) {
      const dlg::DLParams params{qs};
      if (static_cast<int>(depths.size()) != params.dim())
        throw std::invalid_argument("basis-check: one anchor depth per coordinate");
      std::vector<dlg::TreeVertex> anchors;
      for (int r : depths) anchors.push_back(dlg::TreeVertex{-r, {}});
      const auto poly = dlg::make_polyhedron(params, std::move(anchors));
      const auto basis_fns = dlg::basis_for_polyhedron(params, poly, opts.cap);
      double max_gram = 0.0, max_residual = 0.0;
      bool horizontal = true;
      for (std::size_t a = 0; a < basis_fns.size(); ++a) {
        horizontal = horizontal && dlg::is_horizontal(params, basis_fns[a].values);
        const auto pg = dlg::apply_P(params, basis_fns[a].values);
        double res = 0.0;
        for (const auto& [v, x] : pg) {
          auto it = basis_fns[a].values.find(v);
          const double want = basis_fns[a].eigenvalue * (it == basis_fns[a].values.end() ? 0.0 : it->second);
          res = std::max(res, std::abs(x - want));
        }
        max_residual = std::max(max_residual, res);
        for (std::size_t b = a; b < basis_fns.size(); ++b) {
          const double g = dlg::inner(basis_fns[a].values, basis_fns[b].values);
          max_gram = std::max(max_gram, std::abs(g - (a == b ? 1.0 : 0.0)));
        }
      }
      const bool ok = horizontal && max_gram <= 1e-9 && max_residual <= 1e-10;
      if (!dump_file.empty()) {
        json dump = json_base("basis-dump");
        dump["params"] = {{"q", qs}, {"depths", depths}};
        json fns = json::array();
        for (const auto& g : basis_fns) {
          json e;
          json anchors = json::array();
          for (const auto& a : g.polyhedron.anchors) anchors.push_back(dlg::to_string(a));
          e["anchors"] = std::move(anchors);
          e["m"] = g.m.k;
          e["labels"] = g.labels;
          e["eigenvalue"] = g.eigenvalue;
          json values = json::object();
          for (const auto& [v, x] : g.values) values[dlg::to_string(v)] = x;
          e["values"] = std::move(values);
          fns.push_back(std::move(e));
        }
        dump["functions"] = std::move(fns);
        std::ofstream f(dump_file);
        if (!f) throw std::invalid_argument("cannot open dump file: " + dump_file);
        f << dump.dump(2) << '\n';
      }
      json j = json_base("basis-check");
      j["params"] = {{"q", qs}, {"depths", depths}};
      j["basis_size"] = basis_fns.size();
      j["max_gram_error"] = max_gram;
      j["max_eigen_residual"] = max_residual;
      j["all_horizontal"] = horizontal;
      j["ok"] = ok;
      write_output(opts, j.dump(2) + "\n");
      return ok ? 0 : 3;
    }

    if (retp->parsed()) {
      const auto probs = dlg::return_probabilities(qs, nmax, hmax);
      if (opts.format == "json") {
        json j = json_base("return-prob");
        j["params"] = {{"q", qs}, {"nmax", nmax}, {"hmax", hmax}};
        json rows = json::array();
        for (std::size_t n = 0; n < probs.size(); ++n)
          rows.push_back({{"n", n}, {"p", probs[n].value}, {"tail_bound", probs[n].tail_bound}});
        j["values"] = std::move(rows);
        write_output(opts, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << csv_header("return-prob", "q=" + qs_string(qs) + " nmax=" + std::to_string(nmax) +
                                            " hmax=" + std::to_string(hmax));
        os << "n,p_n,tail_bound\n";
        os.precision(17);
        for (std::size_t n = 0; n < probs.size(); ++n)
          os << n << ',' << probs[n].value << ',' << probs[n].tail_bound << '\n';
        write_output(opts, os.str());
      }
      return 0;
    }

    if (cayley->parsed()) {
      const dlg::AffineGroup group(make_ring(ring_kind, q_scalar, dim, ells, fields));
      if (group.dim() != dim)
        throw std::invalid_argument("cayley-verify: ring provides " +
                                    std::to_string(group.dim() - 1) + " places, need d-1");
      const auto report = dlg::cayley_ball_check(group, radius, opts.cap);
      if (!dump_file.empty()) {
        json dump = json_base("group-ball");
        dump["params"] = {{"d", dim}, {"ring", group.ring().describe()}, {"radius", radius}};
        json elems = json::array();
        for (const auto& g : dlg::group_ball(group, radius, opts.cap)) {
          json e;
          e["k"] = g.k;
          e["num"] = g.b.num;
          e["den"] = g.b.den;
          e["vertex"] = dlg::to_string(group.to_vertex(g));
          elems.push_back(std::move(e));
        }
        dump["elements"] = std::move(elems);
        std::ofstream f(dump_file);
        if (!f) throw std::invalid_argument("cannot open dump file: " + dump_file);
        f << dump.dump(2) << '\n';
      }
      json j = json_base("cayley-verify");
      j["params"] = {{"d", dim}, {"ring", group.ring().describe()}, {"radius", radius}};
      j["group_ball"] = report.group_ball;
      j["graph_ball"] = report.graph_ball;
      j["isomorphic"] = report.isomorphic;
      j["mismatches"] = report.mismatches;
      write_output(opts, j.dump(2) + "\n");
      return report.isomorphic ? 0 : 3;
    }

    if (pres->parsed()) {
      const dlg::AffineGroup group(make_ring(ring_kind, q_scalar, dim, ells, fields));
      const auto report = dlg::relator_check(group);
      json j = json_base("presentation-check");
      j["params"] = {{"d", dim}, {"ring", group.ring().describe()}};
      j["inverse_relators"] = report.inverse_relators;
      j["triangle_relators"] = report.triangle_relators;
      j["all_identities"] = report.all_identities;
      j["failures"] = report.failures;
      write_output(opts, j.dump(2) + "\n");
      return report.all_identities ? 0 : 3;
    }

    if (autom->parsed()) {
      auto ring = ells.empty()
                      ? dlg::CoefficientRing::integers_mod(q_scalar, {1, 2})
                      : dlg::CoefficientRing::integers_mod(
                            q_scalar, std::vector<dlg::RingElem>(ells.begin(), ells.end()));
      const dlg::LaurentRing lr(ring);
      std::mt19937_64 rng(opts.seed);
      bool ok = true;
      for (int t = 0; t < trials && ok; ++t) {
        std::vector<dlg::RingElem> input(static_cast<std::size_t>(depth));
        for (auto& c : input) c = static_cast<dlg::RingElem>(rng() % static_cast<unsigned>(ring.size()));
        const auto a = static_cast<dlg::RingElem>(rng() % static_cast<unsigned>(ring.size()));
        const auto machine = dlg::automaton_transform(ring, place, a, input);
        dlg::Poly f(input.begin(), input.end());
        const dlg::Laurent direct =
            lr.add(lr.constant(a), lr.mul(lr.linear(place), lr.make(std::move(f))));
        for (int i = 0; i < depth; ++i) {
          const dlg::RingElem expect =
              i < static_cast<int>(direct.num.size()) ? direct.num[static_cast<std::size_t>(i)] : 0;
          ok = ok && machine[static_cast<std::size_t>(i)] == expect;
        }
      }
      json j = json_base("automaton-check");
      j["params"] = {{"ring", ring.describe()}, {"place", place}, {"depth", depth},
                     {"trials", trials}, {"seed", opts.seed}};
      j["ok"] = ok;
      write_output(opts, j.dump(2) + "\n");
      return ok ? 0 : 3;
    }

    if (euler->parsed()) {
      const dlg::DLParams params{qs};
      const auto spec = dlg::standard_octahedron(params, radius);
      const auto cx = dlg::octahedron_complex(params, spec, opts.cap);
      json j = json_base("euler");
      j["params"] = {{"q", qs}, {"radius", radius}};
      json counts = json::array();
      counts.push_back(cx.vertices.size());
      for (const auto& level : cx.cells) counts.push_back(level.size());
      j["cells_by_dimension"] = std::move(counts);
      j["euler_characteristic"] = cx.euler_characteristic();
      j["basic"] = dlg::is_basic_octahedron(params, spec);
      write_output(opts, j.dump(2) + "\n");
      return 0;
    }

    if (simulate_cmd->parsed()) {
      dlg::WalkConfig cfg{dlg::DLParams{qs}, steps, trials, opts.seed, load_law(law_file), false};
      if (boundary) {
        const auto report = dlg::boundary_convergence(cfg);
        json j = json_base("simulate-boundary");
        j["params"] = {{"q", qs}, {"steps", steps}, {"trials", trials}, {"seed", opts.seed}};
        json coords = json::array();
        for (const auto& cr : report.coords)
          coords.push_back({{"alpha", cr.alpha},
                            {"expected_lower", cr.expected_lower},
                            {"stabilized_fraction", cr.stabilized_fraction},
                            {"mean_final_busemann", cr.mean_final_busemann},
                            {"mean_meet_level", cr.mean_meet_level},
                            {"mean_min_busemann", cr.mean_min_busemann}});
        j["coordinates"] = std::move(coords);
        write_output(opts, j.dump(2) + "\n");
        return 0;
      }
      const auto summaries = dlg::simulate(cfg);
      std::ostringstream os;
      os << csv_header("simulate", "q=" + qs_string(qs) + " steps=" + std::to_string(steps) +
                                       " trials=" + std::to_string(trials) +
                                       " seed=" + std::to_string(opts.seed));
      os << "trial,final_vertex,returned";
      for (int jx = 0; jx < cfg.params.dim(); ++jx) os << ",min_h" << jx;
      os << '\n';
      for (std::size_t t = 0; t < summaries.size(); ++t) {
        os << t << ',' << dlg::to_string(summaries[t].final_vertex) << ','
           << (summaries[t].returned_to_start ? 1 : 0);
        for (int v : summaries[t].min_busemann) os << ',' << v;
        os << '\n';
      }
      write_output(opts, os.str());
      return 0;
    }

    if (drift_cmd->parsed()) {
      dlg::WalkConfig cfg{dlg::DLParams{qs}, steps, trials, opts.seed, load_law(law_file), false};
      const auto report = dlg::drift(cfg);
      json j = json_base("drift");
      j["params"] = {{"q", qs}, {"steps", steps}, {"trials", trials}, {"seed", opts.seed}};
      j["alpha"] = report.alpha;
      if (!report.alpha_num.empty()) {
        j["alpha_num"] = report.alpha_num;
        j["alpha_den"] = report.alpha_den;
        long sum = 0;
        for (long n : report.alpha_num) sum += n;
        j["alpha_num_sum"] = sum;
      }
      j["empirical"] = report.empirical;
      j["standard_error"] = report.standard_error;
      write_output(opts, j.dump(2) + "\n");
      return 0;
    }
  } catch (const dlg::cap_exceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
