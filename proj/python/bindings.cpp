#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlgraph/cayley.hpp"
#include "dlgraph/cell_complex.hpp"
#include "dlgraph/json_io.hpp"
#include "dlgraph/random_walk.hpp"
#include "dlgraph/spectral_basis.hpp"

namespace py = pybind11;
using namespace dlg;

namespace {

CoefficientRing ring_from_args(int d, int q, const std::vector<std::pair<int, int>>& fields) {
  if (fields.empty()) return CoefficientRing::integers_mod_default(q, d);
  std::vector<FieldSpec> specs;
  for (const auto& [p, s] : fields) specs.push_back(FieldSpec{p, s});
  return CoefficientRing::field_product_default(std::move(specs), d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diestel-Leader graphs: spectra, Cayley structure, cells, walks";
  m.attr("__version__") = kLibraryVersion;

  py::class_<TreeVertex>(m, "TreeVertex")
      .def(py::init([](int h, std::vector<Label> word) {
             return canonicalize(TreeVertex{h, std::move(word)});
           }),
           py::arg("h") = 0, py::arg("word") = std::vector<Label>{})
      .def_readonly("h", &TreeVertex::h)
      .def_readonly("word", &TreeVertex::word)
      .def("__str__", [](const TreeVertex& v) { return to_string(v); })
      .def("__eq__", [](const TreeVertex& a, const TreeVertex& b) { return a == b; });

  m.def("predecessor", &predecessor);
  m.def("successor", &successor, py::arg("v"), py::arg("label"), py::arg("q"));
  m.def("confluent", &confluent);
  m.def("tree_distance", [](const TreeVertex& a, const TreeVertex& b) { return distance(a, b); });
  m.def("coarsen", &coarsen, py::arg("v"), py::arg("s"), py::arg("q"));

  m.def(
      "growth",
      [](const std::vector<int>& qs, int radius, std::size_t cap) {
        return growth(DLParams{qs}, radius, cap);
      },
      py::arg("qs"), py::arg("radius"), py::arg("cap") = kDefaultBallCap);

  m.def(
      "ball_dump",
      [](const std::vector<int>& qs, int radius, std::size_t cap) {
        const DLParams params{qs};
        const auto g = ball(params, dl_origin(params), radius, cap);
        py::dict out;
        out["params"] = g.params.qs;
        py::list verts;
        for (const auto& v : g.vertices) verts.append(to_string(v));
        out["vertices"] = std::move(verts);
        out["edges"] = g.edge_list();
        out["distances"] = g.distance;
        return out;
      },
      py::arg("qs"), py::arg("radius"), py::arg("cap") = kDefaultBallCap);

  m.def("degree", [](const std::vector<int>& qs) { return DLParams{qs}.degree(); });

  m.def("spec_interval", [](const std::vector<int>& qs) {
    const auto s = spec_interval(qs);
    return std::make_pair(s.rho_prime, s.rho);
  });
  m.def("spec_union", &spec_union, py::arg("qs"), py::arg("hmax"), py::arg("dedup_tol") = 1e-9);
  m.def(
      "dirichlet_eigenvalues",
      [](const std::vector<int>& qs, int h) {
        std::vector<double> out;
        for (const auto& p : eig_sym(dirichlet_matrix(qs, h))) out.push_back(p.eigenvalue);
        return out;
      },
      py::arg("qs"), py::arg("h"));
  m.def(
      "triangle_eigenvalue",
      [](const std::vector<int>& mk, int h) { return lambda_d3(LatticePoint{mk}, h); },
      py::arg("m"), py::arg("h"));
  m.def(
      "triangle_eigenfunction",
      [](const std::vector<int>& mk, int h, const std::vector<int>& kk) {
        return psi_d3(LatticePoint{mk}, h, LatticePoint{kk});
      },
      py::arg("m"), py::arg("h"), py::arg("k"));

  m.def(
      "return_probabilities",
      [](const std::vector<int>& qs, int nmax, int hmax) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : return_probabilities(qs, nmax, hmax))
          out.emplace_back(r.value, r.tail_bound);
        return out;
      },
      py::arg("qs"), py::arg("nmax"), py::arg("hmax") = 40);
  m.def(
      "exact_return_probabilities",
      [](const std::vector<int>& qs, int nmax, std::size_t cap) {
        return exact_return_probabilities(DLParams{qs}, nmax, cap);
      },
      py::arg("qs"), py::arg("nmax"), py::arg("cap") = kDefaultBallCap);
  m.def(
      "plancherel_mass",
      [](const std::vector<int>& qs, int hmax) {
        const auto set = plancherel_atoms(qs, hmax);
        double sum = 0.0;
        for (const auto& a : set.atoms) sum += a.weight;
        return std::make_pair(sum, set.tail_mass);
      },
      py::arg("qs"), py::arg("hmax"));

  m.def(
      "basis_report",
      [](const std::vector<int>& qs, const std::vector<int>& depths, std::size_t cap) {
        const DLParams params{qs};
        std::vector<TreeVertex> anchors;
        for (int r : depths) anchors.push_back(TreeVertex{-r, {}});
        const auto poly = make_polyhedron(params, std::move(anchors));
        const auto basis = basis_for_polyhedron(params, poly, cap);
        double max_gram = 0.0, max_residual = 0.0;
        bool horizontal = true;
        for (std::size_t a = 0; a < basis.size(); ++a) {
          horizontal = horizontal && is_horizontal(params, basis[a].values);
          const auto pg = apply_P(params, basis[a].values);
          for (const auto& [v, x] : pg) {
            auto it = basis[a].values.find(v);
            const double want =
                basis[a].eigenvalue * (it == basis[a].values.end() ? 0.0 : it->second);
            max_residual = std::max(max_residual, std::abs(x - want));
          }
          for (std::size_t b = a; b < basis.size(); ++b)
            max_gram = std::max(max_gram, std::abs(inner(basis[a].values, basis[b].values) -
                                                   (a == b ? 1.0 : 0.0)));
        }
        py::dict out;
        out["basis_size"] = basis.size();
        out["max_gram_error"] = max_gram;
        out["max_eigen_residual"] = max_residual;
        out["all_horizontal"] = horizontal;
        return out;
      },
      py::arg("qs"), py::arg("depths"), py::arg("cap") = 200000);

  m.def(
      "cayley_verify",
      [](int d, int q, int radius, const std::vector<std::pair<int, int>>& fields,
         std::size_t cap) {
        const AffineGroup group(ring_from_args(d, q, fields));
        const auto report = cayley_ball_check(group, radius, cap);
        py::dict out;
        out["ring"] = group.ring().describe();
        out["isomorphic"] = report.isomorphic;
        out["group_ball"] = report.group_ball;
        out["graph_ball"] = report.graph_ball;
        out["mismatches"] = report.mismatches;
        return out;
      },
      py::arg("d"), py::arg("q") = 2, py::arg("radius") = 2,
      py::arg("fields") = std::vector<std::pair<int, int>>{}, py::arg("cap") = kDefaultBallCap);

  m.def(
      "presentation_check",
      [](int d, int q, const std::vector<std::pair<int, int>>& fields) {
        const AffineGroup group(ring_from_args(d, q, fields));
        const auto report = relator_check(group);
        py::dict out;
        out["ring"] = group.ring().describe();
        out["all_identities"] = report.all_identities;
        out["inverse_relators"] = report.inverse_relators;
        out["triangle_relators"] = report.triangle_relators;
        return out;
      },
      py::arg("d"), py::arg("q") = 2, py::arg("fields") = std::vector<std::pair<int, int>>{});

  m.def(
      "automaton_transform",
      [](int q, const std::vector<unsigned>& ells, int place, unsigned a,
         const std::vector<unsigned>& input) {
        const auto ring =
            CoefficientRing::integers_mod(q, std::vector<RingElem>(ells.begin(), ells.end()));
        std::vector<RingElem> letters(input.begin(), input.end());
        return automaton_transform(ring, place, a, letters);
      },
      py::arg("q"), py::arg("ells"), py::arg("place"), py::arg("a"), py::arg("input"));

  m.def(
      "octahedron_report",
      [](const std::vector<int>& qs, int radius) {
        const DLParams params{qs};
        const auto spec = standard_octahedron(params, radius);
        const auto cx = octahedron_complex(params, spec);
        py::dict out;
        std::vector<std::size_t> counts{cx.vertices.size()};
        for (const auto& level : cx.cells) counts.push_back(level.size());
        out["cells_by_dimension"] = counts;
        out["euler_characteristic"] = cx.euler_characteristic();
        out["basic"] = is_basic_octahedron(params, spec);
        return out;
      },
      py::arg("qs"), py::arg("radius"));

  m.def(
      "drift_report",
      [](const std::vector<int>& qs, int steps, int trials, std::uint64_t seed) {
        WalkConfig cfg{DLParams{qs}, steps, trials, seed, {}, false};
        const auto r = drift(cfg);
        py::dict out;
        out["alpha"] = r.alpha;
        out["alpha_num"] = r.alpha_num;
        out["alpha_den"] = r.alpha_den;
        out["empirical"] = r.empirical;
        out["standard_error"] = r.standard_error;
        return out;
      },
      py::arg("qs"), py::arg("steps"), py::arg("trials"), py::arg("seed") = 0);

  m.def(
      "boundary_report",
      [](const std::vector<int>& qs, int steps, int trials, std::uint64_t seed) {
        WalkConfig cfg{DLParams{qs}, steps, trials, seed, {}, false};
        const auto r = boundary_convergence(cfg);
        py::list coords;
        for (const auto& c : r.coords) {
          py::dict e;
          e["alpha"] = c.alpha;
          e["expected_lower"] = c.expected_lower;
          e["stabilized_fraction"] = c.stabilized_fraction;
          e["mean_final_busemann"] = c.mean_final_busemann;
          coords.append(std::move(e));
        }
        return coords;
      },
      py::arg("qs"), py::arg("steps"), py::arg("trials"), py::arg("seed") = 0);
}
