#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coclab/hs.hpp"
#include "coclab/version.hpp"
#include "coclab/reports.hpp"
#include "coclab/version.hpp"
#include "coclab/wold.hpp"

namespace py = pybind11;
using namespace coclab;

PYBIND11_MODULE(_cocycle_lab, m) {
    m.doc() = "Markovian cocycle perturbations of the shift flow: grids, Blaschke "
              "multipliers, model spaces, cocycles, Wold analysis, Hilbert-Schmidt "
              "diagnostics and Wiener-process Monte Carlo";
    m.attr("__version__") = kToolVersion;

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("x_min", &GridSpec::x_min)
        .def_readonly("x_max", &GridSpec::x_max)
        .def_readonly("n", &GridSpec::n)
        .def_property_readonly("dx", &GridSpec::dx)
        .def("node", &GridSpec::node)
        .def("midpoint", &GridSpec::midpoint)
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(x_min=" + std::to_string(g.x_min) +
                   ", x_max=" + std::to_string(g.x_max) + ", n=" + std::to_string(g.n) + ")";
        });
    m.def("build_grid", &build_grid, py::arg("x_min"), py::arg("x_max"), py::arg("n"));

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init<const GridSpec&>())
        .def_readonly("grid", &GridFunction::grid)
        .def_property(
            "values", [](const GridFunction& f) { return f.values; },
            [](GridFunction& f, const std::vector<cplx>& v) {
                if (static_cast<int>(v.size()) != f.grid.n)
                    throw std::invalid_argument("value count does not match grid");
                f.values = v;
            })
        .def("norm", &GridFunction::norm)
        .def("norm2", &GridFunction::norm2)
        .def("__add__", [](const GridFunction& a, const GridFunction& b) { return a + b; })
        .def("__sub__", [](const GridFunction& a, const GridFunction& b) { return a - b; })
        .def("__rmul__", [](const GridFunction& f, cplx c) { return c * f; });

    m.def("indicator", &indicator, py::arg("grid"), py::arg("a"), py::arg("b"));
    m.def("sample_function", &sample_function, py::arg("grid"), py::arg("f"));
    m.def("inner_product", &inner_product);
    m.def("shift",
          [](const GridFunction& f, double t) {
              const ShiftResult r = shift(f, t);
              return py::make_tuple(r.fn, r.mass_lost);
          },
          py::arg("f"), py::arg("t"), "returns (shifted, mass_lost)");
    m.def("project_interval", &project_interval, py::arg("f"), py::arg("a"), py::arg("b"));

    py::class_<BlaschkeProduct>(m, "BlaschkeProduct")
        .def(py::init<std::vector<cplx>>())
        .def_readonly("zeros", &BlaschkeProduct::zeros)
        .def("degree", &BlaschkeProduct::degree)
        .def("sum_abs_re", &BlaschkeProduct::sum_abs_re)
        .def("eval", &BlaschkeProduct::eval)
        .def("partial_fraction_residues", &BlaschkeProduct::partial_fraction_residues);

    py::enum_<MultiplierBackend>(m, "MultiplierBackend")
        .value("causal_convolution", MultiplierBackend::causal_convolution)
        .value("boundary_fft", MultiplierBackend::boundary_fft);
    m.def("blaschke_eval", &blaschke_eval);
    m.def("apply_inner_multiplier", &apply_inner_multiplier, py::arg("b"), py::arg("f"),
          py::arg("backend") = MultiplierBackend::causal_convolution);
    m.def("laplace_at", &laplace_at);
    m.def("parseval_defect", &parseval_defect);
    m.def("asymptotic_check_b3", [](const BlaschkeProduct& b, double probe) {
        const B3Report r = asymptotic_check_b3(b, probe);
        return py::dict(py::arg("slope_estimate") = r.slope_estimate,
                        py::arg("predicted") = r.predicted,
                        py::arg("rel_deviation") = r.rel_deviation, py::arg("pass") = r.pass);
    });
    m.def("b2_identity_check", [](const BlaschkeProduct& b, cplx mu, double tol) {
        const B2Report r = b2_identity_check(b, mu, tol);
        return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs,
                        py::arg("abs_error") = r.abs_error, py::arg("pass") = r.pass);
    }, py::arg("b"), py::arg("mu"), py::arg("tol") = 1e-6);

    py::class_<ModelSpace>(m, "ModelSpace")
        .def_readonly("basis_g", &ModelSpace::basis_g)
        .def_readonly("frequencies", &ModelSpace::frequencies)
        .def("dim", &ModelSpace::dim);
    m.def("orthonormalize_exponentials", &orthonormalize_exponentials);

    py::enum_<ModelProjection>(m, "ModelProjection")
        .value("onto_Vperp", ModelProjection::onto_Vperp)
        .value("onto_V", ModelProjection::onto_V);
    m.def("model_projection", &model_projection);
    m.def("rotation_apply", &rotation_apply, py::arg("m"), py::arg("f"), py::arg("t"),
          py::arg("residual_tol") = 1e-8);

    py::enum_<CocycleVariant>(m, "CocycleVariant")
        .value("literal_minus", CocycleVariant::literal_minus)
        .value("plus_corrected", CocycleVariant::plus_corrected)
        .value("shift_first", CocycleVariant::shift_first);

    py::class_<MarkovianCocycle>(m, "MarkovianCocycle")
        .def_readonly("variant", &MarkovianCocycle::variant)
        .def_readonly("grid", &MarkovianCocycle::grid)
        .def_property_readonly("model",
                               [](const MarkovianCocycle& w) { return w.model; });
    m.def("make_cocycle", &make_cocycle, py::arg("b"), py::arg("grid"),
          py::arg("variant") = CocycleVariant::plus_corrected);
    m.def("cocycle_apply", &cocycle_apply);
    m.def("verify_cocycle_identity", [](const MarkovianCocycle& w, double s, double t,
                                        const std::vector<GridFunction>& corpus, double tol) {
        const ResidualReport r = verify_cocycle_identity(w, s, t, corpus, tol);
        return py::dict(py::arg("max_residual") = r.max_residual, py::arg("pass") = r.pass);
    }, py::arg("w"), py::arg("s"), py::arg("t"), py::arg("corpus"), py::arg("tol") = 1e-6);
    m.def("verify_markov_m1", [](const MarkovianCocycle& w, double t,
                                 const std::vector<GridFunction>& corpus, double tol) {
        const ResidualReport r = verify_markov_m1(w, t, corpus, tol);
        return py::dict(py::arg("max_residual") = r.max_residual, py::arg("pass") = r.pass);
    }, py::arg("w"), py::arg("t"), py::arg("corpus"), py::arg("tol") = 1e-12);
    m.def("make_verification_corpus", &make_verification_corpus, py::arg("grid"),
          py::arg("lo") = -2.0, py::arg("hi") = 1.0, py::arg("seed") = 0xC0C1C1EULL);
    m.def("spiral", &spiral);
    m.def("perturbed_spiral", &perturbed_spiral);

    m.def("sample_paths", &sample_paths, py::arg("dt"), py::arg("horizon"), py::arg("n_paths"),
          py::arg("seed"));
    py::class_<BrownianBatch>(m, "BrownianBatch")
        .def_readonly("dt", &BrownianBatch::dt)
        .def_readonly("horizon", &BrownianBatch::horizon)
        .def_readonly("n_paths", &BrownianBatch::n_paths)
        .def_readonly("seed", &BrownianBatch::seed)
        .def("path", &BrownianBatch::path);
    py::enum_<WienerVariant>(m, "WienerVariant")
        .value("literal_W", WienerVariant::literal_W)
        .value("girsanov_unitary", WienerVariant::girsanov_unitary);
    m.def("constant_drift_config", &constant_drift_config);
    py::class_<WienerCocycleConfig>(m, "WienerCocycleConfig")
        .def_readonly("variant", &WienerCocycleConfig::variant)
        .def_readonly("t", &WienerCocycleConfig::t);
    m.def("apply_wiener_cocycle", &apply_wiener_cocycle);
    m.def("mc_isometry_test", [](const BrownianBatch& b, const WienerCocycleConfig& cfg,
                                 const std::vector<double>& probes, double threshold) {
        const McReport r = mc_isometry_test(b, cfg, probes, threshold);
        return py::dict(py::arg("z_scores") = r.z_scores, py::arg("max_abs_z") = r.max_abs_z,
                        py::arg("pass") = r.pass);
    }, py::arg("b"), py::arg("cfg"), py::arg("probes"), py::arg("threshold") = 3.0);

    m.def("mc_density_martingale", [](const BrownianBatch& b, const WienerCocycleConfig& cfg,
                                      double threshold) {
        const McReport r = mc_density_martingale(b, cfg, threshold);
        return py::dict(py::arg("mean") = r.details.front(), py::arg("z") = r.z_scores.front(),
                        py::arg("pass") = r.pass);
    }, py::arg("b"), py::arg("cfg"), py::arg("threshold") = 3.0);
    m.def("mc_cocycle_test", [](const BrownianBatch& b, const WienerCocycleConfig& cfg, double s,
                                double t, const std::vector<double>& probes, double threshold) {
        const McReport r = mc_cocycle_test(b, cfg, s, t, probes, threshold);
        return py::dict(py::arg("z_scores") = r.z_scores, py::arg("max_abs_z") = r.max_abs_z,
                        py::arg("pass") = r.pass);
    }, py::arg("b"), py::arg("cfg"), py::arg("s"), py::arg("t"), py::arg("probes"),
       py::arg("threshold") = 3.0);

    m.def("hs_defect_norm", [](const MarkovianCocycle& w, double t, int basis_dim) {
        const HsReport r = hs_defect_norm(w, t, basis_dim);
        return py::dict(py::arg("total") = r.total, py::arg("basis_dim") = r.basis_dim,
                        py::arg("partial_sums_r1") = r.partial_sums_r1,
                        py::arg("partial_sums_r2") = r.partial_sums_r2);
    });
    m.def("series_r1_r2", [](const MarkovianCocycle& w, double t, int K) {
        const HsReport r = series_r1_r2(w, t, K);
        return py::dict(py::arg("terms_r2") = r.terms_r2, py::arg("tail_slope") = r.tail_slope,
                        py::arg("backend_gap") = r.backend_gap, py::arg("total") = r.total);
    });
    m.def("make_riesz_basis", [](const GridSpec& g, double t, int K, bool include_k0) {
        const RieszExponentialBasis rb = make_riesz_basis(g, t, K, include_k0);
        return py::dict(py::arg("ks") = rb.ks, py::arg("mu") = rb.mu,
                        py::arg("frame_lower_bound") = rb.frame_lower_bound);
    }, py::arg("grid"), py::arg("t"), py::arg("K"), py::arg("include_k0") = true);
    m.def("feldman_check", [](const BlaschkeProduct& b, const GridSpec& g,
                              const std::vector<int>& dims, const std::vector<double>& rdiag,
                              double t) {
        const FeldmanReport r = feldman_check(b, g, dims, rdiag, t);
        return py::dict(py::arg("dims") = r.dims, py::arg("commutator_hs") = r.commutator_hs,
                        py::arg("covariance_change") = r.covariance_change,
                        py::arg("saturation_ratio") = r.saturation_ratio,
                        py::arg("pass") = r.pass);
    }, py::arg("b"), py::arg("grid"), py::arg("dims"), py::arg("R_diag"), py::arg("t") = 1.0);

    py::class_<IsometrySemigroup>(m, "IsometrySemigroup")
        .def("apply", [](const IsometrySemigroup& v, const GridFunction& f, double t) {
            return v.apply(f, t);
        });
    m.def("make_shift_semigroup", &make_shift_semigroup);
    m.def("make_perturbed_semigroup", &make_perturbed_semigroup);
    m.def("index_estimate", &index_estimate);
    py::class_<WoldSplit>(m, "WoldSplit")
        .def_readonly("converged", &WoldSplit::converged)
        .def_readonly("iterations", &WoldSplit::iterations)
        .def_readonly("angles", &WoldSplit::angles)
        .def_readonly("max_witness_overlap", &WoldSplit::max_witness_overlap)
        .def_property_readonly("dim", [](const WoldSplit& s) {
            return s.unitary_part.basis.size();
        })
        .def_property_readonly("basis", [](const WoldSplit& s) { return s.unitary_part.basis; });
    m.def("wold_split", &wold_split, py::arg("v"), py::arg("m"), py::arg("t_probe") = 2.0,
          py::arg("depth") = 18);
    m.def("unitary_part_spectrum", &unitary_part_spectrum);
    m.def("noncorrelated_increments_check",
          [](const MarkovianCocycle& w, const std::vector<double>& times, double tol) {
              const IncrementReport r = noncorrelated_increments_check(w, times, tol);
              return py::dict(py::arg("max_offdiag") = r.max_offdiag, py::arg("pass") = r.pass);
          }, py::arg("w"), py::arg("times"), py::arg("tol") = 1e-6);
    m.def("adjudicate_variants", [](const GridSpec& g, double tol) {
        const AdjudicationReport r = adjudicate_variants(g, tol);
        py::list rows;
        for (const AdjudicationRow& row : r.rows)
            rows.append(py::dict(py::arg("variant") = to_string(row.variant),
                                 py::arg("zeros") = row.zero_set,
                                 py::arg("cocycle_residual") = row.cocycle_residual,
                                 py::arg("unitarity_defect") = row.unitarity_defect,
                                 py::arg("markov_residual") = row.markov_residual));
        return py::dict(py::arg("rows") = rows, py::arg("selected") = to_string(r.selected),
                        py::arg("unique_winner") = r.unique_winner);
    }, py::arg("grid"), py::arg("tol") = 1e-6);
    m.def("unitarity_defect", &unitarity_defect);

    m.def("run_config", [](const std::string& path, bool parallel) {
        std::vector<py::dict> out;
        for (const Report& r : run_config(path, parallel)) {
            py::dict d;
            d["command"] = r.command;
            d["pass"] = r.pass;
            d["payload"] = r.payload().dump();
            out.push_back(d);
        }
        return out;
    }, py::arg("path"), py::arg("parallel") = false);
    m.def("parse_config_text", [](const std::string& text) {
        parse_config(text);  // throws on rejection
        return true;
    });
}
