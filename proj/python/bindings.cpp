// Copyright 2026 The oscnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscnet/analysis.hpp"
#include "oscnet/chain.hpp"
#include "oscnet/config.hpp"
#include "oscnet/decoherence.hpp"
#include "oscnet/dynamics.hpp"
#include "oscnet/network.hpp"
#include "oscnet/noise.hpp"
#include "oscnet/pipeline.hpp"
#include "oscnet/protocol.hpp"

namespace py = pybind11;
using namespace oscnet;

namespace {

template <class E>
void register_error(py::module_& m, const char* name, py::handle base) {
  py::register_exception<E>(m, name, base);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Oscillator-network state reconstruction through a single probe qubit.";
  m.attr("__version__") = OSCNET_PY_VERSION;
  m.attr("build_info") = version_string();

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  register_error<InvalidArgument>(m, "InvalidArgument", error);
  register_error<UnstableNetwork>(m, "UnstableNetwork", error);
  register_error<UnstableChain>(m, "UnstableChain", error);
  register_error<DegenerateSpectrum>(m, "DegenerateSpectrum", error);
  register_error<AssumptionViolation>(m, "AssumptionViolation", error);
  register_error<IllConditioned>(m, "IllConditioned", error);
  register_error<SymmetryBreak>(m, "SymmetryBreak", error);
  register_error<NonPhysicalChi>(m, "NonPhysicalChi", error);
  register_error<TruncationLeak>(m, "TruncationLeak", error);
  register_error<RankDeficient>(m, "RankDeficient", error);
  register_error<InsufficientClosure>(m, "InsufficientClosure", error);
  register_error<ConfigError>(m, "ConfigError", error);

  py::enum_<Basis>(m, "Basis").value("local", Basis::local).value("normal", Basis::normal);

  // network
  py::class_<NetworkSpec>(m, "NetworkSpec")
      .def(py::init<Vec, Mat, Mat>(), py::arg("omega"), py::arg("J"), py::arg("K"))
      .def_static("uncoupled", &NetworkSpec::uncoupled, py::arg("omega"))
      .def_readonly("omega", &NetworkSpec::omega)
      .def_readonly("J", &NetworkSpec::J)
      .def_readonly("K", &NetworkSpec::K)
      .def_property_readonly("modes", &NetworkSpec::modes);

  py::class_<NormalModeDecomposition>(m, "NormalModeDecomposition")
      .def_readonly("nu", &NormalModeDecomposition::nu)
      .def_readonly("S1", &NormalModeDecomposition::S1)
      .def_readonly("S2", &NormalModeDecomposition::S2)
      .def_readonly("G", &NormalModeDecomposition::G)
      .def_readonly("probe", &NormalModeDecomposition::probe)
      .def_property_readonly("modes", &NormalModeDecomposition::modes)
      .def("symplectic", &NormalModeDecomposition::symplectic);

  py::class_<AssumptionReport>(m, "AssumptionReport")
      .def_readonly("a1", &AssumptionReport::a1)
      .def_readonly("a2", &AssumptionReport::a2)
      .def_readonly("near_degenerate", &AssumptionReport::near_degenerate)
      .def_readonly("min_abs_G", &AssumptionReport::min_abs_G)
      .def_readonly("min_gap", &AssumptionReport::min_gap)
      .def_readonly("weak_modes", &AssumptionReport::weak_modes)
      .def_readonly("degenerate_pairs", &AssumptionReport::degenerate_pairs)
      .def("ok", &AssumptionReport::ok);

  m.def("diagonalize", &diagonalize, py::arg("spec"), py::arg("probe") = 0);
  m.def("check_assumptions",
        [](const NormalModeDecomposition& d) { return check_assumptions(d); }, py::arg("decomp"));
  m.def("verify_symplectic", [](const NormalModeDecomposition& d) {
    const auto r = verify_symplectic(d);
    return std::make_pair(r.normalization, r.symmetry);
  });
  m.def("local_to_normal", [](const NormalModeDecomposition& d, const CVec& v) {
    return local_normal_convert(d, v, Direction::local_to_normal);
  });
  m.def("normal_to_local", [](const NormalModeDecomposition& d, const CVec& v) {
    return local_normal_convert(d, v, Direction::normal_to_local);
  });

  // chain
  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init<int, double, double>(), py::arg("N"), py::arg("omega"), py::arg("J"))
      .def_readonly("N", &ChainSpec::N)
      .def_readonly("omega", &ChainSpec::omega)
      .def_readonly("J", &ChainSpec::J)
      .def("network", &ChainSpec::network);
  m.def("chain_spectrum", &chain_spectrum);
  m.def("chain_G", &chain_G);
  m.def("chain_decomposition", &chain_decomposition);

  // protocol
  py::class_<MMatrix>(m, "MMatrix")
      .def_readonly("t", &MMatrix::t)
      .def_readonly("det", &MMatrix::det)
      .def_readonly("cond", &MMatrix::cond)
      .def("full", &MMatrix::full);
  py::class_<CouplingProfile>(m, "CouplingProfile")
      .def_readonly("B", &CouplingProfile::B)
      .def_readonly("t", &CouplingProfile::t)
      .def_readonly("decomp", &CouplingProfile::decomp)
      .def("__call__", [](const CouplingProfile& p, double s) { return evaluate_g(p, s); });

  m.def("min_interaction_time", [](const NormalModeDecomposition& d) { return min_interaction_time(d); });
  m.def("build_M",
        [](const NormalModeDecomposition& d, double t, std::optional<Vec> kappa) { return build_M(d, t, kappa); },
        py::arg("decomp"), py::arg("t"), py::arg("kappa") = std::nullopt);
  m.def(
      "synthesize_profile",
      [](const NormalModeDecomposition& d, const CVec& target, Basis basis, double t, std::optional<Vec> kappa) {
        return synthesize_profile(d, {target, basis}, t, kappa);
      },
      py::arg("decomp"), py::arg("target"), py::arg("basis") = Basis::normal, py::arg("t"),
      py::arg("kappa") = std::nullopt);
  m.def("beta_from_profile", [](const CouplingProfile& p) { return beta_from_profile(p); });
  m.def("g_max", &g_max, py::arg("profile"), py::arg("samples_per_period") = 20);
  m.def("g_rms", &g_rms);

  // dynamics
  py::class_<GaussianState>(m, "GaussianState")
      .def(py::init<Vec, Mat>(), py::arg("mean"), py::arg("cov"))
      .def_static("vacuum", &GaussianState::vacuum)
      .def_static("coherent", &GaussianState::coherent)
      .def_static("thermal", &GaussianState::thermal)
      .def_static("squeezed", &GaussianState::squeezed)
      .def_static("two_mode_squeezed", &GaussianState::two_mode_squeezed)
      .def_static("network_thermal", &GaussianState::network_thermal)
      .def_property_readonly("modes", &GaussianState::modes)
      .def_property_readonly("mean", &GaussianState::mean)
      .def_property_readonly("cov", &GaussianState::cov);
  m.def("chi_gaussian", &chi_gaussian, py::arg("state"), py::arg("xi"));
  m.def("thermal_chi", &thermal_chi, py::arg("eta"), py::arg("T"), py::arg("nu"));
  m.def("thermal_occupation", &thermal_occupation);
  m.def("ideal_measurement", [](cplx chi) { return ideal_measurement(chi).signal(); });

  // decoherence
  py::class_<DecoherenceSpec>(m, "DecoherenceSpec")
      .def(py::init([](Vec kappa, Vec Nbar, double G1, double G2, double Nq) {
             DecoherenceSpec d{std::move(kappa), std::move(Nbar), G1, G2, Nq};
             d.validate();
             return d;
           }),
           py::arg("kappa"), py::arg("Nbar"), py::arg("Gamma1") = 0.0, py::arg("Gamma2") = 0.0,
           py::arg("Nq") = 0.0)
      .def_static("thermal_bath", &DecoherenceSpec::thermal_bath)
      .def_readonly("kappa", &DecoherenceSpec::kappa)
      .def_readonly("Nbar", &DecoherenceSpec::Nbar);
  m.def("eta_from_profile", &eta_from_profile);
  m.def("damping_factor",
        [](const CouplingProfile& p, const DecoherenceSpec& d) { return damping_factor(p, d); });

  // noise
  m.def("delta_beta_covariance", &delta_beta_covariance, py::arg("decomp"), py::arg("t"), py::arg("eps"));
  m.def("resolution_spectrum", &resolution_spectrum);
  m.def(
      "monte_carlo_delta_beta",
      [](const NormalModeDecomposition& d, double t, double eps, std::uint64_t realizations, std::uint64_t seed,
         double dt) {
        MonteCarloOptions o;
        o.realizations = realizations;
        o.seed = seed;
        o.dt = dt;
        const auto r = monte_carlo_delta_beta(d, t, eps, o);
        return std::make_pair(r.cov, r.cov_stderr);
      },
      py::arg("decomp"), py::arg("t"), py::arg("eps"), py::arg("realizations") = 10000, py::arg("seed") = 0,
      py::arg("dt") = 0.0);

  // analysis
  py::class_<ChiSample>(m, "ChiSample")
      .def(py::init<CVec, cplx, double>(), py::arg("point"), py::arg("value"), py::arg("err"))
      .def_readonly("point", &ChiSample::point)
      .def_readonly("value", &ChiSample::value)
      .def_readonly("err", &ChiSample::err);
  py::class_<MomentFit>(m, "MomentFit")
      .def_readonly("order", &MomentFit::order)
      .def_readonly("mean", &MomentFit::mean)
      .def_readonly("mean_stderr", &MomentFit::mean_stderr)
      .def_readonly("number", &MomentFit::number)
      .def_readonly("anomalous", &MomentFit::anomalous)
      .def_readonly("used_samples", &MomentFit::used_samples);
  m.def("fit_moments", [](const std::vector<ChiSample>& s, int order) { return fit_moments(s, order); },
        py::arg("samples"), py::arg("order"));
  py::class_<TemperatureEstimate>(m, "TemperatureEstimate")
      .def_readonly("T", &TemperatureEstimate::T)
      .def_readonly("residual", &TemperatureEstimate::residual)
      .def_readonly("threshold", &TemperatureEstimate::threshold)
      .def_readonly("not_thermal", &TemperatureEstimate::not_thermal);
  m.def("estimate_temperature",
        [](const std::vector<ChiSample>& s, const Vec& nu) { return estimate_temperature(s, nu); });
  py::class_<BochnerResult>(m, "BochnerResult")
      .def_readonly("min_eigenvalue", &BochnerResult::min_eigenvalue)
      .def_readonly("tol", &BochnerResult::tol)
      .def_readonly("passed", &BochnerResult::pass)
      .def_readonly("normalized", &BochnerResult::normalized);
  m.def("bochner_check", [](const std::vector<ChiSample>& s) { return bochner_check(s); });
  m.def("difference_set", &difference_set, py::arg("nodes"), py::arg("tol") = 1e-12);

  // pipeline
  m.def(
      "run_config",
      [](const std::string& text) {
        const auto out = run(parse_config(text));
        std::vector<std::pair<CVec, cplx>> rows;
        for (const auto& r : out.records) rows.emplace_back(r.point, r.chi_corrected);
        return py::make_tuple(rows, out.files, out.t);
      },
      py::arg("config_json"), "Run a JSON experiment configuration; returns (points, files, t).");
  m.def("default_config", &default_config_json);
}
