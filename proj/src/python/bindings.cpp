#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "posdef/denoise.hpp"
#include "posdef/extend.hpp"
#include "posdef/io.hpp"
#include "posdef/models.hpp"
#include "posdef/poles.hpp"
#include "posdef/spectrum.hpp"

namespace py = pybind11;
using namespace posdef;

PYBIND11_MODULE(_posdef, m) {
  m.doc() = "Positive-definite denoising, extension and pole analysis of "
            "sampled response functions";

  py::class_<SampledSignal>(m, "SampledSignal")
      .def(py::init<double, std::vector<cdouble>>(), py::arg("dt"), py::arg("values"))
      .def_readwrite("dt", &SampledSignal::dt)
      .def_readwrite("values", &SampledSignal::values)
      .def("f0", &SampledSignal::f0)
      .def("__len__", &SampledSignal::size);

  py::class_<HermitianToeplitz>(m, "HermitianToeplitz")
      .def(py::init<std::vector<cdouble>>(), py::arg("first_row"))
      .def_readwrite("first_row", &HermitianToeplitz::first_row)
      .def("f0", &HermitianToeplitz::f0)
      .def("__len__", &HermitianToeplitz::size);

  py::class_<HermitianDense>(m, "HermitianDense")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("mat"))
      .def_readwrite("mat", &HermitianDense::mat)
      .def("__len__", &HermitianDense::size);

  py::class_<EigenDecomposition>(m, "EigenDecomposition")
      .def_readonly("eigenvalues", &EigenDecomposition::eigenvalues)
      .def_readonly("eigenvectors", &EigenDecomposition::eigenvectors);

  m.def("build_gramian",
        py::overload_cast<const SampledSignal&>(&build_gramian), py::arg("signal"));
  m.def("build_gramian",
        py::overload_cast<const std::vector<cdouble>&>(&build_gramian), py::arg("values"));
  m.def("dense", &dense, py::arg("toeplitz"));
  m.def("eig_hermitian", &eig_hermitian, py::arg("matrix"));
  m.def("min_eigenvalue",
        py::overload_cast<const HermitianToeplitz&>(&min_eigenvalue), py::arg("toeplitz"));
  m.def("min_eigenvalue",
        py::overload_cast<const HermitianDense&>(&min_eigenvalue), py::arg("matrix"));
  m.def("project_psd", &project_psd, py::arg("matrix"));
  m.def("project_toeplitz", &project_toeplitz, py::arg("matrix"));
  m.def("enforce_norm", &enforce_norm, py::arg("toeplitz"), py::arg("f0"));
  m.def("cost_negative_eigs", &cost_negative_eigs, py::arg("toeplitz"));
  m.def("certify_psd", &certify_psd, py::arg("first_row"));

  py::enum_<DenoiseStrategy>(m, "DenoiseStrategy")
      .value("alternating", DenoiseStrategy::alternating)
      .value("penalty", DenoiseStrategy::penalty);

  py::class_<DenoiseOptions>(m, "DenoiseOptions")
      .def(py::init<>())
      .def_readwrite("max_iter", &DenoiseOptions::max_iter)
      .def_readwrite("conv_tol", &DenoiseOptions::conv_tol)
      .def_readwrite("f0_known", &DenoiseOptions::f0_known)
      .def_readwrite("strategy", &DenoiseOptions::strategy)
      .def_readwrite("sweeps", &DenoiseOptions::sweeps)
      .def_readwrite("golden_iters", &DenoiseOptions::golden_iters)
      .def_readwrite("bracket_sigmas", &DenoiseOptions::bracket_sigmas)
      .def_readwrite("cost_tol", &DenoiseOptions::cost_tol);

  py::class_<DenoiseReport>(m, "DenoiseReport")
      .def_readonly("strategy", &DenoiseReport::strategy)
      .def_readonly("iterations", &DenoiseReport::iterations)
      .def_readonly("converged", &DenoiseReport::converged)
      .def_readonly("final_change", &DenoiseReport::final_change)
      .def_readonly("final_cost", &DenoiseReport::final_cost)
      .def_readonly("min_eig_raw", &DenoiseReport::min_eig_raw)
      .def_readonly("min_eig", &DenoiseReport::min_eig)
      .def_readonly("sigma_est", &DenoiseReport::sigma_est)
      .def_readonly("f0_used", &DenoiseReport::f0_used)
      .def_readonly("f0_enforced", &DenoiseReport::f0_enforced)
      .def_readonly("cost_initial", &DenoiseReport::cost_initial)
      .def_readonly("history", &DenoiseReport::history);

  m.def("denoise_alternating", &denoise_alternating, py::arg("signal"),
        py::arg("options") = DenoiseOptions{});
  m.def("denoise_penalty", &denoise_penalty, py::arg("signal"),
        py::arg("options") = DenoiseOptions{});
  m.def("denoise", &denoise, py::arg("signal"), py::arg("options"));
  m.def("estimate_noise_sigma", &estimate_noise_sigma, py::arg("signal"));

  py::enum_<ExtendStrategy>(m, "ExtendStrategy")
      .value("max_min_eig", ExtendStrategy::max_min_eig)
      .value("central", ExtendStrategy::central)
      .value("pole_model", ExtendStrategy::pole_model);

  py::class_<ExtensionOptions>(m, "ExtensionOptions")
      .def(py::init<>())
      .def_readwrite("n_points", &ExtensionOptions::n_points)
      .def_readwrite("strategy", &ExtensionOptions::strategy)
      .def_readwrite("grid_points", &ExtensionOptions::grid_points)
      .def_readwrite("refine_levels", &ExtensionOptions::refine_levels)
      .def_readwrite("max_extra_levels", &ExtensionOptions::max_extra_levels)
      .def_readwrite("singular_tol", &ExtensionOptions::singular_tol)
      .def_readwrite("psd_tol", &ExtensionOptions::psd_tol)
      .def_readwrite("rank", &ExtensionOptions::rank);

  py::class_<ExtensionRecord>(m, "ExtensionRecord")
      .def_readonly("value", &ExtensionRecord::value)
      .def_readonly("area_estimate", &ExtensionRecord::area_estimate)
      .def_readonly("min_eig", &ExtensionRecord::min_eig)
      .def_readonly("unique_flag", &ExtensionRecord::unique_flag);

  py::class_<ExtensionReport>(m, "ExtensionReport")
      .def_readonly("points", &ExtensionReport::points);

  m.def("extend_one", &extend_one, py::arg("signal"),
        py::arg("options") = ExtensionOptions{});
  m.def("extend_many", &extend_many, py::arg("signal"), py::arg("options"));
  m.def("levinson_classify", &levinson_classify, py::arg("first_row"), py::arg("shift"),
        py::arg("floor_rel") = 1e-14);
  m.def("levinson_min_eig", &levinson_min_eig, py::arg("first_row"),
        py::arg("tol_rel") = 1e-13);

  py::class_<PoleModel>(m, "PoleModel")
      .def(py::init<>())
      .def_readwrite("omega", &PoleModel::omega)
      .def_readwrite("weight", &PoleModel::weight)
      .def_readwrite("dt", &PoleModel::dt)
      .def_readwrite("source_length", &PoleModel::source_length)
      .def("__len__", &PoleModel::size);

  m.def("estimate_rank", &estimate_rank, py::arg("toeplitz"),
        py::arg("singular_tol") = Tol::singular);
  m.def("decompose_cf", &decompose_cf, py::arg("toeplitz"), py::arg("rank"),
        py::arg("dt"), py::arg("grid_points") = 4096);
  m.def("music_frequencies", &music_frequencies, py::arg("toeplitz"), py::arg("rank"),
        py::arg("dt"), py::arg("grid_points") = 4096);
  m.def("extrapolate", &extrapolate, py::arg("model"), py::arg("n_total"));
  m.def("nnls", &nnls, py::arg("A"), py::arg("b"), py::arg("max_iter") = 200);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("omegas", &Spectrum::omegas)
      .def_readonly("values", &Spectrum::values)
      .def_readonly("tau", &Spectrum::tau)
      .def_readonly("dt", &Spectrum::dt);

  py::class_<PositivityReport>(m, "PositivityReport")
      .def_readonly("min_value", &PositivityReport::min_value)
      .def_readonly("fraction_below", &PositivityReport::fraction_below)
      .def_readonly("pass_", &PositivityReport::pass);

  m.def("damped_ft", &damped_ft, py::arg("signal"), py::arg("tau"), py::arg("omegas"));
  m.def("default_omega_grid", &default_omega_grid, py::arg("dt"), py::arg("n") = 2048);
  m.def("check_positivity", &check_positivity, py::arg("spectrum"), py::arg("tol"));
  m.def("truncation_tail_bound", &truncation_tail_bound, py::arg("model"),
        py::arg("n_from"), py::arg("tau"));
  m.def("find_peaks", &find_peaks, py::arg("spectrum"), py::arg("count"));

  py::class_<DimerSpec>(m, "DimerSpec")
      .def(py::init<>())
      .def_readwrite("U", &DimerSpec::U)
      .def_readwrite("eps", &DimerSpec::eps)
      .def_readwrite("v", &DimerSpec::v)
      .def_readwrite("beta", &DimerSpec::beta)
      .def_readwrite("orbital", &DimerSpec::orbital);

  py::enum_<SSHConvention>(m, "SSHConvention")
      .value("main_text", SSHConvention::main_text)
      .value("supplement", SSHConvention::supplement);

  py::class_<SSHSpec>(m, "SSHSpec")
      .def(py::init<>())
      .def_readwrite("n_sites", &SSHSpec::n_sites)
      .def_readwrite("delta", &SSHSpec::delta)
      .def_readwrite("mu", &SSHSpec::mu)
      .def_readwrite("vnn", &SSHSpec::vnn)
      .def_readwrite("k", &SSHSpec::k)
      .def_readwrite("convention", &SSHSpec::convention);

  py::enum_<NoiseTarget>(m, "NoiseTarget")
      .value("real_only", NoiseTarget::real_only)
      .value("both_parts", NoiseTarget::both_parts);

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init<>())
      .def_readwrite("sigma", &NoiseSpec::sigma)
      .def_readwrite("seed", &NoiseSpec::seed)
      .def_readwrite("target", &NoiseSpec::target);

  m.def("dimer_greens", &dimer_greens, py::arg("spec"), py::arg("dt"), py::arg("n_points"));
  m.def("dimer_hamiltonian", &dimer_hamiltonian, py::arg("spec"));
  m.def("dimer_annihilator", &dimer_annihilator, py::arg("orbital"));
  m.def("dimer_density", &dimer_density, py::arg("spec"));
  m.def("dimer_poles", &dimer_poles, py::arg("spec"), py::arg("dt"),
        py::arg("weight_cut") = 1e-12);
  m.def("ssh_greens", &ssh_greens, py::arg("spec"), py::arg("dt"), py::arg("n_points"));
  m.def("ssh_band_frequencies", &ssh_band_frequencies, py::arg("spec"));
  m.def("add_noise", &add_noise, py::arg("signal"), py::arg("noise"));

  m.def("read_signal_csv",
        py::overload_cast<const std::string&>(&read_signal_csv), py::arg("path"));
  m.def("write_signal_csv",
        py::overload_cast<const std::string&, const SampledSignal&>(&write_signal_csv),
        py::arg("path"), py::arg("signal"));
  m.def("write_pole_csv", &write_pole_csv, py::arg("path"), py::arg("model"));
  m.def("write_spectrum_csv", &write_spectrum_csv, py::arg("path"), py::arg("spectrum"));
}
