#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frogsim/aux_chain.hpp"
#include "frogsim/experiments.hpp"
#include "frogsim/frog_sync.hpp"
#include "frogsim/oracle.hpp"

namespace py = pybind11;
using namespace frogsim;

namespace {

SimParams make_params(long long m, double p, const std::string& eta, uint64_t seed,
                      uint64_t stream, bool conditional_root) {
    SimParams params;
    params.m = m;
    params.p = p;
    params.eta = EtaSpec::parse(eta);
    params.seed_master = seed;
    params.seed_stream = stream;
    params.conditional_root = conditional_root;
    params.validate();
    return params;
}

}  // namespace

PYBIND11_MODULE(_frogsim, m) {
    m.doc() = "Frog-model coverage laboratory on complete graphs";

    py::register_exception<ConfigError>(m, "FrogConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "FrogDomainError", PyExc_ValueError);
    py::register_exception<SizeError>(m, "FrogSizeError", PyExc_ValueError);

    py::class_<TrialOutcome>(m, "TrialOutcome")
        .def_readonly("v_infty", &TrialOutcome::v_infty)
        .def_readonly("total_steps", &TrialOutcome::total_steps)
        .def_readonly("rounds_elapsed", &TrialOutcome::rounds_elapsed)
        .def_readonly("capped", &TrialOutcome::capped)
        .def("__repr__", [](const TrialOutcome& t) {
            return "TrialOutcome(v_infty=" + std::to_string(t.v_infty) +
                   ", rounds=" + std::to_string(t.rounds_elapsed) + ")";
        });

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("n", &ResultRow::n)
        .def_readonly("p_n", &ResultRow::p_n)
        .def_readonly("event", &ResultRow::event)
        .def_readonly("trials", &ResultRow::trials)
        .def_readonly("successes", &ResultRow::successes)
        .def_readonly("p_hat", &ResultRow::p_hat)
        .def_readonly("ci_low", &ResultRow::ci_low)
        .def_readonly("ci_high", &ResultRow::ci_high)
        .def_readonly("valid", &ResultRow::valid);

    m.def(
        "simulate_aux",
        [](long long m_, double p, const std::string& eta, uint64_t seed, uint64_t stream,
           bool conditional_root) {
            return simulate_aux(make_params(m_, p, eta, seed, stream, conditional_root));
        },
        py::arg("m"), py::arg("p"), py::arg("eta") = "constant:1", py::arg("seed") = 0,
        py::arg("stream") = 0, py::arg("conditional_root") = false,
        "Collapsed one-particle-per-round chain; returns the trial outcome.");

    m.def(
        "simulate_frog_sync",
        [](long long m_, double p, const std::string& eta, uint64_t seed, uint64_t stream,
           bool conditional_root) {
            return simulate_frog_sync(make_params(m_, p, eta, seed, stream, conditional_root));
        },
        py::arg("m"), py::arg("p"), py::arg("eta") = "constant:1", py::arg("seed") = 0,
        py::arg("stream") = 0, py::arg("conditional_root") = false,
        "Synchronous per-particle reference simulator.");

    m.def(
        "exact_vinf_distribution",
        [](long long m_, double p, const std::string& eta, bool conditional_root) {
            return exact_vinf_distribution(m_, p, EtaSpec::parse(eta), conditional_root).masses;
        },
        py::arg("m"), py::arg("p"), py::arg("eta") = "constant:1",
        py::arg("conditional_root") = false,
        "Exact law of V_infty as a list of masses for v = 1..m (m <= 16).");

    m.def(
        "estimate_event",
        [](long long m_, double p, const std::string& eta, const std::string& event,
           long long trials, uint64_t seed, int threads, bool conditional_root) {
            return estimate_event(make_params(m_, p, eta, seed, 0, conditional_root),
                                  EventSpec::parse(event), trials, seed, threads);
        },
        py::arg("m"), py::arg("p"), py::arg("eta") = "constant:1", py::arg("event") = "full",
        py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("threads") = 1,
        py::arg("conditional_root") = false,
        "Monte Carlo coverage-event estimate with a 95% Wilson interval.");

    m.def(
        "coupon_tau_moments",
        [](long long n) { return coupon_tau_moments(n); }, py::arg("n"),
        "(mean, variance) of the full coupon-collection time.");

    m.def(
        "branching_extinction",
        [](const std::vector<double>& masses) {
            OffspringPmf pmf;
            pmf.masses = masses;
            return branching_extinction(pmf);
        },
        py::arg("pmf"), "Smallest fixed point of the offspring generating function.");

    m.def(
        "make_z_pmf",
        [](double p, double c, const std::string& eta) {
            return make_z_pmf(p, c, EtaSpec::parse(eta)).masses;
        },
        py::arg("p"), py::arg("c"), py::arg("eta"),
        "Three-point comparison offspring law on {0,1,2}.");

    m.def(
        "wilson95",
        [](long long successes, long long trials) {
            auto ci = wilson95(successes, trials);
            return std::make_pair(ci.low, ci.high);
        },
        py::arg("successes"), py::arg("trials"));
}
