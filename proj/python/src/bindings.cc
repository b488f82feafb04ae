// Copyright 2026 The Triortho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary vectors cross the boundary as '0'/'1' strings, bit i first.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <thread>

#include "triortho/codes.h"
#include "triortho/cost.h"
#include "triortho/distill.h"
#include "triortho/gf2.h"
#include "triortho/logical.h"
#include "triortho/simulator.h"

namespace py = pybind11;
using namespace triortho;

namespace {

std::vector<std::string> rows_of(const BitMatrix &m) {
    std::vector<std::string> out;
    for (const auto &r : m.row_vectors()) out.push_back(r.str());
    return out;
}

std::vector<std::string> strs(const std::vector<BitVector> &vs) {
    std::vector<std::string> out;
    for (const auto &v : vs) out.push_back(v.str());
    return out;
}

ErrorModel make_model(double p, const std::optional<std::vector<double>> &weights) {
    ErrorModel m = ErrorModel::uniform(p);
    if (weights) {
        if (weights->size() != kErrorClasses) throw std::invalid_argument("class_weights needs 7 entries");
        std::copy(weights->begin(), weights->end(), m.class_weights.begin());
    }
    m.validate();
    return m;
}

std::vector<InjectedFault> make_faults(const std::vector<std::pair<size_t, unsigned>> &faults) {
    std::vector<InjectedFault> out;
    for (auto [site, cls] : faults) out.push_back({site, cls});
    return out;
}

py::dict cost_result(const CostResult &r) {
    py::dict d;
    d["expected_t_count"] = r.expected_t_count;
    d["achieved_error"] = r.achieved_error;
    d["top_k"] = r.top_k();
    py::list stack;
    for (const auto &l : r.stack) {
        py::dict level;
        level["protocol"] = l.protocol.name;
        level["family"] = l.protocol.family;
        level["input_error"] = l.input_error;
        level["output_error"] = l.output_error;
        level["success_prob"] = l.success_prob;
        level["cost"] = l.cost;
        stack.append(level);
    }
    d["stack"] = stack;
    return d;
}

CostQuery make_query(double target, double physical, int max_depth, const std::string &menu,
                     const std::optional<std::string> &top_family) {
    CostQuery q;
    q.target_error = target;
    q.physical_t_error = physical;
    q.max_depth = max_depth;
    if (menu == "default") {
        q.menu = default_menu();
    } else if (menu == "t") {
        q.menu = default_t_menu();
    } else {
        q.menu = parse_menu_json(menu);
    }
    q.top_family = top_family;
    return q;
}

}  // namespace

PYBIND11_MODULE(_triortho, m) {
    m.doc() = "Triorthogonal codes: transversal CCZ, logical Hadamard, Toffoli distillation and T cost.";

    py::register_exception<EnumerationGuardError>(m, "EnumerationGuardError", PyExc_RuntimeError);
    py::register_exception<InfeasibleTarget>(m, "InfeasibleTarget", PyExc_RuntimeError);

    m.def(
        "check_orthogonality",
        [](const std::vector<std::string> &rows, size_t level) {
            auto v = check_orthogonality(BitMatrix::from_strings(rows), level);
            return py::make_tuple(v.pass, v.violation);
        },
        py::arg("rows"), py::arg("level") = 3, "(pass, first violating row tuple) for a 0/1 row list");
    m.def(
        "rank", [](const std::vector<std::string> &rows) { return BitMatrix::from_strings(rows).rank(); },
        py::arg("rows"));

    py::class_<TriorthogonalMatrix>(m, "TriorthogonalMatrix")
        .def(py::init([](const std::vector<std::string> &rows, size_t level) {
                 return TriorthogonalMatrix::verify(BitMatrix::from_strings(rows), level);
             }),
             py::arg("rows"), py::arg("level") = 3)
        .def_static("builtin_15_1_3", &builtin_15_1_3)
        .def_property_readonly("rows", [](const TriorthogonalMatrix &t) { return rows_of(t.matrix()); })
        .def_property_readonly("cols", &TriorthogonalMatrix::cols)
        .def_property_readonly("level", &TriorthogonalMatrix::level)
        .def_property_readonly("even_rows", &TriorthogonalMatrix::even_rows)
        .def_property_readonly("odd_rows", &TriorthogonalMatrix::odd_rows)
        .def("__repr__", [](const TriorthogonalMatrix &t) {
            return "<TriorthogonalMatrix " + std::to_string(t.matrix().rows()) + "x" + std::to_string(t.cols()) + ">";
        });

    m.def(
        "search",
        [](size_t n, size_t k, size_t m_even, uint64_t budget, uint64_t seed, bool cover) {
            return search_triorthogonal({n, k, m_even, budget, seed, cover}).matrix;
        },
        py::arg("n"), py::arg("k"), py::arg("m_even"), py::arg("budget") = 1000, py::arg("seed") = 0x5EED,
        py::arg("cover") = false, "Seeded randomized search; None when the budget runs out.");

    py::class_<TriorthogonalCode>(m, "TriorthogonalCode")
        .def_readonly("n", &TriorthogonalCode::n)
        .def_readonly("k", &TriorthogonalCode::k)
        .def_property_readonly("x_stabilizers", [](const TriorthogonalCode &c) { return rows_of(c.x_stabilizers); })
        .def_property_readonly("z_stabilizers", [](const TriorthogonalCode &c) { return rows_of(c.z_stabilizers); })
        .def_property_readonly("logical_x", [](const TriorthogonalCode &c) { return strs(c.logical_x); })
        .def_property_readonly("logical_z", [](const TriorthogonalCode &c) { return strs(c.logical_z); })
        .def_property_readonly("gauge_pairs",
                               [](const TriorthogonalCode &c) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (const auto &g : c.gauge_pairs) out.push_back({g.x_part.str(), g.z_part.str()});
                                   return out;
                               })
        .def_readonly("d_x", &TriorthogonalCode::d_x)
        .def_readonly("d_z", &TriorthogonalCode::d_z)
        .def_property_readonly("distance", &TriorthogonalCode::distance);

    m.def(
        "build_code",
        [](const TriorthogonalMatrix &t, bool with_distances) {
            auto c = build_code(t);
            if (with_distances) fill_distances(c);
            return c;
        },
        py::arg("matrix"), py::arg("distances") = true);

    m.def(
        "verify_ccz",
        [](const TriorthogonalCode &code) {
            py::list out;
            for (size_t x = 0; x < (size_t{1} << (3 * code.k)); x++) {
                std::array<std::vector<bool>, 3> labels;
                for (size_t b = 0; b < 3; b++)
                    for (size_t j = 0; j < code.k; j++) labels[b].push_back((x >> (b * code.k + j)) & 1);
                auto v = transversal_ccz_phase_check(code, labels[0], labels[1], labels[2]);
                py::dict d;
                d["labels"] = py::make_tuple(labels[0], labels[1], labels[2]);
                d["phase"] = v.phase;
                d["expected"] = v.expected;
                d["uniform"] = v.uniform;
                d["terms"] = v.terms;
                out.append(d);
            }
            return out;
        },
        py::arg("code"), "Phase check for every logical basis label triple.");

    m.def(
        "logical_hadamard",
        [](const TriorthogonalCode &code, std::complex<double> alpha, std::complex<double> beta, uint64_t seed,
           const std::vector<std::string> &faults) {
            if (code.k != 1) throw std::invalid_argument("logical_hadamard binding expects k = 1");
            SteaneProcedure proc(code);
            auto logical = SparseState::from_terms(1, {{BitVector::from_string("0"), alpha},
                                                       {BitVector::from_string("1"), beta}});
            auto data = encode(code, logical);
            std::vector<FaultSpec> specs;
            for (const auto &f : faults) specs.push_back(parse_fault_spec(f));
            auto rnd = Randomness::seeded(seed);
            auto out = proc.logical_hadamard(data, specs, rnd, specs.empty());
            bool gauge = true;
            for (const auto &gp : code.gauge_pairs) gauge &= std::abs(out.state.z_expectation(gp.z_part) - 1) < 1e-10;
            py::dict d;
            d["raw_outcomes"] = out.report.raw_outcomes.str();
            d["x_syndrome"] = out.report.x_syndrome.str();
            d["gauge_parities"] = out.report.gauge_parities.str();
            d["applied_correction"] = out.report.applied_correction.str();
            d["decode_success"] = out.report.decode_success;
            d["matches_ideal"] =
                states_equal_up_to_global_phase(out.state, proc.ideal_hadamard_image(data), 1e-10);
            d["gauge_restored"] = gauge;
            return d;
        },
        py::arg("code"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 0x5EED,
        py::arg("faults") = std::vector<std::string>{},
        "Encode alpha|0> + beta|1>, run the logical Hadamard and compare with the ideal image.");

    m.def(
        "fault_tolerance_sweep",
        [](const TriorthogonalCode &code, size_t weight, bool z_faults) {
            auto rep = fault_tolerance_sweep(code, {weight, z_faults, {0x5EED}, 0});
            py::dict d;
            d["fault_sets_checked"] = rep.fault_sets_checked;
            std::vector<std::vector<std::string>> ces;
            for (const auto &c : rep.counterexamples) {
                std::vector<std::string> names;
                for (const auto &f : c.faults) names.push_back(f.str());
                ces.push_back(names);
            }
            d["counterexamples"] = ces;
            return d;
        },
        py::arg("code"), py::arg("weight") = 1, py::arg("z_faults") = false);

    m.def(
        "propagate",
        [](const TriorthogonalMatrix &t, const std::vector<std::pair<size_t, unsigned>> &faults) {
            auto o = propagate(t, make_faults(faults));
            py::dict d;
            d["accepted"] = o.accepted;
            d["harmful"] = o.harmful();
            d["logical_error"] = std::vector<std::string>{o.logical_error[0].str(), o.logical_error[1].str(),
                                                          o.logical_error[2].str()};
            return d;
        },
        py::arg("matrix"), py::arg("faults"), "Z faults as (site, class) pairs, class in 1..7.");

    m.def(
        "simulate_distillation_sparse",
        [](const TriorthogonalCode &code, const std::vector<std::pair<size_t, unsigned>> &faults) {
            auto r = simulate_distillation_sparse(code, make_faults(faults));
            std::vector<unsigned> labels;
            for (const auto &l : r.labels) labels.push_back(l.bits());
            return py::make_tuple(r.accepted, labels);
        },
        py::arg("code"), py::arg("faults"));

    m.def(
        "enumerate_order2",
        [](const TriorthogonalMatrix &t, double p, const std::optional<std::vector<double>> &weights) {
            auto r = enumerate_order2(t, make_model(p, weights));
            py::dict d;
            d["order1_total"] = r.order1_total;
            d["order2_pairs_total"] = r.order2_pairs_total;
            d["identical_class_pairs"] = r.identical_class_pairs;
            d["harmful_site_pairs"] = r.harmful_site_pairs;
            d["order2_coefficient"] = r.order2_coefficient;
            d["predicted_failure"] = r.predicted_failure(p);
            return d;
        },
        py::arg("matrix"), py::arg("p"), py::arg("class_weights") = py::none());

    m.def(
        "monte_carlo",
        [](const TriorthogonalMatrix &t, double p, uint64_t trials, uint64_t seed, unsigned threads,
           const std::optional<std::vector<double>> &weights) {
            auto model = make_model(p, weights);
            MonteCarloStats s;
            {
                py::gil_scoped_release release;
                s = monte_carlo(t, model, trials, seed, threads ? threads : std::thread::hardware_concurrency());
            }
            py::dict d;
            d["trials"] = s.trials;
            d["accepted"] = s.accepted;
            d["failures"] = s.failures;
            d["seed"] = s.seed;
            d["acceptance_rate"] = s.acceptance_rate;
            d["error_rate"] = s.error_rate;
            d["acceptance_wilson"] = py::make_tuple(s.acceptance_wilson.low, s.acceptance_wilson.high);
            d["error_wilson"] = py::make_tuple(s.error_wilson.low, s.error_wilson.high);
            return d;
        },
        py::arg("matrix"), py::arg("p"), py::arg("trials"), py::arg("seed") = 0x5EED, py::arg("threads") = 1,
        py::arg("class_weights") = py::none(), "Results do not depend on the thread count (0 = all cores).");

    m.def(
        "optimize_stack",
        [](double target, double physical, int max_depth, const std::string &menu,
           const std::optional<std::string> &top_family) {
            return cost_result(optimize_stack(make_query(target, physical, max_depth, menu, top_family)));
        },
        py::arg("target_error") = 1e-13, py::arg("physical_t_error") = 1e-2, py::arg("max_depth") = 4,
        py::arg("menu") = "default", py::arg("top_family") = py::none(),
        "menu: \"default\", \"t\" (no triorthogonal top level) or menu JSON text.");

    m.def(
        "cost_curve_csv",
        [](const std::vector<double> &targets, double physical, int max_depth, const std::string &menu) {
            auto q = make_query(1e-13, physical, max_depth, menu, std::nullopt);
            return cost_curve_csv(cost_curve(q, targets.empty() ? default_target_grid() : targets, 1));
        },
        py::arg("targets") = std::vector<double>{}, py::arg("physical_t_error") = 1e-2, py::arg("max_depth") = 4,
        py::arg("menu") = "default");
}
