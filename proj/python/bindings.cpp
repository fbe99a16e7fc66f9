// Copyright 2026 The kpell Authors
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


// Python bindings. Structured results cross the boundary as JSON text and
// are decoded by the package wrapper; exact integers become Python ints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kpell/bigseq.hpp"
#include "kpell/effbounds.hpp"
#include "kpell/error.hpp"
#include "kpell/reduction.hpp"
#include "kpell/report.hpp"
#include "kpell/spectra.hpp"
#include "kpell/zerostruct.hpp"

namespace py = pybind11;

namespace {

py::object to_pyint(const mpz_class& v) {
  const std::string s = v.get_str(16);
  return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 16));
}

std::string magnitude_json(const kpell::LogMagnitude& m) {
  return nlohmann::json{{"negative", m.negative}, {"value_log10", m.log10_string(12)}, {"display", m.display()}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact zeros, certified roots and effective bounds for k-generalized Pell sequences";

  // Translators run newest first, so the base class goes first.
  py::register_exception<kpell::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<kpell::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<kpell::ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  m.def(
      "eval_term",
      [](int k, long long n, long long max_index) {
        return to_pyint(kpell::eval_term(kpell::KContext(k, max_index), n).value);
      },
      py::arg("k"), py::arg("n"), py::arg("max_index") = kpell::kDefaultMaxIndex, "P_n exactly.");

  m.def(
      "eval_range",
      [](int k, long long lo, long long hi) {
        py::list out;
        for (const auto& t : kpell::eval_range(kpell::KContext(k), lo, hi)) out.append(to_pyint(t.value));
        return out;
      },
      py::arg("k"), py::arg("lo"), py::arg("hi"), "P_lo..P_hi, ascending.");

  m.def(
      "enumerate_zeros",
      [](int k, std::optional<long long> floor) {
        return kpell::enumerate_zeros(k, floor.value_or(kpell::default_floor(k))).indices;
      },
      py::arg("k"), py::arg("floor") = py::none(), "Zero indices n <= 0 down to floor.");

  m.def("chi", &kpell::chi, py::arg("k"));
  m.def("predicted_zero_set", &kpell::predicted_zero_set, py::arg("k"));
  m.def(
      "predicted_intervals",
      [](int k) {
        std::vector<std::pair<long long, long long>> out;
        for (const auto& b : kpell::predicted_intervals(k).blocks) out.emplace_back(b.lo, b.hi);
        return out;
      },
      py::arg("k"));
  m.def("default_floor", &kpell::default_floor, py::arg("k"));

  m.def(
      "_roots_json",
      [](int k, long precision) {
        py::gil_scoped_release release;
        return kpell::roots_to_json(kpell::solve_roots(k, precision)).dump();
      },
      py::arg("k"), py::arg("precision") = kpell::kDefaultPrec);

  m.def(
      "refined_even_bound",
      [](int k) {
        py::gil_scoped_release release;
        return kpell::refined_even_bound(k);
      },
      py::arg("k"));
  m.def(
      "_theorem1_json", [](int k) { return magnitude_json(kpell::index_bound(k)); }, py::arg("k"));
  m.def(
      "log_inversion_bound", [](int r, double H) { return kpell::log_inversion_bound(r, H); }, py::arg("r"),
      py::arg("H"));

  m.def(
      "_reduce_odd_json",
      [](int k, const std::string& M) {
        const mpz_class bound = kpell::parse_exact_integer(M);
        py::gil_scoped_release release;
        const auto r = kpell::reduce_odd(k, bound);
        auto approx = [](const kpell::Ball& b) { return nlohmann::json{{"mid", b.mid_string(20)}, {"rad", b.rad_string()}}; };
        nlohmann::json checks = nlohmann::json::object();
        for (const auto& c : r.instance.checks) checks[c.name] = {{"passed", c.passed}, {"margin", c.margin}};
        return nlohmann::json{{"k", k},
                              {"tau", approx(r.instance.inst.tau)},
                              {"mu", approx(r.instance.inst.mu)},
                              {"A", approx(r.instance.inst.A)},
                              {"B", approx(r.instance.inst.B)},
                              {"q_used", r.outcome.q_used.get_str()},
                              {"m_index", r.outcome.m_index},
                              {"epsilon", approx(r.outcome.epsilon)},
                              {"R", r.outcome.R},
                              {"lambda_nonzero", r.lambda_nonzero},
                              {"checks", checks}}
            .dump();
      },
      py::arg("k"), py::arg("M") = "3e47");

  m.def(
      "_verify_json",
      [](int k, bool full, const std::string& M, bool positive_indices) {
        kpell::VerifyOptions opts;
        opts.full = full;
        opts.M = kpell::parse_exact_integer(M);
        py::gil_scoped_release release;
        return kpell::to_json(kpell::verify_k(k, opts), positive_indices).dump();
      },
      py::arg("k"), py::arg("full") = false, py::arg("M") = "3e47", py::arg("positive_indices") = false);
}
