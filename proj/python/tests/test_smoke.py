# Copyright 2026 The kpell Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import kpell


def naive(k, lo, hi):
    p = {i: 0 for i in range(-(k - 2), 1)}
    p[1] = 1
    for n in range(2, hi + 1):
        p[n] = 2 * p[n - 1] + sum(p[n - i] for i in range(2, k + 1))
    m = 1
    while m - k >= lo:
        p[m - k] = p[m] - 2 * p[m - 1] - sum(p[m - i] for i in range(2, k))
        m -= 1
    return [p[n] for n in range(lo, hi + 1)]


def test_exact_terms_match_naive_recurrence():
    for k in (2, 3, 5, 9):
        assert kpell.eval_range(k, -6 * k, 30) == naive(k, -6 * k, 30)
    assert kpell.eval_term(2, 3) == 5
    assert kpell.eval_term(2, -2) == -2


def test_big_values_are_python_ints():
    v = kpell.eval_term(3, 400)
    assert isinstance(v, int)
    assert v.bit_length() > 500
    assert v == naive(3, 0, 400)[-1]


def test_zeros_and_formula():
    ref = naive(6, -60, 1)
    assert kpell.enumerate_zeros(6, -60) == [-i for i in range(0, 61) if ref[60 - i] == 0]
    assert kpell.chi(10) == 21
    assert kpell.predicted_intervals(7) == [(-7, -3), (-13, -11), (-19, -19)]


def test_roots_and_bounds():
    r = kpell.roots(2)
    assert abs(float(r["roots"][0]["re"]["mid"]) - (1 + math.sqrt(2))) < 1e-15
    assert kpell.refined_even_bound(6) == 163
    assert kpell.theorem1_bound(4)["display"] == "4.7633e+10"
    assert kpell.log_inversion_bound(1, 17.0) == pytest.approx(2 * 17 * math.log(17))


def test_reduction_and_verify_records():
    red = kpell.reduce_odd(7)
    assert red["lambda_nonzero"]
    assert int(red["q_used"]) > 6 * 3 * 10**47
    rec = kpell.verify(2)
    assert rec["status"] == "PASS"
    assert rec["chi_observed"] == 1


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        kpell.chi(1)
    with pytest.raises(RuntimeError):
        kpell.eval_term(3, -10**8)
    with pytest.raises(ValueError):
        kpell.reduce_odd(6)
