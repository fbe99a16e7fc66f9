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

"""Exact zeros, certified roots and effective bounds for k-generalized Pell sequences."""

import json as _json

from ._core import (
    DomainError,
    Error,
    ResourceLimitError,
    chi,
    default_floor,
    enumerate_zeros,
    eval_range,
    eval_term,
    log_inversion_bound,
    predicted_intervals,
    predicted_zero_set,
    refined_even_bound,
)
from . import _core


def roots(k, precision=128):
    """Certified roots as {mid, rad} decimal strings, largest modulus first."""
    return _json.loads(_core._roots_json(k, precision))


def theorem1_bound(k):
    """Closed-form index bound in log space: {negative, value_log10, display}."""
    return _json.loads(_core._theorem1_json(k))


def reduce_odd(k, M="3e47"):
    """Continued-fraction reduction for odd k >= 5; M may be an int or a literal like '3e47'."""
    return _json.loads(_core._reduce_odd_json(k, str(M)))


def verify(k, full=False, M="3e47", positive_indices=False):
    """One verification record, as emitted by `kpell verify --k K`."""
    return _json.loads(_core._verify_json(k, full, str(M), positive_indices))


__all__ = [
    "DomainError",
    "Error",
    "ResourceLimitError",
    "chi",
    "default_floor",
    "enumerate_zeros",
    "eval_range",
    "eval_term",
    "log_inversion_bound",
    "predicted_intervals",
    "predicted_zero_set",
    "reduce_odd",
    "refined_even_bound",
    "roots",
    "theorem1_bound",
    "verify",
]
