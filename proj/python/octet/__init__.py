# Copyright 2026 The octet Authors.
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

"""FP8 and INT8 format analysis: codecs, quantization, error and cost models."""

from ._octet import (
    FpFormat,
    IntFormat,
    TensorFileError,
    best_format_report,
    decode,
    encode,
    expected_mse,
    gates_csv,
    grid_values,
    lloyd_max,
    mac_cost,
    match_grid,
    mse_sweep_csv,
    quantize,
    read_tensor,
    write_tensor,
)

__all__ = [
    "FpFormat",
    "IntFormat",
    "TensorFileError",
    "best_format_report",
    "decode",
    "encode",
    "expected_mse",
    "gates_csv",
    "grid_values",
    "lloyd_max",
    "mac_cost",
    "match_grid",
    "mse_sweep_csv",
    "quantize",
    "read_tensor",
    "write_tensor",
]
