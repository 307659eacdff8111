// Copyright 2026 The robust-iswap Authors.
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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace robust_iswap {

using Complex = std::complex<double>;
using Matrix4cd = Eigen::Matrix4cd;
using Vector4cd = Eigen::Vector4cd;

/// Tolerances shared by every Hermiticity / unitarity / criterion check.
struct NumericsConfig {
  double hermiticity_tol = 1e-10;
  double unitarity_tol = 1e-10;
  double criterion_tol = 1e-10;
};

/// Process-wide numerics configuration. Set it once at start-up; readers
/// take a copy.
const NumericsConfig& numerics();
void set_numerics(const NumericsConfig& config);

}  // namespace robust_iswap
