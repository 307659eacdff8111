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

#include "robust_iswap/numerics.hpp"

namespace robust_iswap {
namespace {

NumericsConfig& mutable_numerics() {
  static NumericsConfig config;
  return config;
}

}  // namespace

const NumericsConfig& numerics() { return mutable_numerics(); }

void set_numerics(const NumericsConfig& config) { mutable_numerics() = config; }

}  // namespace robust_iswap
