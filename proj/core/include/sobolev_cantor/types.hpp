// Copyright 2026 The sobolev_cantor Authors.
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

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sobolev_cantor {

// Dimensions up to kMaxDim are stored inline; no heap traffic in hot loops.
inline constexpr int kMaxDim = 6;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

inline double sup_norm(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

class InvalidAddress : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ScheduleInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotInitialized : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndeterminateDegree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sobolev_cantor
