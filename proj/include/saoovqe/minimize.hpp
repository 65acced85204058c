// Copyright 2026 The saoovqe Authors
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

#include <functional>

#include <Eigen/Dense>

namespace saoovqe {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct MinimizeOptions {
  int max_iterations = 400;
  /// Stop when successive values differ by less than this and the gradient
  /// max-norm is below `g_tolerance`.
  double f_tolerance = 1e-4;
  double g_tolerance = 1e-3;
  double fd_step = 1e-5;
  /// Largest max-norm of a trial step.
  double max_step = 0.5;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;  // max-norm at x
  int iterations = 0;
  int n_evaluations = 0;
  bool converged = false;
};

/// Called once per accepted iteration with (iteration, x, f, gradient max-norm).
using IterationCallback = std::function<void(int, const Eigen::VectorXd&, double, double)>;

/// BFGS on central finite-difference gradients with a backtracking line search.
/// Throws NumericalError if the objective returns a non-finite value.
MinimizeResult minimize(const Objective& f, const Eigen::VectorXd& x0,
                        const MinimizeOptions& options = {},
                        const IterationCallback& callback = {});

/// Central-difference gradient; `evaluations` is incremented by 2 n.
Eigen::VectorXd finite_difference_gradient(const Objective& f, const Eigen::VectorXd& x, double h,
                                           int* evaluations = nullptr);

}  // namespace saoovqe
