// Copyright 2026 The phonolase authors
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

#ifndef PHONOLASE_CORE_SWEEP_HPP
#define PHONOLASE_CORE_SWEEP_HPP

#include <string>
#include <vector>

#include "core/types.hpp"

namespace phl::sweep {

/// Row status codes, shared with the CLI exit-code convention where
/// applicable: 0 ok, 2 analytic value undefined at these parameters,
/// 3 truncation failure, 4 numerical failure.
enum Status : int { kOk = 0, kAnalyticUndefined = 2, kTruncationFailure = 3, kNumericFailure = 4 };

enum class Output { NbarSim, NbarMf, G2Sim, G2Theory, PhaseLabel, TruncationOk };

const char* output_name(Output o);
Output output_from_name(const std::string& name);

struct Axis {
    std::string param;  // one of g_h g_c gamma_h gamma_c eta_h eta_c r beta
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_scale = true;
};

struct SweepSpec {
    ModelSpec model;
    ModelParams fixed;
    Axis axis1, axis2;
    std::vector<Output> outputs;
    int n_start = 16;
    int n_cap = 128;

    void validate() const;
};

struct Row {
    double a1 = 0.0, a2 = 0.0;
    std::vector<double> values;      // numeric outputs, NaN on failure
    std::vector<std::string> texts;  // printed cell text (handles phase labels)
    int status = kOk;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<Row> rows;  // row-major: axis1 outer, axis2 inner

    std::string to_csv() const;  // 9 significant digits, header axis1,axis2,outputs...,status
};

/// Evaluate the grid with a bounded worker pool; the row order is row-major
/// in the axes regardless of the number of jobs.
SweepResult run(const SweepSpec& spec, int jobs = 1);

/// Grid values of one axis (linear or log spacing).
std::vector<double> axis_values(const Axis& axis);

void set_param(ModelParams& p, const std::string& name, double value);

} // namespace phl::sweep

#endif
