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

#ifndef PHONOLASE_CORE_REPORT_HPP
#define PHONOLASE_CORE_REPORT_HPP

#include <string>

#include "core/lindblad.hpp"
#include "core/types.hpp"

namespace phl::report {

/// Single-point JSON report: observables, phase, closed-form intensity,
/// truncation diagnostics and validity-assumption annotations.
/// schema_version 1.
std::string steady_report_json(const ModelSpec& spec, const ModelParams& p,
                               const lindblad::SteadyStateReport& rep, int indent = 2);

/// Closed-form/meanfield-only JSON report (no Liouvillian solve).
std::string meanfield_report_json(const ModelSpec& spec, const ModelParams& p, int indent = 2);

} // namespace phl::report

#endif
