// Copyright 2026 The BWD Authors
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

#ifndef BWD_IO_H_
#define BWD_IO_H_

// CSV ingestion of performance matrices and threshold tables.
//
// Matrix layout:
//   id,<crit1>,<crit2>,...
//   #direction,benefit|cost,...      (optional; default benefit)
//   #range,lo:hi,...                 (optional; default observed min/max)
//   <id>,<level>,<level>,...

#include <string>

#include "bwd/consistency.h"
#include "bwd/model.h"

namespace bwd {

// Errors are ValidationErrors prefixed with "<source>:<line>: ".
PerformanceMatrix parse_matrix_csv(const std::string& text,
                                   const std::string& source = "matrix");
PerformanceMatrix read_matrix_csv(const std::string& path);

// Rows "size,a_bw,threshold" with an optional header line.
ThresholdTable parse_thresholds_csv(const std::string& text,
                                    const std::string& source = "thresholds");
ThresholdTable read_thresholds_csv(const std::string& path);

std::string read_file(const std::string& path);
// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bwd

#endif  // BWD_IO_H_
