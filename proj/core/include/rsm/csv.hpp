// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsm/types.hpp"

namespace rsm {

/// Experimental runs read from CSV: header `x1,..,xn,y1,..,yr`, one run per
/// line, decimal-point numbers, UTF-8.
struct Dataset {
  int n = 0;
  int r = 0;
  std::vector<Vector> points;  // N factor settings
  Matrix y;                    // N x r responses
};

Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);

/// Design points as CSV with header x1..xn.
void write_design_csv(std::ostream& out, const std::vector<Vector>& points);

}  // namespace rsm
