#pragma once

#include <string>
#include <vector>

namespace cblup {

/// Published reference values for the four reproduction studies, as printed
/// in the original source (sqrt of the mean squared error throughout).
struct ReferenceTable {
  int id = 0;
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> values;  // [row][col]
  double tolerance = 0.0;                   // acceptance gate per cell
  double tolerance_continuous = 0.0;        // gate for the continuous column
};

/// id in 1..4.
const ReferenceTable& reference_table(int id);

}  // namespace cblup
