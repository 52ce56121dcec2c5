// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inquire/judge/analytics.hpp"

namespace inquire::judge {

/// Mean judge score per turn over judged items only.
struct JudgedCurve {
  std::string label;
  std::vector<std::optional<double>> mean;  // empty when nothing was judged at that turn
  std::vector<int> n_judged;
  std::vector<int> n_missing;
};

/// turn_a x turn_b similarity cells for two methods.
struct SimilarityMatrix {
  std::string label_a;
  std::string label_b;
  std::vector<std::vector<std::optional<double>>> mean;
  std::vector<std::vector<int>> n_judged;
  std::vector<std::vector<int>> n_missing;
};

struct Series {
  std::string label;
  std::vector<std::optional<double>> values;  // x = 1..size
};

/// Fixed six-decimal rendering so reports are byte-stable.
std::string format_number(double v);
std::string csv_field(const std::string& s);

std::string pass_curves_csv(const std::vector<CurveSummary>& curves);
std::string judged_curves_csv(const std::vector<JudgedCurve>& curves, const std::string& value_column);
std::string heatmap_csv(const SimilarityMatrix& m);
std::string positions_csv(const std::vector<std::vector<double>>& mean_pass);
std::string turn_efficiency_csv(const CurveSummary& reference, const std::vector<CurveSummary>& candidates);

/// Standalone SVG line chart over turns; the data is embedded as CSV in the
/// <desc> element.
std::string svg_line_chart(const std::string& title, const std::string& y_label, const std::vector<Series>& series,
                           const std::string& data_csv);

/// Standalone SVG heatmap with values in [0, 1]; row r is drawn top to bottom.
std::string svg_heatmap(const std::string& title, const std::string& row_label, const std::string& col_label,
                        const std::vector<std::vector<std::optional<double>>>& cells, const std::string& data_csv);

}  // namespace inquire::judge
