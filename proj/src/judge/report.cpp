// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/judge/report.hpp"

#include <algorithm>
#include <cstdio>

namespace inquire::judge {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b",
                                    "#e377c2"};

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pass_curves_csv(const std::vector<CurveSummary>& curves) {
  std::string out = "method,turn,mean_pass,n_problems\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.mean_pass.size(); ++i) {
      out += csv_field(c.label) + "," + std::to_string(i + 1) + "," + format_number(c.mean_pass[i]) + "," +
             std::to_string(c.n_problems[i]) + "\n";
    }
  }
  return out;
}

std::string judged_curves_csv(const std::vector<JudgedCurve>& curves, const std::string& value_column) {
  std::string out = "method,turn," + value_column + ",n_judged,n_missing\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.mean.size(); ++i) {
      out += csv_field(c.label) + "," + std::to_string(i + 1) + "," + optional_number(c.mean[i]) + "," +
             std::to_string(c.n_judged[i]) + "," + std::to_string(c.n_missing[i]) + "\n";
    }
  }
  return out;
}

std::string heatmap_csv(const SimilarityMatrix& m) {
  std::string out = "turn_a,turn_b,mean_similarity,n_judged,n_missing\n";
  for (std::size_t a = 0; a < m.mean.size(); ++a) {
    for (std::size_t b = 0; b < m.mean[a].size(); ++b) {
      out += std::to_string(a + 1) + "," + std::to_string(b + 1) + "," + optional_number(m.mean[a][b]) + "," +
             std::to_string(m.n_judged[a][b]) + "," + std::to_string(m.n_missing[a][b]) + "\n";
    }
  }
  return out;
}

std::string positions_csv(const std::vector<std::vector<double>>& mean_pass) {
  std::string out = "t_assess,turn,mean_pass\n";
  for (std::size_t j = 0; j < mean_pass.size(); ++j) {
    for (std::size_t t = 0; t < mean_pass[j].size(); ++t) {
      out += std::to_string(j + 1) + "," + std::to_string(t + 1) + "," + format_number(mean_pass[j][t]) + "\n";
    }
  }
  return out;
}

std::string turn_efficiency_csv(const CurveSummary& reference, const std::vector<CurveSummary>& candidates) {
  std::string out = "reference,candidate,target,reference_turn,candidate_turn,turns_saved,reached\n";
  for (const auto& c : candidates) {
    const TurnEfficiency e = turn_efficiency(reference.mean_pass, c.mean_pass);
    out += csv_field(reference.label) + "," + csv_field(c.label) + "," + format_number(e.target) + "," +
           std::to_string(e.reference_turn) + "," + std::to_string(e.candidate_turn) + "," +
           std::to_string(e.saved) + "," + (e.reached ? "true" : "false") + "\n";
  }
  return out;
}

std::string svg_line_chart(const std::string& title, const std::string& y_label, const std::vector<Series>& series,
                           const std::string& data_csv) {
  constexpr double W = 640, H = 400, L = 60, R = 170, T = 40, B = 50;
  const double pw = W - L - R, ph = H - T - B;
  std::size_t n = 0;
  for (const auto& s : series) n = std::max(n, s.values.size());
  auto x_of = [&](std::size_t i) { return L + (n <= 1 ? pw / 2 : pw * static_cast<double>(i) / static_cast<double>(n - 1)); };
  auto y_of = [&](double v) { return T + ph * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  out += "<title>" + xml_escape(title) + "</title>\n";
  out += "<desc>" + xml_escape(data_csv) + "</desc>\n";
  out += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         xml_escape(title) + "</text>\n";
  for (int g = 0; g <= 4; ++g) {
    const double v = g / 4.0;
    out += "<line x1=\"" + px(L) + "\" y1=\"" + px(y_of(v)) + "\" x2=\"" + px(L + pw) + "\" y2=\"" + px(y_of(v)) +
           "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + px(L - 6) + "\" y=\"" + px(y_of(v) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + px(v) + "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    out += "<text x=\"" + px(x_of(i)) + "\" y=\"" + px(T + ph + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + std::to_string(i + 1) +
           "</text>\n";
  }
  out += "<text x=\"" + px(L + pw / 2) + "\" y=\"" + px(H - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">turn</text>\n";
  out += "<text x=\"16\" y=\"" + px(T + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" " +
         "font-size=\"12\" transform=\"rotate(-90 16 " + px(T + ph / 2) + ")\">" + xml_escape(y_label) + "</text>\n";
  out += "<rect x=\"" + px(L) + "\" y=\"" + px(T) + "\" width=\"" + px(pw) + "\" height=\"" + px(ph) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string color = kPalette[s % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < series[s].values.size(); ++i) {
      if (!series[s].values[i]) continue;
      if (!points.empty()) points += ' ';
      points += px(x_of(i)) + "," + px(y_of(*series[s].values[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (std::size_t i = 0; i < series[s].values.size(); ++i) {
      if (!series[s].values[i]) continue;
      out += "<circle cx=\"" + px(x_of(i)) + "\" cy=\"" + px(y_of(*series[s].values[i])) + "\" r=\"3\" fill=\"" +
             color + "\"/>\n";
    }
    const double ly = T + 14 + 18 * static_cast<double>(s);
    out += "<line x1=\"" + px(L + pw + 12) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(L + pw + 32) + "\" y2=\"" +
           px(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + px(L + pw + 38) + "\" y=\"" + px(ly) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(series[s].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string svg_heatmap(const std::string& title, const std::string& row_label, const std::string& col_label,
                        const std::vector<std::vector<std::optional<double>>>& cells, const std::string& data_csv) {
  const std::size_t rows = cells.size();
  std::size_t cols = 0;
  for (const auto& r : cells) cols = std::max(cols, r.size());
  constexpr double cell = 56, L = 70, T = 50;
  const double W = L + cell * static_cast<double>(cols) + 30, H = T + cell * static_cast<double>(rows) + 50;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(W) + "\" height=\"" + px(H) +
                    "\" viewBox=\"0 0 " + px(W) + " " + px(H) + "\">\n";
  out += "<title>" + xml_escape(title) + "</title>\n";
  out += "<desc>" + xml_escape(data_csv) + "</desc>\n";
  out += "<rect width=\"" + px(W) + "\" height=\"" + px(H) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + px(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         xml_escape(title) + "</text>\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      const double x = L + cell * static_cast<double>(c), y = T + cell * static_cast<double>(r);
      std::string fill = "#eeeeee";
      std::string label = "-";
      if (const auto& v = cells[r][c]) {
        // White to dark blue.
        const double f = std::clamp(*v, 0.0, 1.0);
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(255 - 225 * f), static_cast<int>(255 - 175 * f),
                      static_cast<int>(255 - 75 * f));
        fill = buf;
        char text[16];
        std::snprintf(text, sizeof text, "%.2f", *v);
        label = text;
      }
      out += "<rect x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(cell) + "\" height=\"" + px(cell) +
             "\" fill=\"" + fill + "\" stroke=\"white\"/>\n";
      out += "<text x=\"" + px(x + cell / 2) + "\" y=\"" + px(y + cell / 2 + 4) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
    }
    out += "<text x=\"" + px(L - 8) + "\" y=\"" + px(T + cell * static_cast<double>(r) + cell / 2 + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + std::to_string(r + 1) + "</text>\n";
  }
  for (std::size_t c = 0; c < cols; ++c) {
    out += "<text x=\"" + px(L + cell * static_cast<double>(c) + cell / 2) + "\" y=\"" +
           px(T + cell * static_cast<double>(rows) + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + std::to_string(c + 1) +
           "</text>\n";
  }
  out += "<text x=\"" + px(L + cell * static_cast<double>(cols) / 2) + "\" y=\"" + px(H - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(col_label) +
         "</text>\n";
  out += "<text x=\"14\" y=\"" + px(T + cell * static_cast<double>(rows) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 " +
         px(T + cell * static_cast<double>(rows) / 2) + ")\">" + xml_escape(row_label) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace inquire::judge
