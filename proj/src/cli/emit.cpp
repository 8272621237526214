/*
   Copyright 2026 The shk Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "shk/cli/emit.hpp"

#include "shk/common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace shk::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string format(const char* pattern, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::size_t column_index(const Series& s, const std::string& name) {
  const auto it = std::find(s.columns.begin(), s.columns.end(), name);
  if (it == s.columns.end()) throw DomainError("series " + s.name + " has no column " + name);
  return static_cast<std::size_t>(it - s.columns.begin());
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string to_csv(const Series& series) {
  std::string out;
  for (std::size_t i = 0; i < series.columns.size(); ++i) {
    out += (i ? "," : "") + csv_field(series.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : series.rows) {
    if (row.size() != series.columns.size()) {
      throw DomainError("series " + series.name + " has a row of the wrong width");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + format("%.17g", row[i]);
    }
    out += "\r\n";
  }
  return out;
}

std::string to_json(const RunReport& report) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = report.kind;
  doc["config"] = report.config_json.empty() ? Json::object() : Json::parse(report.config_json);
  doc["passed"] = report.passed();
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["measured"] = c.measured;
    j["expected"] = c.expected;
    j["standard_error"] = c.standard_error;
    j["tolerance"] = c.tolerance;
    j["rule"] = c.rule;
    j["pass"] = c.pass;
    checks.push_back(j);
  }
  doc["checks"] = checks;
  Json series = Json::array();
  for (const auto& s : report.series) {
    Json j;
    j["name"] = s.name;
    j["csv"] = s.name + ".csv";
    if (!s.x.empty()) j["svg"] = s.name + ".svg";
    j["columns"] = s.columns;
    j["rows"] = s.rows.size();
    series.push_back(j);
  }
  doc["series"] = series;
  return doc.dump(2) + "\n";
}

std::string to_svg(const Series& s) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 80, kRight = 20, kTop = 40, kBottom = 50;
  const std::size_t xi = column_index(s, s.x);
  std::vector<std::size_t> yi;
  for (const auto& name : s.y) yi.push_back(column_index(s, name));

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& row : s.rows) {
    if (!std::isfinite(row[xi])) continue;
    x0 = std::min(x0, row[xi]);
    x1 = std::max(x1, row[xi]);
    for (auto j : yi) {
      if (!std::isfinite(row[j])) continue;
      y0 = std::min(y0, row[j]);
      y1 = std::max(y1, row[j]);
    }
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1;
  if (!(y1 >= y0)) y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); };
  auto py = [&](double y) { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); };

  static const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
      "viewBox=\"0 0 640 400\">\n"
      "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(s.title.empty() ? s.name : s.title) + "</text>\n";
  const std::string bl = format("%.1f", kLeft), bb = format("%.1f", kHeight - kBottom);
  out += "<line x1=\"" + bl + "\" y1=\"" + bb + "\" x2=\"" + format("%.1f", kWidth - kRight) +
         "\" y2=\"" + bb + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + bl + "\" y1=\"" + bb + "\" x2=\"" + bl + "\" y2=\"" +
         format("%.1f", kTop) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0, yv = y0 + (y1 - y0) * t / 4.0;
    out += "<text x=\"" + format("%.1f", px(xv)) + "\" y=\"" + format("%.1f", kHeight - kBottom + 16) +
           "\" text-anchor=\"middle\" font-size=\"10\">" + format("%.4g", xv) + "</text>\n";
    out += "<text x=\"" + format("%.1f", kLeft - 6) + "\" y=\"" + format("%.1f", py(yv) + 3) +
           "\" text-anchor=\"end\" font-size=\"10\">" + format("%.4g", yv) + "</text>\n";
  }
  out += "<text x=\"" + format("%.1f", (kLeft + kWidth - kRight) / 2) + "\" y=\"" +
         format("%.1f", kHeight - 12) + "\" text-anchor=\"middle\" font-size=\"12\">" +
         xml_escape(s.x) + "</text>\n";
  for (std::size_t k = 0; k < yi.size(); ++k) {
    std::string points;
    for (const auto& row : s.rows) {
      if (!std::isfinite(row[xi]) || !std::isfinite(row[yi[k]])) continue;
      if (!points.empty()) points += ' ';
      points += format("%.2f", px(row[xi])) + "," + format("%.2f", py(row[yi[k]]));
    }
    const char* colour = kColours[k % std::size(kColours)];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    out += "<text x=\"" + format("%.1f", kLeft + 10) + "\" y=\"" + format("%.1f", kTop + 14.0 * (k + 1)) +
           "\" font-size=\"11\" fill=\"" + colour + "\">" + xml_escape(s.y[k]) + "</text>\n";
  }
  return out + "</svg>\n";
}

void emit(const RunReport& report, const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + directory + ": " + ec.message());
  for (const auto& s : report.series) {
    write_file(dir / (s.name + ".csv"), to_csv(s));
    if (!s.x.empty()) write_file(dir / (s.name + ".svg"), to_svg(s));
  }
  write_file(dir / "report.json", to_json(report));
}

}  // namespace shk::cli
