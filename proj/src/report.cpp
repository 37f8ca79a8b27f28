#include "synalg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace synalg {

std::string ReportLine::format() const {
  char buf[64];
  std::string out = "CHECK " + suite + "." + check + " ";
  std::snprintf(buf, sizeof buf, "%.3e %.1e ", residual, tolerance);
  out += buf;
  out += pass() ? "PASS" : "FAIL";
  return out;
}

ReportLine& Report::line(const std::string& name, double tolerance) {
  auto it = std::find_if(lines_.begin(), lines_.end(),
                         [&](const ReportLine& l) { return l.check == name; });
  if (it != lines_.end()) return *it;
  lines_.push_back({suite_, name, 0.0, tolerance});
  return lines_.back();
}

void Report::check(const std::string& name, double residual, double tolerance) {
  ReportLine& l = line(name, tolerance);
  if (std::isnan(residual) || std::isnan(l.residual)) {
    l.residual = std::nan("");
  } else {
    l.residual = std::max(l.residual, residual);
  }
}

void Report::expect(const std::string& name, bool ok) {
  ReportLine& l = line(name, 0.0);
  if (!ok) l.residual += 1.0;
}

void Report::merge(const Report& other) {
  for (const ReportLine& l : other.lines_) lines_.push_back(l);
}

bool Report::all_pass() const {
  return std::all_of(lines_.begin(), lines_.end(), [](const ReportLine& l) { return l.pass(); });
}

std::string Report::to_text() const {
  std::string out;
  for (const ReportLine& l : lines_) {
    out += l.format();
    out += '\n';
  }
  return out;
}

}  // namespace synalg
