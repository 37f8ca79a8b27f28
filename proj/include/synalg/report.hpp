#pragma once

#include <string>
#include <vector>

namespace synalg {

struct ReportLine {
  std::string suite;
  std::string check;
  double residual = 0.0;
  double tolerance = 0.0;

  bool pass() const { return residual <= tolerance; }
  /// "CHECK <suite>.<check> <residual> <tolerance> PASS|FAIL"
  std::string format() const;
};

/// Line-oriented check report. Repeated checks with the same name fold into
/// one line: residual checks keep the worst residual, boolean checks count
/// violations against a tolerance of zero.
class Report {
 public:
  explicit Report(std::string suite) : suite_(std::move(suite)) {}

  void check(const std::string& name, double residual, double tolerance);
  void expect(const std::string& name, bool ok);

  void merge(const Report& other);

  const std::string& suite() const { return suite_; }
  const std::vector<ReportLine>& lines() const { return lines_; }
  bool all_pass() const;
  std::string to_text() const;

 private:
  ReportLine& line(const std::string& name, double tolerance);

  std::string suite_;
  std::vector<ReportLine> lines_;
};

}  // namespace synalg
