#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace psfwb {

/// Field values. Rationals travel as "num/den" strings so nothing is rounded.
using ReportValue = std::variant<std::string, bool, long long, std::vector<std::string>>;

struct ReportRecord {
  std::string type;
  std::vector<std::pair<std::string, ReportValue>> fields;

  ReportRecord& set(std::string key, ReportValue value);
};

/// Ordered records, rendered as text lines or as JSON lines.
struct Report {
  std::vector<ReportRecord> records;

  ReportRecord& add(std::string type);
};

/// Text form of one value; lists render as "[a, b]".
std::string render_value(const ReportValue& v);

/// "psfwb-format report v1" then one "type key=value ..." line per record.
std::string render_text(const Report& r);
/// One JSON object per record with the type under "type".
std::string render_json_lines(const Report& r);

}  // namespace psfwb
