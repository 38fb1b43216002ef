#include "psfwb/report.hpp"

#include <sstream>

#include "json.hpp"
#include "psfwb/io.hpp"

namespace psfwb {

ReportRecord& ReportRecord::set(std::string key, ReportValue value) {
  fields.emplace_back(std::move(key), std::move(value));
  return *this;
}

ReportRecord& Report::add(std::string type) {
  records.push_back(ReportRecord{std::move(type), {}});
  return records.back();
}

std::string render_value(const ReportValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* n = std::get_if<long long>(&v)) return std::to_string(*n);
  std::string out = "[";
  const auto& list = std::get<std::vector<std::string>>(v);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ", ";
    out += list[i];
  }
  return out + "]";
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << format_header(DocumentKind::Report);
  for (const auto& rec : r.records) {
    os << rec.type;
    for (const auto& [key, value] : rec.fields) os << ' ' << key << '=' << render_value(value);
    os << '\n';
  }
  return os.str();
}

std::string render_json_lines(const Report& r) {
  std::ostringstream os;
  for (const auto& rec : r.records) {
    nlohmann::ordered_json j;
    j["type"] = rec.type;
    for (const auto& [key, value] : rec.fields) {
      std::visit([&](const auto& v) { j[key] = v; }, value);
    }
    os << j.dump() << '\n';
  }
  return os.str();
}

}  // namespace psfwb
