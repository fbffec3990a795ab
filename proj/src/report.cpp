#include "symdyn/report.hpp"

#include <cstdio>
#include <sstream>

namespace symdyn {

void Report::write(std::ostream& out) const {
  for (const auto& line : human_) out << line << '\n';
  out << "---\n";
  for (const auto& rec : records_) {
    for (std::size_t i = 0; i < rec.size(); ++i) out << (i ? " " : "") << rec[i].first << '=' << rec[i].second;
    out << '\n';
  }
}

std::string Report::str() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

void add(Report::Record& r, std::string key, std::string value) {
  if (value.empty()) value = "-";
  if (value.find(' ') != std::string::npos) value = '"' + value + '"';
  r.emplace_back(std::move(key), std::move(value));
}

void add(Report::Record& r, std::string key, std::size_t value) { add(r, std::move(key), std::to_string(value)); }

void add_flag(Report::Record& r, std::string key, bool value) { add(r, std::move(key), std::string(value ? "1" : "0")); }

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace symdyn
