#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symdyn {

/// Human-readable lines, then `---`, then one `key=value ...` record per line.
class Report {
 public:
  using Record = std::vector<std::pair<std::string, std::string>>;

  void say(std::string line) { human_.push_back(std::move(line)); }
  Record& record() { return records_.emplace_back(); }

  const std::vector<std::string>& human() const { return human_; }
  const std::vector<Record>& records() const { return records_; }

  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> human_;
  std::vector<Record> records_;
};

void add(Report::Record& r, std::string key, std::string value);
void add(Report::Record& r, std::string key, std::size_t value);
void add_flag(Report::Record& r, std::string key, bool value);

/// Fixed decimals without trailing noise, e.g. 0.694242.
std::string fixed(double v, int decimals);
/// Shortest %g form, e.g. 1e-09.
std::string general(double v);

}  // namespace symdyn
