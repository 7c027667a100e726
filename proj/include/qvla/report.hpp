#pragma once

#include <string>
#include <vector>

namespace qvla {

enum class Exec { Serial, Parallel };

struct ReportLine {
  std::string key;
  bool pass = true;
  std::string witness;  // empty on pass
};

struct Report {
  std::string check;
  std::string window;
  std::vector<ReportLine> lines;

  bool ok() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
  size_t failures() const {
    size_t n = 0;
    for (const auto& l : lines) n += !l.pass;
    return n;
  }
  void add(std::string key, bool pass, std::string witness = {}) {
    lines.push_back(ReportLine{std::move(key), pass, std::move(witness)});
  }
  void append(const Report& o, const std::string& prefix = {}) {
    for (const auto& l : o.lines) lines.push_back(ReportLine{prefix + l.key, l.pass, l.witness});
  }
  // one line per instance plus a verdict line
  std::string text() const;
};

}  // namespace qvla
