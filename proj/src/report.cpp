#include "qvla/report.hpp"

namespace qvla {

std::string Report::text() const {
  std::string out = "check " + check;
  if (!window.empty()) out += " [" + window + "]";
  out += "\n";
  for (const auto& l : lines) {
    out += (l.pass ? "  pass " : "  FAIL ") + l.key;
    if (!l.pass && !l.witness.empty()) out += " : " + l.witness;
    out += "\n";
  }
  out += "verdict " + check + ": " + (ok() ? "pass" : "fail") + " (" + std::to_string(lines.size() - failures()) +
         "/" + std::to_string(lines.size()) + ")\n";
  return out;
}

}  // namespace qvla
