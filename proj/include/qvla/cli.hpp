#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qvla/qvla.hpp"

namespace qvla::cli {

// text of a `qvla-spec v1` file; errors are InputError with "source:line:col"
QVLA parse_spec(const std::string& text, const std::string& source = "<spec>");
QVLA parse_spec_file(const std::string& path);

// args exclude the program name; returns 0 all pass, 1 any failure, 2 input error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qvla::cli
