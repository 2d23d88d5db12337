#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aaatrig::cli {

// Exit status: 0 ok, 1 library or I/O failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace aaatrig::cli
