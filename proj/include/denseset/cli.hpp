#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace denseset {

// Full command-line entry point: parses argv (without the program name),
// runs the requested operation, writes one JSON (or plain) document to
// `out`.  Exit codes: 0 success/verified, 1 mathematically rejected,
// 2 budget exhausted (partial results printed with "certified": false),
// 64 usage errors (message on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace denseset
