#pragma once

/// @file cli.hpp
/// The polycalc command line: one subcommand per group of library operations.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace polycalc::cli {

/// One library operation and the flag that selects it ("" for the default mode).
struct Entry {
  std::string_view op;
  std::string_view flag;
};

struct Route {
  std::string_view subcommand;
  std::string_view usage;
  std::vector<Entry> entries;
};

/// The dispatch table, in help order.
const std::vector<Route>& routes();
/// Every operation of the library modules, each of which must be reachable
/// from exactly one subcommand.
const std::vector<std::string_view>& library_ops();
/// Empty when the table covers library_ops() exactly once and every flag it
/// names is registered on its subcommand; otherwise a description of the gaps.
std::string self_test();

/// Exit codes: 0 success, 1 domain or schema error or a failed check, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polycalc::cli
