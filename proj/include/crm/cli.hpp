#ifndef CRM_CLI_HPP
#define CRM_CLI_HPP

// Command-line front end. Every subcommand produces a Table that is written as
// CSV (header row, %.17g numbers, '\n' line endings) or as a JSON array of flat
// objects.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace crm::cli {

struct Cell {
  std::string text;      // CSV form
  bool numeric = false;  // JSON number (or null when not finite / empty)
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);  // %.17g

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Cells come back as text; numeric flags are not recoverable from CSV.
Table parse_csv(std::string_view text);

// Exit codes: 0 success, 1 library error (name on err), 2 argument error (usage on err).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crm::cli

#endif  // CRM_CLI_HPP
