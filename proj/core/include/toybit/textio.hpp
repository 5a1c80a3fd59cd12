#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "toybit/diagram.hpp"

namespace toybit {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class Format { Text, Tree };

/// Line-oriented format:
///
///     # comment
///     inputs 1
///     outputs 1
///     node a Z 01      (green, phase 01)
///     node b X 11      (red)
///     node h H
///     edge in0 a
///     edge a h         (repeat the line for parallel edges; `edge a a` is a loop)
///     edge h out0
///
/// Every `in<k>`/`out<k>` slot must be used exactly once. The result is validated.
Diagram parse_text(std::string_view text);
std::string to_text(const Diagram& d);

/// Tree form: {"inputs":n,"outputs":m,"nodes":[{"id":..,"kind":"Z|X|H","phase":"xy"}],
/// "edges":[["a","b"],...]}.
Diagram parse_tree(std::string_view text);
std::string to_tree(const Diagram& d);

/// Dispatches on format; `Text` input that starts with `{` is still rejected.
Diagram parse_diagram(std::string_view text, Format f);
std::string serialize(const Diagram& d, Format f);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace toybit
