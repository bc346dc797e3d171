#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "apoint/complex_point.hpp"

namespace apoint {

enum class ColumnKind { integer, real, complex, text };

struct Column {
  std::string name;
  ColumnKind kind;
};

using Cell = std::variant<long long, double, cplx, std::string>;

/// Rectangular result table. Complex columns expand to <name>_re, <name>_im
/// in both CSV and JSON.
struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Header plus one line per row; reals at 17 significant digits.
void write_csv(std::ostream& os, const Table& t);

/// {"meta": meta, "columns": [{name, kind}], "rows": [{field: value}]}.
nlohmann::json table_to_json(const Table& t, const nlohmann::json& meta = nlohmann::json::object());
Table table_from_json(const nlohmann::json& j);

std::string format_real(double v);

}  // namespace apoint
