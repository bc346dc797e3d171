#include "apoint/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "apoint/errors.hpp"

namespace apoint {

namespace {

const char* kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::integer: return "integer";
    case ColumnKind::real: return "real";
    case ColumnKind::complex: return "complex";
    case ColumnKind::text: return "text";
  }
  return "text";
}

ColumnKind kind_from(const std::string& s) {
  if (s == "integer") return ColumnKind::integer;
  if (s == "real") return ColumnKind::real;
  if (s == "complex") return ColumnKind::complex;
  if (s == "text") return ColumnKind::text;
  throw Error(ErrorKind::domain, "unknown column kind " + s);
}

bool matches(ColumnKind k, const Cell& c) {
  switch (k) {
    case ColumnKind::integer: return std::holds_alternative<long long>(c);
    case ColumnKind::real: return std::holds_alternative<double>(c);
    case ColumnKind::complex: return std::holds_alternative<cplx>(c);
    case ColumnKind::text: return std::holds_alternative<std::string>(c);
  }
  return false;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::json real_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double real_from(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::domain, "row width does not match columns");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!matches(columns[i].kind, row[i])) {
      throw Error(ErrorKind::domain, "cell type does not match column " + columns[i].name);
    }
  }
  rows.push_back(std::move(row));
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    const auto& c = t.columns[i];
    if (c.kind == ColumnKind::complex) {
      os << c.name << "_re," << c.name << "_im";
    } else {
      os << c.name;
    }
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, long long>) {
              os << v;
            } else if constexpr (std::is_same_v<V, double>) {
              os << format_real(v);
            } else if constexpr (std::is_same_v<V, cplx>) {
              os << format_real(v.real()) << ',' << format_real(v.imag());
            } else {
              os << quote(v);
            }
          },
          row[i]);
    }
    os << '\n';
  }
}

nlohmann::json table_to_json(const Table& t, const nlohmann::json& meta) {
  nlohmann::json j;
  j["meta"] = meta;
  j["columns"] = nlohmann::json::array();
  for (const auto& c : t.columns) j["columns"].push_back({{"name", c.name}, {"kind", kind_name(c.kind)}});
  j["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& name = t.columns[i].name;
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, cplx>) {
              r[name + "_re"] = real_json(v.real());
              r[name + "_im"] = real_json(v.imag());
            } else if constexpr (std::is_same_v<V, double>) {
              r[name] = real_json(v);
            } else {
              r[name] = v;
            }
          },
          row[i]);
    }
    j["rows"].push_back(std::move(r));
  }
  return j;
}

Table table_from_json(const nlohmann::json& j) {
  Table t;
  for (const auto& c : j.at("columns")) {
    t.columns.push_back({c.at("name").get<std::string>(), kind_from(c.at("kind").get<std::string>())});
  }
  for (const auto& r : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& c : t.columns) {
      switch (c.kind) {
        case ColumnKind::integer: row.emplace_back(r.at(c.name).get<long long>()); break;
        case ColumnKind::real: row.emplace_back(real_from(r.at(c.name))); break;
        case ColumnKind::complex:
          row.emplace_back(cplx(real_from(r.at(c.name + "_re")), real_from(r.at(c.name + "_im"))));
          break;
        case ColumnKind::text: row.emplace_back(r.at(c.name).get<std::string>()); break;
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace apoint
