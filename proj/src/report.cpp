#include "rlnc/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rlnc::report {

namespace {

std::string format_double(double v)
{
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // Keep doubles distinguishable from integers on re-read.
  if (s.find_first_of(".e") == std::string::npos)
    s += ".0";
  return s;
}

bool parse_int(const std::string& s, std::int64_t& out)
{
  if (s.empty())
    return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out)
{
  if (s.empty())
    return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool needs_quotes(const std::string& s)
{
  if (s.empty() || s.find_first_of(",\"\n\r") != std::string::npos)
    return true;
  // many readers trim, and '#' in column one would read as a comment
  if (s.front() == '#' || std::isspace(static_cast<unsigned char>(s.front())) ||
      std::isspace(static_cast<unsigned char>(s.back())))
    return true;
  std::int64_t i;
  double d;
  return parse_int(s, i) || parse_double(s, d);
}

std::string quote(const std::string& s)
{
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Field
{
  std::string text;
  bool quoted = false;
};

std::vector<Field> split_csv_line(const std::string& line, std::size_t line_no)
{
  std::vector<Field> fields;
  Field cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.text += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.text += c;
      }
    } else if (c == '"') {
      in_quotes = true;
      cur.quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur = {};
    } else {
      cur.text += c;
    }
  }
  if (in_quotes)
    throw std::runtime_error("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

Cell parse_cell(const Field& f)
{
  if (f.quoted)
    return f.text;
  if (f.text.empty())
    return std::monostate{};
  std::int64_t i;
  if (parse_int(f.text, i))
    return i;
  double d;
  if (parse_double(f.text, d))
    return d;
  return f.text;
}

}  // namespace

std::string format_cell(const Cell& c)
{
  struct Visitor
  {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& s) const { return needs_quotes(s) ? quote(s) : s; }
  };
  return std::visit(Visitor{}, c);
}

ResultTable::ResultTable(std::vector<std::string> columns)
  : columns_(std::move(columns))
{}

ResultTable::RowRef& ResultTable::RowRef::set(const std::string& column, Cell value)
{
  table_.rows_[index_][table_.column_index(column)] = std::move(value);
  return *this;
}

ResultTable::RowRef ResultTable::add_row()
{
  rows_.emplace_back(columns_.size());
  return RowRef(*this, rows_.size() - 1);
}

void ResultTable::add_row(ResultRow row)
{
  if (row.size() != columns_.size())
    throw std::invalid_argument("row width does not match table columns");
  rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& column) const
{
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == column)
      return i;
  }
  throw std::out_of_range("no column named '" + column + "'");
}

const Cell& ResultTable::at(std::size_t row, const std::string& column) const
{
  return rows_.at(row).at(column_index(column));
}

double ResultTable::number(std::size_t row, const std::string& column) const
{
  const Cell& c = at(row, column);
  if (const auto* d = std::get_if<double>(&c))
    return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c))
    return static_cast<double>(*i);
  throw std::runtime_error("column '" + column + "' is not numeric in row " + std::to_string(row));
}

void ResultTable::append(const ResultTable& other)
{
  if (other.columns_ != columns_)
    throw std::invalid_argument("cannot append tables with different columns");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void ResultTable::write_csv(std::ostream& out) const
{
  out << kSchemaLine << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void ResultTable::write_json(std::ostream& out) const
{
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c))
        obj[columns_[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
      else if (const auto* n = std::get_if<std::int64_t>(&c))
        obj[columns_[i]] = *n;
      else if (const auto* s = std::get_if<std::string>(&c))
        obj[columns_[i]] = *s;
      else
        obj[columns_[i]] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

ResultTable ResultTable::read_csv(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> columns;
  bool have_header = false;
  ResultTable table({});
  const auto open_quote = [](const std::string& s) { return std::count(s.begin(), s.end(), '"') % 2 == 1; };
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t first_line = line_no;
    // quoted fields may span lines
    std::string more;
    while (open_quote(line) && std::getline(in, more)) {
      ++line_no;
      line += '\n';
      line += more;
    }
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() && have_header && columns.size() == 1) {
      table.rows_.push_back(ResultRow(1));
      continue;
    }
    if (line.empty() || line.front() == '#')
      continue;
    auto fields = split_csv_line(line, first_line);
    if (!have_header) {
      for (auto& f : fields)
        columns.push_back(f.text);
      table = ResultTable(columns);
      have_header = true;
      continue;
    }
    if (fields.size() != columns.size())
      throw std::runtime_error("csv line " + std::to_string(first_line) + ": expected " + std::to_string(columns.size()) +
                               " fields, got " + std::to_string(fields.size()));
    ResultRow row;
    row.reserve(fields.size());
    for (const auto& f : fields)
      row.push_back(parse_cell(f));
    table.rows_.push_back(std::move(row));
  }
  if (!have_header)
    throw std::runtime_error("csv input has no header line");
  return table;
}

std::vector<std::string> summary_columns()
{
  return {"label",        "scheme",      "source",      "receiver",     "K",
          "q",            "Omega",       "N",           "epsilon",      "avg_transmissions",
          "avg_overhead", "outage",      "lower_bound", "upper_bound",  "overhead_bound",
          "lucani_bound", "std_error",   "generations", "seed"};
}

std::vector<std::string> distribution_columns()
{
  return {"label", "scheme", "source", "receiver", "K", "q", "Omega", "N", "epsilon", "omega", "pmf", "cdf"};
}

}  // namespace rlnc::report
