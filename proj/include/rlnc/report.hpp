#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

/// Flat result tables and their CSV / JSON encodings.
namespace rlnc::report {

/// First line of every CSV the tools emit. Bump on any column change.
inline constexpr const char* kSchemaLine = "# rlnc-delay v1";

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

using ResultRow = std::vector<Cell>;

class ResultTable
{
public:
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<ResultRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  /// Appends an all-empty row and returns it for filling by column name.
  class RowRef
  {
  public:
    RowRef& set(const std::string& column, Cell value);

  private:
    friend class ResultTable;
    RowRef(ResultTable& t, std::size_t i) : table_(t), index_(i) {}
    ResultTable& table_;
    std::size_t index_;
  };
  RowRef add_row();
  void add_row(ResultRow row);

  std::size_t column_index(const std::string& column) const;
  const Cell& at(std::size_t row, const std::string& column) const;
  /// Numeric cell as double; throws if the cell is empty or a string.
  double number(std::size_t row, const std::string& column) const;

  void append(const ResultTable& other);

  /// Schema line, header, then one line per row. Doubles use the shortest
  /// representation that round-trips; strings are quoted when they would
  /// otherwise read back as numbers or contain separators.
  void write_csv(std::ostream& out) const;
  /// Array of flat objects. Non-finite numbers become null.
  void write_json(std::ostream& out) const;

  /// Inverse of write_csv. Throws std::runtime_error with a line number on
  /// malformed input.
  static ResultTable read_csv(std::istream& in);

  friend bool operator==(const ResultTable&, const ResultTable&) = default;

private:
  std::vector<std::string> columns_;
  std::vector<ResultRow> rows_;
};

std::string format_cell(const Cell& c);

/// Column layout shared by theory, simulate and sweep summaries.
std::vector<std::string> summary_columns();
/// Column layout of per-omega distribution tables.
std::vector<std::string> distribution_columns();

}  // namespace rlnc::report
