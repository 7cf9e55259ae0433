#include "savskit/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string_view>

#include "savskit/errors.hpp"

namespace savskit::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

Eigen::MatrixXd NumericTable::to_matrix() const {
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = at(r, c);
  return m;
}

Eigen::VectorXd NumericTable::column(std::size_t c) const {
  Eigen::VectorXd v(rows);
  for (std::size_t r = 0; r < rows; ++r) v[r] = at(r, c);
  return v;
}

std::size_t NumericTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) return c;
  throw DataError("missing column '" + name + "'");
}

NumericTable read_numeric(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  NumericTable table;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto cells = split(view);

    if (first_content_line) {
      first_content_line = false;
      bool numeric = true;
      for (auto cell : cells) numeric = numeric && parse_number(cell).has_value();
      table.cols = cells.size();
      if (!numeric) {
        for (auto cell : cells) table.header.emplace_back(cell);
        continue;
      }
    }
    if (cells.size() != table.cols) {
      throw DataError(path.string() + ": row " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(table.cols));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty()) {
        throw DataError(path.string() + ": missing cell at row " + std::to_string(line_no) +
                        ", column " + std::to_string(c + 1));
      }
      const auto value = parse_number(cells[c]);
      if (!value) {
        throw DataError(path.string() + ": non-numeric cell '" + std::string(cells[c]) +
                        "' at row " + std::to_string(line_no) + ", column " +
                        std::to_string(c + 1));
      }
      table.values.push_back(*value);
    }
    ++table.rows;
  }
  return table;
}

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::string join(const std::vector<std::string>& fields, char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += delimiter;
    out += fields[i];
  }
  return out;
}

void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const Eigen::MatrixXd& rows) {
  auto out = open_for_write(path);
  if (!header.empty()) out << join(header) << '\n';
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      if (c) out << ',';
      out << format_double(rows(r, c));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_vector(const std::filesystem::path& path, const std::string& header,
                  const Eigen::VectorXd& values) {
  write_columns(path, {header}, values);
}

}  // namespace savskit::csv
