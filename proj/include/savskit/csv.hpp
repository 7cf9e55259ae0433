#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace savskit::csv {

/// A rectangular numeric table read from a comma-delimited file.
struct NumericTable {
  std::vector<std::string> header;  // empty when the file has no header row
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  Eigen::MatrixXd to_matrix() const;
  Eigen::VectorXd column(std::size_t c) const;
  /// Index of a named header column; throws DataError when absent.
  std::size_t column_index(const std::string& name) const;
};

/// Reads a numeric CSV. The first row is treated as a header when any of
/// its cells fails to parse as a number. Row and column numbers in error
/// messages are 1-based and count the header line.
NumericTable read_numeric(const std::filesystem::path& path);

/// Shortest decimal form that round-trips to the same double (17 significant digits).
std::string format_double(double value);

/// Writes a header line followed by one line per row of `rows`.
void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const Eigen::MatrixXd& rows);

void write_vector(const std::filesystem::path& path, const std::string& header,
                  const Eigen::VectorXd& values);

/// Opens `path` for writing, creating parent directories; throws IoError on failure.
std::ofstream open_for_write(const std::filesystem::path& path);

std::string join(const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace savskit::csv
