#include "am/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace am {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Dataset read_csv_stream(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(name + ": empty file");
  }
  const std::size_t columns = split_row(line).size();
  if (columns < 1) throw std::runtime_error(name + ": empty header");

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != columns) {
      throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                               ": expected " + std::to_string(columns) +
                               " cells, got " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < columns; ++c) {
      const std::string cell = trimmed(cells[c]);
      double v = 0.0;
      const auto* first = cell.data();
      const auto* last = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error(name + ": line " + std::to_string(line_no) +
                                 ", column " + std::to_string(c + 1) +
                                 ": not a number: '" + cell + "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw std::runtime_error(name + ": no data rows");

  Vector y(static_cast<Eigen::Index>(rows));
  if (columns == 1) {
    for (std::size_t i = 0; i < rows; ++i) y[static_cast<Eigen::Index>(i)] = values[i];
    return Dataset(std::move(y));
  }
  RowMatrix x(static_cast<Eigen::Index>(rows),
              static_cast<Eigen::Index>(columns - 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c + 1 < columns; ++c) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          values[i * columns + c];
    }
    y[static_cast<Eigen::Index>(i)] = values[i * columns + columns - 1];
  }
  return Dataset(std::move(x), std::move(y));
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return read_csv_stream(in, path);
}

std::string format_double(double v, int significant_digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, significant_digits);
  return std::string(buf, res.ptr);
}

double round_sig(double v, int significant_digits) {
  const std::string s = format_double(v, significant_digits);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace am
