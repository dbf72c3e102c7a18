#include "weakcomo/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace weakcomo {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    fail(ErrorCode::parse_error, "CSV line " + std::to_string(line_no) +
                                     ": expected a number, got '" + field +
                                     "'");
  return value;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse_error, "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RandomVariable Scenario::variable(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    fail(ErrorCode::parse_error, "scenario has no column named '" + name + "'");
  return RandomVariable(space,
                        columns[static_cast<std::size_t>(it - names.begin())]);
}

Scenario parse_scenario_csv(const std::string& text) {
  const auto lines = non_empty_lines(text);
  if (lines.size() < 2)
    fail(ErrorCode::parse_error, "scenario CSV needs a header and rows");
  const auto header = split_fields(lines[0]);
  if (header.size() < 2 || header[0] != "weight")
    fail(ErrorCode::parse_error,
         "scenario CSV header must be 'weight,<name1>,...'");

  Scenario sc;
  sc.names.assign(header.begin() + 1, header.end());
  for (const auto& name : sc.names)
    if (name.empty())
      fail(ErrorCode::parse_error, "scenario CSV has an empty column name");
  sc.columns.assign(sc.names.size(), {});

  std::vector<double> weights;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const auto fields = split_fields(lines[row]);
    if (fields.size() != header.size())
      fail(ErrorCode::parse_error,
           "CSV line " + std::to_string(row + 1) + ": expected " +
               std::to_string(header.size()) + " fields, got " +
               std::to_string(fields.size()));
    weights.push_back(parse_number(fields[0], row + 1));
    for (std::size_t col = 0; col < sc.names.size(); ++col)
      sc.columns[col].push_back(parse_number(fields[col + 1], row + 1));
  }
  sc.space = make_space(std::move(weights));
  return sc;
}

Scenario load_scenario_csv(const std::string& path) {
  return parse_scenario_csv(read_text_file(path));
}

std::vector<std::vector<double>> parse_matrix_csv(const std::string& text) {
  const auto lines = non_empty_lines(text);
  if (lines.empty()) fail(ErrorCode::parse_error, "matrix CSV is empty");
  std::vector<std::vector<double>> matrix;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const auto fields = split_fields(lines[row]);
    std::vector<double> values;
    values.reserve(fields.size());
    for (const auto& f : fields) values.push_back(parse_number(f, row + 1));
    if (!matrix.empty() && values.size() != matrix.front().size())
      fail(ErrorCode::parse_error, "matrix CSV has ragged rows");
    matrix.push_back(std::move(values));
  }
  if (matrix.size() != matrix.front().size())
    fail(ErrorCode::parse_error, "matrix CSV must be square");
  return matrix;
}

std::vector<std::vector<double>> load_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_text_file(path));
}

}  // namespace weakcomo
