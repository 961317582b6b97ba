#include "carlfwm/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace carlfwm {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvWriter::CsvWriter(const std::string& path, std::span<const std::string> columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open output file " + path);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::write_row(std::span<const double> values) {
  if (values.size() != n_columns_) throw std::logic_error("row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_g17(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::write_raw_row(std::span<const std::string> cells) {
  if (cells.size() != n_columns_) throw std::logic_error("row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

const std::vector<std::string> kTimeSeriesColumns = {
    "t_bar", "a_re", "a_im", "intensity", "bunching_mag", "bunching_arg",
    "mean_p", "std_p", "budget"};

void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
  CsvWriter writer(path, kTimeSeriesColumns);
  for (const auto& row : series.rows) {
    const double values[] = {row.t,          row.a.real(),    row.a.imag(),
                             row.intensity,  row.bunching_mag, row.bunching_arg,
                             row.mean_p,     row.std_p,        row.budget};
    writer.write_row(values);
  }
}

void write_state_csv(const std::string& path, const SimState& state) {
  const std::vector<std::string> columns = {"theta", "p"};
  CsvWriter writer(path, columns);
  for (std::size_t i = 0; i < state.theta.size(); ++i) {
    const double values[] = {state.theta[i], state.p[i]};
    writer.write_row(values);
  }
}

} // namespace carlfwm
