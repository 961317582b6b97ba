#ifndef CARLFWM_CSV_HPP
#define CARLFWM_CSV_HPP

#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "carlfwm/dynamics.hpp"

namespace carlfwm {

/// 17 significant digits, enough for exact double round-trips.
std::string format_g17(double value);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::span<const std::string> columns);

  void write_row(std::span<const double> values);
  void write_raw_row(std::span<const std::string> cells);

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

extern const std::vector<std::string> kTimeSeriesColumns;

void write_timeseries_csv(const std::string& path, const TimeSeries& series);

/// Final-state phase-space dump, columns theta,p.
void write_state_csv(const std::string& path, const SimState& state);

} // namespace carlfwm

#endif
