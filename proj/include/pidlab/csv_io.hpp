#pragma once

#include <string>
#include <vector>

#include "pidlab/scenario.hpp"
#include "pidlab/time_series.hpp"

namespace pidlab {

// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Trajectory CSV with the fixed column set
//   time,setpoint,reference,output,output_denoised,control_commanded,control_applied,f_estimate
// one header row, full double precision.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// Two-column (time, value) series; used for plot-panel data files.
void write_series(const TimeSeries& s, const std::string& path,
                  const std::string& header = "");

// Two-column time,output CSV; read_response_csv parses it back.
void write_response_csv(const TimeSeries& s, const std::string& path);

// Metrics as key=value lines.
void write_metrics(const Metrics& m, const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& extra = {});

// Reads a step response for identification: either a trajectory CSV (uses the
// time and output columns) or a plain two-column time,value file with or
// without a header. Throws ConfigError on malformed input.
TimeSeries read_response_csv(const std::string& path);

}  // namespace pidlab
