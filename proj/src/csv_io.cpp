#include "pidlab/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pidlab/errors.hpp"

namespace pidlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "time,setpoint,reference,output,output_denoised,control_commanded,"
           "control_applied,f_estimate\n";
    for (std::size_t k = 0; k < traj.time.size(); ++k) {
        out << format_double(traj.time.values[k]) << ','
            << format_double(traj.setpoint.values[k]) << ','
            << format_double(traj.reference.values[k]) << ','
            << format_double(traj.output.values[k]) << ','
            << format_double(traj.output_denoised.values[k]) << ','
            << format_double(traj.control_commanded.values[k]) << ','
            << format_double(traj.control_applied.values[k]) << ','
            << format_double(traj.f_estimate.values[k]) << '\n';
    }
}

void write_series(const TimeSeries& s, const std::string& path, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    if (!header.empty()) out << "# " << header << '\n';
    for (std::size_t k = 0; k < s.size(); ++k)
        out << format_double(s.time_at(k)) << ' ' << format_double(s.values[k]) << '\n';
}

void write_response_csv(const TimeSeries& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "time,output\n";
    for (std::size_t k = 0; k < s.size(); ++k)
        out << format_double(s.time_at(k)) << ',' << format_double(s.values[k]) << '\n';
}

void write_metrics(const Metrics& m, const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "iae=" << format_double(m.iae) << '\n';
    out << "itae=" << format_double(m.itae) << '\n';
    out << "max_overshoot=" << format_double(m.max_overshoot) << '\n';
    out << "settling_time_2pct=" << format_double(m.settling_time_2pct) << '\n';
    out << "settled=" << (m.settled ? "true" : "false") << '\n';
    for (const auto& [key, value] : extra) out << key << '=' << value << '\n';
}

namespace {

// Comma-separated when a comma is present, whitespace-separated otherwise.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    if (line.find(',') != std::string::npos) {
        while (std::getline(in, field, ',')) fields.push_back(field);
    } else {
        while (in >> field) fields.push_back(field);
    }
    return fields;
}

bool parse_number(const std::string& text, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(text, &pos);
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\r')) ++pos;
        return pos == text.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

TimeSeries read_response_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path);

    std::vector<double> times, values;
    std::size_t value_col = 1;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (fields.size() < 2) throw ConfigError("csv: need at least two columns: " + path);
        double t, v;
        if (first) {
            first = false;
            if (!parse_number(fields[0], t)) {
                // header row: a trajectory file names its output column
                for (std::size_t i = 0; i < fields.size(); ++i)
                    if (fields[i] == "output") value_col = i;
                continue;
            }
        } else if (!parse_number(fields[0], t)) {
            throw ConfigError("csv: bad time value: " + fields[0]);
        }
        if (value_col >= fields.size() || !parse_number(fields[value_col], v))
            throw ConfigError("csv: bad value in line: " + line);
        parse_number(fields[0], t);
        times.push_back(t);
        values.push_back(v);
    }
    if (times.size() < 2) throw ConfigError("csv: need at least two samples: " + path);

    TimeSeries s;
    s.t0 = times.front();
    s.h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (s.h <= 0.0) throw ConfigError("csv: non-increasing time column: " + path);
    s.values = std::move(values);
    return s;
}

}  // namespace pidlab
