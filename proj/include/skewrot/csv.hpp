#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "skewrot/geometry.hpp"
#include "skewrot/orbit.hpp"

namespace skewrot::csv {

// shortest representation that round-trips a double exactly
std::string format_double(double v);

// Row-oriented CSV writer: header on construction, verbatim cells, LF line
// endings.  Cell content must not contain commas or newlines (all producers
// here emit numbers and short tokens).  Throws std::runtime_error on I/O
// failure and on column-count mismatches.
class Writer {
  public:
    Writer(const std::string& path, const std::vector<std::string>& columns);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void row(const std::vector<std::string>& cells);
    void close();

  private:
    std::FILE* f_ = nullptr;
    std::size_t n_cols_ = 0;
    std::string path_;
};

// Serializes a recorded trajectory with derived per-point quantities:
//   step, substep, x, y, rho, phi_unwrapped, h_value
// rho and the cumulatively unwrapped angle are taken about `center`; substep
// counts applied factors within a step (0 marks the initial point, the factor
// count marks a completed step).  When the trace recorded intermediate images
// each of them gets its own row.
void write_orbit_trace(const std::string& path, const OrbitTrace& trace, Point center);

// (t, value) series, e.g. distances over steps
void write_series(const std::string& path, const std::string& t_name,
                  const std::string& value_name, const std::vector<std::pair<double, double>>& xs);

}  // namespace skewrot::csv
