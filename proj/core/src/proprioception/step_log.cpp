#include "scoutnav/proprioception/step_log.hpp"

#include <cmath>

#include "scoutnav/io.hpp"

namespace scoutnav::proprioception {

std::string format_step_row(const StepMeasurement& s) {
  using io::format_double;
  return format_double(s.time_s) + ',' + format_double(s.position.x) + ',' +
         format_double(s.position.y) + ',' + format_double(s.estimate.alpha_z) + ',' +
         format_double(s.estimate.r_squared) + ',' + std::to_string(s.estimate.n_samples);
}

std::string write_step_log(std::span<const StepMeasurement> steps) {
  std::string out(kStepLogHeader);
  out += '\n';
  for (const auto& s : steps) {
    out += format_step_row(s);
    out += '\n';
  }
  return out;
}

std::vector<StepMeasurement> read_step_log(std::string_view text) {
  const auto rows = io::lines(text);
  if (rows.empty() || io::trim(rows.front()) != kStepLogHeader) {
    throw InvalidInput("step log must start with header '" + std::string(kStepLogHeader) + "'");
  }
  std::vector<StepMeasurement> steps;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (io::trim(rows[r]).empty()) continue;
    const auto f = io::split(rows[r], ',');
    try {
      if (f.size() != 6) throw InvalidInput("expected 6 fields");
      StepMeasurement s;
      s.time_s = io::parse_double(f[0]);
      s.position = {io::parse_double(f[1]), io::parse_double(f[2])};
      s.estimate.alpha_z = io::parse_double(f[3]);
      s.estimate.r_squared = io::parse_double(f[4]);
      const auto n = io::parse_integer(f[5]);
      if (n < 2) throw InvalidInput("n_samples must be at least 2");
      s.estimate.n_samples = static_cast<std::size_t>(n);
      if (!std::isfinite(s.position.x) || !std::isfinite(s.position.y)) {
        throw InvalidInput("non-finite position");
      }
      if (!(s.estimate.alpha_z >= 0.0) || !(s.estimate.r_squared >= 0.0) ||
          !(s.estimate.r_squared <= 1.0)) {
        throw InvalidInput("estimate out of range");
      }
      steps.push_back(s);
    } catch (const Error& e) {
      throw InvalidInput("step log row " + std::to_string(r) + ": " + e.what());
    }
  }
  return steps;
}

}  // namespace scoutnav::proprioception
