#include "repligame/csv_export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "repligame/dynamics.hpp"

namespace repligame {

std::string format_sig17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string content_digest(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  if (trajectory.samples.empty()) {
    throw std::invalid_argument("trajectory_csv: empty trajectory");
  }
  const size_t n = trajectory.samples.front().x.size();
  const bool with_monitors = trajectory.annotated();

  std::string out;
  out.reserve(trajectory.samples.size() * 220);
  out += "t";
  for (size_t i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  for (size_t i = 1; i <= n; ++i) out += ",y" + std::to_string(i);
  if (with_monitors) {
    out += ",V_kl,V_quad,Vdot_unc,Vdot_ctl";
    for (size_t i = 1; i <= n; ++i) out += ",pdx" + std::to_string(i);
    for (size_t i = 1; i <= n; ++i) out += ",pdy" + std::to_string(i);
  }
  out += "\n";

  for (size_t row = 0; row < trajectory.samples.size(); ++row) {
    const JointState& s = trajectory.samples[row];
    out += format_sig17(s.t);
    for (double v : s.x) {
      out += ',';
      out += format_sig17(v);
    }
    for (double v : s.y) {
      out += ',';
      out += format_sig17(v);
    }
    if (with_monitors) {
      const LyapunovSample& m = trajectory.monitors[row];
      for (double v : {m.v_kl, m.v_quad, m.vdot_uncontrolled, m.vdot_controlled}) {
        out += ',';
        out += format_sig17(v);
      }
      for (double v : m.pd_row) {
        out += ',';
        out += format_sig17(v);
      }
      for (double v : m.pd_col) {
        out += ',';
        out += format_sig17(v);
      }
    }
    out += '\n';
  }
  return out;
}

std::string emit_csv(const Trajectory& trajectory, const std::string& path) {
  const std::string body = trajectory_csv(trajectory);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
  return content_digest(body);
}

}  // namespace repligame
