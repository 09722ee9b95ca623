#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace repligame {

struct Trajectory;

/// Shortest-round-trip style fixed formatting: 17 significant digits, "%.17g".
std::string format_sig17(double v);

/// FNV-1a 64-bit content digest, rendered as 16 hex characters.
std::string content_digest(std::string_view bytes);

/// Renders the trajectory as CSV. Header: t,x1..xn,y1..yn and, when the
/// trajectory carries monitors, V_kl,V_quad,Vdot_unc,Vdot_ctl,pdx1..pdxn,pdy1..pdyn.
/// Lines are LF-terminated.
std::string trajectory_csv(const Trajectory& trajectory);

/// Writes the CSV to disk and returns the content digest.
std::string emit_csv(const Trajectory& trajectory, const std::string& path);

}  // namespace repligame
