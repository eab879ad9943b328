#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "salvo/sim.hpp"

namespace salvo {

/// Column names of the trace table, in order.
std::string trace_header(std::size_t attackers);

/// One comma-separated row per time step, 17 significant digits.
/// Throws std::invalid_argument on an empty trace.
void write_trace(const Trace& trace, std::ostream& out);
void emit_trace(const Trace& trace, const std::filesystem::path& path);

/// attacker,time,V_r; one line per intercept, 1-based attacker index.
void write_events(const Trace& trace, std::ostream& out);
void emit_events(const Trace& trace, const std::filesystem::path& path);

}  // namespace salvo
