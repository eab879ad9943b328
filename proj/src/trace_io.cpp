#include "salvo/trace_io.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

#include <fmt/format.h>

namespace salvo {

namespace {

constexpr const char* kAttackerColumns[] = {"R",     "lambda", "Vr", "Vlam",   "AMr", "AMlam",
                                            "mu",    "z",      "AM_mag", "x",  "y"};

void put(fmt::memory_buffer& buf, double v) { fmt::format_to(std::back_inserter(buf), ",{:.17g}", v); }

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string trace_header(std::size_t attackers) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "t");
  for (std::size_t i = 1; i <= attackers; ++i)
    for (const char* col : kAttackerColumns) fmt::format_to(std::back_inserter(buf), ",{}_{}", col, i);
  fmt::format_to(std::back_inserter(buf), ",x_T,y_T,gamma_T,A_T,S,V1,V2,V3,W");
  return fmt::to_string(buf);
}

void write_trace(const Trace& trace, std::ostream& out) {
  if (trace.empty()) throw std::invalid_argument("write_trace: empty trace");
  out << trace_header(trace.attackers) << '\n';
  fmt::memory_buffer buf;
  for (const TraceRow& row : trace.rows) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{:.17g}", row.t);
    for (const AttackerSample& a : row.attackers) {
      put(buf, a.rel.R);
      put(buf, a.rel.lambda);
      put(buf, a.rel.V_r);
      put(buf, a.rel.V_lambda);
      put(buf, a.control.A_Mr);
      put(buf, a.control.A_Mlambda);
      put(buf, a.mu);
      put(buf, a.z);
      put(buf, a.accel_mag);
      put(buf, a.pos.x);
      put(buf, a.pos.y);
    }
    put(buf, row.target.x);
    put(buf, row.target.y);
    put(buf, row.target.gamma_T);
    put(buf, row.target.A_T);
    put(buf, row.diag.S);
    put(buf, row.diag.V1);
    put(buf, row.diag.V2);
    put(buf, row.diag.V3);
    put(buf, row.diag.W);
    buf.push_back('\n');
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw std::runtime_error("write_trace: stream write failed");
}

void emit_trace(const Trace& trace, const std::filesystem::path& path) {
  if (trace.empty()) throw std::invalid_argument("emit_trace: empty trace");
  auto out = open_for_write(path);
  write_trace(trace, out);
}

void write_events(const Trace& trace, std::ostream& out) {
  out << "attacker,time,V_r\n";
  for (const auto& e : trace.events)
    out << fmt::format("{},{:.17g},{:.17g}\n", e.attacker + 1, e.time, e.terminal_V_r);
  if (!out) throw std::runtime_error("write_events: stream write failed");
}

void emit_events(const Trace& trace, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_events(trace, out);
}

}  // namespace salvo
