// Copyright 2026 The vbpso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text persistence for run traces and small formatting helpers shared by
// the CSV writers.
//
// Trace layout:
//   vbpso-trace 1
//   <swarm_size> <dimensions> <record count>
//   <iteration> <gbest> <flips, comma separated> <hex row per particle>...
// Rows are BitVector::to_hex (16 hex digits per 64-bit word).

#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vbpso/bitvector.hpp"
#include "vbpso/engine.hpp"
#include "vbpso/errors.hpp"

namespace vbpso {

// Shortest representation that parses back to the same double.
inline std::string format_real(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

template <class Int>
Int parse_integer(std::string_view tok, const std::string& what, std::size_t line = 0) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(what, line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

inline double parse_real(std::string_view tok, const std::string& what, std::size_t line = 0) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(what, line, "expected a number, got '" + std::string(tok) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_view(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline constexpr std::string_view kTraceMagic = "vbpso-trace 1";

inline void write_trace(std::ostream& out, const RunTrace& trace) {
  out << kTraceMagic << '\n';
  out << trace.swarm_size << ' ' << trace.dimensions << ' ' << trace.records.size() << '\n';
  for (const auto& rec : trace.records) {
    out << rec.iteration << ' ' << format_real(rec.gbest_fitness) << ' ';
    for (std::size_t i = 0; i < rec.flips.size(); ++i) {
      if (i != 0) out << ',';
      out << rec.flips[i];
    }
    for (const auto& row : rec.positions) out << ' ' << row.to_hex();
    out << '\n';
  }
}

inline RunTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) throw ParseError("", lineno, "unexpected end of trace");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next();
  if (line != kTraceMagic) throw ParseError("", lineno, "not a vbpso trace file");
  next();
  RunTrace trace;
  std::size_t count = 0;
  {
    std::istringstream header(line);
    std::string a, b, c;
    if (!(header >> a >> b >> c)) throw ParseError("header", lineno, "expected 3 fields");
    trace.swarm_size = parse_integer<std::size_t>(a, "swarm_size", lineno);
    trace.dimensions = parse_integer<std::size_t>(b, "dimensions", lineno);
    count = parse_integer<std::size_t>(c, "records", lineno);
  }
  trace.records.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    next();
    const auto fields = split_view(line, ' ');
    if (fields.size() != 3 + trace.swarm_size) {
      throw ParseError("record", lineno,
                       "expected " + std::to_string(3 + trace.swarm_size) + " fields");
    }
    TraceRecord rec;
    rec.iteration = parse_integer<std::size_t>(fields[0], "iteration", lineno);
    rec.gbest_fitness = parse_real(fields[1], "gbest", lineno);
    for (auto tok : split_view(fields[2], ',')) {
      rec.flips.push_back(parse_integer<std::uint32_t>(tok, "flips", lineno));
    }
    if (rec.flips.size() != trace.swarm_size) {
      throw ParseError("flips", lineno, "one flip count per particle expected");
    }
    rec.positions.reserve(trace.swarm_size);
    for (std::size_t i = 0; i < trace.swarm_size; ++i) {
      try {
        rec.positions.push_back(BitVector::from_hex(fields[3 + i], trace.dimensions));
      } catch (const DomainError& e) {
        throw ParseError("position", lineno, e.what());
      }
    }
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace vbpso
