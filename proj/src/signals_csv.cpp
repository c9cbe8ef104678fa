#include "shaketab/signals/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace shaketab::signals {

namespace {

std::array<std::vector<double> sim::SimulationRecord::*, 12> record_columns() {
  using R = sim::SimulationRecord;
  return {&R::t,  &R::r,  &R::dt_cmd, &R::d_table, &R::v_table, &R::a_table,
          &R::d1, &R::d2, &R::a1_abs, &R::a2_abs,  &R::F,       &R::V_lyap};
}

void append_double(std::string& out, double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

std::string format_csv(const sim::SimulationRecord& record) {
  const auto cols = record_columns();
  const std::size_t n = record.rows();
  for (auto member : cols) {
    if ((record.*member).size() != n) {
      throw SchemaMismatch("format_csv: ragged record columns");
    }
  }
  std::string out;
  out.reserve(32 + n * cols.size() * 20);
  out += sim::SimulationRecord::kHeader;
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    bool first = true;
    for (auto member : cols) {
      if (!first) out += ',';
      first = false;
      append_double(out, (record.*member)[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const sim::SimulationRecord& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("write_csv: cannot open '" + path + "'");
  const std::string body = format_csv(record);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoFailure("write_csv: short write to '" + path + "'");
}

sim::SimulationRecord parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaMismatch("parse_csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != sim::SimulationRecord::kHeader) {
    throw SchemaMismatch("parse_csv: header does not match the record schema");
  }
  sim::SimulationRecord record;
  const auto cols = record_columns();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{}) {
        throw SchemaMismatch("parse_csv: bad value at line " + std::to_string(line_no));
      }
      p = res.ptr;
      if (c + 1 < cols.size()) {
        if (p >= end || *p != ',') {
          throw SchemaMismatch("parse_csv: expected 12 fields at line " +
                               std::to_string(line_no));
        }
        ++p;
      }
      (record.*cols[c]).push_back(v);
    }
    if (p != end) {
      throw SchemaMismatch("parse_csv: trailing garbage at line " + std::to_string(line_no));
    }
  }
  return record;
}

sim::SimulationRecord read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("read_csv: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace shaketab::signals
