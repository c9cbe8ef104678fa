#include "shaketab/signals/at2.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace shaketab::signals {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

bool parse_number(const std::string& token, double* out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  char* parsed_end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &parsed_end);
  if (parsed_end != end || parsed_end == begin) return false;
  *out = v;
  return true;
}

}  // namespace

GroundMotion parse_at2(const std::string& text, const std::string& record_id) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.size() < 4) {
    throw MalformedHeader("parse_at2: fewer than 4 header lines");
  }
  // the NPTS/DT line: tolerate '=' and ',' glued to the numbers
  std::string header = lines[3];
  if (header.find("NPTS") == std::string::npos &&
      header.find("npts") == std::string::npos) {
    throw MalformedHeader("parse_at2: line 4 lacks the NPTS keyword");
  }
  for (char& ch : header) {
    if (ch == '=' || ch == ',') ch = ' ';
  }
  std::istringstream hs(header);
  std::string token;
  double npts_val = -1.0, dt_val = -1.0;
  int found = 0;
  while (hs >> token && found < 2) {
    double v;
    if (parse_number(token, &v)) {
      (found == 0 ? npts_val : dt_val) = v;
      ++found;
    }
  }
  if (found < 2 || npts_val <= 0.0 ||
      npts_val != std::floor(npts_val) || !(dt_val > 0.0)) {
    throw MalformedHeader("parse_at2: NPTS/DT tokens absent or non-numeric");
  }
  const std::size_t npts = static_cast<std::size_t>(npts_val);

  std::vector<double> values;
  values.reserve(npts);
  for (std::size_t li = 4; li < lines.size(); ++li) {
    std::istringstream vs(lines[li]);
    while (vs >> token) {
      double v;
      if (!parse_number(token, &v)) {
        throw MalformedHeader("parse_at2: unparseable sample token '" + token + "'");
      }
      if (!std::isfinite(v)) {
        throw NonFiniteSample("parse_at2: non-finite sample at index " +
                              std::to_string(values.size()));
      }
      values.push_back(v);
    }
  }
  if (values.size() != npts) {
    throw SampleCountMismatch("parse_at2: header declares " + std::to_string(npts) +
                              " points, body has " + std::to_string(values.size()));
  }
  GroundMotion gm;
  gm.record_id = record_id;
  gm.accel = TimeSeries(dt_val, std::move(values), Unit::g);
  gm.source_dt = dt_val;
  return gm;
}

std::string serialize_at2(const GroundMotion& gm) {
  std::string out;
  out += "PEER NGA STRONG MOTION DATABASE RECORD (synthetic export)\n";
  out += gm.record_id + "\n";
  out += "ACCELERATION TIME SERIES IN UNITS OF G\n";
  char line[128];
  std::snprintf(line, sizeof(line), "NPTS=%7zu, DT=   %.7g SEC\n",
                gm.accel.size(), gm.accel.dt);
  out += line;
  for (std::size_t i = 0; i < gm.accel.size(); ++i) {
    std::snprintf(line, sizeof(line), "  %.17g", gm.accel.values[i]);
    out += line;
    if (i % 5 == 4 || i + 1 == gm.accel.size()) out += '\n';
  }
  return out;
}

GroundMotion load_at2(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MalformedHeader("load_at2: cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_at2(ss.str(), std::filesystem::path(path).stem().string());
}

}  // namespace shaketab::signals
