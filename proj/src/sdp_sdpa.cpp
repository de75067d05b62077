#include "lasgap/sdp/sdpa.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lasgap::sdp {

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

bool is_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == ' ' || ch == '\t') continue;
    return ch == '*' || ch == '"';
  }
  return true;  // blank lines are skippable
}

std::string next_data_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (!is_comment(line)) return line;
  }
  throw std::invalid_argument(std::string("sdpa parse: missing ") + what);
}

std::vector<double> parse_numbers(const std::string& line) {
  std::string cleaned = line;
  for (char& ch : cleaned) {
    if (ch == '{' || ch == '}' || ch == ',' || ch == '(' || ch == ')') ch = ' ';
  }
  std::istringstream iss(cleaned);
  std::vector<double> out;
  double v;
  while (iss >> v) out.push_back(v);
  return out;
}

}  // namespace

void export_sdpa(const SdpProblem& p, std::ostream& sink) {
  p.validate();
  SdpProblem cp = p.canonical();

  sink << cp.constraints.size() << "\n";
  sink << cp.blocks.size() << "\n";
  for (size_t i = 0; i < cp.blocks.size(); ++i) {
    if (i) sink << " ";
    sink << (cp.blocks[i].diagonal ? -cp.blocks[i].size : cp.blocks[i].size);
  }
  sink << "\n";
  for (size_t i = 0; i < cp.constraints.size(); ++i) {
    if (i) sink << " ";
    sink << format_value(cp.constraints[i].rhs);
  }
  sink << "\n";

  auto write_terms = [&sink](size_t cons, const std::vector<SdpTerm>& terms, double scale) {
    for (const auto& t : terms) {
      sink << cons << " " << (t.block + 1) << " " << (t.i + 1) << " " << (t.j + 1) << " "
           << format_value(scale * t.coeff) << "\n";
    }
  };
  write_terms(0, cp.objective, -1.0);
  for (size_t k = 0; k < cp.constraints.size(); ++k) {
    write_terms(k + 1, cp.constraints[k].terms, 1.0);
  }
}

std::string export_sdpa_string(const SdpProblem& p) {
  std::ostringstream out;
  export_sdpa(p, out);
  return out.str();
}

SdpProblem parse_sdpa(std::istream& source) {
  SdpProblem p;
  p.sense = lasgap::Sense::minimize;

  const auto m_values = parse_numbers(next_data_line(source, "constraint count"));
  if (m_values.size() != 1) throw std::invalid_argument("sdpa parse: bad constraint count");
  const auto m = static_cast<size_t>(m_values[0]);

  const auto nb_values = parse_numbers(next_data_line(source, "block count"));
  if (nb_values.size() != 1) throw std::invalid_argument("sdpa parse: bad block count");
  const auto nblocks = static_cast<size_t>(nb_values[0]);

  const auto sizes = parse_numbers(next_data_line(source, "block sizes"));
  if (sizes.size() != nblocks) throw std::invalid_argument("sdpa parse: block size list");
  for (double s : sizes) {
    const auto size = static_cast<int>(s);
    if (size == 0) throw std::invalid_argument("sdpa parse: zero block size");
    p.blocks.push_back({size < 0 ? -size : size, size < 0});
  }

  const auto rhs = parse_numbers(next_data_line(source, "rhs vector"));
  if (rhs.size() != m) throw std::invalid_argument("sdpa parse: rhs length mismatch");
  p.constraints.resize(m);
  for (size_t k = 0; k < m; ++k) p.constraints[k].rhs = rhs[k];

  std::string line;
  while (std::getline(source, line)) {
    if (is_comment(line)) continue;
    const auto nums = parse_numbers(line);
    if (nums.size() != 5) throw std::invalid_argument("sdpa parse: bad entry line: " + line);
    const auto cons = static_cast<size_t>(nums[0]);
    SdpTerm t;
    t.block = static_cast<int>(nums[1]) - 1;
    int i = static_cast<int>(nums[2]) - 1;
    int j = static_cast<int>(nums[3]) - 1;
    if (i > j) std::swap(i, j);
    t.i = i;
    t.j = j;
    t.coeff = nums[4];
    if (cons > m) throw std::invalid_argument("sdpa parse: constraint index out of range");
    if (cons == 0) {
      t.coeff = -t.coeff;
      p.objective.push_back(t);
    } else {
      p.constraints[cons - 1].terms.push_back(t);
    }
  }

  p.validate();
  return p;
}

SdpProblem parse_sdpa_string(const std::string& text) {
  std::istringstream in(text);
  return parse_sdpa(in);
}

}  // namespace lasgap::sdp
