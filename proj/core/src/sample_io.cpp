#include "probcf/sample_io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace probcf {

void write_samples_csv(std::ostream& out, const std::vector<WeightedSample>& samples) {
  out << "weight,value,flow_id\n";
  for (const auto& s : samples) fmt::print(out, "{:.17g},{:.17g},{}\n", s.weight, s.value, s.flow);
}

void write_samples_csv(const std::string& path, const std::vector<WeightedSample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_samples_csv(out, samples);
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) {
    f.erase(0, f.find_first_not_of(" \t\r"));
    f.erase(f.find_last_not_of(" \t\r") + 1);
    out.push_back(f);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error(fmt::format("line {}: not a number: '{}'", line_no, s));
}

}  // namespace

std::vector<WeightedSample> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sample file");
  auto header = split_fields(line);
  auto column = [&](std::string_view name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  int wc = column("weight"), vc = column("value"), fc = column("flow_id");
  if (vc < 0) throw std::runtime_error("sample file has no 'value' column");

  std::vector<WeightedSample> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = split_fields(line);
    if (f.size() != header.size()) throw std::runtime_error(fmt::format("line {}: expected {} fields", line_no, header.size()));
    WeightedSample s;
    s.value = to_double(f[vc], line_no);
    s.weight = wc >= 0 ? to_double(f[wc], line_no) : 1.0;
    s.flow = fc >= 0 ? static_cast<std::size_t>(to_double(f[fc], line_no)) : 0;
    out.push_back(s);
  }
  return out;
}

std::vector<WeightedSample> read_samples_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_samples_csv(in);
}

}  // namespace probcf
