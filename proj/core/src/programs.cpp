#include "probcf/programs.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "probcf/desugar.hpp"
#include "probcf/parser.hpp"

namespace probcf {

const std::vector<BuiltinProgram>& builtin_programs() {
  static const std::vector<BuiltinProgram> programs = {
      {"coin", {"bias"}, {0.36}, R"(bool c1, c2 := true;
ifp ($bias)
  then c1 := true;
  else c1 := false;
ifp ($bias)
  then c2 := true;
  else c2 := false;
observe(!(c1 = c2));
return(c1);
)"},
      {"obsLoop", {"x0", "n0"}, {3, 5}, R"(double x := 0;
double y := 0;
int n := 0;
while (x < $x0) {
  n := n + 1;
  y ~ normal(1, 1);
  observe(0 <= y <= 2);
  x := x + y;
}
observe(n >= $n0);
return(n);
)"},
      {"unifCd", {"t0"}, {10}, R"(double p ~ uniform(0, 1);
double q := 1;
int t := 0;
while (p <= q) {
  q := q / 2;
  t := t + 1;
}
observe(t >= $t0);
return p;
)"},
      {"unifCd2", {"t0"}, {10}, R"(double p ~ uniform(0, 1);
double q := 1;
double x, y := 0;
int t := 0;
while (p <= q) {
  q := q / 2;
  y ~ normal(1, 1);
  x := x + y;
  t := t + 1;
}
observe(t >= $t0);
return x;
)"},
      {"poisCd", {"p", "x0"}, {6, 20}, R"(int m ~ poisson($p);
int x, n := 0;
n := m;
while (0 < n) {
  x := x + 1;
  n := n - 1;
}
observe(x >= $x0);
return m;
)"},
      {"poisCd2", {"p", "x0"}, {6, 20}, R"(int m ~ poisson($p);
int n := 0;
double x, y := 0;
n := m;
while (0 < n) {
  y ~ uniform(1, 1.25);
  x := x + y;
  n := n - 1;
}
observe(x >= $x0);
return m;
)"},
      {"geomIt", {"r", "x0"}, {0.5, 5}, R"(int n, x := 0;
double c ~ uniform(0, 1);
while (c <= $r) {
  n := n + 1;
  x := x + 1;
  c ~ uniform(0, 1);
}
observe(x >= $x0);
return n;
)"},
      {"geomIt2", {"r", "x0"}, {0.5, 5}, R"(int n := 0;
double x, y := 0;
double c ~ uniform(0, 1);
while (c <= $r) {
  y ~ beta(n + 1, 1);
  n := n + 1;
  x := x + y;
  c ~ uniform(0, 1);
}
observe(x >= $x0);
return n;
)"},
      {"mixed", {"p"}, {0}, R"(double x ~ normal(0, 1);
double y := 0;
if (x > $p) {
  y ~ normal(10, 2);
} else {
  y ~ gamma(3, 3);
}
return y;
)"},
      {"condPropDemo", {}, {}, R"(double x ~ uniform(0, 20);
double y := 0;
while (x < 10) {
  y ~ beta(1, 1);
  x := x + y;
}
return x;
)"},
  };
  return programs;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

const BuiltinProgram* find_builtin(std::string_view name) {
  for (const auto& b : builtin_programs()) {
    if (lower(b.name) == lower(name)) return &b;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ProgramSpec parse_program_spec(std::string_view spec) {
  ProgramSpec out;
  std::string s = trim(spec);
  auto open = s.find('(');
  if (open == std::string::npos) {
    out.name = s;
  } else {
    if (s.back() != ')') throw std::invalid_argument("malformed program spec: " + s);
    out.name = trim(s.substr(0, open));
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) throw std::invalid_argument("empty argument in program spec: " + s);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw std::invalid_argument("non-numeric argument in program spec: " + item);
      out.args.push_back(v);
    }
  }
  if (out.name.empty()) throw std::invalid_argument("empty program spec");
  return out;
}

bool is_builtin(std::string_view spec) {
  try {
    return find_builtin(parse_program_spec(spec).name) != nullptr;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string builtin_source(std::string_view spec) {
  ProgramSpec ps = parse_program_spec(spec);
  const BuiltinProgram* b = find_builtin(ps.name);
  if (b == nullptr) throw std::invalid_argument("unknown builtin program: " + ps.name);
  if (ps.args.size() > b->params.size()) {
    throw std::invalid_argument(fmt::format("{} takes {} argument(s)", b->name, b->params.size()));
  }
  std::string src = b->source;
  // Longest names first so that $x0 is not clobbered by a parameter $x.
  std::vector<std::size_t> order(b->params.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t c) { return b->params[a].size() > b->params[c].size(); });
  for (std::size_t i : order) {
    double v = i < ps.args.size() ? ps.args[i] : b->defaults[i];
    std::string key = "$" + b->params[i];
    std::string text = fmt::format("{}", v);
    for (auto pos = src.find(key); pos != std::string::npos; pos = src.find(key, pos + text.size())) {
      src.replace(pos, key.size(), text);
    }
  }
  return src;
}

Pcfg compile(std::string_view source) { return build_pcfg(desugar(parse_program(source))); }

Pcfg load_program(const std::string& spec_or_path) {
  if (is_builtin(spec_or_path)) return compile(builtin_source(spec_or_path));
  std::ifstream in(spec_or_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open program '" + spec_or_path + "' (not a file or builtin)");
  std::stringstream ss;
  ss << in.rdbuf();
  return compile(ss.str());
}

}  // namespace probcf
