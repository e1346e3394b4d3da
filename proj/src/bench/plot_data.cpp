#include "pramlab/bench/plot_data.hpp"

#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pramlab/bench/config.hpp"

namespace pramlab::bench {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void emit_plot_data(std::istream& in, std::ostream& out) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("benchmark CSV is empty");
  const auto header = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"algo", "family", "param", "n", "blocks", "p", "backend", "rep",
                           "wall_ms", "transactions", "sm_span_transactions"}) {
    if (!col.count(need)) throw ConfigError(std::string("benchmark CSV lacks column ") + need);
  }

  std::vector<std::vector<std::string>> rows, means;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    cells.resize(header.size());
    (cells[col["rep"]] == "mean" ? means : rows).push_back(std::move(cells));
  }
  if (!means.empty()) rows = std::move(means);

  auto get = [&](const std::vector<std::string>& r, const char* name) -> const std::string& {
    return r[col[name]];
  };
  using Key = std::tuple<std::string, std::string, std::string, std::string, std::string>;
  auto series = [&](const std::vector<std::string>& r) {
    return Key{get(r, "algo"), get(r, "family"), get(r, "param"), get(r, "n"), get(r, "backend")};
  };
  auto cost = [&](const std::vector<std::string>& r) {
    const std::string& v =
        get(r, "backend") == "simulated" ? get(r, "sm_span_transactions") : get(r, "wall_ms");
    return v.empty() ? 0.0 : std::stod(v);
  };

  std::map<Key, double> baseline;
  for (const auto& r : rows) {
    if (get(r, "blocks") == "1") baseline[series(r)] = cost(r);
  }

  out << "algo,family,param,n,backend,blocks,p,time_per_elem_ms,transactions_per_elem,speedup\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    auto it = baseline.find(series(r));
    if (it == baseline.end()) {
      throw ConfigError("no blocks=1 baseline for " + get(r, "algo") + " n=" + get(r, "n") +
                        " on " + get(r, "backend"));
    }
    const double n = std::stod(get(r, "n"));
    out << get(r, "algo") << ',' << get(r, "family") << ',' << get(r, "param") << ','
        << get(r, "n") << ',' << get(r, "backend") << ',' << get(r, "blocks") << ','
        << get(r, "p") << ',';
    if (!get(r, "wall_ms").empty()) out << std::stod(get(r, "wall_ms")) / n;
    out << ',';
    if (!get(r, "transactions").empty()) out << std::stod(get(r, "transactions")) / n;
    out << ',';
    const double c = cost(r);
    if (c > 0) out << it->second / c;
    out << '\n';
  }
}

}  // namespace pramlab::bench
