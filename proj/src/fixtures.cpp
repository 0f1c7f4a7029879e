#include "heun/fixtures.hpp"

#include <cstdlib>
#include <fstream>

#include "heun/error.hpp"

#ifndef HEUN_DATA_DIR
#define HEUN_DATA_DIR "data/tables"
#endif

namespace heun {
namespace {

struct Csv {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  const std::string& get(const std::vector<std::string>& row, const std::string& col) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == col && i < row.size()) return row[i];
    throw Error("fixture column missing: " + col);
  }
};

Csv read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixture " + path.string());
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.find(' ', 2) > eq) {
        csv.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      }
      continue;
    }
    if (csv.header.empty()) {
      csv.header = split_csv(line);
    } else {
      csv.rows.push_back(split_csv(line));
    }
  }
  return csv;
}

int decimals_of(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

}  // namespace

std::filesystem::path fixtures_dir() {
  if (const char* env = std::getenv("HEUN_SPECTRA_DATA"); env && *env) return env;
  return HEUN_DATA_DIR;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

std::vector<EnergyFixture> load_energy_table(const std::filesystem::path& dir) {
  const Csv csv = read_csv(dir / "table1.csv");
  std::vector<EnergyFixture> out;
  for (const auto& r : csv.rows) {
    const std::string& e = csv.get(r, "E");
    out.push_back({std::stoi(csv.get(r, "l")), std::stod(csv.get(r, "A")),
                   std::stoi(csv.get(r, "n")), std::stod(e), decimals_of(e)});
  }
  return out;
}

CoefficientTable load_coefficient_table(const std::filesystem::path& dir) {
  const Csv csv = read_csv(dir / "table2.csv");
  CoefficientTable t;
  t.meta = csv.meta;
  for (const auto& r : csv.rows) {
    t.rows.push_back({std::stoi(csv.get(r, "n")),
                      {std::stod(csv.get(r, "re")), std::stod(csv.get(r, "im"))}});
  }
  return t;
}

std::vector<IndexFixture> load_index_table(const std::filesystem::path& dir) {
  const Csv csv = read_csv(dir / "table3.csv");
  std::vector<IndexFixture> out;
  for (const auto& r : csv.rows) {
    out.push_back({std::stoi(csv.get(r, "l")), std::stod(csv.get(r, "A")),
                   {std::stod(csv.get(r, "nu_re")), std::stod(csv.get(r, "nu_im"))},
                   std::stod(csv.get(r, "E"))});
  }
  return out;
}

std::vector<BetaFixture> load_beta_table(const std::filesystem::path& dir) {
  const Csv csv = read_csv(dir / "table4.csv");
  std::vector<BetaFixture> out;
  for (const auto& r : csv.rows) {
    out.push_back({std::stoi(csv.get(r, "p")), csv.get(r, "E"), std::stoi(csv.get(r, "l")),
                   std::stod(csv.get(r, "beta")), csv.get(r, "expression")});
  }
  return out;
}

}  // namespace heun
