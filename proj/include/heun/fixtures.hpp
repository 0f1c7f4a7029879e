#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "heun/model.hpp"

namespace heun {

/// Directory holding the bundled reference tables: $HEUN_SPECTRA_DATA if set,
/// otherwise the source-tree location recorded at build time.
std::filesystem::path fixtures_dir();

struct EnergyFixture {
  int l = 0;
  double A = 0.0;
  int n = 0;
  double E = 0.0;
  int decimals = 0;  ///< printed decimals
};

struct CoefficientFixture {
  int n = 0;
  cplx c;
};

struct CoefficientTable {
  std::map<std::string, std::string> meta;  ///< "# key=value" header lines
  std::vector<CoefficientFixture> rows;
};

struct IndexFixture {
  int l = 0;
  double A = 0.0;
  cplx nu;
  double E = 0.0;
};

struct BetaFixture {
  int p = 0;
  std::string E;  ///< as printed, e.g. "-1/16"
  int l = 0;
  double beta = 0.0;
  std::string expression;
};

std::vector<EnergyFixture> load_energy_table(const std::filesystem::path& dir = fixtures_dir());
CoefficientTable load_coefficient_table(const std::filesystem::path& dir = fixtures_dir());
std::vector<IndexFixture> load_index_table(const std::filesystem::path& dir = fixtures_dir());
std::vector<BetaFixture> load_beta_table(const std::filesystem::path& dir = fixtures_dir());

/// Splits one CSV record; double quotes group fields containing commas.
std::vector<std::string> split_csv(const std::string& line);

}  // namespace heun
