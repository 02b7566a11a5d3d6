#pragma once

// CSV / JSON writers. Doubles are printed with 17 significant digits so that
// every value round-trips exactly.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdem/core_model.hpp"
#include "pdem/discrete.hpp"
#include "pdem/polyfam.hpp"
#include "pdem/susy_verify.hpp"

namespace pdem::io {

std::string format_number(double v);

struct SpectrumRow {
  std::size_t n = 0;
  double algebraic = 0.0;
  std::optional<double> numeric;

  std::optional<double> abs_error() const;
};

/// n,energy_algebraic,energy_numeric,abs_error (numeric columns empty when absent).
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
nlohmann::json spectrum_json(const ShapeInvariantFamily& family, const std::vector<SpectrumRow>& rows);

/// x,phi_0,...,phi_k
std::string eigenfunctions_csv(const Grid& grid, const std::vector<std::vector<double>>& phis);
nlohmann::json eigensolution_json(const EigenSolution& sol, const Grid& grid);

/// {degree, parameterization, tag, coeffs: [{zeta_exp, q_exp, num, den}]}
nlohmann::json polynomial_json(const poly::LambdaPoly& p);

/// {family, alpha, lambda, grid_n, residuals: {name: {value, tolerance, pass}}}
nlohmann::json report_json(const ResidualReport& report);

/// Writes text verbatim; throws std::runtime_error when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pdem::io
