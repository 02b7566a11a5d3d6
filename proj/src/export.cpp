#include "pdem/export.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace pdem::io {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::optional<double> SpectrumRow::abs_error() const {
  if (!numeric) return std::nullopt;
  return std::abs(*numeric - algebraic);
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "n,energy_algebraic,energy_numeric,abs_error\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", r.n, format_number(r.algebraic), r.numeric ? format_number(*r.numeric) : "",
                       r.abs_error() ? format_number(*r.abs_error()) : "");
  }
  return out;
}

nlohmann::json spectrum_json(const ShapeInvariantFamily& family, const std::vector<SpectrumRow>& rows) {
  nlohmann::json j;
  j["family"] = std::string(to_string(family.kind()));
  j["alpha"] = family.alpha0();
  j["lambda"] = family.lambda();
  const BoundCount count = bound_state_count(family);
  j["bound_count"] = count ? nlohmann::json(*count) : nlohmann::json("unbounded");
  auto& arr = j["levels"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e{{"n", r.n}, {"energy_algebraic", r.algebraic}};
    if (r.numeric) {
      e["energy_numeric"] = *r.numeric;
      e["abs_error"] = *r.abs_error();
    }
    arr.push_back(std::move(e));
  }
  return j;
}

std::string eigenfunctions_csv(const Grid& grid, const std::vector<std::vector<double>>& phis) {
  std::string out = "x";
  for (std::size_t k = 0; k < phis.size(); ++k) out += fmt::format(",phi_{}", k);
  out += "\n";
  for (std::size_t i = 0; i < grid.n; ++i) {
    out += format_number(grid.points[i]);
    for (const auto& phi : phis) out += "," + format_number(phi.at(i));
    out += "\n";
  }
  return out;
}

nlohmann::json eigensolution_json(const EigenSolution& sol, const Grid& grid) {
  return {{"eigenvalues", sol.eigenvalues}, {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"n", grid.n}}}};
}

nlohmann::json polynomial_json(const poly::LambdaPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [k, c] : p.coeffs()) {
    for (const auto& [j, r] : c.coeffs()) {
      coeffs.push_back({{"zeta_exp", k}, {"q_exp", j}, {"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}});
    }
  }
  return {{"degree", p.degree()},
          {"parameterization", std::string(poly::to_string(p.parameterization()))},
          {"tag", std::string(poly::to_string(p.tag()))},
          {"coeffs", coeffs}};
}

nlohmann::json report_json(const ResidualReport& report) {
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& e : report.entries) {
    residuals[e.name] = {{"value", e.value}, {"tolerance", e.tolerance}, {"pass", e.pass()}};
  }
  return {{"family", std::string(to_string(report.kind))},
          {"alpha", report.alpha},
          {"lambda", report.lambda},
          {"grid_n", report.grid_n},
          {"residuals", residuals}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  f << content;
  if (!f) throw std::runtime_error(fmt::format("failed writing {}", path.string()));
}

}  // namespace pdem::io
