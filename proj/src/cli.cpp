#include "pdem/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "pdem/discrete.hpp"
#include "pdem/errors.hpp"
#include "pdem/export.hpp"
#include "pdem/polyfam.hpp"
#include "pdem/susy_verify.hpp"

namespace pdem::cli {

namespace {

// Thrown for inputs rejected before any computation starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

VonRoosOrdering parse_ordering(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("--ordering expects a,b,c; cannot read '{}'", text));
    }
  }
  if (v.size() != 3) throw UsageError(fmt::format("--ordering expects three numbers a,b,c, got '{}'", text));
  return VonRoosOrdering::make(v[0], v[1], v[2]);
}

std::string ordering_label(const VonRoosOrdering& o) { return fmt::format("[{};{};{}]", o.a, o.b, o.c); }

class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  bool wants_csv() const { return cfg_.format != OutputFormat::Json; }
  bool wants_json() const { return cfg_.format != OutputFormat::Csv; }

  void emit(const std::string& stem, const std::string& csv, const nlohmann::json& json) const {
    if (wants_csv()) put(stem + ".csv", csv);
    if (wants_json()) put(stem + ".json", json.dump(2) + "\n");
  }

  void put(const std::string& file, const std::string& text) const {
    if (cfg_.output_dir.empty()) {
      out_ << text;
    } else {
      io::write_file(std::filesystem::path(cfg_.output_dir) / file, text);
    }
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

std::size_t resolve_n_max(const RunConfig& cfg, const ShapeInvariantFamily& family) {
  const BoundCount count = bound_state_count(family);
  if (count && *count == 0) {
    throw Error(ErrorCode::NotABoundState, "this family has no normalizable states");
  }
  if (!cfg.n_max) return count ? std::min<std::size_t>(9, *count - 1) : 9;
  if (count && *cfg.n_max >= *count) {
    throw Error(ErrorCode::NotABoundState,
                fmt::format("n-max {} is past the bound-state cutoff: this family has {} bound states (n = 0..{})",
                            *cfg.n_max, *count, *count - 1));
  }
  return *cfg.n_max;
}

int cmd_spectrum(const RunConfig& cfg, const Sink& sink) {
  const auto family = make_family(cfg.kind, cfg.alpha, cfg.lambda);
  const std::size_t n_max = resolve_n_max(cfg, family);
  const Grid grid = build_grid(family, cfg.grid_n, cfg.tail_tolerance);
  const EigenSolution sol = solve_spectrum(family, grid, n_max + 1, cfg.workers);
  std::vector<io::SpectrumRow> rows;
  for (std::size_t n = 0; n <= n_max; ++n) rows.push_back({n, energy(family, n), sol.eigenvalues[n]});
  sink.emit("spectrum", io::spectrum_csv(rows), io::spectrum_json(family, rows));
  return kExitOk;
}

int cmd_eigenfunctions(const RunConfig& cfg, const Sink& sink) {
  const auto family = make_family(cfg.kind, cfg.alpha, cfg.lambda);
  const std::size_t n_max = resolve_n_max(cfg, family);
  const Grid grid = build_grid(family, cfg.grid_n, cfg.tail_tolerance);
  EigenSolution sol;
  if (cfg.analytic) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      sol.eigenvalues.push_back(energy(family, n));
      sol.eigenvectors.push_back(poly::eigenfunction_samples(family, n, grid));
    }
  } else {
    sol = solve_spectrum(family, grid, n_max + 1, cfg.workers);
  }
  sink.emit("eigenfunctions", io::eigenfunctions_csv(grid, sol.eigenvectors), io::eigensolution_json(sol, grid));
  return kExitOk;
}

int cmd_polynomials(const RunConfig& cfg, const Sink& sink) {
  const auto param = poly::parameterization_of(cfg.kind);
  const std::size_t n_max = cfg.n_max.value_or(5);
  std::vector<poly::LambdaPoly> polys;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto d = static_cast<unsigned>(n);
    polys.push_back(cfg.rodrigues ? poly::rodrigues_polynomial(d, param) : poly::gf_polynomial(d, param));
  }
  if (cfg.symbolic) {
    std::string text;
    for (const auto& p : polys) text += fmt::format("H{} = {}\n", p.degree(), poly::format_symbolic(p));
    sink.put("polynomials.txt", text);
    return kExitOk;
  }
  std::string csv = "degree,zeta_exp,q_exp,num,den\n";
  nlohmann::json json = nlohmann::json::array();
  for (const auto& p : polys) {
    for (const auto& [k, c] : p.coeffs()) {
      for (const auto& [j, r] : c.coeffs()) {
        csv += fmt::format("{},{},{},{},{}\n", p.degree(), k, j, r.get_num().get_str(), r.get_den().get_str());
      }
    }
    json.push_back(io::polynomial_json(p));
  }
  sink.emit("polynomials", csv, json);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const Sink& sink, std::ostream& out) {
  const auto family = make_family(cfg.kind, cfg.alpha, cfg.lambda);
  const Grid grid = build_grid(family, cfg.grid_n, cfg.tail_tolerance);
  const ResidualReport report = run_verification(family, grid);
  std::string csv = "name,value,tolerance,pass\n";
  for (const auto& e : report.entries) {
    csv += fmt::format("{},{},{},{}\n", e.name, io::format_number(e.value), io::format_number(e.tolerance),
                       e.pass() ? "true" : "false");
  }
  if (!cfg.output_dir.empty()) {
    for (const auto& e : report.entries) {
      out << fmt::format("{:<28} {:>12.4e} <= {:<10.3e} {}\n", e.name, e.value, e.tolerance,
                         e.pass() ? "PASS" : "FAIL");
    }
  }
  sink.emit("verify", csv, io::report_json(report));
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_compare_ordering(const RunConfig& cfg, const Sink& sink) {
  const auto family = make_family(cfg.kind, cfg.alpha, cfg.lambda);
  const std::size_t n_max = resolve_n_max(cfg, family);
  const Grid grid = build_grid(family, cfg.grid_n, cfg.tail_tolerance);
  std::vector<VonRoosOrdering> orderings = cfg.orderings;
  if (orderings.empty()) orderings = {VonRoosOrdering::symmetric(), VonRoosOrdering::make(-0.5, 0.0, -0.5)};

  const std::size_t k = n_max + 1;
  const EigenSolution reference = solve_spectrum(family, grid, k, cfg.workers);
  EigenOptions opts;
  opts.quadrature_weight = grid.h;
  opts.workers = cfg.workers;

  std::string csv = "n,energy_algebraic,energy_symmetric";
  nlohmann::json json{{"family", std::string(to_string(family.kind()))},
                      {"alpha", family.alpha0()},
                      {"lambda", family.lambda()},
                      {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"n", grid.n}}},
                      {"energy_symmetric", reference.eigenvalues}};
  std::vector<std::vector<double>> spectra;
  for (const auto& o : orderings) {
    double asym = 0.0;
    const auto t = assemble_von_roos(family, o, grid, &asym);
    spectra.push_back(eigen_tridiagonal(t, k, opts).eigenvalues);
    const std::string label = ordering_label(o);
    csv += fmt::format(",energy{0},deviation{0}", label);
    std::vector<double> dev(k);
    for (std::size_t n = 0; n < k; ++n) dev[n] = spectra.back()[n] - reference.eigenvalues[n];
    json["orderings"].push_back({{"a", o.a},
                                 {"b", o.b},
                                 {"c", o.c},
                                 {"asymmetry", asym},
                                 {"energies", spectra.back()},
                                 {"deviation_from_symmetric", dev}});
  }
  csv += "\n";
  for (std::size_t n = 0; n < k; ++n) {
    csv += fmt::format("{},{},{}", n, io::format_number(energy(family, n)), io::format_number(reference.eigenvalues[n]));
    for (const auto& s : spectra) {
      csv += "," + io::format_number(s[n]) + "," + io::format_number(s[n] - reference.eigenvalues[n]);
    }
    csv += "\n";
  }
  sink.emit("compare_ordering", csv, json);
  return kExitOk;
}

bool is_parameter_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPositiveAlpha:
    case ErrorCode::InvalidLambda:
    case ErrorCode::InvalidCount:
    case ErrorCode::ConstraintViolated:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Position-dependent-mass oscillators: spectra, polynomials and SUSY checks", "pdem"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string family_name;
  std::string format_name = "csv";
  std::vector<std::string> ordering_texts;
  std::size_t n_max = 0;

  const std::map<std::string, Command> commands{{"spectrum", Command::Spectrum},
                                                {"eigenfunctions", Command::Eigenfunctions},
                                                {"polynomials", Command::Polynomials},
                                                {"verify", Command::Verify},
                                                {"compare-ordering", Command::CompareOrdering}};
  const std::map<std::string, const char*> descriptions{
      {"spectrum", "algebraic and finite-difference energies"},
      {"eigenfunctions", "eigenvectors on the grid (numeric or --analytic)"},
      {"polynomials", "deformed Hermite polynomials (exact coefficients or --symbolic)"},
      {"verify", "SUSY residual suite; exit 3 when a residual exceeds its tolerance"},
      {"compare-ordering", "spectra under von Roos orderings --ordering a,b,c"}};

  std::vector<CLI::Option*> n_max_opts;
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("--family", family_name, "case1 | case2 | case3 | constant")
        ->required()
        ->check(CLI::IsMember({"case1", "case2", "case3", "constant"}));
    if (command != Command::Polynomials) {
      sub->add_option("--alpha", cfg.alpha, "oscillator strength (> 0)")->capture_default_str();
      sub->add_option("--lambda", cfg.lambda, "mass deformation parameter")->capture_default_str();
      sub->add_option("--grid-n", cfg.grid_n, "interior grid nodes")->capture_default_str();
      sub->add_option("--tail-tolerance", cfg.tail_tolerance, "ground-state tail cut, in (0, 1e-6]")
          ->capture_default_str();
      sub->add_option("--workers", cfg.workers, "eigensolver threads")->capture_default_str();
    }
    if (command != Command::Verify) {
      n_max_opts.push_back(sub->add_option("--n-max", n_max, "highest level index"));
    }
    sub->add_option("--output-dir", cfg.output_dir, "write files here instead of standard output");
    sub->add_option("--format", format_name, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    if (command == Command::Polynomials) {
      sub->add_flag("--symbolic", cfg.symbolic, "factored display");
      sub->add_flag("--rodrigues", cfg.rodrigues, "Rodrigues construction instead of the generating function");
    }
    if (command == Command::Eigenfunctions) {
      sub->add_flag("--analytic", cfg.analytic, "sample the closed-form eigenfunctions");
    }
    if (command == Command::CompareOrdering) {
      sub->add_option("--ordering", ordering_texts, "a,b,c with a + b + c = -1 (repeatable)");
    }
    sub->final_callback([&cfg, command] { cfg.command = command; });
  }

  std::vector<const char*> argv{"pdem"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    cfg.kind = *parse_profile_kind(family_name);
    cfg.format = format_name == "json" ? OutputFormat::Json : format_name == "both" ? OutputFormat::Both : OutputFormat::Csv;
    for (auto* o : n_max_opts) {
      if (o->count() > 0) cfg.n_max = n_max;
    }
    for (const auto& t : ordering_texts) cfg.orderings.push_back(parse_ordering(t));
    if (cfg.grid_n < 16) throw UsageError(fmt::format("--grid-n must be at least 16, got {}", cfg.grid_n));
    if (!(cfg.tail_tolerance > 0.0 && cfg.tail_tolerance <= 1e-6)) {
      throw UsageError(fmt::format("--tail-tolerance must lie in (0, 1e-6], got {}", cfg.tail_tolerance));
    }
    if (cfg.workers < 1) throw UsageError("--workers must be at least 1");
    if (cfg.command != Command::Polynomials) (void)make_family(cfg.kind, cfg.alpha, cfg.lambda);
    if (!cfg.output_dir.empty() && !std::filesystem::is_directory(cfg.output_dir)) {
      throw UsageError(fmt::format("--output-dir {} is not a directory", cfg.output_dir));
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_parameter_error(e.code()) ? kExitUsage : kExitComputation;
  }

  try {
    const Sink sink(cfg, out);
    switch (cfg.command) {
      case Command::Spectrum: return cmd_spectrum(cfg, sink);
      case Command::Eigenfunctions: return cmd_eigenfunctions(cfg, sink);
      case Command::Polynomials: return cmd_polynomials(cfg, sink);
      case Command::Verify: return cmd_verify(cfg, sink, out);
      case Command::CompareOrdering: return cmd_compare_ordering(cfg, sink);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitComputation;
}

}  // namespace pdem::cli
