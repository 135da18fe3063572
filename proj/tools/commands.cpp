#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "griffiths/griffiths.hpp"

namespace griffiths::cli {

namespace {

Complex random_in_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double angle = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, angle);
}

double min_gap(const Vector& d) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) gap = std::min(gap, std::abs(d[i] - d[j]));
  return gap;
}

// Coefficients of degree 3..degree drawn uniformly from the disc of radius 0.1.
std::vector<std::vector<UnivariatePoly>> random_enrichment(std::size_t p, std::size_t q, int degree,
                                                           std::uint64_t seed) {
  std::vector<std::vector<UnivariatePoly>> grid;
  if (degree < 3) return grid;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x656e72u};
  std::mt19937_64 rng(seq);
  for (std::size_t l = 1; l < p; ++l) {
    std::vector<UnivariatePoly> row;
    for (std::size_t j = 0; j < q; ++j) {
      std::vector<Complex> coefficients(static_cast<std::size_t>(degree) + 1);
      for (int k = 3; k <= degree; ++k) coefficients[static_cast<std::size_t>(k)] = random_in_disc(rng, 0.1);
      row.emplace_back(std::move(coefficients));
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::QuadratureNotConverged:
    case ErrorCode::NoDistinctSpectrum:
    case ErrorCode::IsotropicEigenvector:
    case ErrorCode::NotCommuting:
    case ErrorCode::NotSymmetric:
    case ErrorCode::Singular:
      return kNumericFailure;
    default:
      return kInputError;
  }
}

void emit(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    json::write_file(path, j);
  }
}

int cmd_dims(std::size_t p, std::size_t q, std::ostream& out) {
  out << json::encode(dims(p, q)).dump() << '\n';
  return kSuccess;
}

int cmd_check_element(const std::string& input, int trials, std::uint64_t seed, double tol, std::ostream& out) {
  const AbelianElement e = json::decode_element(json::read_file(input));
  const bool abelian = is_abelian(e, Tolerance(tol));
  nlohmann::json report = {{"abelian", abelian}};
  if (e.basis().size() != e.q()) {
    report["generic"] = false;
    report["reason"] = "dimension";
  } else if (const auto witness = genericity_witness(e, trials, seed, Tolerance(0.0, tol))) {
    report["generic"] = true;
    report["witness"] = json::encode(std::span<const Complex>(*witness));
  } else {
    report["generic"] = false;
    report["reason"] = "no witness found";
  }
  out << report.dump() << '\n';
  return abelian ? kSuccess : kCheckNegative;
}

int cmd_random_family(std::size_t p, std::size_t q, const std::string& kind, std::uint64_t seed,
                      const std::string& output, std::ostream& out) {
  if (p < 2) throw Error(ErrorCode::InvariantViolation, "random-family needs p >= 2");
  const DistinguishedBasis d = random_family(p, q, kind == "conjugated", seed);
  emit(json::encode(d), output, out);
  return kSuccess;
}

int cmd_construct_verify(const std::string& family_path, const std::string& element_path, int enrichment_degree,
                         int samples, std::uint64_t seed, double tol, const std::string& report_path,
                         std::ostream& out) {
  VerificationTolerances tolerances;
  tolerances.omega = tol;

  VerificationReport report;
  if (!family_path.empty()) {
    if (enrichment_degree != 0) throw Error(ErrorCode::InvariantViolation, "--enrichment-degree needs --element");
    const Chart chart(json::decode_system(json::read_file(family_path)));
    report = verify_chart(chart, samples, seed, tolerances);
  } else {
    const DistinguishedBasis target = json::decode_distinguished(json::read_file(element_path));
    if (target.is_valid()) {
      const auto enrichment = random_enrichment(target.p, target.q, enrichment_degree, seed);
      const Chart chart(system_matching_hessians(target, enrichment));
      report = verify_chart(chart, samples, seed, tolerances);
    } else {
      // The quadratic family through the given matrices still defines a
      // chart; verification reports how far it is from integral.
      const Chart chart(GeneratingSystem::unchecked(target.p, target.q, QuadraticFamily{target.a}));
      report = verify_chart(chart, samples, seed, tolerances);
      report.pass = false;
      report.note = "target matrices are not a commuting symmetric family";
    }
  }
  emit(json::encode(report), report_path, out);
  return report.pass ? kSuccess : kVerifyFail;
}

}  // namespace

DistinguishedBasis random_family(std::size_t p, std::size_t q, bool conjugated, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> diagonals(p - 1, Vector(q));
  for (std::size_t l = 0; l + 1 < p; ++l) {
    do {
      for (auto& z : diagonals[l]) z = random_in_disc(rng, 1.0);
    } while (conjugated && l == 0 && min_gap(diagonals[l]) < 0.1);
  }

  DistinguishedBasis d{p, q, {}};
  if (!conjugated) {
    for (const auto& diag : diagonals) d.a.push_back(Matrix::diagonal(diag));
    return d;
  }
  Matrix s(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      const Complex z = random_in_disc(rng, 0.5);
      s.set(i, j, z);
      s.set(j, i, -z);
    }
  const Matrix c = matrix_exp_skew(s);
  for (const auto& diag : diagonals) d.a.push_back(symmetric_part(c.transpose() * Matrix::diagonal(diag) * c));
  d.validate(Tolerance(1e-10, 1e-10));
  return d;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical integral manifolds of the weight-two Griffiths distribution"};
  app.name("griffiths");
  app.require_subcommand(1);

  std::size_t p = 0;
  std::size_t q = 0;
  auto* dims_cmd = app.add_subcommand("dims", "Dimensions of U, E and maximal integral elements");
  dims_cmd->add_option("--p", p, "h^{2,0}")->required()->check(CLI::PositiveNumber);
  dims_cmd->add_option("--q", q, "h^{1,1}")->required()->check(CLI::PositiveNumber);

  std::string input;
  int trials = 16;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  auto* check_cmd = app.add_subcommand("check-element", "Abelian and genericity tests for an element file");
  check_cmd->add_option("--input", input, "Element JSON")->required();
  check_cmd->add_option("--trials", trials, "Random witness candidates")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--seed", seed, "Seed for the witness search");
  check_cmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

  std::string kind = "diagonal";
  std::string output;
  std::size_t family_p = 0;
  std::size_t family_q = 0;
  auto* family_cmd = app.add_subcommand("random-family", "Seeded commuting symmetric family");
  family_cmd->add_option("--p", family_p, "h^{2,0} (at least 2)")->required()->check(CLI::PositiveNumber);
  family_cmd->add_option("--q", family_q, "h^{1,1}")->required()->check(CLI::PositiveNumber);
  family_cmd->add_option("--kind", kind, "diagonal or conjugated")->check(CLI::IsMember({"diagonal", "conjugated"}));
  family_cmd->add_option("--seed", seed, "Seed");
  family_cmd->add_option("--output", output, "Output file (stdout when omitted)");

  std::string family_path;
  std::string element_path;
  int enrichment_degree = 0;
  int samples = 20;
  double omega_tol = 1e-6;
  std::string report_path;
  auto* verify_cmd = app.add_subcommand("construct-verify", "Build the canonical chart and verify it");
  auto* family_opt = verify_cmd->add_option("--family", family_path, "Generating system JSON");
  auto* element_opt = verify_cmd->add_option("--element", element_path, "Distinguished basis JSON");
  family_opt->excludes(element_opt);
  element_opt->excludes(family_opt);
  verify_cmd->add_option("--enrichment-degree", enrichment_degree, "Degree of random higher-order terms")
      ->check(CLI::Range(0, kMaxEnrichmentDegree));
  verify_cmd->add_option("--samples", samples, "Sample points")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--tol", omega_tol, "Tolerance on the omega residual")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--report", report_path, "Report file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (dims_cmd->parsed()) return cmd_dims(p, q, out);
    if (check_cmd->parsed()) return cmd_check_element(input, trials, seed, tol, out);
    if (family_cmd->parsed()) return cmd_random_family(family_p, family_q, kind, seed, output, out);
    if (family_path.empty() && element_path.empty()) {
      err << "construct-verify needs --family or --element\n";
      return kInputError;
    }
    return cmd_construct_verify(family_path, element_path, enrichment_degree, samples, seed, omega_tol, report_path,
                                out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace griffiths::cli
