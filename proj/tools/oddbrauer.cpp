// oddbrauer: odd-torsion Brauer-Manin checks for diagonal quartic surfaces.
//
// Exit codes: 0 holds / success, 1 inconclusive or violated invariant,
// 2 input error, 3 factoring budget exhausted.

#include "oddbrauer/oddbrauer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace oddbrauer;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Integer parse_integer(const std::string& s, const char* what) {
  const Rational q = parse_rational(s);
  if (boost::multiprecision::denominator(q) != 1) throw std::invalid_argument(std::string(what) + " must be an integer");
  return boost::multiprecision::numerator(q);
}

CurveCoefficients parse_curve(const std::string& csv) {
  CurveCoefficients c;
  std::stringstream ss(csv);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 5 || (item != "0" && item != "1")) throw std::invalid_argument("--curve expects five bits a1,a2,a3,a4,a6");
    c.a[k++] = item == "1" ? 1U : 0U;
  }
  if (k != 5) throw std::invalid_argument("--curve expects five bits a1,a2,a3,a4,a6");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd-torsion Brauer-Manin checks for diagonal quartic surfaces"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a JSON report on standard output");

  std::string spec_path, probes_csv;
  std::uint64_t search_bound = 0;
  std::uint64_t budget = kDefaultFactorBudget;
  auto* analyze = app.add_subcommand("analyze", "Analyse a surface description");
  analyze->add_option("spec", spec_path, "JSON surface description")->required();
  analyze->add_option("--probes", probes_csv, "Comma-separated probe primes = 1 mod 4");
  analyze->add_option("--search-bound", search_bound, "Largest prime used to tighten phi");
  analyze->add_option("--budget", budget, "Pollard-rho iteration budget");
  analyze->add_flag("--json", json, "Emit a JSON report");

  std::string ell_s, m_s;
  std::uint64_t phi_bound = 100;
  auto* phi = app.add_subcommand("phi", "Upper bound for phi(ell, m)");
  phi->add_option("ell", ell_s)->required();
  phi->add_option("m", m_s)->required();
  phi->add_option("--bound", phi_bound, "Largest probe prime");
  phi->add_flag("--json", json, "Emit a JSON report");

  std::string sb_probes = "5,13,17";
  auto* sbound = app.add_subcommand("sbound", "Candidate superset of S_m");
  sbound->add_option("m", m_s)->required();
  sbound->add_option("--probes", sb_probes, "Comma-separated probe primes");
  sbound->add_option("--budget", budget, "Pollard-rho iteration budget");
  sbound->add_flag("--json", json, "Emit a JSON report");

  std::string a_s, b_s;
  auto* hilbert = app.add_subcommand("hilbert", "2-adic Hilbert symbol (a, b)_2");
  hilbert->add_option("a", a_s)->required();
  hilbert->add_option("b", b_s)->required();
  hilbert->add_flag("--json", json, "Emit a JSON report");

  std::string e_s, p_s, t_s;
  auto* swan = app.add_subcommand("swan", "Swan conductor bound");
  swan->add_option("e", e_s)->required();
  swan->add_option("p", p_s)->required();
  swan->add_option("t", t_s)->required();
  swan->add_flag("--json", json, "Emit a JSON report");

  std::string q_s, g_s;
  auto* thresholds = app.add_subcommand("thresholds", "Hasse-Weil and cone thresholds");
  thresholds->add_option("q", q_s)->required();
  thresholds->add_option("p", p_s)->required();
  thresholds->add_option("g", g_s)->required();
  thresholds->add_flag("--json", json, "Emit a JSON report");

  std::string suite, curve_csv;
  int precision = 12;
  auto* verify = app.add_subcommand("verify-local", "Run the finite-field and 2-adic suites");
  verify->add_option("suite", suite, "fflab | kummer | all")->required()->check(CLI::IsMember({"fflab", "kummer", "all"}));
  verify->add_option("--curve", curve_csv, "Replace the curve by a1,a2,a3,a4,a6 (bits)");
  verify->add_option("--precision", precision, "2-adic precision K (12..36)")->check(CLI::Range(12, 36));
  verify->add_flag("--json", json, "Emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    CommandOutcome out;
    if (*analyze) {
      const SurfaceSpec spec = parse_spec(read_file(spec_path));
      out = cmd_analyze(spec, probes_csv.empty() ? std::vector<ProbePrime>{} : parse_probe_list(probes_csv),
                        search_bound == 0 ? std::nullopt : std::optional<std::uint64_t>(search_bound), budget);
    } else if (*phi) {
      const Integer m = parse_integer(m_s, "m");
      if (m < 1) throw std::invalid_argument("m must be positive");
      out = cmd_phi(parse_integer(ell_s, "ell"), static_cast<unsigned long long>(m), phi_bound);
    } else if (*sbound) {
      const Integer m = parse_integer(m_s, "m");
      if (m < 1) throw std::invalid_argument("m must be positive");
      out = cmd_sbound(static_cast<unsigned long long>(m), parse_probe_list(sb_probes), budget);
    } else if (*hilbert) {
      out = cmd_hilbert(parse_rational(a_s), parse_rational(b_s));
    } else if (*swan) {
      out = cmd_swan(parse_integer(e_s, "e"), parse_integer(p_s, "p"), parse_integer(t_s, "t"));
    } else if (*thresholds) {
      out = cmd_thresholds(parse_integer(q_s, "q"), parse_integer(p_s, "p"), parse_integer(g_s, "g"));
    } else if (*verify) {
      out = cmd_verify_local(suite, curve_csv.empty() ? CurveCoefficients::supersingular_A() : parse_curve(curve_csv),
                             precision);
    }
    std::cout << (json ? dump(out.report) : out.text);
    return out.exit_code;
  } catch (const FactorBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const MissingPlaces& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInconclusive;
  }
}
