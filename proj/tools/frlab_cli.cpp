// frlab: command-line front end.
//
//   frlab classify -n 1 -a 0 -b 0 -c 2 --alpha 0 --beta 0 -p 2 -q 2
//   frlab region --preset kc -c 1 --grid 101 --out region.csv
//   frlab blowup -c 3.5 -p 2 -q 2 --radii 0.9,0.99,0.999
//   frlab norm --row p-inf -c 1 -q 1
//   frlab verify --tol 1e-6
//
// Defaults come from the JSON file named by FRLAB_CONFIG (keys are the long
// flag names) and are overridden by flags. Exit codes: 0 success, 1 a failed
// verification or numerical failure, 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frlab/frlab.hpp"

namespace {

struct Settings {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::string p = "2";
  std::string q = "2";
  int grid = 101;
  std::vector<double> radii{0.9, 0.99, 0.999};
  std::uint64_t seed = frlab::QuadratureConfig{}.seed;
  double cutoff = frlab::QuadratureConfig{}.boundary_cutoff;
  long long samples = frlab::QuadratureConfig{}.mc_samples;
  std::string out;
  std::string format = "csv";
  std::string preset = "general";
  std::string family = "auto";
  double N = 1.0;
  std::string row = "p-inf";
  std::optional<double> tol;
};

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string exponent_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return frlab::format_double(v.get<double>());
  throw InvalidInput("config: exponent must be a number or \"inf\"");
}

void apply_config(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("FRLAB_CONFIG: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("FRLAB_CONFIG: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("FRLAB_CONFIG: top level must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "n") s.n = v.get<int>();
      else if (key == "a") s.a = v.get<double>();
      else if (key == "b") s.b = v.get<double>();
      else if (key == "c") s.c = v.get<double>();
      else if (key == "alpha") s.alpha = v.get<double>();
      else if (key == "beta") s.beta = v.get<double>();
      else if (key == "p") s.p = exponent_text(v);
      else if (key == "q") s.q = exponent_text(v);
      else if (key == "grid") s.grid = v.get<int>();
      else if (key == "radii") s.radii = v.get<std::vector<double>>();
      else if (key == "seed") s.seed = v.get<std::uint64_t>();
      else if (key == "cutoff") s.cutoff = v.get<double>();
      else if (key == "samples") s.samples = v.get<long long>();
      else if (key == "out") s.out = v.get<std::string>();
      else if (key == "format") s.format = v.get<std::string>();
      else if (key == "preset") s.preset = v.get<std::string>();
      else if (key == "family") s.family = v.get<std::string>();
      else if (key == "N") s.N = v.get<double>();
      else if (key == "row") s.row = v.get<std::string>();
      else if (key == "tol") s.tol = v.get<double>();
      else throw InvalidInput("FRLAB_CONFIG: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("FRLAB_CONFIG: ") + e.what());
  }
}

frlab::Parameters parameters(const Settings& s) {
  frlab::Parameters prm;
  prm.n = s.n;
  prm.a = s.a;
  prm.b = s.b;
  prm.c = s.c;
  prm.alpha = s.alpha;
  prm.beta = s.beta;
  prm.p = frlab::ExtendedExponent::parse(s.p);
  prm.q = frlab::ExtendedExponent::parse(s.q);
  return prm;
}

frlab::QuadratureConfig quadrature(const Settings& s) {
  frlab::QuadratureConfig cfg;
  cfg.seed = s.seed;
  cfg.boundary_cutoff = s.cutoff;
  cfg.mc_samples = s.samples;
  cfg.validate();
  return cfg;
}

frlab::FamilyKind family_for(const Settings& s) {
  if (s.family != "auto") return frlab::parse_family(s.family);
  if (s.b == s.alpha) return frlab::FamilyKind::kKernelEqual;
  if (s.alpha < s.b) return frlab::FamilyKind::kKernelLess;
  return frlab::FamilyKind::kPower;
}

void emit(const frlab::ExperimentReport& rep, const Settings& s) {
  auto write_body = [&](std::ostream& os) {
    if (s.format == "json") {
      os << frlab::report_json(rep).dump(2) << '\n';
    } else {
      frlab::write_csv(rep, os);
    }
  };
  if (s.out.empty()) {
    write_body(std::cout);
    return;
  }
  std::ofstream out(s.out);
  if (!out) throw InvalidInput("cannot write '" + s.out + "'");
  write_body(out);
  if (s.format == "csv") {
    std::ofstream side(s.out + ".json");
    if (!side) throw InvalidInput("cannot write '" + s.out + ".json'");
    side << frlab::report_metadata_json(rep).dump(2) << '\n';
  }
}

void add_parameter_flags(CLI::App* cmd, Settings& s) {
  cmd->add_option("-n", s.n, "Complex dimension");
  cmd->add_option("-a", s.a, "Exponent a of (1-|z|^2)^a");
  cmd->add_option("-b", s.b, "Exponent b of (1-|w|^2)^b");
  cmd->add_option("-c", s.c, "Kernel exponent c");
  cmd->add_option("--alpha", s.alpha, "Source weight alpha");
  cmd->add_option("--beta", s.beta, "Target weight beta");
  cmd->add_option("-p", s.p, "Source exponent (number >= 1 or inf)");
  cmd->add_option("-q", s.q, "Target exponent (number >= 1 or inf)");
}

void add_numeric_flags(CLI::App* cmd, Settings& s) {
  cmd->add_option("--seed", s.seed, "Monte Carlo seed");
  cmd->add_option("--cutoff", s.cutoff, "Boundary cutoff in (0, 1)");
  cmd->add_option("--samples", s.samples, "Monte Carlo sample count");
}

void add_output_flags(CLI::App* cmd, Settings& s) {
  cmd->add_option("--out", s.out, "Output path (CSV gets a .json metadata sidecar)");
  cmd->add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  try {
    if (const char* path = std::getenv("FRLAB_CONFIG"); path != nullptr && *path != '\0') {
      apply_config(s, path);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Boundedness classifier and numerical checks for Bergman-type kernel operators on the unit ball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FRLAB_VERSION);

  auto* classify = app.add_subcommand("classify", "Decide boundedness and list every condition with its slack");
  add_parameter_flags(classify, s);
  add_output_flags(classify, s);

  auto* region = app.add_subcommand("region", "Sweep the (1/p, 1/q) unit square");
  add_parameter_flags(region, s);
  region->add_option("--grid", s.grid, "Grid resolution per axis (>= 2)");
  region->add_option("--preset", s.preset, "general, kc, projection or berezin");
  add_output_flags(region, s);

  auto* blowup = app.add_subcommand("blowup", "Norm quotients along a test family");
  add_parameter_flags(blowup, s);
  blowup->add_option("--radii", s.radii, "Radius schedule, comma separated")->delimiter(',');
  blowup->add_option("--family", s.family, "auto, power, fxi-equal or fxi-less");
  blowup->add_option("-N", s.N, "Exponent of the power family");
  add_numeric_flags(blowup, s);
  add_output_flags(blowup, s);

  auto* norm = app.add_subcommand("norm", "Exact operator norm rows of the S-type operator");
  add_parameter_flags(norm, s);
  norm->add_option("--row", s.row, "p-inf, q-1 or q-inf");
  add_numeric_flags(norm, s);
  add_output_flags(norm, s);

  auto* verify = app.add_subcommand("verify", "Run the identity verification suite");
  verify->add_option("--tol", s.tol, "Replace every check's tolerance");
  add_numeric_flags(verify, s);
  add_output_flags(verify, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) {
      emit(frlab::run_classify(parameters(s)), s);
    } else if (region->parsed()) {
      const auto prm = parameters(s);
      const frlab::OperatorParameters base{prm.n, prm.a, prm.b, prm.c, prm.alpha, prm.beta};
      emit(frlab::run_region(frlab::parse_region_preset(s.preset), base, s.grid), s);
    } else if (blowup->parsed()) {
      emit(frlab::run_blowup(parameters(s), family_for(s), s.N, s.radii, quadrature(s)), s);
    } else if (norm->parsed()) {
      emit(frlab::run_norm(parameters(s), frlab::parse_norm_row(s.row), quadrature(s)), s);
    } else if (verify->parsed()) {
      const auto rep = frlab::run_verify(quadrature(s), s.tol);
      emit(rep, s);
      if (!rep.metadata.at("all_passed").get<bool>()) {
        for (const auto& row : rep.rows) {
          if (row[3] == "false") std::cerr << "FAIL " << row[0] << ": residual " << row[1] << " > " << row[2] << '\n';
        }
        return 1;
      }
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const frlab::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const frlab::PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const frlab::BoundaryError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
