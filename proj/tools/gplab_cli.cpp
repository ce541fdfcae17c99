// Command line front end: margin suites, pinned reproductions, spectrum
// listings, and single-function stability reports.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gplab/funcsum.hpp"
#include "gplab/kernels.hpp"
#include "gplab/random_funcs.hpp"
#include "gplab/spectral.hpp"
#include "gplab/stability.hpp"
#include "gplab/verify.hpp"
#include "gplab/weight.hpp"

namespace {

std::vector<double> parse_alpha(const std::string& text) {
  if (text.empty())
    throw std::invalid_argument("--alpha needs a comma separated list");
  std::vector<double> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        comma == std::string::npos ? text.substr(pos)
                                   : text.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--alpha: bad entry '" + tok + "'");
    }
    if (used != tok.size())
      throw std::invalid_argument("--alpha: bad entry '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out_path);
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int run_verify(const std::string& alpha_text, double lambda, int trials,
               std::uint64_t seed, int degree, const std::string& func_text,
               const std::string& out_path, const std::string& format) {
  gplab::SuiteConfig cfg;
  cfg.alpha = parse_alpha(alpha_text);
  cfg.lambda = lambda;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.degree = degree;
  if (!func_text.empty())
    cfg.fixed_func = gplab::FuncSum::from_json(nlohmann::json::parse(func_text));
  const gplab::SuiteResult res = gplab::run_margin_suite(cfg);
  if (format == "csv")
    emit(gplab::suite_report_csv(res), out_path);
  else
    emit(dump(gplab::suite_report_json(res)), out_path);
  return res.pass ? 0 : 1;
}

int run_reproduce(const std::string& case_id) {
  const gplab::ReproResult r = gplab::reproduce_case(case_id);
  std::printf("%s\n", r.case_id.c_str());
  for (const auto& l : r.lines)
    std::printf("  %-34s lhs=%.17g rhs=%.17g %s\n", l.label.c_str(), l.lhs,
                l.rhs, l.pass ? "pass" : "FAIL");
  std::printf("%s\n", r.pass ? "PASS" : "FAIL");
  return r.pass ? 0 : 1;
}

int run_spectrum(const std::string& alpha_text, int cutoff,
                 const std::string& out_path, const std::string& format) {
  const gplab::MonomialWeight w(parse_alpha(alpha_text));
  const gplab::SpectralBasis basis(w);
  const auto indices = basis.indices_up_to_degree(cutoff, true);
  if (format == "csv") {
    std::string out = "index,eigenvalue,degree\n";
    char buf[128];
    for (const auto& idx : indices) {
      std::string key;
      for (std::size_t i = 0; i < idx.n.size(); ++i) {
        if (i) key += ';';
        key += std::to_string(idx.n[i]);
      }
      std::snprintf(buf, sizeof(buf), "%s,%.17g,%d\n", key.c_str(),
                    basis.eigenvalue(idx), basis.poly_degree(idx));
      out += buf;
    }
    emit(out, out_path);
    return 0;
  }
  nlohmann::json j;
  j["version"] = gplab::kVersion;
  j["command"] = "spectrum";
  j["alpha"] = w.alphas();
  j["cutoff"] = cutoff;
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& idx : indices)
    modes.push_back({{"index", idx.n},
                     {"eigenvalue", basis.eigenvalue(idx)},
                     {"degree", basis.poly_degree(idx)}});
  j["modes"] = std::move(modes);
  j["gap"] = gplab::spectral_gap_enumerated(w, cutoff);
  emit(dump(j), out_path);
  return 0;
}

int run_stability(const std::string& alpha_text, const std::string& func_text,
                  std::uint64_t seed, bool verbose,
                  const std::string& out_path) {
  const gplab::MonomialWeight w(parse_alpha(alpha_text));
  gplab::FuncSum u =
      func_text.empty()
          ? gplab::random_admissible(w, gplab::derive_seed(seed, 0))
          : gplab::FuncSum::from_json(nlohmann::json::parse(func_text));
  const gplab::StabilityReport rep = gplab::stability_report(u, w, verbose);
  emit(dump(rep.to_json(u)), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poincare and uncertainty margin laboratory for monomial "
               "Gaussian measures"};
  app.set_version_flag("--version", std::string(gplab::kVersion));
  app.require_subcommand(1);

  std::string alpha_text, func_text, out_path, format = "json", case_id;
  double lambda = 0.0;
  int trials = 1000, degree = 6, cutoff = 12;
  std::uint64_t seed = 1;
  bool verbose = false;

  CLI::App* verify = app.add_subcommand(
      "verify", "run the randomized margin suite for one weight");
  verify->add_option("--alpha", alpha_text, "comma separated exponents")
      ->required();
  verify->add_option("--lambda", lambda,
                     "fixed scale; <= 0 draws per trial from [1/2, 2]");
  verify->add_option("--trials", trials, "functions per suite");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--degree", degree, "max total degree of trial functions");
  verify->add_option("--func", func_text, "JSON function, replaces the draws");
  verify->add_option("--out", out_path, "write the report here");
  verify->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* repro = app.add_subcommand(
      "reproduce", "recompute one pinned closed-form case");
  repro->add_option("case", case_id, "case id; see README")->required();

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "list generator eigenvalues up to a degree cutoff");
  spectrum->add_option("--alpha", alpha_text, "comma separated exponents")
      ->required();
  spectrum->add_option("--cutoff", cutoff, "max polynomial degree");
  spectrum->add_option("--out", out_path, "write the listing here");
  spectrum->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* stability = app.add_subcommand(
      "stability", "full deficit and distance report for one function");
  stability->add_option("--alpha", alpha_text, "comma separated exponents")
      ->required();
  stability->add_option("--func", func_text, "JSON function");
  stability->add_option("--seed", seed, "seed for the default random function");
  stability->add_flag("--verbose", verbose, "include the lambda scans");
  stability->add_option("--out", out_path, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return run_verify(alpha_text, lambda, trials, seed, degree, func_text,
                        out_path, format);
    if (repro->parsed()) return run_reproduce(case_id);
    if (spectrum->parsed())
      return run_spectrum(alpha_text, cutoff, out_path, format);
    if (stability->parsed())
      return run_stability(alpha_text, func_text, seed, verbose, out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
