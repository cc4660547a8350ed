// vwstat: extrinsic means and antimeans of axial and planar shape data.
//
//   vwstat analyze   --input data.csv [--variant complex|real] [--output result.json]
//   vwstat bootstrap --input data.csv --mode nonpivotal|pivotal [--kind mean|antimean]
//                    [--B 500] [--seed 42] [--level 0.95] [--replicates table.csv]
//   vwstat simulate  --output data.csv [--k 11] [--n 100] [--concentration 20] [--seed 42]
//
// Exit codes: 0 success, 2 statistical degeneracy, 3 IO/parse error, 4 invalid flags.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "vwstat/commands.hpp"

namespace {

int write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (out) out << text;
  if (!out) {
    std::cerr << "vwstat: cannot write '" << path << "'\n";
    return 3;
  }
  return 0;
}

std::string default_replicate_path(const std::string& output) {
  if (output.empty() || output == "-") return {};
  std::filesystem::path p(output);
  p.replace_extension();
  return p.string() + ".replicates.csv";
}

}  // namespace

int main(int argc, char** argv) {
  using vwstat::RunConfig;
  RunConfig rc;

  CLI::App app{"Veronese-Whitney means, antimeans and confidence regions on projective spaces"};
  app.require_subcommand(1);

  const std::map<std::string, vwstat::Variant> variants{{"real", vwstat::Variant::Real},
                                                        {"complex", vwstat::Variant::Complex}};
  const std::map<std::string, vwstat::BootstrapMode> modes{
      {"nonpivotal", vwstat::BootstrapMode::Nonpivotal}, {"pivotal", vwstat::BootstrapMode::Pivotal}};
  const std::map<std::string, vwstat::ExtremeKind> kinds{{"mean", vwstat::ExtremeKind::Mean},
                                                         {"antimean", vwstat::ExtremeKind::Antimean}};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", rc.output, "JSON result path (default: stdout)");
    cmd->add_option("--gap-tol", rc.gap_tol, "eigenvalue gap below which an extremizer is not unique");
    cmd->add_option("--level", rc.level, "confidence level");
  };

  auto* analyze = app.add_subcommand("analyze", "spectral means, antimeans and anticovariance");
  analyze->add_option("--input", rc.input, "landmark CSV")->required();
  analyze->add_option("--variant", rc.variant, "real (axes) or complex (planar shapes)")
      ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));
  add_common(analyze);

  auto* bootstrap = app.add_subcommand("bootstrap", "nonparametric bootstrap of extremizers");
  bootstrap->add_option("--input", rc.input, "landmark CSV")->required();
  bootstrap->add_option("--variant", rc.variant, "real (axes) or complex (planar shapes)")
      ->transform(CLI::CheckedTransformer(variants, CLI::ignore_case));
  bootstrap->add_option("--mode", rc.mode, "nonpivotal or pivotal")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  bootstrap->add_option("--kind", rc.kind, "mean or antimean (nonpivotal mode)")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  bootstrap->add_option("--B", rc.resamples, "number of resamples");
  bootstrap->add_option("--seed", rc.seed, "random seed");
  bootstrap->add_option("--threads", rc.threads, "worker threads (results do not depend on it)");
  bootstrap->add_option("--replicates", rc.replicates,
                        "replicate CSV path (default: <output stem>.replicates.csv)");
  add_common(bootstrap);

  auto* simulate = app.add_subcommand("simulate", "write a simulated landmark dataset");
  simulate->add_option("--output", rc.output, "dataset CSV path")->required();
  simulate->add_option("--k", rc.k, "landmarks per configuration");
  simulate->add_option("--n", rc.n, "number of configurations");
  simulate->add_option("--concentration", rc.concentration,
                       "inverse noise standard deviation per coordinate");
  simulate->add_option("--seed", rc.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  if (analyze->parsed()) {
    const auto result = vwstat::cmd_analyze(rc);
    const int io = write_text(rc.output, result.json_text());
    return result.exit_code != 0 ? result.exit_code : io;
  }
  if (bootstrap->parsed()) {
    const auto result = vwstat::cmd_bootstrap(rc);
    int io = write_text(rc.output, result.json_text());
    const std::string table = rc.replicates.empty() ? default_replicate_path(rc.output) : rc.replicates;
    if (result.csv && !table.empty() && io == 0) io = write_text(table, *result.csv);
    return result.exit_code != 0 ? result.exit_code : io;
  }
  const auto result = vwstat::cmd_simulate(rc);
  if (result.exit_code != 0) {
    std::cout << result.json_text();
    return result.exit_code;
  }
  const int io = write_text(rc.output, *result.csv);
  if (io == 0) std::cout << result.json_text();
  return io;
}
