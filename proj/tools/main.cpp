#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shm/manifest.hpp"

namespace {

struct OutputOptions {
  std::string report_path;
  bool quiet = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--report", out.report_path, "write the JSON report to this path");
  cmd->add_flag("--quiet", out.quiet, "suppress the stdout report");
}

int emit(const shm::Report& rep, const OutputOptions& out) {
  if (!out.quiet) std::cout << rep.text();
  if (!out.report_path.empty()) {
    std::ofstream f(out.report_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write report to '" << out.report_path << "'\n";
      return 2;
    }
    f << rep.json_text();
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic checker for Hermitian metric conditions, deformation\n"
               "stability and blow-up stability on polynomial coordinate patches"};
  app.require_subcommand(1);

  std::string manifest_path;
  OutputOptions out_check, out_deform, out_blowup, out_id;

  CLI::App* c_check = app.add_subcommand("check", "classify the metric of a manifest");
  c_check->add_option("manifest", manifest_path, "manifest file")->required();
  add_output_options(c_check, out_check);

  CLI::App* c_deform =
      app.add_subcommand("deform", "deformation residuals and first-order stability");
  c_deform->add_option("manifest", manifest_path, "manifest file")->required();
  add_output_options(c_deform, out_deform);

  CLI::App* c_blowup =
      app.add_subcommand("blowup", "blow-up expansion, preservation and positivity");
  c_blowup->add_option("manifest", manifest_path, "manifest file")->required();
  add_output_options(c_blowup, out_blowup);

  shm::SuiteOptions suite;
  CLI::App* c_id = app.add_subcommand("identities", "run the seeded property suite");
  c_id->add_option("--seed", suite.seed, "suite seed")->default_val(1);
  c_id->add_option("--n", suite.max_dim, "largest patch dimension")->default_val(3);
  c_id->add_option("--cases", suite.cases, "cases per identity")->default_val(50);
  c_id->add_option("--mutate", suite.mutate, "evaluate a deliberately broken variant")
      ->group("");
  add_output_options(c_id, out_id);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto started = std::chrono::steady_clock::now();
  int code = 2;
  try {
    if (c_check->parsed()) {
      shm::Manifest m = shm::load_manifest(manifest_path);
      code = emit(shm::cmd_check(m, "check " + manifest_path), out_check);
    } else if (c_deform->parsed()) {
      shm::Manifest m = shm::load_manifest(manifest_path);
      code = emit(shm::cmd_deform(m, "deform " + manifest_path), out_deform);
    } else if (c_blowup->parsed()) {
      shm::Manifest m = shm::load_manifest(manifest_path);
      code = emit(shm::cmd_blowup(m, "blowup " + manifest_path), out_blowup);
    } else if (c_id->parsed()) {
      std::string echo = "identities --seed " + std::to_string(suite.seed) + " --n " +
                         std::to_string(suite.max_dim) + " --cases " +
                         std::to_string(suite.cases);
      if (!suite.mutate.empty()) echo += " --mutate " + suite.mutate;
      code = emit(shm::cmd_identities(suite, echo), out_id);
    }
  } catch (const shm::ManifestError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  // wall-clock timing stays out of the report so reports are reproducible
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started)
                .count();
  std::cerr << "# elapsed " << ms << " ms\n";
  return code;
}
