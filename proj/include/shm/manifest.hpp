#ifndef SHM_MANIFEST_HPP
#define SHM_MANIFEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shm/blowup.hpp"
#include "shm/deformation.hpp"
#include "shm/identities.hpp"

namespace shm {

// Input diagnostic with the offending field path, e.g. "metric[2].holo[0]".
struct ManifestError : std::runtime_error {
  std::string field;
  ManifestError(std::string field_, const std::string& msg)
      : std::runtime_error(field_.empty() ? msg : field_ + ": " + msg),
        field(std::move(field_)) {}
};

struct BlowupSection {
  BiForm omega;
  int k = 1;
  std::optional<HoloMap> chart;
  std::optional<BiForm> chart_omega;  // defaults to the flat form on the chart
  std::vector<Point> points;          // chart-source points for the threshold
  int threshold_cap = 64;

  BlowupSection() : omega(1) {}
};

struct Manifest {
  int format = 1;
  int dim = 1;
  int truncation_order = kDefaultTruncation;
  std::uint64_t seed = 0;
  std::optional<BiForm> metric;
  std::vector<Point> sample_points;
  std::optional<VecForm> deformation;
  std::vector<Poly> deformation_functions;
  std::optional<BlowupSection> blowup;
};

Manifest load_manifest(const std::string& path);
Manifest parse_manifest_text(const std::string& text);

// --- reports ---------------------------------------------------------------

struct ReportEntry {
  std::string name;
  bool holds = true;
  std::string witness;  // canonical text, empty when the condition holds
  std::string value;    // optional result payload (e.g. a threshold)
};

// Deterministic given (manifest, seed): no wall-clock content.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  int exit_code = 0;
  std::vector<ReportEntry> entries;

  void add(ReportEntry e);
  void add_verdict(const Verdict& v, const std::string& holo_name = "z");
  std::string text() const;
  std::string json_text() const;
};

std::string vec_form_text(const VecForm& v, const std::string& holo_name = "z");

// --- commands ----------------------------------------------------------------
// Exit codes: 0 all conditions hold, 1 a mathematical condition fails (witness
// in the report), 2 input error (thrown as ManifestError/invalid_argument),
// 3 internal oracle mismatch.

Report cmd_check(const Manifest& m, const std::string& command_echo);
Report cmd_deform(const Manifest& m, const std::string& command_echo);
Report cmd_blowup(const Manifest& m, const std::string& command_echo);
Report cmd_identities(const SuiteOptions& o, const std::string& command_echo);

}  // namespace shm

#endif
