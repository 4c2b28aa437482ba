#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qes::cli {

/// Malformed or out-of-range job input; maps to exit code 2.
class BadInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a run needs. Rationals stay as their "p/q" text until execution.
struct JobSpec {
  std::string subcommand;
  std::string model;
  int n_bodies = 3;
  std::string omega = "1";
  std::string nu = "0";
  std::string nu2 = "0";
  std::string mu = "0";
  std::vector<std::string> nu_i;
  std::string l_tilde = "0";
  std::string gamma = "0";
  std::string a = "0";
  int k = 0;
  std::optional<int> degree;
  std::uint64_t seed = 1;
  int points = 5;
  int g_degree = 1;
  std::string coefficients = "printed";
  bool tau2_homogeneous = false;
  bool eigenfunctions = false;
  bool timing = false;
  std::string format = "json";
  std::string out;
};

const std::vector<std::string>& subcommands();

/// Overlays the fields present in `j` onto `job`; unknown keys throw BadInput.
void apply_job_json(JobSpec& job, const nlohmann::json& j);
nlohmann::json job_to_json(const JobSpec& job);

struct Outcome {
  int exit_code = 0;
  nlohmann::json report;
};

/// Runs one job. Throws BadInput on invalid input.
Outcome execute(const JobSpec& job);

/// Renders a report as json, csv or text.
std::string render(const nlohmann::json& report, const std::string& format);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
