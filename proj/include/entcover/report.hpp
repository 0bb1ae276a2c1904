#pragma once

#include <optional>
#include <string>

#include "entcover/specfile.hpp"

namespace entcover {

// Options accepted by the run commands; echoed verbatim into the report
// so that verification can replay the computation.
struct RunParams {
  int nmax = 4;
  std::string epsilon = "1/10";
  int cap = 64;               // pipeline depth cap (construct_mean n_cap)
  std::string cover = "";     // cover selector; empty = sole/first cover
  std::size_t ball_cap = 1'000'000;
};

// Self-contained run report: command echo, input echo with digest, and
// deterministic results. Reports carry their certificates so they can be
// re-verified from the file alone.
Json run_command(const std::string& command, const Json& spec_json,
                 const RunParams& params);

// Re-checks a report: digest, certificate invariants, and a full replay
// of the command compared field by field. Throws verification_error with
// the first failing location.
void verify_report(const Json& report);

std::string report_to_csv(const Json& report);

std::string fnv1a64_hex(const std::string& bytes);

void write_atomic(const std::string& path, const std::string& bytes);

}  // namespace entcover
