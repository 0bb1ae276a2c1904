#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "entcover/errors.hpp"
#include "entcover/report.hpp"

namespace {

// Exit codes: 0 success, 1 internal invariant failure, 2 bad input,
// 3 resource cap hit, 4 verification failure.
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitVerification = 4;

struct Options {
  std::string spec_path;
  std::string out_path;
  std::string format = "json";
  int threads = 1;
  entcover::RunParams params;
};

entcover::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw entcover::validation_error("cannot open '" + path + "'");
  entcover::Json j;
  try {
    in >> j;
  } catch (const entcover::Json::parse_error& e) {
    throw entcover::validation_error("parse error in '" + path + "': " + e.what());
  }
  return j;
}

void emit(const entcover::Json& report, const Options& opt) {
  std::string bytes = opt.format == "csv" ? entcover::report_to_csv(report)
                                          : report.dump(2) + "\n";
  if (opt.out_path.empty())
    std::cout << bytes;
  else
    entcover::write_atomic(opt.out_path, bytes);
}

int run(const std::string& command, const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (command == "verify") {
    entcover::verify_report(read_json_file(opt.spec_path));
    std::cout << "pass\n";
  } else {
    entcover::Json spec = read_json_file(opt.spec_path);
    entcover::Json report = entcover::run_command(command, spec, opt.params);
    emit(report, opt);
  }
  // Wall time goes to stderr only; report files stay byte-deterministic.
  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "wall_time_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cover-refinement entropy toolkit"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env_cap = std::getenv("ENTCOVER_CAP"))
    opt.params.cap = std::atoi(env_cap);

  auto add_common = [&](CLI::App* cmd, bool needs_spec) {
    auto* s = cmd->add_option("--spec", opt.spec_path,
                              needs_spec ? "problem spec file (JSON)"
                                         : "report file to check");
    s->required();
    cmd->add_option("--out", opt.out_path, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", opt.threads, "worker threads (results unaffected)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ballcap", opt.params.ball_cap, "max ball enumeration size");
  };

  auto* c_complexity = app.add_subcommand("complexity", "complexity sequence with certificates");
  auto* c_entropy = app.add_subcommand("entropy", "slope report for the complexity sequence");
  auto* c_mean = app.add_subcommand("mean", "approximately invariant mean construction");
  auto* c_lower = app.add_subcommand("lowerbound", "dual-ball entropy lower bound witness");
  auto* c_verify = app.add_subcommand("verify", "re-check a report file");

  for (CLI::App* cmd : {c_complexity, c_entropy, c_mean, c_lower})
    add_common(cmd, true);
  add_common(c_verify, false);
  for (CLI::App* cmd : {c_complexity, c_entropy, c_lower})
    cmd->add_option("--nmax", opt.params.nmax, "max radius / witness level");
  c_complexity->add_option("--cover", opt.params.cover, "cover name from the spec");
  c_entropy->add_option("--cover", opt.params.cover, "cover name from the spec");
  c_mean->add_option("--epsilon", opt.params.epsilon, "defect bound, as a rational");
  c_mean->add_option("--cap", opt.params.cap, "radius cap for the ratio condition");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const entcover::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const entcover::resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const entcover::verification_error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
