// motionforge: interpolate | factorize | mechanism | sample | serve

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motionforge/app/cli.hpp"
#include "motionforge/app/server.hpp"

namespace mf = motionforge;
namespace app = motionforge::app;

int main(int argc, char** argv) {
  CLI::App cli{"Rational motion interpolation and linkage synthesis"};
  cli.require_subcommand(1);

  std::string input, output;

  auto* interp = cli.add_subcommand("interpolate", "TaskDocument -> MotionDocument");
  interp->add_option("input", input, "TaskDocument path")->required();
  interp->add_option("-o,--output", output, "MotionDocument path (default: stdout)");

  auto* factor = cli.add_subcommand("factorize", "MotionDocument -> factorizations");
  factor->add_option("input", input, "MotionDocument path")->required();
  factor->add_option("-o,--output", output, "output path (default: stdout)");

  auto* mech = cli.add_subcommand("mechanism", "MotionDocument -> factorizations and closed loops");
  mech->add_option("input", input, "MotionDocument path")->required();
  mech->add_option("-o,--output", output, "output path (default: stdout)");

  std::size_t count = 0;
  std::vector<double> at, range, point;
  std::string format = "csv";
  auto* sample = cli.add_subcommand("sample", "sample poses of a MotionDocument");
  sample->add_option("input", input, "MotionDocument path")->required();
  auto* count_opt = sample->add_option("--count", count, "uniform sweep with N >= 2 samples");
  auto* at_opt = sample->add_option("--at", at, "explicit parameters")->expected(1, -1);
  count_opt->excludes(at_opt);
  sample->add_option("--range", range, "sweep range lo hi (default 0 1)")->expected(2)->needs(count_opt);
  sample->add_option("--point", point, "probe point x y z")->expected(3);
  sample->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("-o,--output", output, "output path (default: stdout)");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = cli.add_subcommand("serve", "local HTTP/JSON service");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "bind address");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return cli.exit(e);
    std::cerr << mf::io::error_json(mf::Error(mf::ErrorCode::UsageError, e.what())).dump() << '\n';
    return 2;
  }

  if (*interp) return app::cmd_interpolate(input, output);
  if (*factor) return app::cmd_factorize(input, output, app::LoopMode::None);
  if (*mech) return app::cmd_factorize(input, output, app::LoopMode::Required);
  if (*sample) {
    if (!*count_opt && !*at_opt) {
      std::cerr << mf::io::error_json(mf::Error(mf::ErrorCode::UsageError, "give --count or --at")).dump() << '\n';
      return 2;
    }
    app::SampleRequest req;
    if (*count_opt) req.count = count;
    req.at = at;
    if (!range.empty()) {
      req.lo = range[0];
      req.hi = range[1];
    }
    if (!point.empty()) req.point = {point[0], point[1], point[2]};
    return app::cmd_sample(input, req, format == "json" ? app::SampleFormat::Json : app::SampleFormat::Csv, output);
  }
  httplib::Server server;
  app::register_routes(server);
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << mf::io::error_json(mf::Error(mf::ErrorCode::IoError, "cannot bind port " + std::to_string(port)))
                     .dump()
              << '\n';
    return 2;
  }
  return 0;
}
