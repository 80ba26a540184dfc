#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = phyllo::cli;

namespace {

void add_common(CLI::App* sub, cli::RunConfig& rc, std::string& range_text) {
  sub->add_option("--alpha", rc.alpha, "Radial exponent (sites at j^alpha)")->check(CLI::PositiveNumber);
  sub->add_option("--divergence", rc.divergence, "Radians, or 2*pi*<x> with x a number, p/q, golden, sqrt2 or e");
  sub->add_option("--jmin", rc.j_min, "First index");
  sub->add_option("--jmax", rc.j_max, "Last index");
  sub->add_option("--range", range_text, "Plot range x0,x1,y0,y1");
  sub->add_option("--out", rc.out, "Output file (default stdout)");
  sub->add_option("--seed", rc.seed, "Random seed");
  sub->add_option("--threads", rc.threads, "Worker threads (0: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi tessellations of spiral lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "phyllo 0.1.0");

  cli::RunConfig rc;
  std::string range_text;
  auto* tessellate = app.add_subcommand("tessellate", "Write the clipped tessellation as SVG");
  auto* areas = app.add_subcommand("areas", "Write cell areas as CSV");
  auto* verify = app.add_subcommand("verify", "Run the randomized bound checks, report JSON");
  auto* parastichy = app.add_subcommand("parastichy", "Compare predicted and observed parastichy numbers");
  for (auto* sub : {tessellate, areas, verify, parastichy}) add_common(sub, rc, range_text);
  verify->add_option("--samples", rc.samples, "Samples per check")->check(CLI::PositiveNumber);
  verify->add_option("--bound-scale", rc.bound_scale)->group("");
  parastichy->add_option("--mu", rc.mu, "Real index");
  parastichy->add_option("--j", rc.j, "Site index");
  parastichy->add_flag("--json", rc.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    if (!range_text.empty()) rc.range = cli::parse_range(range_text);
    std::ofstream file;
    if (!rc.out.empty()) {
      file.open(rc.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open '" + rc.out + "' for writing");
    }
    std::ostream& os = rc.out.empty() ? std::cout : file;

    int status = cli::kOk;
    if (*tessellate) status = cli::cmd_tessellate(rc, os);
    else if (*areas) status = cli::cmd_areas(rc, os);
    else if (*verify) status = cli::cmd_verify(rc, os);
    else status = cli::cmd_parastichy(rc, os);

    os.flush();
    if (!os) throw std::runtime_error("write failed");
    return status;
  } catch (const std::exception& e) {
    std::cerr << "phyllo: error: " << e.what() << '\n';
    return cli::kUsage;
  }
}
