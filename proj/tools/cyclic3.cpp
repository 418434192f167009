// cyclic3: enumerate cyclic cubic fields, compute one-level densities,
// run the verification probes, tabulate character sums.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cyclic3/cli.hpp"

int main(int argc, char** argv) {
  using namespace cyclic3;
  CLI::App app{"Cyclic cubic fields: one-level density and symmetry verification"};
  app.require_subcommand(1);

  RunConfig config;
  std::string mode = "kummer";
  std::string primes = "7,13,31";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--x", config.X, "family parameter X (discriminants in [X, 2X])");
    sub->add_option("--out", config.out, "output path (default: standard output)");
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "write the field catalog of F_3(X)");
  add_common(enumerate);

  CLI::App* density = app.add_subcommand("density", "one-level density table and symmetry summary");
  add_common(density);
  density->add_option("--beta", config.beta, "support radius of the test function transform");
  density->add_option("--mode", mode, "kummer | paper")->check(CLI::IsMember({"kummer", "paper"}));
  density->add_option("--catalog", config.catalog, "reuse a catalog written by enumerate");

  CLI::App* verify = app.add_subcommand("verify", "run the probe suite");
  add_common(verify);
  verify->add_option("--p0", config.p0, "Euler product truncation for the generating series");
  verify->add_option("--ymax", config.ymax, "largest Y for character sums");
  verify->add_option("--s", config.s, "real point for the generating series");
  verify->add_option("--primes", primes, "comma-separated primes for character sums");

  CLI::App* charsum = app.add_subcommand("charsum", "character sums S_p(Y) on a log grid");
  add_common(charsum);
  charsum->add_option("--ymax", config.ymax, "largest Y");
  charsum->add_option("--primes", primes, "comma-separated primes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.mode = parse_mode(mode);
    config.primes = parse_prime_list(primes);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run_command(config);
}
