#include "cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace paircache::cli;

  CLI::App app{"Coded caching for a pair of files: exact rates, delivery simulation, "
               "memory-sharing hull and minimum file sizes"};
  app.require_subcommand(1);

  RateOptions rate_opt;
  int rate_L = -1, rate_j = -1;
  auto* rate = app.add_subcommand("rate", "Worst-case delivery rate, exact");
  rate->add_option("--K", rate_opt.K, "Number of users")->required();
  rate->add_option("--m", rate_opt.m, "Cache parameter, M = m/K")->required();
  rate->add_option("--L", rate_L, "Demand split: number of users requesting file A");
  rate->add_option("--j", rate_j, "Delivery threshold (requires --L)");
  rate->add_flag("--json", rate_opt.json, "JSON output");

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "CSV of rate curves over the M grid");
  sweep->add_option("--K", sweep_opt.K, "Number of users")->required();
  sweep->add_option("--out", sweep_opt.out_path, "Output CSV path (default stdout)");

  SimulateOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "Bit-exact placement/delivery/decode run");
  sim->add_option("--K", sim_opt.K, "Number of users")->required();
  sim->add_option("--m", sim_opt.m, "Cache parameter, M = m/K")->required();
  sim->add_option("--demands", sim_opt.demands, "Per-user requests, e.g. AABBBB")->required();
  sim->add_option("--seed", sim_opt.seed, "Payload RNG seed")->envname("PAIRCACHE_SEED");
  sim->add_option("--subfile-bytes", sim_opt.subfile_bytes, "Bytes per subfile")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--json", sim_opt.json, "JSON output");

  HullOptions hull_opt;
  auto* hull = app.add_subcommand("hull", "Lower convex envelope of achievable points");
  hull->add_option("--K", hull_opt.K, "Number of users")->required();
  hull->add_flag("--json", hull_opt.json, "JSON output");

  FminOptions fmin_opt;
  auto* fmin = app.add_subcommand("fmin", "Minimum file size for memory sharing at K=10");
  fmin->add_option("--m", fmin_opt.m, "Cache parameter, M = m/10, m in 4..9")->required();
  fmin->add_flag("--json", fmin_opt.json, "JSON output");

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "Run the scheme's property checks");
  verify->add_option("--K-max", verify_opt.k_max, "Largest K to check (default 12)");
  verify->add_option("--seed", verify_opt.seed, "Sampling seed")->envname("PAIRCACHE_SEED");
  verify->add_flag("--json", verify_opt.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*rate) {
    if (rate->count("--L")) rate_opt.L = rate_L;
    if (rate->count("--j")) rate_opt.j = rate_j;
    return cmd_rate(rate_opt, std::cout, std::cerr);
  }
  if (*sweep) return cmd_sweep(sweep_opt, std::cout, std::cerr);
  if (*sim) return cmd_simulate(sim_opt, std::cout, std::cerr);
  if (*hull) return cmd_hull(hull_opt, std::cout, std::cerr);
  if (*fmin) return cmd_fmin(fmin_opt, std::cout, std::cerr);
  if (*verify) return cmd_verify(verify_opt, std::cout, std::cerr);
  return 1;
}
