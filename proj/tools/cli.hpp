#ifndef BOXSERIES_CLI_HPP
#define BOXSERIES_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace boxseries::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;

/// Everything a command needs. Strings hold values exactly as typed so that
/// rationals such as "1/3" survive unrounded.
struct JobConfig {
  std::string command;
  std::string potential;  // expression, e.g. "x^2+x^4"
  std::string family;     // anharmonic | doublewell | morse
  std::vector<std::string> mu2;
  std::string g = "1";
  int k = 2;
  std::string v0 = "400";
  std::string lambda = "1";
  int morse_terms = 30;
  std::string half_width;
  std::string kind = "auto";
  int digits = 20;
  std::string terms = "auto";
  std::string range;  // lo:hi:step
  int count = 2;
  std::string output = "csv";
  std::string seed;    // "a0,a1"
  std::string energy;  // custom wavefunction dump at a fixed energy
  std::string recipe;
  std::string out_dir = ".";
  int points = 201;
  int grid = 4000;
  std::string against = "auto";  // auto | fd | exact
  int max_terms = 1 << 15;
  bool serial = false;
};

/// Parses `args` (args[0] is the program name), runs the command and returns
/// its exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boxseries::cli

#endif  // BOXSERIES_CLI_HPP
