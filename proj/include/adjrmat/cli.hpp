#pragma once

// build / verify / spectrum workflows behind the adjrmat command.
//
// Exit codes: 0 every check passed, 1 a verification check failed,
// 2 usage or configuration error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "adjrmat/numerics.hpp"
#include "json.hpp"

namespace adjrmat {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ModeFlag { Auto, Dense, MatrixFree };

struct RunConfig {
  int n = 4;
  int sites = 0;  // 0: command default
  cplx lambda{0.5, 0.0};
  std::optional<cplx> mu;
  int samples = 5;
  int probes = 10;
  std::uint64_t seed = kDefaultSeed;
  Tolerance tol;
  std::string out;  // empty: stdout
  ModeFlag mode = ModeFlag::Auto;
  bool rescaled = false;

  /// Throws UsageError for n < 3, samples < 1, probes < 1 or bad tolerances.
  void validate() const;
};

/// "RE,IM" or "RE".
cplx parse_complex(const std::string& text);

/// kind: basis | projectors | rmatrix | hamiltonian.
nlohmann::json cmd_build(const std::string& kind, const RunConfig& config);

struct VerifyResult {
  nlohmann::json report;
  bool pass = false;
};
/// suite: identities | intertwiner | ybe | hamiltonian | su3 | chain | all.
VerifyResult cmd_verify(const std::string& suite, const RunConfig& config);

nlohmann::json cmd_spectrum(const RunConfig& config);

/// Writes dump_json(j) plus a newline to `path`, or to `out` when path is
/// empty. Throws std::runtime_error naming the path on I/O failure.
void write_report(const nlohmann::json& j, const std::string& path, std::ostream& out);

/// Full command line (argv[0] included). ADJRMAT_SEED is read when --seed is
/// absent. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adjrmat
