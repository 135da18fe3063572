#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "griffiths/integral_elements.hpp"

namespace griffiths::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kCheckNegative = 3,
  kVerifyFail = 4,
  kNumericFailure = 5,
};

/// Entry point shared by the binary and the tests. argv[0] is the program
/// name; subcommands are dims, check-element, random-family and
/// construct-verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The family written by random-family, without touching the filesystem.
DistinguishedBasis random_family(std::size_t p, std::size_t q, bool conjugated, std::uint64_t seed);

}  // namespace griffiths::cli
