#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qorder/channels.h"
#include "qorder/measures.h"
#include "qorder/qubit.h"

namespace qorder::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArguments = 1;
inline constexpr int kExitNumericalFailure = 2;
inline constexpr int kExitReversalFound = 3;

/// Entry point shared by the qorder binary and the tests. args excludes argv[0].
///
///   coherence      --state t,nx,ny,nz [--alpha A]
///   evolve         --channel K --p P --state t,nx,ny,nz
///   scan           --channel K --measure M --p P [--alpha A] [--t L] [--nz L] [--azimuth A]
///   ordering-check --channel K --measure M --p P --constraint fixed-t|fixed-nz|none [grid flags]
///   figure         --id 1..6
///   nc-search      --family phi1|phi2 [--angles L] [grid flags]
///
/// Every subcommand accepts --out PATH (figure: a directory). Exit codes: 0 ok,
/// 1 invalid arguments, 2 numerical failure, 3 ordering reversal found.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "t,nx,ny,nz"; n is renormalized when | |n| - 1 | <= 1e-6 and rejected beyond.
BlochState parse_state(std::string_view text);
MarkovianKind parse_channel(std::string_view name);
/// l1 | relative-entropy | geometric | tsallis (the latter needs alpha).
Measure parse_measure(std::string_view name, double alpha);

}  // namespace qorder::cli
