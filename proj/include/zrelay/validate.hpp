#pragma once

// Static legality checks for a circuit, per the common-cycle discipline:
//   SetupViolation        a control is not held over its consumer's drive tick,
//                         or a merge joins motion from different subcycles
//   DepthExceeded         more than three dependent stages inside one machine
//                         cycle without a delay element marking a boundary
//   UnrectifiedMultiDrive two drivers reach one element without a rectified
//                         merge, or a pull relay feeds a merge
//   DirectionMismatch     connected elements move along different directions
//                         with no lever between them
//   DanglingReference     motion paths that never ground in a clock pulse or
//                         input, circular definitions, degenerate wiring
//
// Hazards are returned, never thrown; an empty list means the circuit is
// legal and loadable.

#include <vector>

#include "zrelay/circuit.hpp"

namespace zrelay {

std::vector<Hazard> validate(const Circuit& circuit);

}  // namespace zrelay
