#pragma once

#include <vector>

#include "mskit/oracle.hpp"

namespace mskit {

/// Runs every invariant suite of the library against its reference and
/// returns one report per check, in a fixed order.
std::vector<OracleReport> run_verification();

}  // namespace mskit
