#pragma once

#include <cstdint>
#include <iosfwd>

namespace strip {

/// Quick property suite on small grids. Prints one line per check and
/// returns the number of failures.
int run_selftest(std::ostream& out, std::uint64_t seed = 1);

}  // namespace strip
