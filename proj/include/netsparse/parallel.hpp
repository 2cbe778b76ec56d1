#pragma once

namespace netsparse {

// Process-wide worker count for the data-parallel kernels. Every kernel is
// required to produce bitwise-identical results for any worker count.
void set_num_threads(int n);
int num_threads();

}  // namespace netsparse
