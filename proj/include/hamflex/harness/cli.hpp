// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_CLI_HPP
#define HAMFLEX_HARNESS_CLI_HPP

namespace hamflex::harness {

/// Command-line front end. Returns 0 on success, 2 on configuration or
/// usage errors, 3 when a simulation unexpectedly loses stability.
int cli_main(int argc, const char* const* argv);

} // namespace hamflex::harness

#endif
