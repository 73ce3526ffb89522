// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/cli.hpp"

int main(int argc, char** argv) {
  return hamflex::harness::cli_main(argc, argv);
}
