// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_VERSION_HPP
#define HAMFLEX_VERSION_HPP

namespace hamflex {

inline constexpr char kVersion[] = "0.1.0";

} // namespace hamflex

#endif
