// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_VERSION_HPP
#define FASTBO_VERSION_HPP

#define FASTBO_VERSION_STRING "0.1.0"

namespace fastbo {

inline const char* version() { return FASTBO_VERSION_STRING; }

}  // namespace fastbo

#endif  // FASTBO_VERSION_HPP
