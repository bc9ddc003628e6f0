// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_VERSION_HPP
#define CRSIM_VERSION_HPP

namespace crsim {

#ifndef CRSIM_GIT_DESCRIBE
#define CRSIM_GIT_DESCRIBE "unknown"
#endif

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kVersionString = "crsim 0.1.0 (" CRSIM_GIT_DESCRIBE ")";

}  // namespace crsim

#endif  // CRSIM_VERSION_HPP
