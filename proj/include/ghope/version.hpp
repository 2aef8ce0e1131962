// Copyright graphene-hope contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GHOPE_VERSION_HPP
#define GHOPE_VERSION_HPP

namespace ghope
{
inline constexpr const char *version_string = "0.1.0";
}  // namespace ghope

#endif  // GHOPE_VERSION_HPP
