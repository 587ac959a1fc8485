// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_VERSION_HPP
#define GEC_VERSION_HPP

namespace gec {

inline constexpr const char *version_string = "0.1.0";

} // namespace gec

#endif // GEC_VERSION_HPP
