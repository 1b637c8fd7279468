#ifndef RELAYSIM_VERSION_HPP_
#define RELAYSIM_VERSION_HPP_

namespace relaysim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace relaysim

#endif  // RELAYSIM_VERSION_HPP_
