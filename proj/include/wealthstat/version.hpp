#ifndef WEALTHSTAT_VERSION_HPP
#define WEALTHSTAT_VERSION_HPP

namespace wealthstat {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
