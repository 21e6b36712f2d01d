#pragma once

#define S1LAB_VERSION "0.1.0"

namespace s1lab {

inline const char* version() { return S1LAB_VERSION; }

} // namespace s1lab
