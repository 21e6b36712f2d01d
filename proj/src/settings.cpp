#include "s1lab/settings.hpp"

namespace s1lab {

Settings& settings() {
    static Settings s;
    return s;
}

}  // namespace s1lab
