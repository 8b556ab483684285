#include "irsub/parallel.hpp"

#include <cstdlib>
#include <string>

namespace irsub {

unsigned default_threads() {
    if (const char* env = std::getenv("IRSUB_THREADS")) {
        try {
            const long value = std::stol(env);
            if (value > 0) return static_cast<unsigned>(value);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace irsub
