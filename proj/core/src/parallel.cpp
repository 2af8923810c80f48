#include "sngs/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sngs {

unsigned thread_limit() {
    if (const char* env = std::getenv("SNGS_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace sngs
