#include "polarwalk/config.hpp"

#include <cstdlib>
#include <string>

namespace polarwalk {

namespace {
bool read_env_int(const char* name, long long* out) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return false;
    char* end = nullptr;
    long long value = std::strtoll(raw, &end, 10);
    if (end == raw || *end != '\0') return false;
    *out = value;
    return true;
}
}  // namespace

Caps Caps::from_env() {
    Caps caps;
    long long value = 0;
    if (read_env_int("POLARWALK_MAX_N", &value) && value > 0 && value <= 30)
        caps.max_n = static_cast<int>(value);
    if (read_env_int("POLARWALK_MAX_SEED_BITS", &value) && value > 0 && value <= 40)
        caps.max_seed_bits = value;
    return caps;
}

}  // namespace polarwalk
