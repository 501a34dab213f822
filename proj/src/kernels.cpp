#include "nmfgame/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace nmfgame::kernels {
namespace {

const Ops* lookup(const std::string& name) {
    if (name == "scalar") return &scalar_ops();
#if defined(__x86_64__)
    if (name == "avx2") {
        if (!avx2_available()) throw std::runtime_error("avx2 kernels requested but CPU lacks AVX2");
        return &avx2_ops();
    }
#endif
    throw std::runtime_error("unknown kernel backend: " + name);
}

const Ops* pick_default() {
    if (const char* env = std::getenv("NMFGAME_KERNELS")) return lookup(env);
#if defined(__x86_64__)
    if (avx2_available()) return &avx2_ops();
#endif
    return &scalar_ops();
}

const Ops*& active_slot() {
    static const Ops* active = pick_default();
    return active;
}

}  // namespace

const Ops& active_ops() { return *active_slot(); }

std::string set_active_backend(const std::string& name) {
    std::string prev = active_slot()->name;
    active_slot() = lookup(name);
    return prev;
}

}  // namespace nmfgame::kernels
