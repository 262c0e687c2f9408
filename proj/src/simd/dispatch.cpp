#include "fraclab/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fraclab::simd {
namespace {

const KernelTable* detect() {
    if (const char* env = std::getenv("FRACLAB_SIMD")) {
        const std::string want(env);
        if (want == "scalar") return &scalar_kernels();
        if (want == "avx2" && avx2_kernels()) return avx2_kernels();
        if (want == "neon" && neon_kernels()) return neon_kernels();
    }
    if (const KernelTable* t = avx2_kernels()) return t;
    if (const KernelTable* t = neon_kernels()) return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> current{detect()};
    return current;
}

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool force_backend(Backend b) {
    const KernelTable* t = nullptr;
    switch (b) {
        case Backend::scalar: t = &scalar_kernels(); break;
        case Backend::avx2: t = avx2_kernels(); break;
        case Backend::neon: t = neon_kernels(); break;
    }
    if (!t) return false;
    slot().store(t, std::memory_order_release);
    return true;
}

}  // namespace fraclab::simd
