#include <cstdlib>
#include <string>

#include "kato/kernels.hpp"

namespace kato::kernels {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

bool supported(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

KernelTable table(Isa isa) {
    if (!supported(isa)) {
        throw DomainError("kernel variant '" + std::string(isa_name(isa)) +
                          "' is not supported on this CPU");
    }
    switch (isa) {
    case Isa::Scalar:
        break;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return {Isa::Avx2, &avx2::phi_step, &avx2::distance, &avx2::slice_residual};
#else
        break;
#endif
    }
    return {Isa::Scalar, &scalar::phi_step, &scalar::distance, &scalar::slice_residual};
}

const KernelTable& active() {
    static const KernelTable chosen = [] {
        const char* forced = std::getenv("KATO_ISA");
        if (forced != nullptr && std::string(forced) == "scalar") {
            return table(Isa::Scalar);
        }
        return supported(Isa::Avx2) ? table(Isa::Avx2) : table(Isa::Scalar);
    }();
    return chosen;
}

} // namespace kato::kernels
