#include "pwtest/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace pwtest::kernels {

namespace {

using FindFn = std::size_t (*)(std::span<const double>, std::size_t, double, double,
                               std::span<std::size_t>);
using BitsFn = void (*)(std::span<const std::uint64_t>, std::span<double>);

struct Table {
    Isa isa;
    FindFn find;
    BitsFn bits;
};

Table select() noexcept {
    const char* env = std::getenv("PWTEST_ISA");
    const bool force_scalar = env != nullptr && std::string_view(env) == "scalar";
#if defined(PWTEST_HAVE_AVX2)
    if (!force_scalar && avx2_available()) {
        return {Isa::Avx2, &avx2::find_in_window, &avx2::unit_from_bits};
    }
#endif
    (void)force_scalar;
    return {Isa::Scalar, &scalar::find_in_window, &scalar::unit_from_bits};
}

const Table& table() noexcept {
    static const Table t = select();
    return t;
}

} // namespace

bool avx2_available() noexcept {
#if defined(PWTEST_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa active_isa() noexcept { return table().isa; }

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::Avx2:
        return "avx2";
    case Isa::Scalar:
        break;
    }
    return "scalar";
}

std::size_t find_in_window(std::span<const double> xs, std::size_t start, double lo, double hi,
                           std::span<std::size_t> out) {
    return table().find(xs, start, lo, hi, out);
}

void unit_from_bits(std::span<const std::uint64_t> bits, std::span<double> out) {
    table().bits(bits, out);
}

} // namespace pwtest::kernels
