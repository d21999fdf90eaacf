#include "pwtest/kernels.hpp"

#include <immintrin.h>

namespace pwtest::kernels::avx2 {

std::size_t find_in_window(std::span<const double> xs, std::size_t start, double lo, double hi,
                           std::span<std::size_t> out) {
    std::size_t found = 0;
    if (out.empty()) {
        return 0;
    }
    const double* data = xs.data();
    const std::size_t n = xs.size();
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);

    auto inside = [&](const double* p) {
        const __m256d v = _mm256_loadu_pd(p);
        return _mm256_and_pd(_mm256_cmp_pd(vlo, v, _CMP_LT_OQ), _mm256_cmp_pd(v, vhi, _CMP_LT_OQ));
    };
    // Emits the set lanes of `mask` in lane order; true once `out` is full.
    auto emit = [&](int mask, std::size_t base) {
        while (mask != 0) {
            out[found++] = base + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
            if (found == out.size()) {
                return true;
            }
            mask &= mask - 1;
        }
        return false;
    };

    std::size_t t = start;
    // Hits are rare in the window scans, so test 16 lanes at a time and only
    // decode masks when something matched.
    for (; t + 16 <= n; t += 16) {
        const __m256d a = inside(data + t);
        const __m256d b = inside(data + t + 4);
        const __m256d c = inside(data + t + 8);
        const __m256d d = inside(data + t + 12);
        const __m256d any = _mm256_or_pd(_mm256_or_pd(a, b), _mm256_or_pd(c, d));
        if (_mm256_movemask_pd(any) == 0) {
            continue;
        }
        if (emit(_mm256_movemask_pd(a), t) || emit(_mm256_movemask_pd(b), t + 4) ||
            emit(_mm256_movemask_pd(c), t + 8) || emit(_mm256_movemask_pd(d), t + 12)) {
            return found;
        }
    }
    for (; t + 4 <= n; t += 4) {
        if (emit(_mm256_movemask_pd(inside(data + t)), t)) {
            return found;
        }
    }
    for (; t < n; ++t) {
        if (lo < data[t] && data[t] < hi) {
            out[found++] = t;
            if (found == out.size()) {
                break;
            }
        }
    }
    return found;
}

void unit_from_bits(std::span<const std::uint64_t> bits, std::span<double> out) {
    const __m256i one = _mm256_set1_epi64x(0x3FF0000000000000LL);
    const __m256d offset = _mm256_set1_pd(1.0 - 0x1.0p-53);
    const std::size_t n = bits.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits.data() + i));
        w = _mm256_or_si256(_mm256_srli_epi64(w, 12), one);
        _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(_mm256_castsi256_pd(w), offset));
    }
    scalar::unit_from_bits(bits.subspan(i), out.subspan(i));
}

} // namespace pwtest::kernels::avx2
