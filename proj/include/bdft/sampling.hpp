#ifndef BDFT_SAMPLING_HPP
#define BDFT_SAMPLING_HPP

#include <array>
#include <cstdint>

namespace bdft {

/// Radical inverse of `index` in `base`.
inline double radical_inverse(std::uint64_t index, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

/// Halton sequence in up to four dimensions; the seed selects the start index.
class Halton {
public:
    explicit Halton(std::uint64_t seed) : index_(seed + 1) {}

    template <std::size_t D>
    std::array<double, D> next() {
        static_assert(D >= 1 && D <= 4, "up to four dimensions");
        constexpr unsigned bases[4] = {2, 3, 5, 7};
        std::array<double, D> p{};
        for (std::size_t i = 0; i < D; ++i) p[i] = radical_inverse(index_, bases[i]);
        ++index_;
        return p;
    }

private:
    std::uint64_t index_;
};

}  // namespace bdft

#endif  // BDFT_SAMPLING_HPP
