#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace palm {

enum class Spectrum { Red = 0, Green = 1, Blue = 2, NIR = 3 };

inline constexpr std::size_t kSpectrumCount = 4;
inline constexpr std::array<Spectrum, kSpectrumCount> kAllSpectra = {
    Spectrum::Red, Spectrum::Green, Spectrum::Blue, Spectrum::NIR};

inline constexpr std::size_t index_of(Spectrum s) { return static_cast<std::size_t>(s); }

// "R", "G", "B", "NIR"
std::string_view spectrum_code(Spectrum s);
std::optional<Spectrum> parse_spectrum(std::string_view code);

// One value per spectrum, indexed by Spectrum.
template <typename T>
using PerSpectrum = std::array<T, kSpectrumCount>;

}  // namespace palm
