#include "palm/spectrum.hpp"

namespace palm {

std::string_view spectrum_code(Spectrum s) {
  switch (s) {
    case Spectrum::Red:
      return "R";
    case Spectrum::Green:
      return "G";
    case Spectrum::Blue:
      return "B";
    case Spectrum::NIR:
      return "NIR";
  }
  return "?";
}

std::optional<Spectrum> parse_spectrum(std::string_view code) {
  for (Spectrum s : kAllSpectra) {
    if (spectrum_code(s) == code) return s;
  }
  return std::nullopt;
}

}  // namespace palm
