#include "palm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "palm/error.hpp"
#include "palm/rng.hpp"

namespace palm {

namespace {

constexpr std::uint64_t kBaseStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kNoiseStream = 3;

struct Canvas {
  int width;
  int height;
  std::vector<double> v;

  Canvas(int w, int h, double fill) : width(w), height(h), v(static_cast<std::size_t>(w) * h, fill) {}
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
};

std::uint8_t to_byte(double x) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(x), 0L, 255L));
}

Canvas base_canvas(const SyntheticConfig& cfg, int person, int attempt) {
  SplitMix64 rng(derive_seed(cfg.seed, {kBaseStream, static_cast<std::uint64_t>(person),
                                        static_cast<std::uint64_t>(attempt)}));
  const double w = cfg.width;
  const double h = cfg.height;

  // Skin tone with a gentle illumination gradient.
  const double level = rng.uniform(135.0, 175.0);
  const double grad_x = rng.uniform(-20.0, 20.0);
  const double grad_y = rng.uniform(-20.0, 20.0);

  // Two ridge gratings (|sin| profile) with person-specific orientation,
  // spacing and strength.
  struct Grating {
    double kx, ky, phase, amplitude;
  };
  std::array<Grating, 2> gratings{};
  for (auto& g : gratings) {
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const double wavelength = rng.uniform(4.0, 14.0);
    const double k = 2.0 * std::numbers::pi / wavelength;
    g = {k * std::cos(theta), k * std::sin(theta), rng.uniform(0.0, 2.0 * std::numbers::pi),
         rng.uniform(10.0, 30.0)};
  }

  Canvas c(cfg.width, cfg.height, 0.0);
  for (int y = 0; y < cfg.height; ++y) {
    for (int x = 0; x < cfg.width; ++x) {
      double v = level + grad_x * (x / w - 0.5) + grad_y * (y / h - 0.5);
      for (const auto& g : gratings) {
        v += g.amplitude * (std::abs(std::sin(g.kx * x + g.ky * y + g.phase)) - 0.5);
      }
      c.at(x, y) = v;
    }
  }

  // Principal lines: quadratic Bezier curves stamped with a gaussian profile.
  const int lines = cfg.min_lines + static_cast<int>(rng.below(
                                        static_cast<std::uint64_t>(cfg.max_lines - cfg.min_lines + 1)));
  for (int l = 0; l < lines; ++l) {
    const double x0 = rng.uniform(0.0, w), y0 = rng.uniform(0.0, h);
    const double x1 = rng.uniform(0.0, w), y1 = rng.uniform(0.0, h);
    const double x2 = rng.uniform(0.0, w), y2 = rng.uniform(0.0, h);
    const double depth = rng.uniform(50.0, 90.0);
    const double sigma = rng.uniform(1.2, 3.0);
    const int reach = static_cast<int>(std::ceil(3.0 * sigma));

    Canvas strength(cfg.width, cfg.height, 0.0);
    const double approx_len = std::hypot(x1 - x0, y1 - y0) + std::hypot(x2 - x1, y2 - y1);
    const int steps = std::max(2, static_cast<int>(approx_len * 2.0));
    for (int s = 0; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      const double a = (1 - t) * (1 - t), b = 2 * (1 - t) * t, d = t * t;
      const double px = a * x0 + b * x1 + d * x2;
      const double py = a * y0 + b * y1 + d * y2;
      const int cx = static_cast<int>(std::lround(px));
      const int cy = static_cast<int>(std::lround(py));
      for (int y = std::max(0, cy - reach); y <= std::min(cfg.height - 1, cy + reach); ++y) {
        for (int x = std::max(0, cx - reach); x <= std::min(cfg.width - 1, cx + reach); ++x) {
          const double dx = x - px, dy = y - py;
          const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
          strength.at(x, y) = std::max(strength.at(x, y), g);
        }
      }
    }
    for (std::size_t i = 0; i < c.v.size(); ++i) c.v[i] -= depth * strength.v[i];
  }

  for (double& v : c.v) v = std::clamp(v, 0.0, 255.0);
  return c;
}

GrayImage quantize(const Canvas& c) {
  GrayImage img(c.width, c.height);
  for (std::size_t i = 0; i < c.v.size(); ++i) img.pixels[i] = to_byte(c.v[i]);
  return img;
}

void check_config(const SyntheticConfig& cfg) {
  if (cfg.persons < 2) throw ConfigError("generate_synthetic: persons must be >= 2");
  if (cfg.samples < 2) throw ConfigError("generate_synthetic: samples must be >= 2");
  if (cfg.width <= 0 || cfg.height <= 0) throw ConfigError("generate_synthetic: bad image size");
  if (cfg.min_lines < 0 || cfg.max_lines < cfg.min_lines) {
    throw ConfigError("generate_synthetic: bad line count range");
  }
  if (cfg.max_shift < 0 || cfg.noise_sigma < 0.0 || cfg.contrast_jitter < 0.0) {
    throw ConfigError("generate_synthetic: jitter parameters must be non-negative");
  }
}

// Person p's base is the first attempt that is separated from every earlier
// accepted base.
std::vector<Canvas> separated_bases(const SyntheticConfig& cfg) {
  std::vector<Canvas> bases;
  std::vector<GrayImage> quantized;
  for (int p = 0; p < cfg.persons; ++p) {
    bool accepted = false;
    for (int attempt = 0; attempt <= cfg.max_redraws && !accepted; ++attempt) {
      Canvas c = base_canvas(cfg, p, attempt);
      GrayImage q = quantize(c);
      accepted = std::all_of(quantized.begin(), quantized.end(), [&](const GrayImage& other) {
        return separated_fraction(q, other, cfg.separation_level) >= cfg.separation_fraction;
      });
      if (accepted) {
        bases.push_back(std::move(c));
        quantized.push_back(std::move(q));
      }
    }
    if (!accepted) {
      throw ConfigError("generate_synthetic: could not separate person " + std::to_string(p) +
                        " from earlier persons");
    }
  }
  return bases;
}

}  // namespace

std::vector<GrayImage> synthetic_bases(const SyntheticConfig& config) {
  check_config(config);
  std::vector<GrayImage> out;
  for (const Canvas& c : separated_bases(config)) out.push_back(quantize(c));
  return out;
}

GrayImage synthetic_base(const SyntheticConfig& config, int person, int attempt) {
  return quantize(base_canvas(config, person, attempt));
}

double separated_fraction(const GrayImage& a, const GrayImage& b, int level) {
  if (a.width != b.width || a.height != b.height) {
    throw InvalidInput("separated_fraction: image shapes differ");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    if (std::abs(int{a.pixels[i]} - int{b.pixels[i]}) >= level) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(a.pixels.size());
}

DatasetManifest generate_synthetic(const SyntheticConfig& cfg, const std::filesystem::path& out_dir) {
  check_config(cfg);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string() + ": " + ec.message());

  const std::vector<Canvas> bases = separated_bases(cfg);

  DatasetManifest manifest;
  manifest.persons = cfg.persons;
  manifest.samples_per_person = cfg.samples;
  manifest.root = out_dir;

  char name[64];
  for (int p = 0; p < cfg.persons; ++p) {
    std::snprintf(name, sizeof name, "p%03d", p);
    const std::string person_dir = name;
    std::filesystem::create_directories(out_dir / person_dir, ec);
    if (ec) throw IoError((out_dir / person_dir).string() + ": " + ec.message());

    const Canvas& base = bases[static_cast<std::size_t>(p)];
    double base_mean = 0.0;
    for (double v : base.v) base_mean += v;
    base_mean /= static_cast<double>(base.v.size());

    for (int s = 0; s < cfg.samples; ++s) {
      SplitMix64 rng(derive_seed(cfg.seed, {kSampleStream, static_cast<std::uint64_t>(p),
                                            static_cast<std::uint64_t>(s)}));
      const int span = 2 * cfg.max_shift + 1;
      const int dx = static_cast<int>(rng.below(static_cast<std::uint64_t>(span))) - cfg.max_shift;
      const int dy = static_cast<int>(rng.below(static_cast<std::uint64_t>(span))) - cfg.max_shift;
      const double contrast = 1.0 + rng.uniform(-cfg.contrast_jitter, cfg.contrast_jitter);

      // Translate with edge replication, then scale contrast about the mean.
      Canvas scene(cfg.width, cfg.height, 0.0);
      for (int y = 0; y < cfg.height; ++y) {
        const int sy = std::clamp(y - dy, 0, cfg.height - 1);
        for (int x = 0; x < cfg.width; ++x) {
          const int sx = std::clamp(x - dx, 0, cfg.width - 1);
          scene.at(x, y) = std::clamp(base_mean + contrast * (base.at(sx, sy) - base_mean), 0.0, 255.0);
        }
      }

      for (Spectrum spectrum : kAllSpectra) {
        const double gamma = cfg.gammas[index_of(spectrum)];
        SplitMix64 noise(derive_seed(cfg.seed, {kNoiseStream, static_cast<std::uint64_t>(p),
                                                static_cast<std::uint64_t>(s), index_of(spectrum)}));
        GrayImage img(cfg.width, cfg.height);
        for (std::size_t i = 0; i < scene.v.size(); ++i) {
          const double toned = 255.0 * std::pow(scene.v[i] / 255.0, gamma);
          const double n = cfg.noise_sigma > 0.0 ? cfg.noise_sigma * noise.gaussian() : 0.0;
          img.pixels[i] = to_byte(toned + n);
        }

        std::snprintf(name, sizeof name, "s%02d_%s.pgm", s, std::string(spectrum_code(spectrum)).c_str());
        const std::string rel = person_dir + "/" + name;
        write_image(out_dir / rel, img);
        manifest.records.push_back({p, s, spectrum, rel});
      }
    }
  }

  save_manifest(manifest, out_dir);
  return manifest;
}

}  // namespace palm
