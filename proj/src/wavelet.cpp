#include "palm/wavelet.hpp"

#include <cmath>
#include <string>

#include "palm/error.hpp"

namespace palm {

WaveletFilter WaveletFilter::db2() {
  const double s3 = std::sqrt(3.0);
  const double norm = 4.0 * std::sqrt(2.0);
  WaveletFilter f;
  f.lowpass = {(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm, (1.0 - s3) / norm};
  for (std::size_t k = 0; k < 4; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    f.highpass[k] = sign * f.lowpass[3 - k];
  }
  return f;
}

namespace {

// (2n - k) mod L for k in 0..3, safe for L as small as 2.
inline std::size_t wrap(std::size_t n2, std::size_t k, std::size_t len) {
  return (n2 + 4 * len - k) % len;
}

void analyze(const double* in, std::size_t stride, std::size_t len, const WaveletFilter& f,
             double* approx, double* detail, std::size_t out_stride) {
  const std::size_t half = len / 2;
  for (std::size_t n = 0; n < half; ++n) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double x = in[wrap(2 * n, k, len) * stride];
      a += f.lowpass[k] * x;
      d += f.highpass[k] * x;
    }
    approx[n * out_stride] = a;
    detail[n * out_stride] = d;
  }
}

void synthesize(const double* approx, const double* detail, std::size_t in_stride,
                std::size_t half, const WaveletFilter& f, double* out, std::size_t stride) {
  const std::size_t len = 2 * half;
  for (std::size_t i = 0; i < len; ++i) out[i * stride] = 0.0;
  for (std::size_t n = 0; n < half; ++n) {
    const double a = approx[n * in_stride];
    const double d = detail[n * in_stride];
    for (std::size_t k = 0; k < 4; ++k) {
      out[wrap(2 * n, k, len) * stride] += f.lowpass[k] * a + f.highpass[k] * d;
    }
  }
}

void require_square_even(const Matrix& block) {
  if (block.rows() != block.cols()) {
    throw InvalidInput("dwt2d: block must be square, got " + std::to_string(block.rows()) + "x" +
                       std::to_string(block.cols()));
  }
  if (block.rows() < 2 || block.rows() % 2 != 0) {
    throw InvalidInput("dwt2d: block side must be even and >= 2, got " +
                       std::to_string(block.rows()));
  }
}

}  // namespace

Dwt1d dwt1d(std::span<const double> signal, const WaveletFilter& filter) {
  if (signal.empty() || signal.size() % 2 != 0) {
    throw InvalidInput("dwt1d: signal length must be even and non-zero, got " +
                       std::to_string(signal.size()));
  }
  Dwt1d out{std::vector<double>(signal.size() / 2), std::vector<double>(signal.size() / 2)};
  analyze(signal.data(), 1, signal.size(), filter, out.approx.data(), out.detail.data(), 1);
  return out;
}

std::vector<double> idwt1d(std::span<const double> approx, std::span<const double> detail,
                           const WaveletFilter& filter) {
  if (approx.size() != detail.size() || approx.empty()) {
    throw InvalidInput("idwt1d: approx and detail must be non-empty and of equal length");
  }
  std::vector<double> out(2 * approx.size());
  synthesize(approx.data(), detail.data(), 1, approx.size(), filter, out.data(), 1);
  return out;
}

Quadrants dwt2d_level(const Matrix& block, const WaveletFilter& filter) {
  require_square_even(block);
  const std::size_t n = block.rows();
  const std::size_t h = n / 2;

  // Row pass: lo/hi are n x h.
  Matrix lo(n, h), hi(n, h);
  for (std::size_t r = 0; r < n; ++r) {
    analyze(block.row(r).data(), 1, n, filter, &lo(r, 0), &hi(r, 0), 1);
  }

  Quadrants q{Matrix(h, h), Matrix(h, h), Matrix(h, h), Matrix(h, h)};
  for (std::size_t c = 0; c < h; ++c) {
    analyze(&lo(0, c), h, n, filter, &q.ll(0, c), &q.lh(0, c), h);
    analyze(&hi(0, c), h, n, filter, &q.hl(0, c), &q.hh(0, c), h);
  }
  return q;
}

Matrix idwt2d_level(const Quadrants& q, const WaveletFilter& filter) {
  const std::size_t h = q.ll.rows();
  if (h == 0 || q.ll.cols() != h || !q.lh.same_shape(q.ll) || !q.hl.same_shape(q.ll) ||
      !q.hh.same_shape(q.ll)) {
    throw InvalidInput("idwt2d: quadrants must be equal-sized non-empty squares");
  }
  const std::size_t n = 2 * h;
  Matrix lo(n, h), hi(n, h);
  for (std::size_t c = 0; c < h; ++c) {
    synthesize(q.ll.data().data() + c, q.lh.data().data() + c, h, h, filter, &lo(0, c), h);
    synthesize(q.hl.data().data() + c, q.hh.data().data() + c, h, h, filter, &hi(0, c), h);
  }
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    synthesize(&lo(r, 0), &hi(r, 0), 1, h, filter, &out(r, 0), 1);
  }
  return out;
}

const Matrix& SubbandSet::detail(std::size_t index) const {
  if (index >= detail_count()) {
    throw InvalidInput("SubbandSet: detail index " + std::to_string(index) + " out of range");
  }
  const DetailLevel& lvl = levels[index / 3];
  switch (index % 3) {
    case 0:
      return lvl.lh;
    case 1:
      return lvl.hl;
    default:
      return lvl.hh;
  }
}

double SubbandSet::energy() const {
  double e = sum_of_squares(ll);
  for (const auto& lvl : levels) {
    e += sum_of_squares(lvl.lh) + sum_of_squares(lvl.hl) + sum_of_squares(lvl.hh);
  }
  return e;
}

SubbandSet dwt2d_multilevel(const Matrix& block, int levels, const WaveletFilter& filter) {
  if (levels < 1) throw InvalidInput("dwt2d_multilevel: levels must be >= 1");
  if (block.rows() != block.cols()) {
    throw InvalidInput("dwt2d_multilevel: block must be square");
  }
  const std::size_t divisor = std::size_t{1} << levels;
  if (block.rows() == 0 || block.rows() % divisor != 0) {
    throw InvalidInput("dwt2d_multilevel: side " + std::to_string(block.rows()) +
                       " not divisible by " + std::to_string(divisor));
  }

  SubbandSet out;
  out.levels.reserve(static_cast<std::size_t>(levels));
  Matrix current = block;
  for (int l = 0; l < levels; ++l) {
    Quadrants q = dwt2d_level(current, filter);
    out.levels.push_back({std::move(q.lh), std::move(q.hl), std::move(q.hh)});
    current = std::move(q.ll);
  }
  out.ll = std::move(current);
  return out;
}

Matrix idwt2d_multilevel(const SubbandSet& subbands, const WaveletFilter& filter) {
  if (subbands.levels.empty()) throw InvalidInput("idwt2d_multilevel: no levels");
  Matrix current = subbands.ll;
  for (auto it = subbands.levels.rbegin(); it != subbands.levels.rend(); ++it) {
    if (!it->lh.same_shape(current) || !it->hl.same_shape(current) ||
        !it->hh.same_shape(current)) {
      throw InvalidInput("idwt2d_multilevel: inconsistent subband dimensions");
    }
    current = idwt2d_level({current, it->lh, it->hl, it->hh}, filter);
  }
  return current;
}

}  // namespace palm
