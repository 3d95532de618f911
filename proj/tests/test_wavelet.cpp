#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracle.hpp"
#include "palm/error.hpp"
#include "palm/wavelet.hpp"

using namespace palm;

namespace {

double max_abs_diff(const Matrix& a, const oracle::Grid& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b[r][c]));
  }
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

TEST_CASE("db2 filter pair is orthonormal") {
  const auto f = WaveletFilter::db2();
  const double lo_sum = std::accumulate(f.lowpass.begin(), f.lowpass.end(), 0.0);
  const double hi_sum = std::accumulate(f.highpass.begin(), f.highpass.end(), 0.0);
  double lo_norm = 0, hi_norm = 0, dot = 0;
  for (int k = 0; k < 4; ++k) {
    lo_norm += f.lowpass[k] * f.lowpass[k];
    hi_norm += f.highpass[k] * f.highpass[k];
    dot += f.lowpass[k] * f.highpass[k];
  }
  CHECK(std::abs(lo_sum - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(hi_sum) < 1e-12);
  CHECK(std::abs(lo_norm - 1.0) < 1e-12);
  CHECK(std::abs(hi_norm - 1.0) < 1e-12);
  CHECK(std::abs(dot) < 1e-12);
  CHECK(f.lowpass[0] == doctest::Approx((1 + std::sqrt(3.0)) / (4 * std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("dwt1d") {
  SUBCASE("constant signal keeps only the approximation") {
    const std::vector<double> x(4, 5.0);
    const auto r = dwt1d(x);
    for (double a : r.approx) CHECK(a == doctest::Approx(std::sqrt(2.0) * 5.0).epsilon(1e-14));
    for (double d : r.detail) CHECK(std::abs(d) < 1e-13);
  }
  SUBCASE("[1,2,3,4] matches frozen oracle values") {
    // Computed independently with 30-digit arithmetic: circular convolution
    // with the four db2 taps, even samples kept.
    const std::vector<double> x{1, 2, 3, 4};
    const auto r = dwt1d(x);
    CHECK(r.approx[0] == doctest::Approx(4.2426406871192851464).epsilon(1e-14));
    CHECK(r.approx[1] == doctest::Approx(2.8284271247461900976).epsilon(1e-14));
    CHECK(r.detail[0] == doctest::Approx(0.5176380902050415247).epsilon(1e-14));
    CHECK(r.detail[1] == doctest::Approx(-1.9318516525781365735).epsilon(1e-14));
    double energy = 0;
    for (double v : r.approx) energy += v * v;
    for (double v : r.detail) energy += v * v;
    CHECK(energy == doctest::Approx(30.0).epsilon(1e-14));

    const auto lo = oracle::conv_decimate(x, oracle::db2_low());
    const auto hi = oracle::conv_decimate(x, oracle::db2_high());
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(r.approx[i] - lo[i]) < 1e-12);
      CHECK(std::abs(r.detail[i] - hi[i]) < 1e-12);
    }
  }
  SUBCASE("zero vector") {
    const auto r = dwt1d(std::vector<double>(8, 0.0));
    CHECK(r.approx == std::vector<double>(4, 0.0));
    CHECK(r.detail == std::vector<double>(4, 0.0));
  }
  SUBCASE("odd and empty lengths are rejected") {
    CHECK_THROWS_AS(dwt1d(std::vector<double>{1, 2, 3}), InvalidInput);
    CHECK_THROWS_AS(dwt1d(std::vector<double>{}), InvalidInput);
  }
  SUBCASE("inverse and energy on random signals, including length 2") {
    SplitMix64 rng(11);
    for (std::size_t len : {2u, 4u, 6u, 16u, 64u}) {
      std::vector<double> x(len);
      for (double& v : x) v = rng.uniform(-50, 50);
      const auto r = dwt1d(x);
      double in = 0, out = 0;
      for (double v : x) in += v * v;
      for (double v : r.approx) out += v * v;
      for (double v : r.detail) out += v * v;
      CHECK(std::abs(in - out) <= 1e-12 * in);
      const auto back = idwt1d(r.approx, r.detail);
      for (std::size_t i = 0; i < len; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-10);
    }
  }
}

TEST_CASE("dwt2d_level") {
  SUBCASE("constant block") {
    const Matrix block(16, 16, 3.5);
    const auto q = dwt2d_level(block);
    CHECK(q.ll.rows() == 8);
    for (double v : q.ll.data()) CHECK(v == doctest::Approx(7.0).epsilon(1e-14));
    for (const Matrix* m : {&q.lh, &q.hl, &q.hh}) {
      for (double v : m->data()) CHECK(std::abs(v) < 1e-12);
    }
  }
  SUBCASE("random blocks match the 2D convolution oracle") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Matrix block = oracle::random_matrix(16, 16, seed, 0, 255);
      const auto q = dwt2d_level(block);
      const auto o = oracle::dwt2_level(oracle::to_grid(block));
      CHECK(max_abs_diff(q.ll, o.ll) < 1e-9);
      CHECK(max_abs_diff(q.lh, o.lh) < 1e-9);
      CHECK(max_abs_diff(q.hl, o.hl) < 1e-9);
      CHECK(max_abs_diff(q.hh, o.hh) < 1e-9);
      const double out = sum_of_squares(q.ll) + sum_of_squares(q.lh) + sum_of_squares(q.hl) +
                         sum_of_squares(q.hh);
      CHECK(std::abs(out - sum_of_squares(block)) <= 1e-9 * sum_of_squares(block));
    }
  }
  SUBCASE("zero block") {
    const auto q = dwt2d_level(Matrix(8, 8));
    for (const Matrix* m : {&q.ll, &q.lh, &q.hl, &q.hh}) CHECK(sum_of_squares(*m) == 0.0);
  }
  SUBCASE("bad shapes") {
    CHECK_THROWS_AS(dwt2d_level(Matrix(16, 8)), InvalidInput);
    CHECK_THROWS_AS(dwt2d_level(Matrix(7, 7)), InvalidInput);
    CHECK_THROWS_AS(dwt2d_level(Matrix()), InvalidInput);
  }
}

TEST_CASE("dwt2d_multilevel") {
  SUBCASE("subband shapes for a 16x16 block") {
    const auto s = dwt2d_multilevel(Matrix(16, 16, 1.0));
    REQUIRE(s.detail_count() == 9);
    const std::size_t sides[] = {8, 8, 8, 4, 4, 4, 2, 2, 2};
    std::size_t total = s.ll.size();
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(s.detail(i).rows() == sides[i]);
      CHECK(s.detail(i).cols() == sides[i]);
      total += s.detail(i).size();
    }
    CHECK(total == 256);
    CHECK_THROWS_AS(s.detail(9), InvalidInput);
  }
  SUBCASE("constant block: LL3 = 8c, details vanish") {
    const auto s = dwt2d_multilevel(Matrix(16, 16, 4.0));
    for (double v : s.ll.data()) CHECK(v == doctest::Approx(32.0).epsilon(1e-13));
    for (std::size_t i = 0; i < 9; ++i) CHECK(sum_of_squares(s.detail(i)) < 1e-20);
  }
  SUBCASE("parallel vertical lines load HL more than HH") {
    Matrix block(16, 16, 200.0);
    for (std::size_t r = 0; r < 16; ++r) {
      for (std::size_t c = 1; c < 16; c += 5) block(r, c) = 40.0;
    }
    const auto s = dwt2d_multilevel(block);
    const auto [details, ll] = oracle::dwt2_multilevel(oracle::to_grid(block), 3);
    for (int lvl = 0; lvl < 3; ++lvl) {
      const double hl = oracle::mean_square(details[3 * lvl + 1]);
      const double hh = oracle::mean_square(details[3 * lvl + 2]);
      CHECK(hl > hh);
      CHECK(sum_of_squares(s.detail(3 * lvl + 1)) / s.detail(3 * lvl + 1).size() ==
            doctest::Approx(hl).epsilon(1e-12));
    }
  }
  SUBCASE("side must be divisible by 2^levels") {
    CHECK_THROWS_AS(dwt2d_multilevel(Matrix(12, 12), 3), InvalidInput);
    CHECK_NOTHROW(dwt2d_multilevel(Matrix(12, 12), 2));
    CHECK_THROWS_AS(dwt2d_multilevel(Matrix(16, 16), 0), InvalidInput);
  }
}

TEST_CASE("idwt2d_multilevel") {
  SUBCASE("zero subbands give a zero block") {
    const auto s = dwt2d_multilevel(Matrix(16, 16));
    CHECK(sum_of_squares(idwt2d_multilevel(s)) == 0.0);
  }
  SUBCASE("LL3 of 8 and no details give a block of ones") {
    auto s = dwt2d_multilevel(Matrix(16, 16));
    for (double& v : s.ll.data()) v = 8.0;
    const Matrix b = idwt2d_multilevel(s);
    REQUIRE(b.rows() == 16);
    for (double v : b.data()) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("inconsistent shapes") {
    auto s = dwt2d_multilevel(Matrix(16, 16));
    s.levels[1].hl = Matrix(3, 3);
    CHECK_THROWS_AS(idwt2d_multilevel(s), InvalidInput);
  }
}

TEST_CASE("transform properties over random blocks") {
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    const Matrix x = oracle::random_matrix(16, 16, seed, 0, 255);
    const auto s = dwt2d_multilevel(x);
    const double e = sum_of_squares(x);
    CHECK(std::abs(s.energy() - e) <= 1e-9 * e);
    CHECK(max_abs_diff(idwt2d_multilevel(s), x) < 1e-9);
  }

  SUBCASE("linearity") {
    const Matrix x = oracle::random_matrix(16, 16, 1);
    const Matrix y = oracle::random_matrix(16, 16, 2);
    const double a = 1.7, b = -0.4;
    Matrix z(16, 16);
    for (std::size_t i = 0; i < z.size(); ++i) z.data()[i] = a * x.data()[i] + b * y.data()[i];
    const auto sx = dwt2d_multilevel(x), sy = dwt2d_multilevel(y), sz = dwt2d_multilevel(z);
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t k = 0; k < sz.detail(i).size(); ++k) {
        const double expect = a * sx.detail(i).data()[k] + b * sy.detail(i).data()[k];
        CHECK(std::abs(sz.detail(i).data()[k] - expect) < 1e-9);
      }
    }
  }
}
