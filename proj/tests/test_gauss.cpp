#include <cmath>
#include <numeric>

#include "doctest.h"
#include "pkeet/fft.hpp"
#include "pkeet/gauss.hpp"

using namespace pkeet;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct Moments {
  double mean;
  double sd;
  int64_t max_abs_dev;  // |x - center| max
};

template <typename F>
Moments collect(uint64_t n, double center, F&& draw) {
  double sum = 0, sumsq = 0;
  int64_t max_dev = 0;
  for (uint64_t i = 0; i < n; ++i) {
    int64_t v = draw();
    sum += static_cast<double>(v);
    sumsq += static_cast<double>(v) * v;
    max_dev = std::max(max_dev, static_cast<int64_t>(std::llround(std::abs(v - center))));
  }
  Moments m;
  m.mean = sum / n;
  m.sd = std::sqrt(sumsq / n - m.mean * m.mean);
  m.max_abs_dev = max_dev;
  return m;
}

// negacyclic matrix of t: column c holds the coefficients of t·x^c
std::vector<std::vector<double>> neg_matrix(const IntPoly& t) {
  size_t n = t.size();
  std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
  for (size_t c = 0; c < n; ++c) {
    for (size_t r = 0; r < n; ++r) {
      size_t src = (r + n - c) % n;
      double sign = r < c ? -1.0 : 1.0;
      mat[r][c] = sign * static_cast<double>(t[src]);
    }
  }
  return mat;
}

}  // namespace

TEST_CASE("fft engine matches direct evaluation and roundtrips") {
  FftEngine fft(16);
  ChaChaRng rng(101);
  for (uint32_t d : {2u, 4u, 8u, 16u}) {
    std::vector<double> coeffs(d);
    for (auto& c : coeffs) c = static_cast<double>(static_cast<int64_t>(rng.below(41)) - 20);
    auto slots = fft.forward(coeffs);
    for (uint32_t j = 0; j < d; ++j) {
      cd w = fft.point(d, j);
      cd direct = 0;
      cd wp = 1;
      for (uint32_t t = 0; t < d; ++t) {
        direct += coeffs[t] * wp;
        wp *= w;
      }
      CHECK(std::abs(slots[j] - direct) < 1e-9);
    }
    auto back = fft.inverse(slots);
    for (uint32_t t = 0; t < d; ++t) CHECK(back[t] == doctest::Approx(coeffs[t]).epsilon(1e-9));
  }
}

TEST_CASE("fft product slots equal slotwise products") {
  FftEngine fft(8);
  IntPoly a = {1, -2, 3, 0, 0, 1, 0, -1};
  IntPoly b = {2, 0, 0, 1, -1, 0, 4, 0};
  IntPoly prod = negacyclic_mul_int(a, b);
  auto to_d = [](const IntPoly& p) {
    return std::vector<double>(p.begin(), p.end());
  };
  auto sa = fft.forward(to_d(a));
  auto sb = fft.forward(to_d(b));
  auto sp = fft.forward(to_d(prod));
  for (int j = 0; j < 8; ++j) CHECK(std::abs(sa[j] * sb[j] - sp[j]) < 1e-8);
}

TEST_CASE("sample_z concentrates at the center for tiny widths") {
  ChaChaRng rng(103);
  for (int i = 0; i < 200; ++i) CHECK(sample_z(0.1, 0.0, 12.0, rng) == 0);
  for (int i = 0; i < 200; ++i) CHECK(sample_z(0.1, 7.0, 12.0, rng) == 7);
}

TEST_CASE("sample_z moments at sigma=4.5") {
  const double sigma = 4.5;
  const uint64_t N = 1000000;
  ChaChaRng rng(104);
  Moments m = collect(N, 0.0, [&] { return sample_z(sigma, 0.0, 12.0, rng); });
  double expect_sd = sigma / std::sqrt(kTwoPi);
  CHECK(std::abs(m.mean) < 3.0 * expect_sd / 1000.0);  // 3·sd/√N
  CHECK(std::abs(m.sd - expect_sd) < 0.02 * expect_sd);
  CHECK(static_cast<double>(m.max_abs_dev) <= 12.0 * sigma);
}

TEST_CASE("sample_z with fractional center") {
  const double sigma = 6.0, center = 2.625;
  const uint64_t N = 200000;
  ChaChaRng rng(105);
  Moments m = collect(N, center, [&] { return sample_z(sigma, center, 12.0, rng); });
  double expect_sd = sigma / std::sqrt(kTwoPi);
  CHECK(std::abs(m.mean - center) < 4.0 * expect_sd / std::sqrt(double(N)));
  CHECK(std::abs(m.sd - expect_sd) < 0.03 * expect_sd);
}

TEST_CASE("cdt sampler moments and determinism") {
  const double width = 1713.2;
  CdtSampler cdt(width, 12.0);
  const uint64_t N = 400000;
  ChaChaRng rng(106);
  Moments m = collect(N, 0.0, [&] { return cdt.sample(rng); });
  double expect_sd = width / std::sqrt(kTwoPi);
  CHECK(std::abs(m.mean) < 4.0 * expect_sd / std::sqrt(double(N)));
  CHECK(std::abs(m.sd - expect_sd) < 0.02 * expect_sd);
  CHECK(static_cast<double>(m.max_abs_dev) <= 12.0 * width);

  ChaChaRng r1(107), r2(107);
  for (int i = 0; i < 1000; ++i) CHECK(cdt.sample(r1) == cdt.sample(r2));
}

TEST_CASE("cdt and karney agree in distribution") {
  const double width = 17.0;
  CdtSampler cdt(width, 12.0);
  const uint64_t N = 300000;
  ChaChaRng r1(108), r2(109);
  Moments a = collect(N, 0.0, [&] { return cdt.sample(r1); });
  Moments b = collect(N, 0.0, [&] { return sample_z(width, 0.0, 12.0, r2); });
  double sd_of_sd = (width / std::sqrt(kTwoPi)) / std::sqrt(2.0 * N);
  CHECK(std::abs(a.sd - b.sd) < 6.0 * sd_of_sd);
}

TEST_CASE("sample_ring_vec basics") {
  ChaChaRng rng(110);
  CHECK(sample_ring_vec(8, 0, 4.0, 12.0, rng).empty());

  ChaChaRng r1(111), r2(111);
  CHECK(sample_ring_vec(8, 3, 4.0, 12.0, r1) == sample_ring_vec(8, 3, 4.0, 12.0, r2));

  const double sigma = 4.723;
  for (int trial = 0; trial < 200; ++trial) {
    IntVec v = sample_ring_vec(1024, 2, sigma, 12.0, rng);
    CHECK(norm(v) <= 12.0 * sigma * std::sqrt(2.0 * 1024));
  }
}

TEST_CASE("sample_p with zero trapdoor collapses to the diagonal") {
  const uint32_t n = 8, k = 5;
  RingContext ctx = RingContext::make(n, 17);
  FftEngine fft(n);
  const double alpha = 13.4, zeta = 60.0;
  IntVec rows(2 * k, IntPoly(n, 0));
  TrapdoorTransforms xf = make_trapdoor_transforms(ctx, fft, rows);
  CHECK(xf.s1 == doctest::Approx(0.0));

  const uint64_t N = 60000;
  ChaChaRng rng(112);
  double sum2 = 0, sumsq2 = 0, sumk = 0, sumsqk = 0;
  for (uint64_t i = 0; i < N; ++i) {
    IntVec p = sample_p(ctx, fft, rows, xf, zeta, alpha, 12.0, rng);
    REQUIRE(p.size() == 2 + k);
    for (int b = 0; b < 2; ++b)
      for (int64_t c : p[b]) {
        sum2 += c;
        sumsq2 += double(c) * c;
      }
    for (uint32_t l = 0; l < k; ++l)
      for (int64_t c : p[2 + l]) {
        sumk += c;
        sumsqk += double(c) * c;
      }
  }
  double n2 = N * 2.0 * n, nk = N * double(k) * n;
  double var2 = sumsq2 / n2 - (sum2 / n2) * (sum2 / n2);
  double vark = sumsqk / nk - (sumk / nk) * (sumk / nk);
  CHECK(var2 == doctest::Approx(zeta * zeta / kTwoPi).epsilon(0.02));
  CHECK(vark == doctest::Approx((zeta * zeta - alpha * alpha) / kTwoPi).epsilon(0.02));
}

TEST_CASE("sample_p covariance matches the structured Σ_p") {
  const uint32_t n = 8, k = 5;
  RingContext ctx = RingContext::make(n, 17);
  FftEngine fft(n);
  const double sigma_c = 6.0;
  const double alpha = std::sqrt(5.0) * sigma_c;
  const double zeta = 60.0;

  // fixed small trapdoor: a couple of ±1 entries per row
  IntVec rows(2 * k, IntPoly(n, 0));
  rows[0][0] = 1;             // T[0,0] = 1
  rows[1][3] = -1;            // T[0,1] = -x³
  rows[k + 2][1] = 1;         // T[1,2] = x
  rows[k + 4][0] = -1;        // T[1,4] = -1
  TrapdoorTransforms xf = make_trapdoor_transforms(ctx, fft, rows);
  REQUIRE(zeta > alpha * std::sqrt(xf.s1 * xf.s1 + 1.0));

  const uint64_t N = 200000;
  ChaChaRng rng(113);
  // accumulate E[p0[r]·phat_l[c]] for the nonzero blocks and one zero block
  struct Probe {
    int row, l, r, c;
    double expect;  // -α²/(2π)·M(T_{row,l})[r][c]
    double acc = 0;
  };
  std::vector<Probe> probes;
  auto add_probes = [&](int row, int l) {
    auto mat = neg_matrix(rows[size_t(row) * k + l]);
    probes.push_back({row, l, 0, 0, -alpha * alpha / kTwoPi * mat[0][0]});
    probes.push_back({row, l, 2, 5, -alpha * alpha / kTwoPi * mat[2][5]});
    probes.push_back({row, l, 3, 0, -alpha * alpha / kTwoPi * mat[3][0]});
    probes.push_back({row, l, 1, 6, -alpha * alpha / kTwoPi * mat[1][6]});
  };
  add_probes(0, 0);
  add_probes(0, 1);
  add_probes(1, 2);
  add_probes(1, 4);
  add_probes(0, 3);  // zero block: expect 0

  for (uint64_t i = 0; i < N; ++i) {
    IntVec p = sample_p(ctx, fft, rows, xf, zeta, alpha, 12.0, rng);
    for (auto& pr : probes)
      pr.acc += static_cast<double>(p[pr.row][pr.r]) * static_cast<double>(p[2 + pr.l][pr.c]);
  }
  double noise = std::sqrt((zeta * zeta / kTwoPi) * ((zeta * zeta - alpha * alpha) / kTwoPi)) /
                 std::sqrt(double(N));
  for (auto& pr : probes) {
    double emp = pr.acc / double(N);
    INFO("block (", pr.row, ",", pr.l, ") entry (", pr.r, ",", pr.c, ")");
    CHECK(std::abs(emp - pr.expect) < 5.0 * noise);
  }
}

TEST_CASE("sample_p output length and determinism") {
  const uint32_t n = 8, k = 5;
  RingContext ctx = RingContext::make(n, 17);
  FftEngine fft(n);
  IntVec rows(2 * k, IntPoly(n, 0));
  rows[0][0] = 1;
  TrapdoorTransforms xf = make_trapdoor_transforms(ctx, fft, rows);
  ChaChaRng r1(114), r2(114);
  IntVec a = sample_p(ctx, fft, rows, xf, 60.0, 13.4, 12.0, r1);
  IntVec b = sample_p(ctx, fft, rows, xf, 60.0, 13.4, 12.0, r2);
  CHECK(a.size() == 7);
  CHECK(a == b);
}

TEST_CASE("sample_p rejects non-positive-definite covariances") {
  const uint32_t n = 8, k = 5;
  RingContext ctx = RingContext::make(n, 17);
  FftEngine fft(n);
  IntVec rows(2 * k, IntPoly(n, 0));
  for (uint32_t l = 0; l < k; ++l) rows[l][0] = 1;
  TrapdoorTransforms xf = make_trapdoor_transforms(ctx, fft, rows);
  ChaChaRng rng(115);
  CHECK_THROWS_AS((void)sample_p(ctx, fft, rows, xf, 10.0, 13.4, 12.0, rng),
                  NotPositiveDefiniteError);
  CHECK_THROWS_AS(
      (void)sample_p(ctx, fft, rows, xf, 13.4 * std::sqrt(xf.s1 * xf.s1 + 1.0) * 0.999, 13.4,
                     12.0, rng),
      NotPositiveDefiniteError);
}
