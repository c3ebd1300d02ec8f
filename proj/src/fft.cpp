#include "pkeet/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace pkeet {

namespace {

uint32_t log2_exact(uint32_t v) {
  uint32_t l = 0;
  while ((1u << l) < v) ++l;
  if ((1u << l) != v) throw std::invalid_argument("fft size must be a power of two");
  return l;
}

uint32_t bit_reverse(uint32_t v, uint32_t bits) {
  uint32_t r = 0;
  for (uint32_t i = 0; i < bits; ++i) {
    r = (r << 1) | (v & 1);
    v >>= 1;
  }
  return r;
}

}  // namespace

FftEngine::FftEngine(uint32_t max_n) : max_n_(max_n) {
  uint32_t lg = log2_exact(max_n);
  plans_.resize(lg + 1);
  for (uint32_t l = 0; l <= lg; ++l) {
    uint32_t d = 1u << l;
    Plan& p = plans_[l];
    p.n = d;
    p.twist.resize(d);
    p.twiddle.resize(d / 2 ? d / 2 : 1);
    p.rev.resize(d);
    for (uint32_t t = 0; t < d; ++t) {
      double ang = M_PI * t / d;
      p.twist[t] = cd(std::cos(ang), std::sin(ang));
      p.rev[t] = bit_reverse(t, l);
    }
    for (uint32_t t = 0; t < d / 2; ++t) {
      double ang = 2.0 * M_PI * t / d;
      p.twiddle[t] = cd(std::cos(ang), std::sin(ang));
    }
  }
}

const FftEngine::Plan& FftEngine::plan(uint32_t d) const {
  return plans_.at(log2_exact(d));
}

void FftEngine::dft_inplace(const Plan& p, std::vector<cd>& a, bool inverse) {
  const uint32_t n = p.n;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t j = p.rev[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (uint32_t len = 2; len <= n; len <<= 1) {
    uint32_t step = n / len;
    for (uint32_t i = 0; i < n; i += len) {
      for (uint32_t j = 0; j < len / 2; ++j) {
        cd w = p.twiddle[j * step];
        if (inverse) w = std::conj(w);
        cd u = a[i + j];
        cd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

std::vector<cd> FftEngine::forward(const std::vector<double>& coeffs) const {
  const Plan& p = plan(static_cast<uint32_t>(coeffs.size()));
  std::vector<cd> a(p.n);
  for (uint32_t t = 0; t < p.n; ++t) a[t] = coeffs[t] * p.twist[t];
  if (p.n > 1) dft_inplace(p, a, false);
  return a;
}

std::vector<double> FftEngine::inverse(const std::vector<cd>& slots) const {
  const Plan& p = plan(static_cast<uint32_t>(slots.size()));
  std::vector<cd> a = slots;
  if (p.n > 1) dft_inplace(p, a, true);
  std::vector<double> out(p.n);
  double scale = 1.0 / p.n;
  for (uint32_t t = 0; t < p.n; ++t) out[t] = (a[t] * std::conj(p.twist[t])).real() * scale;
  return out;
}

cd FftEngine::point(uint32_t d, uint32_t j) const {
  double ang = M_PI * (2.0 * j + 1.0) / d;
  return cd(std::cos(ang), std::sin(ang));
}

}  // namespace pkeet
