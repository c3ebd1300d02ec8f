#ifndef PKEET_FFT_HPP
#define PKEET_FFT_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace pkeet {

using cd = std::complex<double>;

/// Evaluations of real negacyclic polynomials at the odd 2d-th roots of
/// unity w_j = exp(iπ(2j+1)/d), j = 0..d-1, for every power-of-two d up to
/// the construction size. The point set is compatible with even/odd
/// coefficient splitting: the squares of the size-d points are exactly the
/// size-d/2 points in the same order, which the recursive perturbation
/// sampler relies on.
class FftEngine {
 public:
  explicit FftEngine(uint32_t max_n);

  std::vector<cd> forward(const std::vector<double>& coeffs) const;
  std::vector<double> inverse(const std::vector<cd>& slots) const;

  /// Evaluation point w_j for dimension d.
  cd point(uint32_t d, uint32_t j) const;

  uint32_t max_n() const { return max_n_; }

 private:
  struct Plan {
    uint32_t n = 0;
    std::vector<cd> twist;     // ψ_d^t, ψ_d = exp(iπ/d)
    std::vector<cd> twiddle;   // ω_d^t, ω_d = exp(2πi/d), t < d/2
    std::vector<uint32_t> rev;
  };
  const Plan& plan(uint32_t d) const;
  static void dft_inplace(const Plan& p, std::vector<cd>& a, bool inverse);

  uint32_t max_n_;
  std::vector<Plan> plans_;  // index by log2(d)
};

}  // namespace pkeet

#endif
