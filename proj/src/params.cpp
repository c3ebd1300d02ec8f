#include "pkeet/params.hpp"

#include <cmath>

#include "pkeet/errors.hpp"
#include "pkeet/trapdoor.hpp"

namespace pkeet {

namespace {

// Smallest 62-bit prime ≡ 1 (mod 2048); recomputed offline from the rule set
// and re-checked by validate() at runtime.
constexpr uint64_t kPaper62Q = 2305843009213704193ULL;

}  // namespace

Params Params::make(uint32_t n, uint64_t q, GaussParams gauss, std::string label) {
  Params p;
  p.n = n;
  p.q = q;
  p.k = ceil_log2(q);
  p.m = p.k + 2;
  p.gauss = gauss;
  p.security_label = std::move(label);
  p.ring = std::make_shared<const RingContext>(RingContext::make(n, q));
  p.fft = std::make_shared<const FftEngine>(n);
  auto tables = std::make_shared<SamplerSet>();
  tables->add(gauss.tau, gauss.t);
  tables->add(gauss.gamma, gauss.t);
  tables->add(gauss.sigma, gauss.t);
  double s2 = std::sqrt(gauss.zeta * gauss.zeta - gauss.alpha * gauss.alpha);
  tables->add(s2, gauss.t);
  p.samplers = std::move(tables);
  p.gadget = std::make_shared<const GadgetBasis>(q, p.k);
  return p;
}

Params Params::preset(const std::string& name) {
  if (name == "paper62") {
    GaussParams g;
    g.t = 12.0;
    g.sigma = 4.723;  // σ-rule with ε = 2^-90 at n = 1024 gives 4.7206…
    g.alpha = std::sqrt(5.0) * g.sigma;
    g.tau = g.sigma;
    g.zeta = 6200.0;  // ζ-rule minimum 6153.2 with slack t' = t
    g.gamma = 2.0 * g.t * g.sigma * g.tau * std::sqrt(1024.0);
    g.mu = g.t * g.sigma * g.tau * std::sqrt(2048.0);
    return make(1024, kPaper62Q, g, "paper62");
  }
  if (name == "toy17") {
    GaussParams g;
    g.t = 12.0;
    g.sigma = 4.56;  // σ-rule at n = 8 gives 4.554…
    g.alpha = std::sqrt(5.0) * g.sigma;
    g.tau = g.sigma;
    g.zeta = 420.0;
    g.gamma = 2.0 * g.t * g.sigma * g.tau * std::sqrt(8.0);
    g.mu = g.t * g.sigma * g.tau * std::sqrt(16.0);
    return make(8, 17, g, "toy17 — INSECURE, TESTS ONLY");
  }
  throw UnknownPresetError("unknown preset: " + name);
}

std::vector<std::string> validate(const Params& p) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& s) { bad.push_back(s); };

  if (p.n < 2 || (p.n & (p.n - 1)) != 0) fail("n must be a power of two");
  if (!is_prime_u64(p.q)) fail("q must be prime");
  if (p.n >= 2 && (p.q - 1) % (2 * uint64_t(p.n)) != 0) fail("q must be 1 mod 2n");
  if (p.k != ceil_log2(p.q)) fail("k must equal ceil(log2 q)");
  if (p.m != p.k + 2) fail("m - k must equal 2");

  const GaussParams& g = p.gauss;
  if (!(g.sigma > 0 && g.alpha > 0 && g.zeta > 0 && g.tau > 0 && g.gamma > 0 && g.t > 0))
    fail("Gaussian widths must be positive");
  if (std::abs(g.alpha - std::sqrt(5.0) * g.sigma) > 1e-9 * g.alpha)
    fail("alpha must equal sqrt(5)·sigma");

  const double C = 1.0 / std::sqrt(2.0 * M_PI);
  double zeta_floor =
      std::sqrt(5.0) * C * g.sigma * g.sigma * (std::sqrt(double(p.k) * p.n) + std::sqrt(2.0 * p.n));
  if (!(g.zeta > zeta_floor)) fail("zeta below sqrt(5)·C·sigma²·(sqrt(kn)+sqrt(2n)+t')");

  if (std::abs(g.gamma - 2.0 * g.t * g.sigma * g.tau * std::sqrt(double(p.n))) > 1e-9 * g.gamma)
    fail("gamma must equal 2·t·sigma·tau·sqrt(n)");
  if (std::abs(g.mu - g.t * g.sigma * g.tau * std::sqrt(2.0 * p.n)) > 1e-9 * g.mu)
    fail("mu must equal t·sigma·tau·sqrt(2n)");

  // decryption bound: tτ√n + 2t²τζn + t²γζkn < ⌊q/4⌋
  double lhs = g.t * g.tau * std::sqrt(double(p.n)) + 2.0 * g.t * g.t * g.tau * g.zeta * p.n +
               g.t * g.t * g.gamma * g.zeta * double(p.k) * p.n;
  if (!(lhs < static_cast<double>(p.q / 4)))
    fail("decryption bound violated: t·tau·sqrt(n)+2t²·tau·zeta·n+t²·gamma·zeta·k·n >= q/4");

  return bad;
}

}  // namespace pkeet
