#ifndef PKEET_BENCH_HPP
#define PKEET_BENCH_HPP

#include <string>
#include <vector>

#include "pkeet/params.hpp"

namespace pkeet {

struct BenchRecord {
  std::string op;
  uint64_t trials = 0;
  double mean_us = 0;
  double median_us = 0;
  double min_us = 0;
  // params fingerprint
  uint32_t n = 0;
  uint64_t q = 0;
  uint32_t k = 0;
  uint32_t m = 0;
};

/// Times Setup, Encrypt, Decrypt, Td1, Td2, Td3(i,j), Test1, Test2, Test3
/// over `trials` runs each (>= 100 for reportable rows). jobs > 1 spreads
/// trials across threads with per-trial generators forked from `seed`.
std::vector<BenchRecord> run_bench(const Params& p, uint64_t trials, unsigned jobs, uint64_t seed);

/// CSV with the stable column order op,trials,mean_us,median_us,min_us; one
/// leading comment line records the params fingerprint.
std::string bench_csv(const std::vector<BenchRecord>& records);

}  // namespace pkeet

#endif
