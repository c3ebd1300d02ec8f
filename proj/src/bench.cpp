#include "pkeet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

#include "pkeet/pkeetfa.hpp"

namespace pkeet {

namespace {

template <typename T>
inline void do_not_optimize(const T& value) {
  asm volatile("" : : "r,m"(value) : "memory");
}

using TrialFn = std::function<void(ChaChaRng&)>;

std::vector<double> time_trials(const TrialFn& fn, uint64_t trials, unsigned jobs,
                                ChaChaRng& master, uint64_t op_index) {
  std::vector<double> us(trials);
  auto run_range = [&](uint64_t lo, uint64_t hi) {
    for (uint64_t t = lo; t < hi; ++t) {
      ChaChaRng rng = master.fork((op_index << 32) | (t + 1));
      auto t0 = std::chrono::steady_clock::now();
      fn(rng);
      auto t1 = std::chrono::steady_clock::now();
      us[t] = std::chrono::duration<double, std::micro>(t1 - t0).count();
    }
  };
  if (jobs <= 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    uint64_t chunk = (trials + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      uint64_t lo = j * chunk;
      uint64_t hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return us;
}

BenchRecord summarize(const Params& p, std::string op, std::vector<double> us) {
  BenchRecord r;
  r.op = std::move(op);
  r.trials = us.size();
  r.n = p.n;
  r.q = p.q;
  r.k = p.k;
  r.m = p.m;
  std::sort(us.begin(), us.end());
  double sum = 0;
  for (double v : us) sum += v;
  r.mean_us = sum / us.size();
  r.median_us = us[us.size() / 2];
  r.min_us = us.front();
  return r;
}

}  // namespace

std::vector<BenchRecord> run_bench(const Params& p, uint64_t trials, unsigned jobs,
                                   uint64_t seed) {
  if (trials < 100) throw Error("bench: trial count must be at least 100");
  ChaChaRng master(seed);

  ChaChaRng fixture_rng = master.fork(0);
  KeyPair user_i = setup(p, fixture_rng);
  KeyPair user_j = setup(p, fixture_rng);
  RingElem message(p.n);
  for (uint32_t t = 0; t < p.n; ++t) message.c[t] = fixture_rng.bit();
  Ciphertext ct_i = encrypt(p, user_i.pk, message, fixture_rng);
  Ciphertext ct_j = encrypt(p, user_j.pk, message, fixture_rng);
  AuthTrapdoor td1_i = td1(p, user_i.sk);
  AuthTrapdoor td1_j = td1(p, user_j.sk);
  AuthTrapdoor td2_i = td2(p, user_i.sk, user_i.pk, ct_i, fixture_rng);
  AuthTrapdoor td2_j = td2(p, user_j.sk, user_j.pk, ct_j, fixture_rng);
  AuthTrapdoor td3i_i = td3_i(p, user_i.sk, user_i.pk, ct_i, fixture_rng);
  AuthTrapdoor td3j_j = td3_j(p, user_j.sk);

  std::vector<std::pair<std::string, TrialFn>> ops;
  ops.emplace_back("setup", [&](ChaChaRng& rng) { do_not_optimize(setup(p, rng)); });
  ops.emplace_back("encrypt",
                   [&](ChaChaRng& rng) { do_not_optimize(encrypt(p, user_i.pk, message, rng)); });
  ops.emplace_back("decrypt", [&](ChaChaRng& rng) {
    do_not_optimize(decrypt(p, user_i.sk, user_i.pk, ct_i, rng));
  });
  ops.emplace_back("td1", [&](ChaChaRng& rng) {
    (void)rng;
    do_not_optimize(td1(p, user_i.sk));
  });
  ops.emplace_back("td2", [&](ChaChaRng& rng) {
    do_not_optimize(td2(p, user_i.sk, user_i.pk, ct_i, rng));
  });
  ops.emplace_back("td3_i", [&](ChaChaRng& rng) {
    do_not_optimize(td3_i(p, user_i.sk, user_i.pk, ct_i, rng));
  });
  ops.emplace_back("td3_j", [&](ChaChaRng& rng) {
    (void)rng;
    do_not_optimize(td3_j(p, user_j.sk));
  });
  ops.emplace_back("test1", [&](ChaChaRng& rng) {
    do_not_optimize(test1(p, td1_i, td1_j, ct_i, ct_j, rng));
  });
  ops.emplace_back("test2", [&](ChaChaRng& rng) {
    (void)rng;
    do_not_optimize(test2(p, td2_i, td2_j, ct_i, ct_j));
  });
  ops.emplace_back("test3", [&](ChaChaRng& rng) {
    do_not_optimize(test3(p, td3i_i, td3j_j, ct_i, ct_j, rng));
  });

  std::vector<BenchRecord> out;
  uint64_t op_index = 1;
  for (auto& [name, fn] : ops) {
    out.push_back(summarize(p, name, time_trials(fn, trials, jobs, master, op_index)));
    ++op_index;
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  if (!records.empty()) {
    const BenchRecord& r = records.front();
    os << "# n=" << r.n << " q=" << r.q << " k=" << r.k << " m=" << r.m << "\n";
  }
  os << "op,trials,mean_us,median_us,min_us\n";
  os.setf(std::ios::fixed);
  os.precision(3);
  for (const BenchRecord& r : records) {
    os << r.op << "," << r.trials << "," << r.mean_us << "," << r.median_us << "," << r.min_us
       << "\n";
  }
  return os.str();
}

}  // namespace pkeet
