// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The plsnr Authors

#include "plsnr/der.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

#include "plsnr/error.hpp"
#include "plsnr/rng.hpp"

namespace plsnr {

SeedPolicy seed_policy_from_name(const std::string& name) {
  if (name == "fixed") return SeedPolicy::fixed;
  if (name == "per_trial") return SeedPolicy::per_trial;
  fail(Errc::invalid_argument, "unknown seed policy '" + name + "' (expected fixed|per_trial)");
}

std::string seed_policy_name(SeedPolicy p) { return p == SeedPolicy::fixed ? "fixed" : "per_trial"; }

void DerSetup::validate() const {
  pls.validate();
  require(m1.size() == pls.k && m2.size() == pls.k, "der: messages must have k bits");
  require(!(m1 == m2), "der: the two messages must differ");
  require(code.payload_len() == pls.l, "der: code payload length must equal l");
  require(list_size >= 1, "der: list size must be >= 1");
  if (seed_policy == SeedPolicy::fixed) seed.validate(pls);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

double ci95(double p, std::size_t trials) {
  if (trials == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

Observer awgn_observer(ChannelSpec ch) {
  ch.validate();
  return [ch = std::move(ch)](const BitVec& codeword, RandomStream& rng) {
    const IqVec x = qpsk_mod(codeword);
    const IqVec y = transmit(x, ch, rng);
    return qpsk_llr(y, ch);
  };
}

namespace {

struct TrialDraw {
  int theta = 0;
  SecrecySeed seed;
  BitVec codeword;
  RealVec llr;
};

TrialDraw draw_trial(const DerSetup& s, const Observer& observe, RandomStream& rng) {
  TrialDraw d;
  d.theta = rng.bit() ? 1 : 0;
  d.seed = s.seed_policy == SeedPolicy::per_trial ? draw_seed(s.pls, rng) : s.seed;
  const BitVec r = draw_randomness(s.pls, rng);
  const BitVec& m = d.theta == 0 ? s.m1 : s.m2;
  d.codeword = polar_encode(secrecy_encode(m, r, d.seed, s.pls), s.code);
  d.llr = observe(d.codeword, rng);
  require(d.llr.size() == s.code.n, "der: observer returned the wrong LLR count");
  return d;
}

// Splits [0, count) over `threads` workers pulling indices from a shared
// counter. `body(i, acc)` accumulates into a per-worker Acc; the partial
// accumulators are merged with `merge` in worker order.
template <class Acc, class Body, class Merge>
Acc parallel_count(std::size_t count, unsigned threads, Body body, Merge merge) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<Acc> partial(threads);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i, partial[w]);
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!err) err = std::current_exception();
      next.store(count);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  if (err) std::rethrow_exception(err);
  Acc total{};
  for (auto& p : partial) merge(total, p);
  return total;
}

BitVec index_bits(std::uint64_t v, std::size_t len) {
  BitVec b(len);
  for (std::size_t i = 0; i < len; ++i) b.set(i, (v >> (len - 1 - i)) & 1U);
  return b;
}

// All codewords of one message, one per randomness value.
std::vector<BitVec> message_image(const DerSetup& s, const BitVec& m, const SecrecySeed& seed) {
  const std::size_t lk = s.pls.randomness_len();
  const std::uint64_t count = std::uint64_t{1} << lk;
  std::vector<BitVec> out;
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r)
    out.push_back(polar_encode(secrecy_encode(m, index_bits(r, lk), seed, s.pls), s.code));
  return out;
}

struct ImageScore {
  double sum = 0.0;  // ln sum_x P(y | x)
  double max = 0.0;  // ln max_x P(y | x)
};

// Both up to a term shared by every codeword: the metric of a codeword is
// base + sum_{j : x_j = 1} llr_j.
ImageScore image_score(const std::vector<BitVec>& image, const RealVec& llr) {
  std::vector<double> neg(image.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < image.size(); ++c) {
    double m = 0.0;
    const auto words = image[c].words();
    for (std::size_t w = 0; w < words.size(); ++w)
      for (std::uint64_t bits = words[w]; bits; bits &= bits - 1)
        m += llr[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
    neg[c] = -m;
    best = std::max(best, neg[c]);
  }
  double acc = 0.0;
  for (double v : neg) acc += std::exp(v - best);
  return {best + std::log(acc), best};
}

struct Counts {
  std::size_t lower_errors = 0;
  std::size_t upper_errors = 0;
  std::size_t coins = 0;
};

}  // namespace

TrialOutcome run_trial(const DerSetup& s, const Observer& observe, RandomStream& rng) {
  const TrialDraw d = draw_trial(s, observe, rng);
  const DecodeList list = scl_decode(d.llr, s.code, s.list_size);

  TrialOutcome out;
  out.theta = d.theta;
  const DecodeEntry* best = nullptr;
  int best_msg = 0;
  for (const auto& e : list.entries) {
    if (s.crc_filter && !e.crc_ok) continue;
    const BitVec m = secrecy_decode(e.payload, d.seed, s.pls);
    int which = -1;
    if (m == s.m1)
      which = 0;
    else if (m == s.m2)
      which = 1;
    if (which < 0) continue;
    ++out.survivors;
    if (!best) {
      best = &e;
      best_msg = which;
    }
  }

  if (!best) {
    const int coin = rng.bit() ? 1 : 0;
    out.coin_used = true;
    out.upper_correct = out.lower_correct = coin == d.theta;
    return out;
  }
  out.upper_correct = best_msg == d.theta;
  const double list_metric = codeword_metric(d.llr, best->codeword);
  const double true_metric = codeword_metric(d.llr, d.codeword);
  const int lower_msg = true_metric < list_metric ? d.theta : best_msg;
  out.lower_correct = lower_msg == d.theta;
  return out;
}

DerBounds estimate_der_bounds(const DerSetup& s, const Observer& observe, std::size_t trials,
                              const RandomStream& rng, unsigned threads) {
  s.validate();
  require(trials >= 1, "der: trials must be >= 1");
  const Counts c = parallel_count<Counts>(
      trials, resolve_threads(threads),
      [&](std::size_t i, Counts& acc) {
        RandomStream sub = rng.substream(i);
        const TrialOutcome o = run_trial(s, observe, sub);
        acc.lower_errors += o.lower_correct ? 0 : 1;
        acc.upper_errors += o.upper_correct ? 0 : 1;
        acc.coins += o.coin_used ? 1 : 0;
      },
      [](Counts& total, const Counts& p) {
        total.lower_errors += p.lower_errors;
        total.upper_errors += p.upper_errors;
        total.coins += p.coins;
      });

  DerBounds b;
  b.trials = trials;
  b.list_size = s.list_size;
  b.lower_errors = c.lower_errors;
  b.upper_errors = c.upper_errors;
  b.coin_flips = c.coins;
  b.raw_lower = static_cast<double>(c.lower_errors) / static_cast<double>(trials);
  b.raw_upper = static_cast<double>(c.upper_errors) / static_cast<double>(trials);
  b.lower = std::min(b.raw_lower, 0.5);
  b.upper = std::min(b.raw_upper, 0.5);
  b.ci_lower = ci95(b.raw_lower, trials);
  b.ci_upper = ci95(b.raw_upper, trials);
  return b;
}

OracleResult der_ml_oracle(const DerSetup& s, const Observer& observe, std::size_t trials, const RandomStream& rng,
                           unsigned threads) {
  s.validate();
  require(trials >= 1, "der: trials must be >= 1");
  if (s.pls.randomness_len() > kOracleMaxRandomnessBits)
    fail(Errc::budget_exceeded, "der_ml_oracle: 2^(l-k) exceeds the enumeration budget of 2^16");

  std::vector<BitVec> fixed1, fixed2;
  if (s.seed_policy == SeedPolicy::fixed) {
    fixed1 = message_image(s, s.m1, s.seed);
    fixed2 = message_image(s, s.m2, s.seed);
  }
  using ErrorPair = std::pair<std::size_t, std::size_t>;
  const ErrorPair errors = parallel_count<ErrorPair>(
      trials, resolve_threads(threads),
      [&](std::size_t i, ErrorPair& acc) {
        RandomStream sub = rng.substream(i);
        const TrialDraw d = draw_trial(s, observe, sub);
        ImageScore s1, s2;
        if (s.seed_policy == SeedPolicy::fixed) {
          s1 = image_score(fixed1, d.llr);
          s2 = image_score(fixed2, d.llr);
        } else {
          s1 = image_score(message_image(s, s.m1, d.seed), d.llr);
          s2 = image_score(message_image(s, s.m2, d.seed), d.llr);
        }
        auto decide = [&](double a, double b) {
          if (a > b) return 0;
          if (b > a) return 1;
          return sub.bit() ? 1 : 0;
        };
        const int by_sum = decide(s1.sum, s2.sum);
        const int by_max = decide(s1.max, s2.max);
        acc.first += by_sum == d.theta ? 0 : 1;
        acc.second += by_max == d.theta ? 0 : 1;
      },
      [](ErrorPair& total, const ErrorPair& p) {
        total.first += p.first;
        total.second += p.second;
      });

  OracleResult r;
  r.trials = trials;
  r.errors = errors.first;
  r.rate = static_cast<double>(errors.first) / static_cast<double>(trials);
  r.ci = ci95(r.rate, trials);
  r.codeword_errors = errors.second;
  r.codeword_rate = static_cast<double>(errors.second) / static_cast<double>(trials);
  r.codeword_ci = ci95(r.codeword_rate, trials);
  return r;
}

std::vector<LkComparison> lk_dependence_check(std::size_t n, const std::vector<std::pair<LkCase, LkCase>>& pairs,
                                              const ChannelSpec& ch, std::size_t trials, const RandomStream& rng,
                                              unsigned threads) {
  const Observer observe = awgn_observer(ch);
  auto run = [&](const LkCase& c, std::uint64_t stream) {
    DerSetup s;
    s.pls = {c.k, c.l};
    const auto rel = nr_reliability(n);
    s.code = build_spec(n, c.l, CrcSpec::none(), rel);
    s.m1 = c.m1;
    s.m2 = c.m2;
    s.seed_policy = SeedPolicy::per_trial;
    return der_ml_oracle(s, observe, trials, rng.substream(stream), threads);
  };
  std::vector<LkComparison> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    LkComparison cmp;
    cmp.a = pairs[i].first;
    cmp.b = pairs[i].second;
    cmp.ra = run(cmp.a, 2 * i);
    cmp.rb = run(cmp.b, 2 * i + 1);
    const double va = cmp.ra.rate * (1.0 - cmp.ra.rate) / static_cast<double>(trials);
    const double vb = cmp.rb.rate * (1.0 - cmp.rb.rate) / static_cast<double>(trials);
    cmp.tolerance = 3.0 * std::sqrt(va + vb);
    cmp.asserted = cmp.a.l - cmp.a.k == cmp.b.l - cmp.b.k;
    cmp.pass = !cmp.asserted || std::abs(cmp.ra.rate - cmp.rb.rate) <= cmp.tolerance;
    out.push_back(std::move(cmp));
  }
  return out;
}

}  // namespace plsnr
