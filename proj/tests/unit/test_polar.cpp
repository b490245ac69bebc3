#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "plsnr/error.hpp"
#include "plsnr/polar.hpp"
#include "plsnr/rng.hpp"

using namespace plsnr;

namespace {

// Dense F^{(x)m} over GF(2), F = [[1,0],[1,1]].
std::vector<std::vector<int>> kron_generator(std::size_t n) {
  std::vector<std::vector<int>> g{{1}};
  while (g.size() < n) {
    const std::size_t h = g.size();
    std::vector<std::vector<int>> next(2 * h, std::vector<int>(2 * h, 0));
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        next[i][j] = g[i][j];
        next[h + i][j] = g[i][j];
        next[h + i][h + j] = g[i][j];
      }
    g = std::move(next);
  }
  return g;
}

BitVec times_generator(const BitVec& u, const std::vector<std::vector<int>>& g) {
  BitVec x(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    int acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc ^= u[i] & g[i][j];
    x.set(j, acc);
  }
  return x;
}

double ref_boxplus(double a, double b) { return 2.0 * std::atanh(std::tanh(a / 2) * std::tanh(b / 2)); }

// Plain recursive SC over x = [u1 G + u2 G, u2 G]; returns the re-encoded
// partial codeword and appends decided u bits.
BitVec ref_sc(const std::vector<double>& llr, const std::vector<bool>& frozen, std::size_t offset,
              std::vector<int>& u) {
  const std::size_t n = llr.size();
  if (n == 1) {
    const int bit = frozen[offset] ? 0 : (llr[0] < 0 ? 1 : 0);
    u.push_back(bit);
    BitVec v(1);
    v.set(0, bit);
    return v;
  }
  const std::size_t h = n / 2;
  std::vector<double> l1(h), l2(h);
  for (std::size_t i = 0; i < h; ++i) l1[i] = ref_boxplus(llr[i], llr[h + i]);
  const BitVec v1 = ref_sc(l1, frozen, offset, u);
  for (std::size_t i = 0; i < h; ++i) l2[i] = llr[h + i] + (v1[i] ? -llr[i] : llr[i]);
  const BitVec v2 = ref_sc(l2, frozen, offset + h, u);
  return (v1 ^ v2).concat(v2);
}

std::vector<double> noisy_llrs(const BitVec& x, double sigma, RandomStream& r) {
  std::vector<double> llr(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = x[i] ? -1.0 : 1.0;
    const double y = s + sigma * r.normal();
    llr[i] = 2.0 * y / (sigma * sigma);
  }
  return llr;
}

}  // namespace

TEST_CASE("NR reliability restricted to small n") {
  CHECK(nr_reliability(16) == std::vector<std::size_t>{0, 1, 2, 4, 8, 3, 5, 9, 6, 10, 12, 7, 11, 13, 14, 15});
  const PolarCodeSpec c16 = build_spec(16, 8, CrcSpec::none(), nr_reliability(16));
  CHECK(c16.info_set == std::vector<std::size_t>{6, 7, 10, 11, 12, 13, 14, 15});
  const PolarCodeSpec c8 = build_spec(8, 4, CrcSpec::none(), nr_reliability(8));
  CHECK(c8.info_set == std::vector<std::size_t>{3, 5, 6, 7});
  for (std::size_t n : {2u, 64u, 256u, 1024u}) {
    auto r = nr_reliability(n);
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(r[i] == i);
  }
  CHECK_THROWS_AS(nr_reliability(2048), Error);
}

TEST_CASE("bhattacharyya construction is a permutation") {
  auto r = bhattacharyya_reliability(128, 1.0);
  std::sort(r.begin(), r.end());
  for (std::size_t i = 0; i < 128; ++i) REQUIRE(r[i] == i);
  CHECK(construction_from_name("nr") == PolarConstruction::nr);
  CHECK(construction_from_name("bhattacharyya") == PolarConstruction::bhattacharyya);
}

TEST_CASE("transform equals the explicit generator matrix") {
  RandomStream r(1);
  for (std::size_t n : {2u, 8u, 32u, 128u}) {
    const auto g = kron_generator(n);
    for (int t = 0; t < 5; ++t) {
      const BitVec u = BitVec::random(n, r);
      CHECK(polar_transform(u) == times_generator(u, g));
      CHECK(polar_transform(polar_transform(u)) == u);
    }
  }
}

TEST_CASE("encoder places payload and CRC on the info set") {
  const PolarCodeSpec spec = build_spec(256, 222, CrcSpec::crc11(), nr_reliability(256));
  CHECK(spec.k_info == 233);
  CHECK(spec.payload_len() == 222);
  RandomStream r(2);
  const BitVec p = BitVec::random(222, r);
  const BitVec u = polar_transform(polar_encode(p, spec));
  const BitVec withcrc = crc_append(p, spec.crc);
  std::vector<bool> info(256, false);
  for (std::size_t i = 0; i < spec.info_set.size(); ++i) {
    info[spec.info_set[i]] = true;
    REQUIRE(u[spec.info_set[i]] == withcrc[i]);
  }
  for (std::size_t j = 0; j < 256; ++j)
    if (!info[j]) REQUIRE(u[j] == 0);
}

TEST_CASE("list size 1 equals an independent SC decoder") {
  RandomStream r(3);
  for (std::size_t n : {16u, 64u, 256u}) {
    const PolarCodeSpec spec = build_spec(n, n / 2, CrcSpec::none(), nr_reliability(n));
    std::vector<bool> frozen(n, true);
    for (auto i : spec.info_set) frozen[i] = false;
    for (int t = 0; t < 30; ++t) {
      const BitVec x = polar_encode(BitVec::random(n / 2, r), spec);
      const auto llr = noisy_llrs(x, 1.0, r);
      std::vector<int> u;
      const BitVec xhat = ref_sc(llr, frozen, 0, u);
      const DecodeList list = scl_decode(llr, spec, 1);
      REQUIRE(list.entries.size() == 1);
      CHECK(list.entries[0].codeword == xhat);
      BitVec pay(spec.info_set.size());
      for (std::size_t i = 0; i < spec.info_set.size(); ++i) pay.set(i, u[spec.info_set[i]]);
      CHECK(list.entries[0].payload == pay);
    }
  }
}

TEST_CASE("exhaustive list is maximum likelihood at n=8") {
  const PolarCodeSpec spec = build_spec(8, 4, CrcSpec::none(), nr_reliability(8));
  RandomStream r(4);
  for (int t = 0; t < 200; ++t) {
    const BitVec x = polar_encode(BitVec::random(4, r), spec);
    const auto llr = noisy_llrs(x, 1.2, r);
    double best = std::numeric_limits<double>::infinity();
    BitVec best_x;
    for (unsigned v = 0; v < 16; ++v) {
      BitVec p(4);
      for (int b = 0; b < 4; ++b) p.set(b, (v >> b) & 1);
      const BitVec c = polar_encode(p, spec);
      const double m = codeword_metric(llr, c);
      if (m < best) {
        best = m;
        best_x = c;
      }
    }
    const DecodeList list = scl_decode(llr, spec, 16);
    REQUIRE(list.entries.size() == 16);
    CHECK(list.entries[0].codeword == best_x);
    CHECK(list.entries[0].path_metric == doctest::Approx(best).epsilon(1e-9));
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      const auto& e = list.entries[i];
      CHECK(e.path_metric == doctest::Approx(codeword_metric(llr, e.codeword)).epsilon(1e-9));
      CHECK(polar_encode(e.payload, spec) == e.codeword);
      if (i) CHECK(list.entries[i - 1].path_metric <= e.path_metric);
    }
  }
}

TEST_CASE("noiseless decoding with CRC") {
  const PolarCodeSpec spec = build_spec(256, 222, CrcSpec::crc11(), nr_reliability(256));
  RandomStream r(5);
  for (int t = 0; t < 10; ++t) {
    const BitVec p = BitVec::random(222, r);
    const BitVec x = polar_encode(p, spec);
    std::vector<double> llr(256);
    for (std::size_t i = 0; i < 256; ++i) llr[i] = x[i] ? -40.0 : 40.0;
    const DecodedPayload d = decode_payload(scl_decode(llr, spec, 8));
    CHECK(d.crc_ok);
    CHECK(d.payload == p);
  }
}

TEST_CASE("list decoding never loses to SC on the best metric") {
  const PolarCodeSpec spec = build_spec(64, 32, CrcSpec::none(), nr_reliability(64));
  RandomStream r(6);
  for (int t = 0; t < 50; ++t) {
    const BitVec x = polar_encode(BitVec::random(32, r), spec);
    const auto llr = noisy_llrs(x, 1.0, r);
    const double m1 = scl_decode(llr, spec, 1).entries[0].path_metric;
    const double m8 = scl_decode(llr, spec, 8).entries[0].path_metric;
    CHECK(m8 <= m1 + 1e-12);
  }
}

TEST_CASE("boxplus and softplus") {
  RandomStream r(7);
  for (int i = 0; i < 1000; ++i) {
    const double a = 16 * (r.uniform() - 0.5), b = 16 * (r.uniform() - 0.5);
    CHECK(boxplus(a, b) == doctest::Approx(ref_boxplus(a, b)).epsilon(1e-9));
    CHECK(std::abs(boxplus(a, b)) <= std::min(std::abs(a), std::abs(b)) + 1e-12);
  }
  CHECK(std::isfinite(boxplus(1e3, -1e3)));
  CHECK(boxplus(1e3, -1e3) == doctest::Approx(-1e3 + std::log(2.0)));
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(softplus(800.0) == doctest::Approx(800.0));
  CHECK(softplus(-800.0) >= 0.0);
}

TEST_CASE("decoder argument checks") {
  const PolarCodeSpec spec = build_spec(16, 8, CrcSpec::none(), nr_reliability(16));
  CHECK_THROWS_AS(scl_decode(std::vector<double>(8), spec, 4), Error);
  CHECK_THROWS_AS(scl_decode(std::vector<double>(16), spec, 0), Error);
  CHECK_THROWS_AS(build_spec(16, 16, CrcSpec::crc11(), nr_reliability(16)), Error);
}
