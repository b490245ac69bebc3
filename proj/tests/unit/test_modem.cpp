#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "plsnr/error.hpp"
#include "plsnr/iq_file.hpp"
#include "plsnr/modem.hpp"
#include "plsnr/rng.hpp"

using namespace plsnr;

TEST_CASE("qpsk mapping") {
  const IqVec s = qpsk_mod(BitVec::from_string("00011011"));
  const double a = 1.0 / std::sqrt(2.0);
  CHECK(s.size() == 4);
  CHECK(s[0] == cplx(a, a));
  CHECK(s[1] == cplx(a, -a));
  CHECK(s[2] == cplx(-a, a));
  CHECK(s[3] == cplx(-a, -a));
  CHECK_THROWS_AS(qpsk_mod(BitVec::from_string("1")), Error);
}

TEST_CASE("llr equals the exact log-likelihood ratio") {
  RandomStream r(1);
  ChannelSpec ch;
  ch.noise_variance = 0.7;
  ch.gain = cplx(0.8, -0.3);
  const double a = 1.0 / std::sqrt(2.0);
  for (int t = 0; t < 200; ++t) {
    const cplx y(3 * (r.uniform() - 0.5), 3 * (r.uniform() - 0.5));
    const RealVec l = qpsk_llr(std::vector<cplx>{y}, ch);
    // brute force over the four points
    auto lik = [&](int b0, int b1) {
      const cplx s((1 - 2 * b0) * a, (1 - 2 * b1) * a);
      return std::exp(-std::norm(y - ch.gain * s) / ch.noise_variance);
    };
    const double l0 = std::log((lik(0, 0) + lik(0, 1)) / (lik(1, 0) + lik(1, 1)));
    const double l1 = std::log((lik(0, 0) + lik(1, 0)) / (lik(0, 1) + lik(1, 1)));
    CHECK(l[0] == doctest::Approx(std::clamp(l0, -kLlrMax, kLlrMax)).epsilon(1e-9));
    CHECK(l[1] == doctest::Approx(std::clamp(l1, -kLlrMax, kLlrMax)).epsilon(1e-9));
  }
}

TEST_CASE("noiseless llrs saturate with the right sign") {
  const BitVec b = BitVec::from_string("0110");
  ChannelSpec ch;
  const RealVec l = qpsk_llr(qpsk_mod(b), ch);
  CHECK(l[0] == kLlrMax);
  CHECK(l[1] == -kLlrMax);
  CHECK(l[2] == -kLlrMax);
  CHECK(l[3] == kLlrMax);
}

TEST_CASE("channel noise variance passes a chi-square test") {
  RandomStream r(2);
  const ChannelSpec ch = ChannelSpec::awgn_snr_db(3.0);
  CHECK(ch.noise_variance == doctest::Approx(std::pow(10.0, -0.3)));
  const std::size_t n = 20000;
  const IqVec x(n, cplx{});
  const IqVec y = transmit(x, ch, r);
  double s = 0;
  for (const auto& v : y) s += std::norm(v);
  boost::math::chi_squared dist(2.0 * n);
  const double stat = 2.0 * s / ch.noise_variance;
  CHECK(stat > boost::math::quantile(dist, 1e-4));
  CHECK(stat < boost::math::quantile(dist, 1 - 1e-4));
}

TEST_CASE("snr estimator recovers a frequency-selective truth") {
  RandomStream r(3);
  const std::size_t carriers = 24, rows = 2000;
  std::vector<cplx> g(carriers);
  std::vector<double> var(carriers);
  for (std::size_t k = 0; k < carriers; ++k) {
    g[k] = std::polar(0.5 + r.uniform(), 6.28 * r.uniform());
    var[k] = 0.05 + 0.2 * r.uniform();
  }
  std::vector<IqVec> tx(rows), rx(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    tx[i] = qpsk_mod(BitVec::random(2 * carriers, r));
    rx[i].resize(carriers);
    for (std::size_t k = 0; k < carriers; ++k) rx[i][k] = g[k] * tx[i][k] + r.complex_normal(var[k]);
  }
  const SnrRecord rec = estimate_snr(tx, rx);
  CHECK(rec.symbols == rows);
  double ps = 0, pn = 0;
  for (std::size_t k = 0; k < carriers; ++k) {
    const double truth = 10 * std::log10(std::norm(g[k]) / var[k]);
    CHECK(std::abs(rec.snr_db[k] - truth) < 0.45);
    ps += std::norm(g[k]);
    pn += var[k];
  }
  CHECK(std::abs(rec.aggregate_db() - 10 * std::log10(ps / pn)) < 0.1);
}

TEST_CASE("snr estimator flags a noiseless carrier") {
  const IqVec tx = qpsk_mod(BitVec::from_string("0011"));
  const std::vector<IqVec> t{tx, tx}, r{tx, tx};
  const SnrRecord rec = estimate_snr(t, r);
  CHECK(rec.infinite[0]);
  CHECK(std::isinf(rec.snr_linear[1]));
}

TEST_CASE("evm") {
  const IqVec ref = qpsk_mod(BitVec::from_string("00011011"));
  CHECK(evm(ref, ref) == 0.0);
  IqVec rx = ref;
  for (auto& v : rx) v *= 1.1;
  CHECK(evm(rx, ref) == doctest::Approx(10.0));
}

TEST_CASE("iq file round trip") {
  RandomStream r(4);
  IqFile f;
  f.sample_rate = 61.44e6;
  f.carrier_count = 384;
  for (int i = 0; i < 1000; ++i) f.samples.push_back(r.complex_normal(1.0));
  const auto path = (std::filesystem::temp_directory_path() / "plsnr_test.iq").string();
  write_iq_file(path, f);
  const IqFile b = read_iq_file(path);
  CHECK(b.sample_rate == f.sample_rate);
  CHECK(b.carrier_count == 384);
  REQUIRE(b.samples.size() == 1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    CHECK(b.samples[i].real() == static_cast<float>(f.samples[i].real()));
    CHECK(b.samples[i].imag() == static_cast<float>(f.samples[i].imag()));
  }
  CHECK(std::filesystem::file_size(path) == 32 + 8 * 1000);
  std::FILE* fp = std::fopen(path.c_str(), "r+b");
  std::fputc('X', fp);
  std::fclose(fp);
  CHECK_THROWS_AS(read_iq_file(path), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_iq_file(path), Error);
}
