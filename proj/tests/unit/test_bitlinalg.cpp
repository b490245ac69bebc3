#include <vector>

#include "doctest.h"
#include "plsnr/bitvec.hpp"
#include "plsnr/error.hpp"
#include "plsnr/rng.hpp"

using namespace plsnr;

namespace {

// Textbook long division over GF(2) on plain ints, MSB first.
std::vector<int> crc_long_division(const std::vector<int>& data, const std::vector<int>& poly_msb_first) {
  const std::size_t w = poly_msb_first.size() - 1;
  std::vector<int> reg(data);
  reg.resize(data.size() + w, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!reg[i]) continue;
    for (std::size_t j = 0; j <= w; ++j) reg[i + j] ^= poly_msb_first[j];
  }
  return {reg.end() - static_cast<std::ptrdiff_t>(w), reg.end()};
}

std::vector<int> as_ints(const BitVec& b) {
  std::vector<int> v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v[i] = b[i];
  return v;
}

}  // namespace

TEST_CASE("bitvec basics") {
  const BitVec a = BitVec::from_string("10110");
  CHECK(a.size() == 5);
  CHECK(a[0] == 1);
  CHECK(a[1] == 0);
  CHECK(a.to_string() == "10110");
  CHECK(a.popcount() == 3);
  CHECK(a.slice(1, 3).to_string() == "011");
  CHECK(a.concat(BitVec::from_string("01")).to_string() == "1011001");
  CHECK((a ^ BitVec::from_string("11111")).to_string() == "01001");
  CHECK_THROWS_AS(BitVec::from_string("10a"), Error);
  CHECK_THROWS_AS(a ^ BitVec::from_string("1"), Error);
  CHECK(BitVec().empty());
}

TEST_CASE("hex round trip across word boundaries") {
  RandomStream r(1);
  for (std::size_t len : {1u, 4u, 63u, 64u, 65u, 128u, 221u}) {
    const BitVec b = BitVec::random(len, r);
    CHECK(BitVec::from_hex(b.to_hex(), len) == b);
  }
  CHECK(BitVec::from_hex("a", 4).to_string() == "1010");
}

TEST_CASE("random bitvec keeps tail bits zero") {
  RandomStream r(2);
  const BitVec b = BitVec::random(70, r);
  CHECK((b.words()[1] >> 6) == 0);
}

TEST_CASE("toeplitz matvec matches dense GF(2) product") {
  RandomStream r(3);
  for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 221}, {3, 70}, {64, 65}, {5, 128}}) {
    const BitVec seed = BitVec::random(rows + cols - 1, r);
    const ToeplitzMatrix t = toeplitz_from_seed(seed, rows, cols);
    // diagonal-constant
    for (std::size_t i = 1; i < rows; ++i)
      for (std::size_t j = 1; j < cols; ++j) REQUIRE(t.entry(i, j) == t.entry(i - 1, j - 1));
    for (int trial = 0; trial < 5; ++trial) {
      const BitVec x = BitVec::random(cols, r);
      const BitVec y = toeplitz_matvec(t, x);
      REQUIRE(y.size() == rows);
      for (std::size_t i = 0; i < rows; ++i) {
        int acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc ^= t.entry(i, j) & x[j];
        CHECK(y[i] == acc);
      }
    }
  }
}

TEST_CASE("toeplitz matvec is linear") {
  RandomStream r(4);
  const ToeplitzMatrix t = toeplitz_from_seed(BitVec::random(9 + 100 - 1, r), 9, 100);
  const BitVec x = BitVec::random(100, r), y = BitVec::random(100, r);
  CHECK(toeplitz_matvec(t, x ^ y) == (toeplitz_matvec(t, x) ^ toeplitz_matvec(t, y)));
  CHECK(toeplitz_matvec(t, BitVec(100)).is_zero());
}

TEST_CASE("crc11 matches long division") {
  const std::vector<int> poly{1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1};  // x^11+x^10+x^9+x^5+1
  const CrcSpec crc = CrcSpec::crc11();
  CHECK(crc.width == 11);
  RandomStream r(5);
  for (std::size_t len : {1u, 8u, 64u, 100u, 222u}) {
    const BitVec d = BitVec::random(len, r);
    CHECK(as_ints(crc_remainder(d, crc)) == crc_long_division(as_ints(d), poly));
  }
}

TEST_CASE("crc append and check") {
  const CrcSpec crc = CrcSpec::crc11();
  RandomStream r(6);
  const BitVec d = BitVec::random(222, r);
  BitVec w = crc_append(d, crc);
  CHECK(w.size() == 233);
  CHECK(crc_check(w, crc));
  // every single-bit error is detected
  for (std::size_t i = 0; i < w.size(); ++i) {
    BitVec e = w;
    e.flip(i);
    REQUIRE_FALSE(crc_check(e, crc));
  }
  CHECK(crc_append(d, CrcSpec::none()) == d);
  CHECK(crc_check(d, CrcSpec::none()));
  CHECK(CrcSpec::from_name("crc11").width == 11);
  CHECK(CrcSpec::from_name("none").width == 0);
  CHECK_THROWS_AS(CrcSpec::from_name("crc99"), Error);
}
