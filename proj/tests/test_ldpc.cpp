#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cfmimo/ldpc.hpp"
#include "cfmimo/rng.hpp"
#include "doctest.h"

using namespace cfmimo;

namespace {

std::vector<std::uint8_t> random_message(Rng& rng, int len) {
  std::vector<std::uint8_t> msg(len);
  for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return msg;
}

// exact log-domain identity, evaluated the slow direct way
double box_plus_oracle(double a, double b) {
  return std::log((1.0 + std::exp(a + b)) / (std::exp(a) + std::exp(b)));
}

}  // namespace

TEST_SUITE_BEGIN("ldpc");

TEST_CASE("default code structure: rate, degrees, rank, girth") {
  const LdpcCode& code = default_code();
  CHECK(code.n == 256);
  CHECK(code.m == 128);
  CHECK(code.k() == 128);
  CHECK(code.rate() == doctest::Approx(0.5));

  for (const auto& checks : code.var_checks) CHECK(checks.size() == 3);
  double cn_mean = 0.0;
  for (const auto& vars : code.check_vars) {
    CHECK(vars.size() >= 5);
    CHECK(vars.size() <= 7);
    cn_mean += static_cast<double>(vars.size());
  }
  CHECK(cn_mean / code.m == doctest::Approx(6.0));

  // no two checks share more than one variable (girth >= 6)
  for (int a = 0; a < code.m; ++a)
    for (int b = a + 1; b < code.m; ++b) {
      int shared = 0;
      std::size_t i = 0, j = 0;
      while (i < code.check_vars[a].size() && j < code.check_vars[b].size()) {
        if (code.check_vars[a][i] == code.check_vars[b][j]) {
          ++shared;
          ++i;
          ++j;
        } else if (code.check_vars[a][i] < code.check_vars[b][j]) {
          ++i;
        } else {
          ++j;
        }
      }
      CHECK(shared <= 1);
    }
}

TEST_CASE("the default code is the committed seed's construction") {
  const LdpcCode rebuilt = build_code(256, 128, default_code_seed());
  CHECK(rebuilt.check_vars == default_code().check_vars);
  CHECK(rebuilt.generator == default_code().generator);
}

#ifdef CFMIMO_SOURCE_DIR
TEST_CASE("the shipped alist file matches the built-in code") {
  const LdpcCode shipped =
      load_alist_file(std::string(CFMIMO_SOURCE_DIR) + "/data/ldpc_256_128.alist");
  CHECK(shipped.check_vars == default_code().check_vars);
}
#endif

TEST_CASE("generator and encoder identities") {
  const LdpcCode& code = default_code();
  for (const auto& row : code.generator) CHECK(code.parity_ok(row));

  const std::vector<std::uint8_t> zero(code.k(), 0);
  const auto zero_cw = encode(zero, code);
  CHECK(std::count(zero_cw.begin(), zero_cw.end(), 1) == 0);

  Rng rng(404);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_message(rng, code.k());
    const auto b = random_message(rng, code.k());
    const auto ca = encode(a, code);
    CHECK(code.parity_ok(ca));
    CHECK(message_bits(ca, code) == a);  // systematic

    std::vector<std::uint8_t> axb(code.k());
    for (int j = 0; j < code.k(); ++j) axb[j] = a[j] ^ b[j];
    const auto cb = encode(b, code);
    const auto cab = encode(axb, code);
    for (int j = 0; j < code.n; ++j) CHECK(cab[j] == (ca[j] ^ cb[j]));
  }

  CHECK_THROWS(encode(std::vector<std::uint8_t>(code.k() - 1, 0), code));
  CHECK_THROWS(build_code(16, 16, 1));
}

TEST_CASE("box-plus against the exact identity and its algebra") {
  CHECK(box_plus(2.0, 3.0) == doctest::Approx(box_plus_oracle(2.0, 3.0)).epsilon(1e-12));
  CHECK(box_plus(2.0, 3.0) == doctest::Approx(1.6934).epsilon(5e-4));

  Rng rng(405);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const double a = 6.0 * rng.normal();
    const double b = 6.0 * rng.normal();
    CHECK(box_plus(a, b) == doctest::Approx(box_plus_oracle(a, b)).epsilon(1e-12));
    CHECK(box_plus(a, b) == doctest::Approx(box_plus(b, a)).epsilon(1e-14));
    // identity and absorbing elements
    CHECK(box_plus(inf, a) == doctest::Approx(a));
    CHECK(box_plus(a, inf) == doctest::Approx(a));
    CHECK(box_plus(0.0, a) == 0.0);
    CHECK(box_plus(a, 0.0) == 0.0);
  }
  CHECK(box_plus(-inf, 4.0) == -4.0);
  CHECK(box_plus(inf, inf) == inf);
  CHECK(box_plus(-inf, -inf) == inf);
  CHECK(box_plus(inf, -inf) == -inf);

  // associativity under reassociation of five values
  for (int i = 0; i < 50; ++i) {
    double v[5];
    for (double& x : v) x = 5.0 * rng.normal();
    const double left = box_plus(box_plus(box_plus(box_plus(v[0], v[1]), v[2]), v[3]), v[4]);
    const double right = box_plus(v[0], box_plus(v[1], box_plus(v[2], box_plus(v[3], v[4]))));
    const double mixed = box_plus(box_plus(v[0], v[1]), box_plus(v[2], box_plus(v[3], v[4])));
    CHECK(left == doctest::Approx(right).epsilon(1e-10));
    CHECK(left == doctest::Approx(mixed).epsilon(1e-10));
  }
}

TEST_CASE("noiseless frames decode in one pass") {
  const LdpcCode& code = default_code();
  Rng rng(406);
  const auto cw = encode(random_message(rng, code.k()), code);
  std::vector<double> llr(code.n);
  for (int i = 0; i < code.n; ++i)
    llr[i] = cw[i] ? -std::numeric_limits<double>::infinity()
                   : std::numeric_limits<double>::infinity();
  const DecodeResult res = decode(llr, code, 10);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.bits == cw);
}

TEST_CASE("strong-LLR noisy frames decode error free") {
  const LdpcCode& code = default_code();
  Rng rng(407);
  int failures = 0;
  for (int f = 0; f < 1000; ++f) {
    std::vector<double> llr(code.n);
    for (auto& v : llr) v = 8.0 + 4.0 * rng.normal();
    const DecodeResult res = decode(llr, code, 10);
    if (!res.converged || std::count(res.bits.begin(), res.bits.end(), 1) != 0)
      ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("a single saturated wrong bit is corrected") {
  const LdpcCode& code = default_code();
  for (int wrong : {0, 17, 100, 255}) {
    std::vector<double> llr(code.n, 20.0);
    llr[wrong] = -20.0;
    const DecodeResult res = decode(llr, code, 10);
    CHECK(res.converged);
    CHECK(std::count(res.bits.begin(), res.bits.end(), 1) == 0);
  }
}

TEST_CASE("first-pass extrinsic output ignores the bit's own channel value") {
  const LdpcCode& code = default_code();
  Rng rng(408);
  std::vector<double> llr(code.n);
  for (auto& v : llr) v = 2.0 * rng.normal();

  const int probe = 42;
  const DecodeResult a = decode(llr, code, 1);
  std::vector<double> llr2 = llr;
  llr2[probe] = llr[probe] + 3.5;
  const DecodeResult b = decode(llr2, code, 1);

  const double extr_a = a.posterior[probe] - llr[probe];
  const double extr_b = b.posterior[probe] - llr2[probe];
  CHECK(extr_a == doctest::Approx(extr_b).epsilon(1e-12));
  // and the posterior decomposes as input plus the extrinsic part
  CHECK(a.posterior[probe] == doctest::Approx(llr[probe] + extr_a));
}

TEST_CASE("decoding commutes with codeword translation (coset symmetry)") {
  const LdpcCode& code = default_code();
  Rng rng(409);
  for (int f = 0; f < 20; ++f) {
    const auto cw = encode(random_message(rng, code.k()), code);
    std::vector<double> noise(code.n);
    for (auto& v : noise) v = 3.0 + 3.0 * rng.normal();

    std::vector<double> llr_zero = noise;
    std::vector<double> llr_cw(code.n);
    for (int i = 0; i < code.n; ++i)
      llr_cw[i] = cw[i] ? -noise[i] : noise[i];

    const DecodeResult dz = decode(llr_zero, code, 10);
    const DecodeResult dc = decode(llr_cw, code, 10);
    for (int i = 0; i < code.n; ++i) CHECK(dc.bits[i] == (dz.bits[i] ^ cw[i]));
  }
}

TEST_CASE("alist round trip preserves the code") {
  const LdpcCode& code = default_code();
  std::stringstream ss;
  write_alist(ss, code);
  const LdpcCode back = read_alist(ss);
  CHECK(back.n == code.n);
  CHECK(back.m == code.m);
  CHECK(back.check_vars == code.check_vars);
  CHECK(back.var_checks == code.var_checks);
  CHECK(back.generator == code.generator);
  CHECK(back.message_pos == code.message_pos);

  std::stringstream bad("not an alist");
  CHECK_THROWS(read_alist(bad));
}

TEST_CASE("small construction stays usable end to end") {
  const LdpcCode code = build_code(32, 16, 5);
  CHECK(code.build_attempts >= 1);
  Rng rng(410);
  const auto msg = random_message(rng, code.k());
  const auto cw = encode(msg, code);
  std::vector<double> llr(code.n);
  for (int i = 0; i < code.n; ++i) llr[i] = (cw[i] ? -1.0 : 1.0) * (6.0 + rng.uniform());
  const DecodeResult res = decode(llr, code, 10);
  CHECK(res.converged);
  CHECK(message_bits(res.bits, code) == msg);
  CHECK_THROWS(decode(std::vector<double>(code.n - 1, 0.0), code, 10));
  CHECK_THROWS(decode(std::vector<double>(code.n, 0.0), code, 0));
}

TEST_SUITE_END();
