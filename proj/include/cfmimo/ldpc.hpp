#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cfmimo {

/// Binary LDPC code: sparse parity-check matrix in adjacency form plus a
/// dense systematic encoder derived from it.
///
/// message_pos lists the codeword positions that carry message bits (in
/// message order); generator row i is the full codeword produced by message
/// bit i alone, so encoding is an XOR of selected rows.
struct LdpcCode {
  int n = 0;  // codeword length
  int m = 0;  // parity checks
  std::vector<std::vector<int>> check_vars;  // per check: variable indices
  std::vector<std::vector<int>> var_checks;  // per variable: check indices
  std::vector<std::vector<std::uint8_t>> generator;  // k rows of n bits
  std::vector<int> message_pos;  // k codeword positions, message order
  std::uint64_t seed_used = 0;
  int build_attempts = 1;

  int k() const { return n - m; }
  double rate() const { return static_cast<double>(n - m) / n; }
  bool parity_ok(const std::vector<std::uint8_t>& codeword) const;
};

/// Progressive-edge-growth construction with uniform variable degree 3.
/// Deterministic under seed; retries with successive seeds (reported in
/// build_attempts) until the parity-check matrix has full row rank.
LdpcCode build_code(int n, int m, std::uint64_t seed);

/// The committed default (256, 128) rate-1/2 code.
const LdpcCode& default_code();
std::uint64_t default_code_seed();

std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& msg,
                                 const LdpcCode& code);

/// Exact check-node combining operator:
///   sign(a)sign(b)min(|a|,|b|) + log1p(e^-|a+b|) - log1p(e^-|a-b|).
double box_plus(double a, double b);

struct DecodeResult {
  std::vector<std::uint8_t> bits;  // hard decisions, full codeword
  std::vector<double> posterior;   // per-variable LLRs
  bool converged = false;
  int iterations = 0;
};

/// Flooding sum-product decoding with the exact box-plus check update.
/// Stops early once the hard decision satisfies every check. Posteriors are
/// channel LLR plus all incoming check messages (extrinsic bookkeeping is
/// exact, so posterior - input is the decoder's extrinsic output).
DecodeResult decode(const std::vector<double>& channel_llr,
                    const LdpcCode& code, int max_iter);

/// Extract message bits from a codeword-length bit vector.
std::vector<std::uint8_t> message_bits(const std::vector<std::uint8_t>& codeword,
                                       const LdpcCode& code);

// alist text interchange (padded MacKay variant; zero padding accepted on read)
void write_alist(std::ostream& os, const LdpcCode& code);
LdpcCode read_alist(std::istream& is);
LdpcCode load_alist_file(const std::string& path);
void save_alist_file(const std::string& path, const LdpcCode& code);

}  // namespace cfmimo
