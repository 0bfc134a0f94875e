#include "cfmimo/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cfmimo/rng.hpp"

namespace cfmimo {

namespace {

constexpr double kMsgClip = 30.0;  // internal message saturation
constexpr int kVarDegree = 3;
constexpr int kMaxBuildAttempts = 32;

double clip(double x) { return std::clamp(x, -kMsgClip, kMsgClip); }

// Packed GF(2) row operations for rank / generator extraction.
struct BitMatrix {
  int cols = 0;
  std::vector<std::vector<std::uint64_t>> rows;

  BitMatrix(int r, int c) : cols(c), rows(r, std::vector<std::uint64_t>((c + 63) / 64, 0)) {}
  void set(int r, int c) { rows[r][c >> 6] |= 1ULL << (c & 63); }
  bool get(int r, int c) const { return (rows[r][c >> 6] >> (c & 63)) & 1ULL; }
  void xor_rows(int dst, int src) {
    for (std::size_t w = 0; w < rows[dst].size(); ++w) rows[dst][w] ^= rows[src][w];
  }
};

std::vector<std::vector<int>> transpose_adjacency(
    const std::vector<std::vector<int>>& check_vars, int n) {
  std::vector<std::vector<int>> var_checks(n);
  for (int j = 0; j < static_cast<int>(check_vars.size()); ++j)
    for (int v : check_vars[j]) var_checks[v].push_back(j);
  return var_checks;
}

// Progressive edge growth with uniform variable degree. Each new edge lands
// on a check outside the variable's current BFS neighborhood (or at its
// deepest layer once everything is reachable), minimum degree first.
std::vector<std::vector<int>> peg_adjacency(int n, int m, Rng& rng) {
  std::vector<std::vector<int>> check_vars(m);
  std::vector<std::vector<int>> var_checks(n);
  std::vector<int> check_deg(m, 0);

  std::vector<char> cn_reached(m), vn_visited(n);
  std::vector<int> frontier, next_frontier, new_cns, candidates;

  for (int v = 0; v < n; ++v) {
    for (int e = 0; e < kVarDegree; ++e) {
      candidates.clear();
      if (e == 0) {
        for (int j = 0; j < m; ++j) candidates.push_back(j);
      } else {
        std::fill(cn_reached.begin(), cn_reached.end(), 0);
        std::fill(vn_visited.begin(), vn_visited.end(), 0);
        frontier = {v};
        vn_visited[v] = 1;
        int reached = 0;
        std::vector<int> deepest;
        while (true) {
          new_cns.clear();
          for (int fv : frontier)
            for (int j : var_checks[fv])
              if (!cn_reached[j]) {
                cn_reached[j] = 1;
                new_cns.push_back(j);
                ++reached;
              }
          if (new_cns.empty()) break;  // neighborhood stopped growing
          deepest = new_cns;
          if (reached == m) break;
          next_frontier.clear();
          for (int j : new_cns)
            for (int w : check_vars[j])
              if (!vn_visited[w]) {
                vn_visited[w] = 1;
                next_frontier.push_back(w);
              }
          frontier.swap(next_frontier);
        }
        if (reached < m) {
          for (int j = 0; j < m; ++j)
            if (!cn_reached[j]) candidates.push_back(j);
        } else {
          candidates = deepest;  // all reachable: take the most distant layer
        }
      }
      int min_deg = std::numeric_limits<int>::max();
      for (int j : candidates) min_deg = std::min(min_deg, check_deg[j]);
      std::vector<int> best;
      for (int j : candidates)
        if (check_deg[j] == min_deg) best.push_back(j);
      const int pick = best[rng.uniform_int(best.size())];

      check_vars[pick].push_back(v);
      var_checks[v].push_back(pick);
      ++check_deg[pick];
    }
  }
  for (auto& row : check_vars) std::sort(row.begin(), row.end());
  return check_vars;
}

// Gauss-Jordan over GF(2); fills the systematic generator and message
// positions. Returns false if H is rank deficient.
bool build_generator(LdpcCode& code) {
  const int n = code.n, m = code.m;
  BitMatrix h(m, n);
  for (int j = 0; j < m; ++j)
    for (int v : code.check_vars[j]) h.set(j, v);

  std::vector<int> pivot_cols;
  std::vector<char> is_pivot(n, 0);
  int rank = 0;
  for (int c = 0; c < n && rank < m; ++c) {
    int pr = -1;
    for (int r = rank; r < m; ++r)
      if (h.get(r, c)) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(h.rows[pr], h.rows[rank]);
    for (int r = 0; r < m; ++r)
      if (r != rank && h.get(r, c)) h.xor_rows(r, rank);
    pivot_cols.push_back(c);
    is_pivot[c] = 1;
    ++rank;
  }
  if (rank < m) return false;

  code.message_pos.clear();
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) code.message_pos.push_back(c);

  const int k = n - m;
  code.generator.assign(k, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < k; ++i) {
    const int col = code.message_pos[i];
    code.generator[i][col] = 1;
    for (int r = 0; r < m; ++r)
      if (h.get(r, col)) code.generator[i][pivot_cols[r]] = 1;
  }
  return true;
}

LdpcCode finalize(std::vector<std::vector<int>> check_vars, int n, int m) {
  LdpcCode code;
  code.n = n;
  code.m = m;
  code.check_vars = std::move(check_vars);
  code.var_checks = transpose_adjacency(code.check_vars, n);
  if (!build_generator(code)) throw std::runtime_error("rank-deficient parity-check matrix");
  return code;
}

}  // namespace

bool LdpcCode::parity_ok(const std::vector<std::uint8_t>& codeword) const {
  for (const auto& row : check_vars) {
    int acc = 0;
    for (int v : row) acc ^= codeword[v];
    if (acc) return false;
  }
  return true;
}

LdpcCode build_code(int n, int m, std::uint64_t seed) {
  if (m >= n || m < 1) throw std::invalid_argument("need 0 < parity bits < codeword length");
  for (int attempt = 0; attempt < kMaxBuildAttempts; ++attempt) {
    Rng rng(derive_seed(seed + attempt, 0x70656721ULL));
    try {
      LdpcCode code = finalize(peg_adjacency(n, m, rng), n, m);
      code.seed_used = seed + attempt;
      code.build_attempts = attempt + 1;
      return code;
    } catch (const std::runtime_error&) {
      // rank deficient: retry with the next seed
    }
  }
  throw std::runtime_error("could not build a full-rank code");
}

std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& msg,
                                 const LdpcCode& code) {
  if (static_cast<int>(msg.size()) != code.k())
    throw std::invalid_argument("message length mismatch");
  std::vector<std::uint8_t> cw(code.n, 0);
  for (int i = 0; i < code.k(); ++i) {
    if (!msg[i]) continue;
    const auto& row = code.generator[i];
    for (int c = 0; c < code.n; ++c) cw[c] ^= row[c];
  }
  return cw;
}

double box_plus(double a, double b) {
  if (std::isinf(a)) return a > 0 ? b : -b;
  if (std::isinf(b)) return b > 0 ? a : -a;
  const double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
  return sign * std::min(std::fabs(a), std::fabs(b)) +
         std::log1p(std::exp(-std::fabs(a + b))) -
         std::log1p(std::exp(-std::fabs(a - b)));
}

DecodeResult decode(const std::vector<double>& channel_llr,
                    const LdpcCode& code, int max_iter) {
  if (static_cast<int>(channel_llr.size()) != code.n)
    throw std::invalid_argument("LLR length mismatch");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  // per-check edge storage, row-major
  std::vector<int> row_off(code.m + 1, 0);
  for (int j = 0; j < code.m; ++j)
    row_off[j + 1] = row_off[j] + static_cast<int>(code.check_vars[j].size());
  const int num_edges = row_off[code.m];

  std::vector<double> vn_to_cn(num_edges), cn_to_vn(num_edges, 0.0);
  for (int j = 0; j < code.m; ++j)
    for (std::size_t i = 0; i < code.check_vars[j].size(); ++i)
      vn_to_cn[row_off[j] + i] = clip(channel_llr[code.check_vars[j][i]]);

  // per-variable incoming edge ids
  std::vector<std::vector<int>> var_edges(code.n);
  for (int j = 0; j < code.m; ++j)
    for (std::size_t i = 0; i < code.check_vars[j].size(); ++i)
      var_edges[code.check_vars[j][i]].push_back(row_off[j] + static_cast<int>(i));

  DecodeResult res;
  res.posterior.assign(code.n, 0.0);
  res.bits.assign(code.n, 0);
  std::vector<double> prefix, suffix;

  for (int iter = 1; iter <= max_iter; ++iter) {
    // check-node stage: exclude-self box-plus folding via prefix/suffix
    for (int j = 0; j < code.m; ++j) {
      const int deg = row_off[j + 1] - row_off[j];
      prefix.assign(deg + 1, std::numeric_limits<double>::infinity());
      suffix.assign(deg + 1, std::numeric_limits<double>::infinity());
      for (int i = 0; i < deg; ++i)
        prefix[i + 1] = box_plus(prefix[i], vn_to_cn[row_off[j] + i]);
      for (int i = deg - 1; i >= 0; --i)
        suffix[i] = box_plus(suffix[i + 1], vn_to_cn[row_off[j] + i]);
      for (int i = 0; i < deg; ++i)
        cn_to_vn[row_off[j] + i] = clip(box_plus(prefix[i], suffix[i + 1]));
    }
    // variable-node stage and posteriors
    for (int v = 0; v < code.n; ++v) {
      double post = clip(channel_llr[v]);
      for (int e : var_edges[v]) post += cn_to_vn[e];
      res.posterior[v] = post;
      for (int e : var_edges[v]) vn_to_cn[e] = clip(post - cn_to_vn[e]);
      res.bits[v] = post < 0.0 ? 1 : 0;
    }
    res.iterations = iter;
    if (code.parity_ok(res.bits)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

std::vector<std::uint8_t> message_bits(const std::vector<std::uint8_t>& codeword,
                                       const LdpcCode& code) {
  std::vector<std::uint8_t> msg(code.k());
  for (int i = 0; i < code.k(); ++i) msg[i] = codeword[code.message_pos[i]];
  return msg;
}

void write_alist(std::ostream& os, const LdpcCode& code) {
  std::size_t max_v = 0, max_c = 0;
  for (const auto& v : code.var_checks) max_v = std::max(max_v, v.size());
  for (const auto& c : code.check_vars) max_c = std::max(max_c, c.size());
  os << code.n << ' ' << code.m << '\n' << max_v << ' ' << max_c << '\n';
  for (int v = 0; v < code.n; ++v)
    os << code.var_checks[v].size() << (v + 1 < code.n ? ' ' : '\n');
  for (int j = 0; j < code.m; ++j)
    os << code.check_vars[j].size() << (j + 1 < code.m ? ' ' : '\n');
  for (const auto& checks : code.var_checks) {
    for (std::size_t i = 0; i < max_v; ++i)
      os << (i < checks.size() ? checks[i] + 1 : 0) << (i + 1 < max_v ? ' ' : '\n');
  }
  for (const auto& vars : code.check_vars) {
    for (std::size_t i = 0; i < max_c; ++i)
      os << (i < vars.size() ? vars[i] + 1 : 0) << (i + 1 < max_c ? ' ' : '\n');
  }
}

LdpcCode read_alist(std::istream& is) {
  int n = 0, m = 0, max_v = 0, max_c = 0;
  if (!(is >> n >> m >> max_v >> max_c) || n <= 0 || m <= 0)
    throw std::runtime_error("malformed alist header");
  std::vector<int> vdeg(n), cdeg(m);
  for (auto& d : vdeg) is >> d;
  for (auto& d : cdeg) is >> d;
  // variable lists are redundant with the check lists; parse and discard
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < max_v; ++i) {
      int x;
      is >> x;
    }
  std::vector<std::vector<int>> check_vars(m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < max_c; ++i) {
      int x;
      if (!(is >> x)) throw std::runtime_error("truncated alist");
      if (x > 0) check_vars[j].push_back(x - 1);
    }
    if (static_cast<int>(check_vars[j].size()) != cdeg[j])
      throw std::runtime_error("alist degree mismatch");
    std::sort(check_vars[j].begin(), check_vars[j].end());
  }
  return finalize(std::move(check_vars), n, m);
}

LdpcCode load_alist_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open LDPC file: " + path);
  return read_alist(f);
}

void save_alist_file(const std::string& path, const LdpcCode& code) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write LDPC file: " + path);
  write_alist(f, code);
}

}  // namespace cfmimo
