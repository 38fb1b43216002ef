#include "psfwb/ambiguity.hpp"

#include <algorithm>
#include <queue>

#include "graph.hpp"
#include "psfwb/error.hpp"

namespace psfwb {

namespace {

// Exact p-th root of a rational, if one exists.
std::optional<Rational> exact_root(const Rational& r, unsigned long p) {
  if (r < 0 && p % 2 == 0) return std::nullopt;
  BigInt num, den;
  if (mpz_root(num.get_mpz_t(), r.get_num_mpz_t(), p) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), r.get_den_mpz_t(), p) == 0) return std::nullopt;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace

RootOfRational::RootOfRational(const Rational& base, const BigInt& index)
    : base_(base), index_(index) {
  if (base_ == 0) throw Error(ErrorCode::InvalidArgument, "root of zero is not a characteristic root");
  if (index_ < 1) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
  if (base_ == 1) {
    index_ = 1;
    return;
  }
  if (index_ == 1) return;
  for (const auto& [prime, mult] : factor_integer(index_)) {
    const unsigned long p = prime.get_ui();
    for (long k = 0; k < mult; ++k) {
      auto root = exact_root(base_, p);
      if (!root) break;
      base_ = *root;
      index_ /= prime;
    }
  }
}

std::optional<Rational> RootOfRational::rational_value() const {
  if (index_ == 1) return base_;
  return std::nullopt;
}

std::string RootOfRational::to_string() const {
  if (index_ == 1) return base_.get_str();
  return "root(" + base_.get_str() + ", " + index_.get_str() + ")";
}

bool is_polynomially_ambiguous(const WeightedAutomaton& a) {
  const WeightedAutomaton t = trim(a);
  const Nfa n = underlying_nfa(t);
  const std::size_t d = n.dim;
  detail::Adjacency pairs(d * d);
  for (const auto& per_letter : n.successors) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        for (auto p2 : per_letter[p]) {
          for (auto q2 : per_letter[q]) pairs[p * d + q].push_back(p2 * d + q2);
        }
      }
    }
  }
  auto scc = detail::strongly_connected_components(pairs);
  std::vector<bool> has_diag(scc.count, false), has_off(scc.count, false);
  std::vector<bool> nontrivial(scc.count, false);
  for (std::size_t v = 0; v < d * d; ++v) {
    const auto c = scc.component[v];
    if (v / d == v % d) {
      has_diag[c] = true;
    } else {
      has_off[c] = true;
    }
  }
  for (std::size_t c = 0; c < scc.count; ++c) {
    if (has_diag[c] && has_off[c]) return false;
  }
  return true;
}

namespace {

detail::Adjacency support_graph(const RatMatrix& m, bool with_loops) {
  detail::Adjacency adj(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0 && (with_loops || i != j)) adj[i].push_back(j);
    }
  }
  return adj;
}

}  // namespace

BigInt cycle_lcm_exponent(const WeightedAutomaton& a, const Word& w) {
  const RatMatrix m = a.word_matrix(w);
  auto adj = support_graph(m, false);
  auto scc = detail::strongly_connected_components(adj);
  std::vector<std::size_t> sizes(scc.count, 0);
  for (auto c : scc.component) ++sizes[c];
  BigInt l = 1;
  for (auto s : sizes) {
    if (s > 1) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), s);
  }
  return l;
}

TriangularizationResult triangularize_power(const WeightedAutomaton& a, const Word& w,
                                            std::optional<BigInt> exponent) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "triangularization needs a nonempty word");
  const std::size_t d = a.dim();
  TriangularizationResult r;
  r.exponent = exponent ? *exponent : factorial(d);
  if (r.exponent < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  const RatMatrix m = a.word_matrix(w).pow(r.exponent);
  auto adj = support_graph(m, false);
  std::vector<std::size_t> indegree(d, 0);
  for (const auto& out : adj) {
    for (auto j : out) ++indegree[j];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < d; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto i = ready.top();
    ready.pop();
    order.push_back(i);
    for (auto j : adj[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  if (order.size() != d) {
    throw Error(ErrorCode::CycleOfLengthAtLeastTwo,
                "transition graph of M(w)^" + r.exponent.get_str() +
                    " has a cycle through distinct states");
  }
  std::vector<std::size_t> sigma(d);
  for (std::size_t pos = 0; pos < d; ++pos) sigma[order[pos]] = pos;
  r.permutation = Permutation(sigma);
  r.matrix = RatMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) r.matrix(sigma[i], sigma[j]) = m(i, j);
  }
  for (std::size_t i = 0; i < d; ++i) r.diagonal.push_back(r.matrix(i, i));
  return r;
}

std::vector<RootOfRational> psf_characteristic_roots(const WeightedAutomaton& a, const Word& w,
                                                     std::optional<BigInt> exponent) {
  const WeightedAutomaton t = trim(a);
  auto tri = triangularize_power(t, w, exponent);
  std::vector<RootOfRational> roots;
  for (const auto& delta : tri.diagonal) {
    if (delta != 0) roots.emplace_back(delta, tri.exponent);
  }
  return roots;
}

namespace {

// Integer column reduction: brings the columns of `cols` (each of length m)
// into echelon form spanning the same lattice.
struct EchelonLattice {
  std::vector<std::vector<BigInt>> columns;
  std::vector<std::size_t> pivot_rows;
};

EchelonLattice integer_column_echelon(std::vector<std::vector<BigInt>> cols, std::size_t m) {
  EchelonLattice out;
  std::size_t k = 0;
  for (std::size_t r = 0; r < m && k < cols.size(); ++r) {
    for (std::size_t j = k + 1; j < cols.size(); ++j) {
      if (cols[j][r] == 0) continue;
      if (cols[k][r] == 0) {
        std::swap(cols[k], cols[j]);
        continue;
      }
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cols[k][r].get_mpz_t(),
                 cols[j][r].get_mpz_t());
      const BigInt a = cols[k][r] / g, b = cols[j][r] / g;
      std::vector<BigInt> ck(m), cj(m);
      for (std::size_t i = 0; i < m; ++i) {
        ck[i] = s * cols[k][i] + t * cols[j][i];
        cj[i] = b * cols[k][i] - a * cols[j][i];
      }
      cols[k] = std::move(ck);
      cols[j] = std::move(cj);
    }
    if (cols[k][r] != 0) {
      out.columns.push_back(cols[k]);
      out.pivot_rows.push_back(r);
      ++k;
    }
  }
  return out;
}

}  // namespace

bool group_membership(const Rational& x, const std::vector<Rational>& generators,
                      unsigned long ceiling) {
  if (x == 0) throw Error(ErrorCode::InvalidArgument, "zero is not in any subgroup of Q^x");
  std::vector<PrimeFactorisation> facts;
  std::set<BigInt> primes;
  for (const auto& g : generators) {
    if (g == 0) throw Error(ErrorCode::InvalidArgument, "zero generator");
    facts.push_back(prime_support(g, ceiling));
    for (const auto& [p, e] : facts.back().exponents) primes.insert(p);
  }
  const PrimeFactorisation target = prime_support(x, ceiling);
  for (const auto& [p, e] : target.exponents) {
    if (!primes.count(p)) return false;
  }
  // Rows: one per prime, then a sign row solved modulo 2 via an extra column.
  const std::vector<BigInt> prime_list(primes.begin(), primes.end());
  const std::size_t m = prime_list.size() + 1;
  std::vector<std::vector<BigInt>> cols;
  for (const auto& f : facts) {
    std::vector<BigInt> c(m, 0);
    for (std::size_t i = 0; i < prime_list.size(); ++i) {
      auto it = f.exponents.find(prime_list[i]);
      if (it != f.exponents.end()) c[i] = it->second;
    }
    c[m - 1] = f.sign < 0 ? 1 : 0;
    cols.push_back(std::move(c));
  }
  std::vector<BigInt> two(m, 0);
  two[m - 1] = 2;
  cols.push_back(std::move(two));
  std::vector<BigInt> b(m, 0);
  for (std::size_t i = 0; i < prime_list.size(); ++i) {
    auto it = target.exponents.find(prime_list[i]);
    if (it != target.exponents.end()) b[i] = it->second;
  }
  b[m - 1] = target.sign < 0 ? 1 : 0;

  auto lattice = integer_column_echelon(std::move(cols), m);
  std::size_t row = 0;
  for (std::size_t c = 0; c < lattice.columns.size(); ++c) {
    const std::size_t pr = lattice.pivot_rows[c];
    for (; row < pr; ++row) {
      if (b[row] != 0) return false;
    }
    const auto& col = lattice.columns[c];
    if (b[pr] % col[pr] != 0) return false;
    const BigInt q = b[pr] / col[pr];
    for (std::size_t i = 0; i < m; ++i) b[i] -= q * col[i];
  }
  return std::all_of(b.begin(), b.end(), [](const BigInt& v) { return v == 0; });
}

std::set<BigInt> prime_support_report(const std::vector<Rational>& values, unsigned long ceiling) {
  std::set<BigInt> out;
  for (const auto& v : values) {
    for (const auto& [p, e] : prime_support(v, ceiling).exponents) {
      if (e != 0) out.insert(p);
    }
  }
  return out;
}

}  // namespace psfwb
