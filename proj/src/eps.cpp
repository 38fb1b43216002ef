#include "psfwb/eps.hpp"

#include <algorithm>
#include <sstream>

#include "psfwb/error.hpp"
#include "psfwb/matrix.hpp"

namespace psfwb {

void ExpPoly::normalize() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero()) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
}

std::string ExpPoly::to_string() const {
  if (terms.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [base, poly] : terms) {
    if (!first) os << ", ";
    first = false;
    os << base.get_str() << ": " << poly.to_string("n");
  }
  os << "}";
  return os.str();
}

void FpExpPoly::normalize() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero()) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
}

std::string FpExpPoly::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [base, poly] : terms) {
    if (!first) os << ", ";
    first = false;
    os << base << ": " << poly.to_string("n");
  }
  os << "} mod " << modulus;
  return os.str();
}

namespace {

// C(x, j) = x (x - 1) ... (x - j + 1) / j!
UniPoly binomial_poly(std::size_t j) {
  UniPoly p = UniPoly::constant(1);
  for (std::size_t i = 0; i < j; ++i) p = p * UniPoly::linear_factor(Rational(static_cast<long>(i)));
  const Rational scale = Rational(1) / Rational(factorial(j));
  return scale * p;
}

Rational binomial(std::size_t n, std::size_t j) {
  if (j > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, j);
  return Rational(r);
}

}  // namespace

std::variant<ExpPoly, IrrationalRoots> from_lrs(const Lrs& l) {
  const Recurrence rec = minimal_form(l);
  const std::size_t k = rec.order();
  ExpPoly q;
  if (k == 0) return q;
  const UniPoly chi = characteristic_polynomial(rec);
  const auto roots = rational_roots(chi);
  long total = 0;
  std::size_t zero_mult = 0;
  std::vector<std::pair<Rational, std::size_t>> nonzero;
  for (const auto& [r, m] : roots) {
    total += m;
    if (r == 0) {
      zero_mult = static_cast<std::size_t>(m);
    } else {
      nonzero.emplace_back(r, static_cast<std::size_t>(m));
    }
  }
  if (total != chi.degree()) return IrrationalRoots{chi};

  const std::size_t unknowns = k - zero_mult;
  const std::size_t start = zero_mult;
  const RationalVector seq = recurrence_terms(rec, start + unknowns + 20);
  q.valid_from = start;
  if (unknowns == 0) return q;

  RatMatrix system(unknowns, unknowns + 1);
  for (std::size_t row = 0; row < unknowns; ++row) {
    const std::size_t n = start + row;
    std::size_t col = 0;
    for (const auto& [lambda, m] : nonzero) {
      const Rational power = rational_pow(lambda, n);
      for (std::size_t j = 0; j < m; ++j) system(row, col++) = binomial(n, j) * power;
    }
    system(row, unknowns) = seq[n];
  }
  const RatMatrix solved = system.rref();
  std::size_t col = 0;
  for (const auto& [lambda, m] : nonzero) {
    UniPoly p;
    for (std::size_t j = 0; j < m; ++j) {
      p = p + solved(col, unknowns) * binomial_poly(j);
      ++col;
    }
    q.terms[lambda] = p;
  }
  q.normalize();
  for (std::size_t n = start; n < seq.size(); ++n) {
    if (eval(q, n) != seq[n]) {
      throw Error(ErrorCode::InvalidArgument, "exponential polynomial fails to reproduce term " +
                                                  std::to_string(n));
    }
  }
  return q;
}

ExpPoly require_exppoly(const Lrs& l) {
  auto r = from_lrs(l);
  if (auto* irr = std::get_if<IrrationalRoots>(&r)) {
    throw Error(ErrorCode::IrrationalRoots,
                "characteristic polynomial " + irr->polynomial.to_string() + " has irrational roots");
  }
  return std::get<ExpPoly>(r);
}

Rational eval(const ExpPoly& q, std::size_t n) {
  Rational acc = 0;
  const Rational x(static_cast<unsigned long>(n));
  for (const auto& [base, poly] : q.terms) acc += poly(x) * rational_pow(base, n);
  return acc;
}

ExpPoly add(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out = a;
  for (const auto& [base, poly] : b.terms) {
    auto [it, inserted] = out.terms.emplace(base, poly);
    if (!inserted) it->second = it->second + poly;
  }
  out.valid_from = std::max(a.valid_from, b.valid_from);
  out.normalize();
  return out;
}

ExpPoly mul(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ba, pa] : a.terms) {
    for (const auto& [bb, pb] : b.terms) {
      const Rational base = ba * bb;
      auto [it, inserted] = out.terms.emplace(base, pa * pb);
      if (!inserted) it->second = it->second + pa * pb;
    }
  }
  out.valid_from = std::max(a.valid_from, b.valid_from);
  out.normalize();
  return out;
}

Rational coeff_sum(const ExpPoly& q, std::size_t k) {
  Rational s = 0;
  for (const auto& [base, poly] : q.terms) s += poly.coefficient(k);
  return s;
}

std::size_t max_degree(const ExpPoly& q) {
  long d = 0;
  for (const auto& [base, poly] : q.terms) d = std::max(d, poly.degree());
  return static_cast<std::size_t>(d);
}

GenerableRecipe GenerableRecipe::constant(const Rational& alpha) {
  GenerableRecipe r;
  r.kind_ = Kind::Constant;
  r.alpha_ = alpha;
  return r;
}

GenerableRecipe GenerableRecipe::linear() {
  GenerableRecipe r;
  r.kind_ = Kind::Linear;
  return r;
}

GenerableRecipe GenerableRecipe::exponential(const Rational& alpha) {
  GenerableRecipe r;
  r.kind_ = Kind::Exponential;
  r.alpha_ = alpha;
  return r;
}

GenerableRecipe GenerableRecipe::geometric_sum(const Rational& alpha) {
  GenerableRecipe r;
  r.kind_ = Kind::GeometricSum;
  r.alpha_ = alpha;
  return r;
}

GenerableRecipe GenerableRecipe::sum(std::vector<GenerableRecipe> children) {
  GenerableRecipe r;
  r.kind_ = Kind::Sum;
  r.children_ = std::move(children);
  return r;
}

GenerableRecipe GenerableRecipe::product(std::vector<GenerableRecipe> children) {
  GenerableRecipe r;
  r.kind_ = Kind::Product;
  r.children_ = std::move(children);
  return r;
}

std::set<Rational> GenerableRecipe::constants() const {
  std::set<Rational> out;
  if (kind_ == Kind::Constant || kind_ == Kind::Exponential || kind_ == Kind::GeometricSum) {
    out.insert(alpha_);
  }
  for (const auto& c : children_) {
    auto sub = c.constants();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

ExpPoly realize(const GenerableRecipe& r, const std::optional<std::set<Rational>>& generators) {
  using Kind = GenerableRecipe::Kind;
  const bool uses_alpha =
      r.kind() == Kind::Constant || r.kind() == Kind::Exponential || r.kind() == Kind::GeometricSum;
  if (uses_alpha && generators && !generators->count(r.alpha())) {
    throw Error(ErrorCode::InvalidArgument, "constant " + r.alpha().get_str() + " is not a generator");
  }
  ExpPoly q;
  switch (r.kind()) {
    case Kind::Constant:
      q.terms[Rational(1)] = UniPoly::constant(r.alpha());
      break;
    case Kind::Linear:
      q.terms[Rational(1)] = UniPoly::monomial(1, 1);
      break;
    case Kind::Exponential:
      if (r.alpha() == 0) throw Error(ErrorCode::InvalidArgument, "exponential base must be nonzero");
      q.terms[r.alpha()] = UniPoly::constant(1);
      break;
    case Kind::GeometricSum: {
      if (r.alpha() == 1) throw Error(ErrorCode::InvalidArgument, "geometric sum needs alpha != 1");
      if (r.alpha() == 0) throw Error(ErrorCode::InvalidArgument, "geometric sum needs alpha != 0");
      const Rational c = 1 / (r.alpha() - 1);
      q.terms[r.alpha()] = UniPoly::constant(c);
      q.terms[Rational(1)] = UniPoly::constant(-c);
      break;
    }
    case Kind::Sum:
      for (const auto& c : r.children()) q = add(q, realize(c, generators));
      break;
    case Kind::Product: {
      q.terms[Rational(1)] = UniPoly::constant(1);
      for (const auto& c : r.children()) q = mul(q, realize(c, generators));
      break;
    }
  }
  q.normalize();
  return q;
}

std::vector<CoeffSumVerdict> coeff_sums_in_semiring(const ExpPoly& q, const RGenerators& gens,
                                                    const std::vector<std::size_t>& ks) {
  std::set<BigInt> allowed;
  for (const auto& g : gens.constants) {
    if (g == 0 || g.get_den() == 1) continue;
    for (const auto& [p, e] : factor_integer(g.get_den())) allowed.insert(p);
  }
  std::vector<std::size_t> which = ks;
  if (which.empty() && !q.terms.empty()) {
    for (std::size_t k = 0; k <= max_degree(q); ++k) which.push_back(k);
  }
  std::vector<CoeffSumVerdict> out;
  for (auto k : which) {
    CoeffSumVerdict v;
    v.k = k;
    v.value = coeff_sum(q, k);
    if (v.value == 0) continue;
    if (v.value.get_den() != 1) {
      for (const auto& [p, e] : factor_integer(v.value.get_den())) {
        if (!allowed.count(p)) {
          v.pass = false;
          if (!v.witness_prime) v.witness_prime = p;
          v.offending_primes.push_back(p);
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

FpScalar eval(const FpExpPoly& q, std::uint64_t n) {
  const std::uint64_t p = q.modulus;
  FpScalar acc(0, p);
  const FpScalar x(n % p, p);
  for (const auto& [base, poly] : q.terms) acc = acc + poly(x) * FpScalar(base, p).pow(n);
  return acc;
}

FpExpPoly minimal_degree_reduce(const FpExpPoly& q) {
  const std::uint64_t p = q.modulus;
  std::vector<std::uint64_t> frob(p + 1, 0);
  frob[1] = p - 1;
  frob[p] = 1;
  const FpPoly xp_minus_x(p, frob);
  FpExpPoly out;
  out.modulus = p;
  for (const auto& [base, poly] : q.terms) out.terms.emplace(base, divrem(poly, xp_minus_x).second);
  out.normalize();
  out.minimal_degree = true;
  return out;
}

FpScalar coeff_sum(const FpExpPoly& q, std::size_t k) {
  FpScalar s(0, q.modulus);
  for (const auto& [base, poly] : q.terms) s = s + FpScalar(poly.coefficient(k), q.modulus);
  return s;
}

namespace {

std::size_t max_degree(const FpExpPoly& q) {
  long d = 0;
  for (const auto& [base, poly] : q.terms) d = std::max(d, poly.degree());
  return static_cast<std::size_t>(d);
}

}  // namespace

bool charp_sum_invariants(const FpExpPoly& a, const FpExpPoly& b) {
  if (a.modulus != b.modulus) {
    throw Error(ErrorCode::ModulusMismatch, "coefficient sums over different prime fields");
  }
  const std::uint64_t p = a.modulus;
  if (!(coeff_sum(a, 0) == coeff_sum(b, 0))) return false;
  const std::size_t top = std::max(max_degree(a), max_degree(b));
  for (std::uint64_t r = 1; r < p; ++r) {
    FpScalar sa(0, p), sb(0, p);
    for (std::size_t k = r; k <= top; k += p - 1) {
      sa = sa + coeff_sum(a, k);
      sb = sb + coeff_sum(b, k);
    }
    if (!(sa == sb)) return false;
  }
  return true;
}

bool is_pointwise_representable_mod_p(const std::vector<FpScalar>& prefix) {
  if (prefix.empty()) throw Error(ErrorCode::InvalidArgument, "empty prefix");
  const std::uint64_t p = prefix.front().modulus();
  if (prefix.size() < 2 * p) {
    throw Error(ErrorCode::InvalidArgument,
                "prefix needs at least " + std::to_string(2 * p) + " terms");
  }
  for (std::size_t n = 0; n < prefix.size(); ++n) {
    if (prefix[n].modulus() != p) throw Error(ErrorCode::ModulusMismatch, "mixed moduli in prefix");
    if (!(prefix[n] == prefix[n % p])) return false;
  }
  return true;
}

FpExpPoly to_fp(const ExpPoly& q, std::uint64_t p) {
  FpExpPoly out;
  out.modulus = p;
  for (const auto& [base, poly] : q.terms) {
    const FpScalar b = FpScalar::from_rational(base, p);
    if (b.residue() == 0) {
      throw Error(ErrorCode::InvalidArgument, "base " + base.get_str() + " vanishes mod " + std::to_string(p));
    }
    std::vector<std::uint64_t> coeffs;
    for (const auto& c : poly.coefficients()) coeffs.push_back(FpScalar::from_rational(c, p).residue());
    FpPoly fp(p, std::move(coeffs));
    auto it = out.terms.find(b.residue());
    if (it == out.terms.end()) {
      out.terms.emplace(b.residue(), fp);
    } else {
      it->second = it->second + fp;
    }
  }
  out.normalize();
  return out;
}

}  // namespace psfwb
