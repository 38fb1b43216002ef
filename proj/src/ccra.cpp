#include "psfwb/ccra.hpp"

#include <bit>
#include <map>

#include "psfwb/error.hpp"

namespace psfwb {

namespace {

void require_copyless_expr(const Expr& e, const std::vector<std::string>& names,
                           const std::string& where) {
  for (const auto& [var, n] : e.occurrences()) {
    if (n > 1) {
      throw Error(ErrorCode::NotCopyless,
                  where + ": register " + (var < names.size() ? names[var] : "x" + std::to_string(var)) +
                      " read " + std::to_string(n) + " times in '" + e.to_string(names) + "'");
    }
  }
}

}  // namespace

Ccra::Ccra(std::vector<std::string> states, std::size_t initial_state,
           std::vector<std::string> registers, Alphabet alphabet,
           std::vector<std::vector<CcraTransition>> delta, RationalVector mu, std::vector<Expr> nu)
    : states_(std::move(states)),
      initial_(initial_state),
      registers_(std::move(registers)),
      alphabet_(std::move(alphabet)),
      delta_(std::move(delta)),
      mu_(std::move(mu)),
      nu_(std::move(nu)) {
  const std::size_t d = registers_.size();
  if (states_.empty()) throw Error(ErrorCode::InvalidArgument, "a CCRA needs at least one state");
  if (initial_ >= states_.size()) throw Error(ErrorCode::InvalidArgument, "initial state out of range");
  if (mu_.size() != d) throw Error(ErrorCode::DimensionMismatch, "one initial value per register");
  if (nu_.size() != states_.size()) throw Error(ErrorCode::DimensionMismatch, "one output per state");
  if (delta_.size() != states_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "transition table must cover every state");
  }
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (delta_[q].size() != alphabet_.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "transition table must cover every letter in state " + states_[q]);
    }
    for (std::size_t a = 0; a < alphabet_.size(); ++a) {
      const auto& t = delta_[q][a];
      const std::string where = "transition " + states_[q] + " on " + alphabet_.symbol(a);
      if (t.target >= states_.size()) throw Error(ErrorCode::InvalidArgument, where + ": bad target");
      if (t.update.arity != d) throw Error(ErrorCode::DimensionMismatch, where + ": wrong arity");
      auto verdict = is_copyless(t.update);
      if (!verdict.copyless) {
        const auto var = verdict.repeated.front();
        throw Error(ErrorCode::NotCopyless,
                    where + ": register " + registers_[var] + " is read more than once");
      }
    }
    if (nu_[q].min_arity() > d) {
      throw Error(ErrorCode::DimensionMismatch, "output of " + states_[q] + " reads an unknown register");
    }
    require_copyless_expr(nu_[q], registers_, "output of " + states_[q]);
  }
}

CcraTrace trace(const Ccra& c, const Word& w) {
  CcraTrace t;
  std::size_t q = c.initial_state();
  RationalVector regs = c.mu();
  t.states.push_back(q);
  t.registers.push_back(regs);
  for (auto letter : w) {
    if (letter >= c.alphabet().size()) throw Error(ErrorCode::UnknownLetter, "letter index out of range");
    const auto& tr = c.transition(q, letter);
    regs = tr.update.apply(regs);
    q = tr.target;
    t.states.push_back(q);
    t.registers.push_back(regs);
  }
  t.output = c.nu()[q].eval(regs);
  return t;
}

Rational evaluate(const Ccra& c, const Word& w) {
  std::size_t q = c.initial_state();
  RationalVector regs = c.mu();
  for (auto letter : w) {
    if (letter >= c.alphabet().size()) throw Error(ErrorCode::UnknownLetter, "letter index out of range");
    const auto& tr = c.transition(q, letter);
    regs = tr.update.apply(regs);
    q = tr.target;
  }
  return c.nu()[q].eval(regs);
}

RGenerators extract_generators(const Ccra& c) {
  RGenerators g;
  for (const auto& v : c.mu()) g.constants.insert(v);
  for (const auto& row : c.delta()) {
    for (const auto& t : row) {
      for (const auto& comp : t.update.components) comp.collect_constants(g.constants);
    }
  }
  for (const auto& e : c.nu()) e.collect_constants(g.constants);
  if (g.constants.empty()) g.constants.insert(Rational(0));
  return g;
}

WordEffect compose_word(const Ccra& c, const Word& w) {
  WordEffect eff;
  for (std::size_t q = 0; q < c.state_count(); ++q) {
    std::size_t cur = q;
    PolyMap acc = PolyMap::identity(c.register_count());
    for (auto letter : w) {
      if (letter >= c.alphabet().size()) throw Error(ErrorCode::UnknownLetter, "letter index out of range");
      const auto& tr = c.transition(cur, letter);
      acc = compose_maps(tr.update, acc);
      cur = tr.target;
    }
    eff.next_state.push_back(cur);
    eff.maps.push_back(std::move(acc));
  }
  return eff;
}

std::optional<std::size_t> translation_dimension(const Ccra& c) {
  const std::size_t d = c.register_count();
  if (d >= 48) return std::nullopt;
  const std::size_t per_state = std::size_t{1} << d;
  if (c.state_count() > (std::size_t{1} << 62) / per_state) return std::nullopt;
  return c.state_count() * per_state;
}

namespace {

using MaskPoly = std::map<std::uint64_t, Rational>;

MaskPoly to_masks(const std::map<std::vector<std::size_t>, Rational>& p) {
  MaskPoly out;
  for (const auto& [vars, coef] : p) {
    std::uint64_t m = 0;
    for (auto v : vars) m |= std::uint64_t{1} << v;
    out[m] += coef;
  }
  return out;
}

MaskPoly multiply(const MaskPoly& a, const MaskPoly& b) {
  MaskPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if ((ma & mb) != 0) {
        throw Error(ErrorCode::SquareDetected, "product of update components shares a register");
      }
      out[ma | mb] += ca * cb;
    }
  }
  return out;
}

}  // namespace

WeightedAutomaton to_weighted_automaton(const Ccra& c, std::size_t budget) {
  const auto dimension = translation_dimension(c);
  if (!dimension || *dimension > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "translation needs " + std::to_string(c.state_count()) + " * 2^" +
                    std::to_string(c.register_count()) + " coordinates, budget is " +
                    std::to_string(budget));
  }
  const std::size_t d = c.register_count();
  const std::size_t block = std::size_t{1} << d;
  const std::size_t dim = *dimension;

  std::vector<RatMatrix> mats(c.alphabet().size(), RatMatrix(dim, dim));
  for (std::size_t q = 0; q < c.state_count(); ++q) {
    for (std::size_t a = 0; a < c.alphabet().size(); ++a) {
      const auto& tr = c.transition(q, a);
      std::vector<MaskPoly> comps;
      for (const auto& e : tr.update.components) comps.push_back(to_masks(expand_squarefree(e, d)));
      std::vector<MaskPoly> prod(block);
      prod[0] = MaskPoly{{0, Rational(1)}};
      for (std::size_t s = 1; s < block; ++s) {
        const auto low = static_cast<std::size_t>(std::countr_zero(s));
        prod[s] = multiply(prod[s & (s - 1)], comps[low]);
      }
      RatMatrix& m = mats[a];
      for (std::size_t s = 0; s < block; ++s) {
        for (const auto& [t, coef] : prod[s]) {
          if (coef != 0) m(q * block + t, tr.target * block + s) += coef;
        }
      }
    }
  }
  RationalVector init(dim), fin(dim);
  for (std::size_t s = 0; s < block; ++s) {
    Rational v = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (s >> i & 1) v *= c.mu()[i];
    }
    init[c.initial_state() * block + s] = v;
  }
  for (std::size_t q = 0; q < c.state_count(); ++q) {
    for (const auto& [t, coef] : to_masks(expand_squarefree(c.nu()[q], d))) fin[q * block + t] += coef;
  }
  return WeightedAutomaton(dim, c.alphabet(), std::move(mats), std::move(init), std::move(fin));
}

CcraZeronessResult zeroness_ccra(const Ccra& c, std::size_t budget) {
  const WeightedAutomaton wa = to_weighted_automaton(c, budget);
  const ZeronessResult z = zeroness(wa);
  CcraZeronessResult r;
  r.dimension = wa.dim();
  r.zero = z.zero;
  if (!z.zero) {
    const Rational direct = evaluate(c, *z.witness);
    if (direct != *z.witness_value) {
      throw Error(ErrorCode::InvalidArgument, "translated automaton disagrees with the CCRA on the witness");
    }
    r.witness = z.witness;
    r.witness_value = direct;
  }
  return r;
}

Ccra difference_ccra(const Ccra& a, const Ccra& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch, "difference needs identical alphabets");
  }
  const std::size_t da = a.register_count(), db = b.register_count(), d = da + db;
  const std::size_t nb = b.state_count();
  std::vector<Expr> shift_a, shift_b;
  for (std::size_t i = 0; i < da; ++i) shift_a.push_back(Expr::variable(i));
  for (std::size_t i = 0; i < db; ++i) shift_b.push_back(Expr::variable(da + i));

  std::vector<std::string> states;
  for (const auto& p : a.states()) {
    for (const auto& q : b.states()) states.push_back(p + "|" + q);
  }
  std::vector<std::string> regs;
  for (const auto& r : a.registers()) regs.push_back("l_" + r);
  for (const auto& r : b.registers()) regs.push_back("r_" + r);

  std::vector<std::vector<CcraTransition>> delta(states.size());
  for (std::size_t p = 0; p < a.state_count(); ++p) {
    for (std::size_t q = 0; q < nb; ++q) {
      for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
        const auto& ta = a.transition(p, l);
        const auto& tb = b.transition(q, l);
        std::vector<Expr> comps;
        for (const auto& e : ta.update.components) comps.push_back(e.substitute(shift_a));
        for (const auto& e : tb.update.components) comps.push_back(e.substitute(shift_b));
        delta[p * nb + q].push_back({ta.target * nb + tb.target, PolyMap(d, std::move(comps))});
      }
    }
  }
  RationalVector mu = a.mu();
  mu.insert(mu.end(), b.mu().begin(), b.mu().end());
  std::vector<Expr> nu;
  for (std::size_t p = 0; p < a.state_count(); ++p) {
    for (std::size_t q = 0; q < nb; ++q) {
      nu.push_back((a.nu()[p].substitute(shift_a) - b.nu()[q].substitute(shift_b)).simplified());
    }
  }
  return Ccra(std::move(states), a.initial_state() * nb + b.initial_state(), std::move(regs),
              a.alphabet(), std::move(delta), std::move(mu), std::move(nu));
}

CcraEquivalenceResult equivalence_ccra(const Ccra& a, const Ccra& b, std::size_t budget) {
  auto z = zeroness_ccra(difference_ccra(a, b), budget);
  CcraEquivalenceResult r;
  r.equivalent = z.zero;
  r.counterexample = z.witness;
  return r;
}

const char* register_kind_name(RegisterKind k) {
  switch (k) {
    case RegisterKind::Constant: return "constant";
    case RegisterKind::Updating: return "updating";
    case RegisterKind::Neither: return "neither";
  }
  return "unknown";
}

namespace {

std::vector<std::vector<std::size_t>> flow_graph(const PolyMap& m) {
  std::vector<std::vector<std::size_t>> flow(m.arity);
  for (std::size_t v = 0; v < m.arity; ++v) {
    for (const auto& [u, n] : m.components[v].occurrences()) flow[u].push_back(v);
  }
  return flow;
}

// Cycle lengths of a graph in which every vertex has at most one successor.
std::set<std::size_t> functional_cycle_lengths(const std::vector<std::optional<std::size_t>>& next) {
  std::set<std::size_t> lengths;
  const std::size_t n = next.size();
  std::vector<int> colour(n, 0);  // 0 new, 1 on current walk, 2 done
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != 0) continue;
    std::vector<std::size_t> walk;
    std::optional<std::size_t> v = s;
    while (v && colour[*v] == 0) {
      colour[*v] = 1;
      walk.push_back(*v);
      v = next[*v];
    }
    if (v && colour[*v] == 1) {
      std::size_t len = 0;
      for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
        ++len;
        if (*it == *v) break;
      }
      lengths.insert(len);
    }
    for (auto x : walk) colour[x] = 2;
  }
  return lengths;
}

std::set<std::size_t> flow_cycle_lengths(const PolyMap& m) {
  auto flow = flow_graph(m);
  std::vector<std::optional<std::size_t>> next(m.arity);
  for (std::size_t u = 0; u < m.arity; ++u) {
    if (flow[u].size() > 1) {
      throw Error(ErrorCode::NotCopyless, "register flow graph has out-degree above one");
    }
    if (!flow[u].empty()) next[u] = flow[u].front();
  }
  return functional_cycle_lengths(next);
}

BigInt lcm_of(const std::set<std::size_t>& values) {
  BigInt l = 1;
  for (auto v : values) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), v);
  return l;
}

std::vector<bool> reachable_states(const Ccra& c) {
  std::vector<bool> seen(c.state_count(), false);
  std::vector<std::size_t> stack{c.initial_state()};
  seen[c.initial_state()] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (const auto& t : c.delta()[q]) {
      if (!seen[t.target]) {
        seen[t.target] = true;
        stack.push_back(t.target);
      }
    }
  }
  return seen;
}

}  // namespace

RegisterClassification classify_registers(const Ccra& c) {
  if (c.state_count() != 1 || c.alphabet().size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "register classification needs one state and one letter");
  }
  const PolyMap& m = c.transition(0, 0).update;
  RegisterClassification r;
  r.flow = flow_graph(m);
  for (const auto& out : r.flow) {
    if (out.size() > 1) throw Error(ErrorCode::NotCopyless, "register flow graph has out-degree above one");
  }
  std::vector<bool> constant(m.arity);
  for (std::size_t v = 0; v < m.arity; ++v) constant[v] = m.components[v].occurrences().empty();
  for (std::size_t v = 0; v < m.arity; ++v) {
    if (constant[v]) {
      r.kinds.push_back(RegisterKind::Constant);
      continue;
    }
    bool updating = true;
    for (const auto& [u, n] : m.components[v].occurrences()) {
      if (u != v && !constant[u]) updating = false;
    }
    r.kinds.push_back(updating ? RegisterKind::Updating : RegisterKind::Neither);
    if (!updating) r.simple = false;
  }
  return r;
}

PumpModulus pump_modulus(const Ccra& c) {
  PumpModulus p;
  const unsigned long r = c.register_count();
  const unsigned long s = c.state_count();
  p.factorial_bound = factorial(4 * r + 2) * factorial(s);

  const auto reach = reachable_states(c);
  std::set<std::size_t> control, flow;
  for (std::size_t a = 0; a < c.alphabet().size(); ++a) {
    std::vector<std::optional<std::size_t>> next(c.state_count());
    for (std::size_t q = 0; q < c.state_count(); ++q) {
      if (!reach[q]) continue;
      next[q] = c.transition(q, a).target;
      auto lengths = flow_cycle_lengths(c.transition(q, a).update);
      flow.insert(lengths.begin(), lengths.end());
    }
    auto lengths = functional_cycle_lengths(next);
    control.insert(lengths.begin(), lengths.end());
  }
  p.structural_value = lcm_of(control) * lcm_of(flow);
  return p;
}

BigInt word_pump_modulus(const Ccra& c, const Word& u, const Word& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "pumped word must be nonempty");
  std::size_t q = c.initial_state();
  for (auto letter : u) q = c.transition(q, letter).target;
  const WordEffect eff = compose_word(c, w);
  std::map<std::size_t, std::size_t> first_seen;
  std::size_t step = 0;
  while (!first_seen.count(q)) {
    first_seen[q] = step++;
    q = eff.next_state[q];
  }
  const std::size_t cycle = step - first_seen[q];
  PolyMap around = PolyMap::identity(c.register_count());
  std::size_t cur = q;
  for (std::size_t i = 0; i < cycle; ++i) {
    around = compose_maps(eff.maps[cur], around);
    cur = eff.next_state[cur];
  }
  return BigInt(static_cast<unsigned long>(cycle)) * lcm_of(flow_cycle_lengths(around));
}

}  // namespace psfwb
