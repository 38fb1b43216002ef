#include "psfwb/wa.hpp"

#include <algorithm>
#include <deque>

#include "psfwb/error.hpp"

namespace psfwb {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
  for (const auto& s : symbols_) {
    if (s.empty() || s == "eps") throw Error(ErrorCode::InvalidArgument, "reserved or empty symbol");
    if (s.find_first_of(" \t.,") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "symbol '" + s + "' contains a separator");
    }
  }
}

std::size_t Alphabet::index(std::string_view symbol) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol) {
    throw Error(ErrorCode::UnknownLetter, "unknown letter '" + std::string(symbol) + "'");
  }
  return static_cast<std::size_t>(it - symbols_.begin());
}

bool Alphabet::contains(std::string_view symbol) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), symbol);
}

bool Alphabet::single_char() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  if (text.empty() || text == "eps") return w;
  if (single_char()) {
    for (char c : text) {
      if (c == ' ' || c == '.') continue;
      w.push_back(index(std::string_view(&c, 1)));
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of(" .", pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) w.push_back(index(text.substr(pos, end - pos)));
    pos = end + 1;
  }
  return w;
}

std::string Alphabet::render(const Word& w) const {
  if (w.empty()) return "eps";
  std::string out;
  const bool compact = single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += '.';
    out += symbol(w[i]);
  }
  return out;
}

WeightedAutomaton::WeightedAutomaton(std::size_t dim, Alphabet alphabet,
                                     std::vector<RatMatrix> transitions, RationalVector initial,
                                     RationalVector final_weights)
    : dim_(dim),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      final_(std::move(final_weights)) {
  if (transitions_.size() != alphabet_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one transition matrix per letter is required");
  }
  for (const auto& m : transitions_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "transition matrix is not dim x dim");
    }
  }
  if (initial_.size() != dim_ || final_.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "initial/final vectors must have length dim");
  }
}

RatMatrix WeightedAutomaton::word_matrix(const Word& w) const {
  RatMatrix m = RatMatrix::identity(dim_);
  for (auto letter : w) m = m * matrix(letter);
  return m;
}

RationalVector WeightedAutomaton::forward(const Word& w) const {
  RationalVector v = initial_;
  for (auto letter : w) {
    if (letter >= transitions_.size()) throw Error(ErrorCode::UnknownLetter, "letter index out of range");
    v = v * transitions_[letter];
  }
  return v;
}

std::size_t Nfa::edge_count() const {
  std::size_t n = 0;
  for (const auto& per_letter : successors) {
    for (const auto& targets : per_letter) n += targets.size();
  }
  return n;
}

Rational evaluate(const WeightedAutomaton& a, const Word& w) {
  return dot(a.forward(w), a.final_weights());
}

Nfa underlying_nfa(const WeightedAutomaton& a) {
  Nfa n;
  n.dim = a.dim();
  n.alphabet = a.alphabet();
  n.successors.assign(a.alphabet().size(), std::vector<std::vector<std::size_t>>(a.dim()));
  for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
    const RatMatrix& m = a.matrix(l);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (m(i, j) != 0) n.successors[l][i].push_back(j);
      }
    }
  }
  n.initial.resize(a.dim());
  n.final_states.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    n.initial[i] = a.initial()[i] != 0;
    n.final_states[i] = a.final_weights()[i] != 0;
  }
  return n;
}

namespace {

std::vector<BigInt> runs_per_state(const Nfa& n, const Word& w) {
  std::vector<BigInt> count(n.dim);
  for (std::size_t i = 0; i < n.dim; ++i) count[i] = n.initial[i] ? 1 : 0;
  for (auto letter : w) {
    if (letter >= n.successors.size()) throw Error(ErrorCode::UnknownLetter, "letter index out of range");
    std::vector<BigInt> next(n.dim);
    for (std::size_t i = 0; i < n.dim; ++i) {
      if (count[i] == 0) continue;
      for (auto j : n.successors[letter][i]) next[j] += count[i];
    }
    count = std::move(next);
  }
  return count;
}

}  // namespace

BigInt run_count(const WeightedAutomaton& a, const Word& w) {
  const Nfa n = underlying_nfa(a);
  const auto count = runs_per_state(n, w);
  BigInt total = 0;
  for (std::size_t i = 0; i < n.dim; ++i) {
    if (n.final_states[i]) total += count[i];
  }
  return total;
}

BigInt initial_run_count(const WeightedAutomaton& a, const Word& w) {
  BigInt total = 0;
  for (const auto& c : runs_per_state(underlying_nfa(a), w)) total += c;
  return total;
}

namespace {

std::vector<bool> reach(const Nfa& n, const std::vector<bool>& seeds, bool backwards) {
  std::vector<std::vector<std::size_t>> adj(n.dim);
  for (const auto& per_letter : n.successors) {
    for (std::size_t i = 0; i < n.dim; ++i) {
      for (auto j : per_letter[i]) {
        if (backwards) {
          adj[j].push_back(i);
        } else {
          adj[i].push_back(j);
        }
      }
    }
  }
  std::vector<bool> seen = seeds;
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n.dim; ++i) {
    if (seen[i]) queue.push_back(i);
  }
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (auto j : adj[i]) {
      if (!seen[j]) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

WeightedAutomaton trim(const WeightedAutomaton& a, std::vector<std::size_t>* kept) {
  Nfa n = underlying_nfa(a);
  auto fwd = reach(n, n.initial, false);
  auto bwd = reach(n, n.final_states, true);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (fwd[i] && bwd[i]) keep.push_back(i);
  }
  const std::size_t d = keep.size();
  std::vector<RatMatrix> mats;
  for (const auto& m : a.transitions()) {
    RatMatrix t(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) t(i, j) = m(keep[i], keep[j]);
    }
    mats.push_back(std::move(t));
  }
  RationalVector init(d), fin(d);
  for (std::size_t i = 0; i < d; ++i) {
    init[i] = a.initial()[keep[i]];
    fin[i] = a.final_weights()[keep[i]];
  }
  if (kept != nullptr) *kept = keep;
  return WeightedAutomaton(d, a.alphabet(), std::move(mats), std::move(init), std::move(fin));
}

WeightedAutomaton difference(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch, "difference needs identical alphabets");
  }
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  std::vector<RatMatrix> mats;
  for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < da; ++j) m(i, j) = a.matrix(l)(i, j);
    }
    for (std::size_t i = 0; i < db; ++i) {
      for (std::size_t j = 0; j < db; ++j) m(da + i, da + j) = b.matrix(l)(i, j);
    }
    mats.push_back(std::move(m));
  }
  RationalVector init(d), fin(d);
  for (std::size_t i = 0; i < da; ++i) {
    init[i] = a.initial()[i];
    fin[i] = a.final_weights()[i];
  }
  for (std::size_t i = 0; i < db; ++i) {
    init[da + i] = b.initial()[i];
    fin[da + i] = -b.final_weights()[i];
  }
  return WeightedAutomaton(d, a.alphabet(), std::move(mats), std::move(init), std::move(fin));
}

namespace {

// Incrementally maintained echelon basis; each stored row has a leading 1
// at its pivot column.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  // Returns true and stores the reduced vector when v is independent.
  bool insert(RationalVector v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational f = v[pivots_[k]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (rows_[k][j] != 0) v[j] -= f * rows_[k][j];
      }
    }
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

ZeronessResult zeroness(const WeightedAutomaton& a) {
  ZeronessResult result;
  EchelonBasis basis(a.dim());
  std::deque<std::pair<RationalVector, Word>> queue;
  queue.emplace_back(a.initial(), Word{});
  while (!queue.empty()) {
    auto [v, w] = std::move(queue.front());
    queue.pop_front();
    Rational value = dot(v, a.final_weights());
    if (value != 0) {
      result.zero = false;
      result.witness = w;
      result.witness_value = value;
      result.forward_rank = basis.rank();
      return result;
    }
    if (!basis.insert(v)) continue;
    for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
      Word next = w;
      next.push_back(l);
      queue.emplace_back(v * a.matrix(l), std::move(next));
    }
  }
  result.forward_rank = basis.rank();
  return result;
}

EquivalenceResult equivalence(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  auto z = zeroness(difference(a, b));
  EquivalenceResult r;
  r.equivalent = z.zero;
  r.counterexample = z.witness;
  return r;
}

}  // namespace psfwb
