#include "psfwb/qbf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "psfwb/error.hpp"

namespace psfwb {

struct Circuit::Node {
  Kind kind = Kind::Var;
  std::size_t index = 0;
  std::vector<Circuit> children;
  std::size_t size = 1;
  std::size_t bound = 0;
};

Circuit::Circuit(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Circuit Circuit::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = index;
  n->bound = index + 1;
  return Circuit(std::move(n));
}

Circuit Circuit::negate(Circuit a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->size = a.size() + 1;
  n->bound = a.var_bound();
  n->children.push_back(std::move(a));
  return Circuit(std::move(n));
}

Circuit Circuit::conj(Circuit a, Circuit b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->size = a.size() + b.size() + 1;
  n->bound = std::max(a.var_bound(), b.var_bound());
  n->children.push_back(std::move(a));
  n->children.push_back(std::move(b));
  return Circuit(std::move(n));
}

Circuit Circuit::disj(Circuit a, Circuit b) { return negate(conj(negate(std::move(a)), negate(std::move(b)))); }

Circuit Circuit::implies(Circuit a, Circuit b) { return negate(conj(std::move(a), negate(std::move(b)))); }

Circuit Circuit::iff(Circuit a, Circuit b) { return conj(implies(a, b), implies(b, a)); }

Circuit Circuit::all_of(std::vector<Circuit> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "empty conjunction");
  Circuit acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Circuit::Kind Circuit::kind() const { return node_->kind; }
std::size_t Circuit::var_index() const { return node_->index; }
const std::vector<Circuit>& Circuit::children() const { return node_->children; }
std::size_t Circuit::size() const { return node_->size; }
std::size_t Circuit::var_bound() const { return node_->bound; }

bool Circuit::eval(const std::vector<bool>& assignment) const {
  switch (kind()) {
    case Kind::Var:
      if (var_index() >= assignment.size()) throw Error(ErrorCode::DimensionMismatch, "assignment too short");
      return assignment[var_index()];
    case Kind::Not:
      return !children()[0].eval(assignment);
    case Kind::And:
      return children()[0].eval(assignment) && children()[1].eval(assignment);
  }
  return false;
}

std::string Circuit::to_prefix(const std::vector<std::string>& names) const {
  switch (kind()) {
    case Kind::Var:
      return var_index() < names.size() ? names[var_index()] : "v" + std::to_string(var_index());
    case Kind::Not:
      return "not " + children()[0].to_prefix(names);
    case Kind::And:
      return "and " + children()[0].to_prefix(names) + " " + children()[1].to_prefix(names);
  }
  return {};
}

std::vector<std::string> Qbf::variable_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t col = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
  }
  return p;
}

[[noreturn]] void fail(std::string_view text, std::size_t offset, const std::string& msg) {
  const Position p = position_of(text, offset);
  throw ParseError(p.line, p.col, msg);
}

enum class Tok { Forall, Exists, Not, And, Or, Implies, Iff, LParen, RParen, Sep, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const std::vector<std::pair<std::string_view, Tok>>& symbol_table() {
  static const std::vector<std::pair<std::string_view, Tok>> table = {
      {"∀", Tok::Forall}, {"∃", Tok::Exists}, {"¬", Tok::Not},  {"∧", Tok::And},
      {"∨", Tok::Or},     {"→", Tok::Implies}, {"↔", Tok::Iff}, {"<->", Tok::Iff},
      {"<=>", Tok::Iff},       {"->", Tok::Implies},     {"=>", Tok::Implies}, {"/\\", Tok::And},
      {"\\/", Tok::Or},        {"&", Tok::And},          {"|", Tok::Or},       {"!", Tok::Not},
      {"~", Tok::Not},         {"(", Tok::LParen},       {")", Tok::RParen},   {".", Tok::Sep},
      {",", Tok::Sep},         {":", Tok::Sep},
  };
  return table;
}

std::optional<std::pair<std::size_t, Tok>> match_symbol(std::string_view text, std::size_t i) {
  for (const auto& [sym, kind] : symbol_table()) {
    if (text.substr(i, sym.size()) == sym) return std::make_pair(sym.size(), kind);
  }
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view text) {
  static const std::map<std::string, Tok> keywords = {
      {"forall", Tok::Forall}, {"exists", Tok::Exists}, {"not", Tok::Not},   {"and", Tok::And},
      {"or", Tok::Or},         {"implies", Tok::Implies}, {"iff", Tok::Iff},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    if (auto sym = match_symbol(text, i)) {
      out.push_back({sym->second, std::string(text.substr(i, sym->first)), i});
      i += sym->first;
      continue;
    }
    if (std::isalnum(ch) || ch == '_' || ch == '\'' || ch >= 0x80) {
      const std::size_t start = i;
      while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c) || match_symbol(text, i)) break;
        if (!(std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80)) break;
        ++i;
      }
      std::string word(text.substr(start, i - start));
      auto kw = keywords.find(word);
      out.push_back({kw == keywords.end() ? Tok::Ident : kw->second, word, start});
      continue;
    }
    fail(text, i, std::string("unexpected character '") + text[i] + "'");
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text), toks_(tokenize(text)) {}

  Qbf parse() {
    struct Quant {
      bool forall;
      std::string name;
    };
    std::vector<Quant> quants;
    while (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
      const bool forall = next().kind == Tok::Forall;
      const Token& name = expect(Tok::Ident, "a variable name after the quantifier");
      quants.push_back({forall, name.text});
      while (peek().kind == Tok::Sep) next();
    }

    // Strict alternation: insert unused variables where a quantifier is missing.
    struct Pair {
      std::optional<std::string> x, y;
    };
    std::vector<Pair> pairs;
    bool want_forall = true;
    for (const auto& q : quants) {
      if (q.forall) {
        if (!want_forall) pairs.back().y = std::nullopt;
        pairs.push_back({q.name, std::nullopt});
        want_forall = false;
      } else {
        if (want_forall) pairs.push_back({std::nullopt, std::nullopt});
        pairs.back().y = q.name;
        want_forall = true;
      }
    }
    if (pairs.empty()) pairs.push_back({});
    const std::size_t k = pairs.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (auto [name, index] : {std::make_pair(pairs[i].x, i), std::make_pair(pairs[i].y, k + i)}) {
        if (!name) continue;
        if (!names_.emplace(*name, index).second) {
          fail(text_, 0, "variable '" + *name + "' is quantified twice");
        }
      }
    }

    Circuit matrix = iff_level();
    if (peek().kind != Tok::End) fail(text_, peek().offset, "unexpected '" + peek().text + "'");
    return Qbf{k, matrix};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(text_, peek().offset, "expected " + what);
    return next();
  }

  Circuit iff_level() {
    Circuit lhs = implies_level();
    while (peek().kind == Tok::Iff) {
      next();
      lhs = Circuit::iff(lhs, implies_level());
    }
    return lhs;
  }

  Circuit implies_level() {
    Circuit lhs = or_level();
    if (peek().kind == Tok::Implies) {
      next();
      return Circuit::implies(lhs, implies_level());
    }
    return lhs;
  }

  Circuit or_level() {
    Circuit lhs = and_level();
    while (peek().kind == Tok::Or) {
      next();
      lhs = Circuit::disj(lhs, and_level());
    }
    return lhs;
  }

  Circuit and_level() {
    Circuit lhs = unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = Circuit::conj(lhs, unary());
    }
    return lhs;
  }

  Circuit unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        next();
        return Circuit::negate(unary());
      case Tok::LParen: {
        next();
        Circuit inner = iff_level();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        next();
        auto it = names_.find(t.text);
        if (it == names_.end()) fail(text_, t.offset, "variable '" + t.text + "' is not quantified");
        return Circuit::var(it->second);
      }
      default:
        fail(text_, t.offset, t.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + t.text + "'");
    }
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> names_;
};

struct Word_ {
  std::string text;
  std::size_t offset;
};

class PrefixParser {
 public:
  PrefixParser(std::string_view text, std::vector<Word_> words, std::size_t k)
      : text_(text), words_(std::move(words)), k_(k) {}

  Circuit parse() {
    Circuit c = node();
    if (pos_ != words_.size()) fail(text_, words_[pos_].offset, "trailing input '" + words_[pos_].text + "'");
    return c;
  }

 private:
  Circuit node() {
    if (pos_ >= words_.size()) fail(text_, text_.size(), "unexpected end of matrix");
    const Word_& w = words_[pos_++];
    if (w.text == "not") return Circuit::negate(node());
    if (w.text == "and" || w.text == "or" || w.text == "implies" || w.text == "iff") {
      Circuit a = node();
      Circuit b = node();
      if (w.text == "and") return Circuit::conj(a, b);
      if (w.text == "or") return Circuit::disj(a, b);
      if (w.text == "implies") return Circuit::implies(a, b);
      return Circuit::iff(a, b);
    }
    if ((w.text[0] == 'x' || w.text[0] == 'y') && w.text.size() > 1 &&
        std::all_of(w.text.begin() + 1, w.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const std::size_t i = std::stoul(w.text.substr(1));
      if (i < 1 || i > k_) fail(text_, w.offset, "variable '" + w.text + "' is outside 1.." + std::to_string(k_));
      return Circuit::var(w.text[0] == 'x' ? i - 1 : k_ + i - 1);
    }
    fail(text_, w.offset, "unknown token '" + w.text + "'");
  }

  std::string_view text_;
  std::vector<Word_> words_;
  std::size_t k_;
  std::size_t pos_ = 0;
};

Qbf parse_file_form(std::string_view text) {
  // Words with offsets, skipping comment lines and parentheses.
  std::vector<Word_> words;
  std::size_t i = 0;
  std::size_t line_start = 0;
  bool comment = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      comment = false;
      line_start = i + 1;
      ++i;
      continue;
    }
    if (i == line_start && c == '#') comment = true;
    if (comment || std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
           text[i] != ')') {
      ++i;
    }
    words.push_back({std::string(text.substr(start, i - start)), start});
  }
  if (words.size() < 2 || words[0].text != "forall-exists" || words[1].text.rfind("k=", 0) != 0) {
    fail(text, words.empty() ? 0 : words[0].offset, "expected 'forall-exists k=<n>'");
  }
  std::size_t k = 0;
  try {
    k = std::stoul(words[1].text.substr(2));
  } catch (const std::exception&) {
    fail(text, words[1].offset, "bad quantifier count");
  }
  if (k == 0) fail(text, words[1].offset, "k must be at least 1");
  words.erase(words.begin(), words.begin() + 2);
  return Qbf{k, PrefixParser(text, std::move(words), k).parse()};
}

}  // namespace

Qbf parse_and_normalize(std::string_view text) {
  std::size_t i = 0;
  // Skip a format header and comment lines to find the first content line.
  std::string_view body = text;
  while (i < text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(i, eol - i);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#' || line.substr(first).rfind("psfwb-format", 0) == 0) {
      i = eol + 1;
      continue;
    }
    body = text.substr(i);
    if (line.substr(first).rfind("forall-exists", 0) == 0) return parse_file_form(body);
    break;
  }
  return InfixParser(body).parse();
}

std::string render_qbf(const Qbf& q) {
  return "forall-exists k=" + std::to_string(q.k) + "\n" + q.matrix.to_prefix(q.variable_names()) + "\n";
}

namespace {

Expr translate(const Circuit& c, std::size_t num_vars, std::size_t copies, std::vector<std::size_t>& used) {
  switch (c.kind()) {
    case Circuit::Kind::Var: {
      const std::size_t v = c.var_index();
      if (v >= num_vars) throw Error(ErrorCode::DimensionMismatch, "circuit variable outside the pool");
      if (used[v] >= copies) {
        throw Error(ErrorCode::CopyPoolExhausted,
                    "variable " + std::to_string(v) + " needs more than " + std::to_string(copies) + " copies");
      }
      return Expr::variable(used[v]++ * num_vars + v);
    }
    case Circuit::Kind::Not:
      return Expr::constant(1) - translate(c.children()[0], num_vars, copies, used);
    case Circuit::Kind::And: {
      Expr a = translate(c.children()[0], num_vars, copies, used);
      Expr b = translate(c.children()[1], num_vars, copies, used);
      return a * b;
    }
  }
  return Expr();
}

}  // namespace

PolynomialTranslation formula_to_polynomial(const Circuit& c, std::size_t num_vars, std::size_t copies) {
  PolynomialTranslation out;
  out.copies_used.assign(num_vars, 0);
  out.polynomial = translate(c, num_vars, copies, out.copies_used).simplified();
  return out;
}

CounterFormulas counter_formulas(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "the counter needs at least one bit");
  auto x = [&](std::size_t i) { return Circuit::var(i - 1); };
  auto y = [&](std::size_t i) { return Circuit::var(k + i - 1); };
  auto xp = [&](std::size_t i) { return Circuit::var(2 * k + i - 1); };
  auto yp = [&](std::size_t i) { return Circuit::var(3 * k + i - 1); };

  std::vector<Circuit> zeros, ones, steps;
  for (std::size_t i = 1; i <= k; ++i) {
    zeros.push_back(Circuit::negate(x(i)));
    ones.push_back(x(i));
  }
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<Circuit> guard{Circuit::negate(x(i))};
    std::vector<Circuit> effect{xp(i)};
    for (std::size_t j = i + 1; j <= k; ++j) {
      guard.push_back(x(j));
      effect.push_back(Circuit::negate(xp(j)));
    }
    for (std::size_t j = 1; j < i; ++j) {
      effect.push_back(Circuit::iff(x(j), xp(j)));
      effect.push_back(Circuit::iff(y(j), yp(j)));
    }
    steps.push_back(Circuit::implies(Circuit::all_of(guard), Circuit::all_of(effect)));
  }
  return CounterFormulas{Circuit::all_of(zeros), Circuit::all_of(steps), Circuit::all_of(ones)};
}

ReductionOutput qbf_to_ccra(const Qbf& q) {
  const std::size_t k = q.k;
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "the formula needs at least one quantifier pair");
  if (q.matrix.var_bound() > 2 * k) throw Error(ErrorCode::DimensionMismatch, "matrix variable outside the prefix");
  const CounterFormulas counter = counter_formulas(k);
  const std::size_t ell =
      std::max({counter.start.size(), counter.end.size(), counter.next.size(), q.matrix.size()});

  const std::size_t block = 2 * ell * k;
  const std::size_t z = 0, zp = block, zpp = 2 * block, zold = 3 * block, s = 4 * block;
  const std::size_t d = 4 * block + 1;

  std::vector<std::string> registers;
  registers.reserve(d);
  for (const char* prefix : {"z_", "zp_", "zpp_", "zold_"}) {
    for (std::size_t j = 1; j <= block; ++j) registers.push_back(prefix + std::to_string(j));
  }
  registers.push_back("s");

  // A polynomial over the (x, y) copy pool, moved into one register block.
  auto place = [&](const Circuit& c, std::size_t offset) {
    const Expr p = formula_to_polynomial(c, 2 * k, ell).polynomial;
    std::vector<Expr> images;
    for (std::size_t j = 0; j < block; ++j) images.push_back(Expr::variable(offset + j));
    return p.substitute(images);
  };
  const Expr phi_z = place(q.matrix, z);
  const Expr start_zp = place(counter.start, zp);
  const Expr end_zold = place(counter.end, zold);
  Expr next_old_zp;
  {
    const Expr p = formula_to_polynomial(counter.next, 4 * k, ell).polynomial;
    std::vector<Expr> images;
    for (std::size_t idx = 0; idx < 4 * k * ell; ++idx) {
      const std::size_t copy = idx / (4 * k), v = idx % (4 * k);
      images.push_back(v < 2 * k ? Expr::variable(zold + copy * 2 * k + v)
                                 : Expr::variable(zp + copy * 2 * k + (v - 2 * k)));
    }
    next_old_zp = p.substitute(images);
  }

  const Alphabet alphabet({"#", "0", "1"});
  const std::size_t hash = alphabet.index("#");
  const std::size_t bit[2] = {alphabet.index("0"), alphabet.index("1")};

  auto reset = [&]() { return std::vector<Expr>(d, Expr::constant(0)); };
  auto guess = [&](std::size_t i, int b) {  // P_{Z_i, b}, 1 <= i <= 2k
    PolyMap m = PolyMap::identity(d);
    for (std::size_t copy = 0; copy < ell; ++copy) {
      const std::size_t j = copy * 2 * k + (i - 1);
      for (std::size_t offset : {z, zp, zpp}) m.components[offset + j] = Expr::constant(b);
    }
    return m;
  };
  auto hash_map = [&](const Expr& check) {
    std::vector<Expr> comps = reset();
    for (std::size_t j = 0; j < block; ++j) comps[zold + j] = Expr::variable(zpp + j);
    comps[s] = (Expr::variable(s) * check).simplified();
    return PolyMap(d, std::move(comps));
  };

  const std::size_t n_states = 2 * (2 * k + 1);
  auto p_state = [&](std::size_t i) { return i; };
  auto q_state = [&](std::size_t i) { return 2 * k + 1 + i; };
  std::vector<std::string> states;
  for (std::size_t i = 0; i <= 2 * k; ++i) states.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i <= 2 * k; ++i) states.push_back("q" + std::to_string(i));

  const CcraTransition dead{p_state(0), PolyMap(d, reset())};
  std::vector<std::vector<CcraTransition>> delta(n_states, std::vector<CcraTransition>(alphabet.size(), dead));
  for (std::size_t i = 1; i <= 2 * k; ++i) {
    for (int b : {0, 1}) {
      delta[p_state(i - 1)][bit[b]] = CcraTransition{p_state(i), guess(i, b)};
      delta[q_state(i - 1)][bit[b]] = CcraTransition{q_state(i), guess(i, b)};
    }
  }
  delta[p_state(2 * k)][hash] = CcraTransition{q_state(0), hash_map(start_zp * phi_z)};
  delta[q_state(2 * k)][hash] = CcraTransition{q_state(0), hash_map(next_old_zp * phi_z)};

  std::vector<Expr> nu(n_states, Expr::constant(0));
  nu[q_state(0)] = (Expr::variable(s) * end_zold).simplified();

  std::ostringstream layout;
  layout << "ell=" << ell << " z=[" << z << "," << zp << ") zp=[" << zp << "," << zpp << ") zpp=[" << zpp << ","
         << zold << ") zold=[" << zold << "," << s << ") s=" << s << " registers=" << d;

  Ccra ccra(std::move(states), p_state(0), std::move(registers), alphabet, std::move(delta), RationalVector(d, 1),
            std::move(nu));
  return ReductionOutput{std::move(ccra), ell, layout.str()};
}

bool brute_force_qbf(const Qbf& q) {
  if (2 * q.k > kBruteForceVariableLimit) {
    throw Error(ErrorCode::SizeGuard, "brute force is limited to " + std::to_string(kBruteForceVariableLimit) +
                                          " variables");
  }
  std::vector<bool> assignment(2 * q.k, false);
  auto solve = [&](auto&& self, std::size_t level) -> bool {
    if (level == q.k) return q.matrix.eval(assignment);
    for (bool xv : {false, true}) {
      assignment[level] = xv;
      bool some = false;
      for (bool yv : {false, true}) {
        assignment[q.k + level] = yv;
        if (self(self, level + 1)) {
          some = true;
          break;
        }
      }
      if (!some) return false;
    }
    return true;
  };
  return solve(solve, 0);
}

QbfDecision decide_via_ccra(const Qbf& q) { return decide_via_ccra(q, qbf_to_ccra(q)); }

QbfDecision decide_via_ccra(const Qbf& q, const ReductionOutput& reduction) {
  if (q.k > 2) throw Error(ErrorCode::SizeGuard, "canonical word enumeration is limited to k <= 2");
  const Ccra& c = reduction.ccra;
  const std::size_t k = q.k;
  const std::size_t blocks = std::size_t{1} << k;
  const std::size_t hash = c.alphabet().index("#");
  const std::size_t bit[2] = {c.alphabet().index("0"), c.alphabet().index("1")};

  QbfDecision out;
  Word word;
  // Depth-first over blocks so that configurations are shared between
  // candidates with a common prefix.
  auto search = [&](auto&& self, std::size_t depth, std::size_t state, const RationalVector& regs) -> bool {
    if (depth == blocks) {
      ++out.candidates_evaluated;
      if (c.nu()[state].eval(regs) != 0) {
        out.valid = true;
        out.word = word;
        return true;
      }
      return false;
    }
    for (std::size_t ymask = 0; ymask < blocks; ++ymask) {
      Word piece;
      for (std::size_t i = 1; i <= k; ++i) piece.push_back(bit[(depth >> (k - i)) & 1]);
      for (std::size_t i = 1; i <= k; ++i) piece.push_back(bit[(ymask >> (k - i)) & 1]);
      piece.push_back(hash);
      std::size_t st = state;
      RationalVector r = regs;
      for (auto letter : piece) {
        const auto& tr = c.transition(st, letter);
        r = tr.update.apply(r);
        st = tr.target;
      }
      word.insert(word.end(), piece.begin(), piece.end());
      if (self(self, depth + 1, st, r)) return true;
      word.resize(word.size() - piece.size());
    }
    return false;
  };
  search(search, 0, c.initial_state(), c.mu());
  return out;
}

}  // namespace psfwb
