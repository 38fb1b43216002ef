#include "psfwb/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "psfwb/error.hpp"

namespace psfwb {

const char* document_kind_name(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::Wa: return "wa";
    case DocumentKind::Ccra: return "ccra";
    case DocumentKind::Qbf: return "qbf";
    case DocumentKind::Sequence: return "sequence";
    case DocumentKind::ExpPoly: return "exppoly";
    case DocumentKind::Report: return "report";
  }
  return "unknown";
}

std::string format_header(DocumentKind kind) {
  return std::string("psfwb-format ") + document_kind_name(kind) + " v1\n";
}

namespace {

struct Field {
  std::string text;
  std::size_t col;
};

struct Line {
  std::size_t no;
  std::string text;
  std::vector<Field> fields;
};

std::vector<Field> split_fields(const std::string& s) {
  std::vector<Field> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.push_back({s.substr(start, i - start), start + 1});
  }
  return out;
}

/// Content lines, without comments and blanks.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 0, i = 0;
  while (i <= text.size()) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    ++no;
    std::string line(text.substr(i, eol - i));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') out.push_back({no, line, split_fields(line)});
    if (eol == text.size()) break;
    i = eol + 1;
  }
  return out;
}

[[noreturn]] void fail_at(const Line& l, std::size_t col, const std::string& msg) {
  throw ParseError(l.no, col, msg);
}

[[noreturn]] void fail_line(const Line& l, const std::string& msg) { fail_at(l, l.fields.empty() ? 1 : l.fields[0].col, msg); }

/// Drops the header after checking that it names `kind`.
std::vector<Line> body_lines(std::string_view text, DocumentKind kind) {
  auto lines = content_lines(text);
  if (!lines.empty() && lines.front().fields[0].text == "psfwb-format") {
    const Line& h = lines.front();
    if (h.fields.size() != 3 || h.fields[1].text != document_kind_name(kind) || h.fields[2].text != "v1") {
      fail_line(h, std::string("expected header 'psfwb-format ") + document_kind_name(kind) + " v1'");
    }
    lines.erase(lines.begin());
  }
  return lines;
}

Rational field_rational(const Line& l, const Field& f) {
  try {
    return parse_rational(f.text);
  } catch (const Error&) {
    fail_at(l, f.col, "malformed rational '" + f.text + "'");
  }
}

std::size_t field_count(const Line& l, const Field& f) {
  if (f.text.empty() || !std::all_of(f.text.begin(), f.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail_at(l, f.col, "expected a nonnegative integer, got '" + f.text + "'");
  }
  return std::stoul(f.text);
}

RationalVector rational_fields(const Line& l, std::size_t from, std::size_t expected) {
  if (l.fields.size() - from != expected) {
    fail_line(l, "expected " + std::to_string(expected) + " values, got " + std::to_string(l.fields.size() - from));
  }
  RationalVector out;
  for (std::size_t i = from; i < l.fields.size(); ++i) out.push_back(field_rational(l, l.fields[i]));
  return out;
}

std::string join(const RationalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += v[i].get_str();
  }
  return out;
}

std::vector<std::string> names_after(const Line& l) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < l.fields.size(); ++i) out.push_back(l.fields[i].text);
  return out;
}

}  // namespace

std::optional<DocumentKind> detect_kind(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty() || lines.front().fields[0].text != "psfwb-format" || lines.front().fields.size() < 2) {
    return std::nullopt;
  }
  for (auto kind : {DocumentKind::Wa, DocumentKind::Ccra, DocumentKind::Qbf, DocumentKind::Sequence,
                    DocumentKind::ExpPoly, DocumentKind::Report}) {
    if (lines.front().fields[1].text == document_kind_name(kind)) return kind;
  }
  return std::nullopt;
}

WeightedAutomaton parse_wa(std::string_view text) {
  const auto lines = body_lines(text, DocumentKind::Wa);
  std::optional<std::size_t> dim;
  std::optional<Alphabet> alphabet;
  std::optional<RationalVector> initial, final_weights;
  std::map<std::string, RatMatrix> matrices;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& key = l.fields[0].text;
    if (key == "dim") {
      if (l.fields.size() != 2) fail_line(l, "expected 'dim <n>'");
      dim = field_count(l, l.fields[1]);
    } else if (key == "alphabet") {
      try {
        alphabet = Alphabet(names_after(l));
      } catch (const Error& e) {
        fail_line(l, e.what());
      }
    } else if (key == "initial" || key == "final") {
      if (!dim) fail_line(l, "'dim' must come first");
      (key == "initial" ? initial : final_weights) = rational_fields(l, 1, *dim);
    } else if (key == "matrix") {
      if (!dim || !alphabet) fail_line(l, "'dim' and 'alphabet' must precede the matrices");
      if (l.fields.size() != 2) fail_line(l, "expected 'matrix <symbol>'");
      const std::string& sym = l.fields[1].text;
      if (!alphabet->contains(sym)) fail_at(l, l.fields[1].col, "symbol '" + sym + "' is not in the alphabet");
      if (matrices.count(sym)) fail_at(l, l.fields[1].col, "matrix for '" + sym + "' given twice");
      RatMatrix m(*dim, *dim);
      for (std::size_t r = 0; r < *dim; ++r) {
        if (i + 1 >= lines.size()) fail_line(l, "matrix has fewer than " + std::to_string(*dim) + " rows");
        const Line& row = lines[++i];
        const RationalVector values = rational_fields(row, 0, *dim);
        for (std::size_t c = 0; c < *dim; ++c) m(r, c) = values[c];
      }
      matrices.emplace(sym, std::move(m));
    } else {
      fail_line(l, "unknown keyword '" + key + "'");
    }
  }
  if (!dim || !alphabet || !initial || !final_weights) {
    throw ParseError(lines.empty() ? 1 : lines.back().no, 1, "missing one of dim, alphabet, initial, final");
  }
  std::vector<RatMatrix> transitions;
  for (const auto& sym : alphabet->symbols()) {
    auto it = matrices.find(sym);
    if (it == matrices.end()) {
      throw ParseError(lines.back().no, 1, "no matrix for symbol '" + sym + "'");
    }
    transitions.push_back(it->second);
  }
  return WeightedAutomaton(*dim, *alphabet, std::move(transitions), *initial, *final_weights);
}

std::string render_wa(const WeightedAutomaton& a) {
  std::ostringstream os;
  os << format_header(DocumentKind::Wa);
  os << "dim " << a.dim() << "\n";
  os << "alphabet";
  for (const auto& s : a.alphabet().symbols()) os << ' ' << s;
  os << "\ninitial " << join(a.initial()) << "\n";
  os << "final " << join(a.final_weights()) << "\n";
  for (std::size_t letter = 0; letter < a.alphabet().size(); ++letter) {
    os << "matrix " << a.alphabet().symbol(letter) << "\n";
    for (std::size_t r = 0; r < a.dim(); ++r) os << join(a.matrix(letter).row(r)) << "\n";
  }
  return os.str();
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& registers, std::size_t line, std::size_t col0)
      : text_(text), line_(line), col0_(col0) {
    for (std::size_t i = 0; i < registers.size(); ++i) index_.emplace(registers[i], i);
  }

  Expr parse() {
    Expr e = sum();
    skip_space();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col0_ + pos_, msg); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    std::vector<Expr> terms{product()};
    while (true) {
      if (eat('+')) {
        terms.push_back(product());
      } else if (eat('-')) {
        terms.push_back(negated(product()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms[0] : Expr::sum(std::move(terms));
  }

  Expr product() {
    std::vector<Expr> factors{unary()};
    while (true) {
      if (eat('*')) {
        factors.push_back(unary());
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Expr divisor = unary().simplified();
        if (divisor.kind() != Expr::Kind::Constant) {
          pos_ = at;
          fail("division is only allowed by constants");
        }
        if (divisor.value() == 0) {
          pos_ = at;
          fail("division by zero");
        }
        const Rational inv = 1 / divisor.value();
        Expr& last = factors.back();
        if (last.kind() == Expr::Kind::Constant) {
          last = Expr::constant(last.value() * inv);
        } else {
          factors.push_back(Expr::constant(inv));
        }
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors[0] : Expr::product(std::move(factors));
  }

  static Expr negated(const Expr& e) {
    if (e.kind() == Expr::Kind::Constant) return Expr::constant(-e.value());
    return Expr::product({Expr::constant(-1), e});
  }

  Expr unary() {
    if (eat('-')) return negated(unary());
    if (eat('+')) return unary();
    if (eat('(')) {
      Expr inner = sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expr::constant(Rational(std::string(text_.substr(start, pos_ - start))));
    }
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail(std::string("unexpected '") + text_[pos_] + "'");
    const std::string name(text_.substr(start, pos_ - start));
    auto it = index_.find(name);
    if (it == index_.end()) {
      pos_ = start;
      fail("unknown register '" + name + "'");
    }
    return Expr::variable(it->second);
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t col0_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> index_;
};

struct Assignment {
  std::size_t reg;
  Expr value;
  const Line* line;
  std::string source;
};

/// Splits "lhs := rhs" and parses rhs.
std::pair<std::string, Expr> parse_assignment(const Line& l, std::size_t from_field,
                                              const std::vector<std::string>& registers, std::string* source) {
  const std::size_t start = l.fields[from_field].col - 1;
  const std::size_t op = l.text.find(":=", start);
  if (op == std::string::npos) fail_at(l, l.fields[from_field].col, "expected ':='");
  std::string lhs = l.text.substr(start, op - start);
  while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
  const std::string rhs = l.text.substr(op + 2);
  if (source) *source = l.text.substr(start);
  return {lhs, ExprParser(rhs, registers, l.no, op + 3).parse()};
}

std::size_t lookup(const Line& l, const std::vector<std::string>& names, const std::string& name,
                   const std::string& what) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  fail_line(l, "unknown " + what + " '" + name + "'");
}

/// Reports the first register read twice by the update, naming the line.
void check_copyless(const std::vector<Assignment>& assigned, std::size_t d) {
  std::vector<std::size_t> reads(d, 0);
  std::vector<bool> explicit_lhs(d, false);
  for (const auto& a : assigned) explicit_lhs[a.reg] = true;
  for (std::size_t r = 0; r < d; ++r) {
    if (!explicit_lhs[r]) ++reads[r];
  }
  for (const auto& a : assigned) {
    for (const auto& [var, count] : a.value.occurrences()) {
      reads[var] += count;
      if (reads[var] > 1) {
        throw Error(ErrorCode::NotCopyless, "line " + std::to_string(a.line->no) +
                                                ": update is not copyless, a register is read twice in '" +
                                                a.source + "'");
      }
    }
  }
}

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& registers) {
  return ExprParser(text, registers, 1, 1).parse();
}

Ccra parse_ccra(std::string_view text) {
  const auto lines = body_lines(text, DocumentKind::Ccra);
  std::vector<std::string> states, registers;
  std::optional<std::string> initial_name;
  std::optional<Alphabet> alphabet;
  std::map<std::string, const Line*> seen;

  auto require_header = [&](const Line& l) {
    if (states.empty() || registers.empty() || !alphabet) {
      fail_line(l, "'states', 'registers' and 'alphabet' must come before transitions");
    }
  };

  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& key = l.fields[0].text;
    if (key == "states") {
      states = names_after(l);
    } else if (key == "registers") {
      registers = names_after(l);
    } else if (key == "initial") {
      if (l.fields.size() != 2) fail_line(l, "expected 'initial <state>'");
      initial_name = l.fields[1].text;
    } else if (key == "alphabet") {
      try {
        alphabet = Alphabet(names_after(l));
      } catch (const Error& e) {
        fail_line(l, e.what());
      }
    } else {
      break;
    }
  }
  if (i < lines.size()) require_header(lines[i]);
  if (states.empty() || !alphabet) throw ParseError(lines.empty() ? 1 : lines.back().no, 1, "incomplete header");
  const std::size_t d = registers.size();
  const std::size_t initial =
      initial_name ? lookup(lines.front(), states, *initial_name, "state") : 0;

  RationalVector mu(d, 0);
  std::vector<Expr> nu(states.size(), Expr::constant(0));
  std::vector<std::vector<std::optional<CcraTransition>>> delta(
      states.size(), std::vector<std::optional<CcraTransition>>(alphabet->size()));

  while (i < lines.size()) {
    const Line& l = lines[i];
    const std::string& key = l.fields[0].text;
    if (key == "init") {
      if (l.fields.size() < 2) fail_line(l, "expected 'init <register> := <value>'");
      auto [lhs, value] = parse_assignment(l, 1, registers, nullptr);
      const std::size_t r = lookup(l, registers, lhs, "register");
      const Expr folded = value.simplified();
      if (folded.kind() != Expr::Kind::Constant) fail_line(l, "initial values must be constants");
      mu[r] = folded.value();
      ++i;
    } else if (key == "output") {
      if (l.fields.size() < 2) fail_line(l, "expected 'output <state> := <expr>'");
      std::string source;
      auto [lhs, value] = parse_assignment(l, 1, registers, &source);
      const std::size_t q = lookup(l, states, lhs, "state");
      for (const auto& [var, count] : value.occurrences()) {
        if (count > 1) {
          throw Error(ErrorCode::NotCopyless, "line " + std::to_string(l.no) +
                                                  ": output is not copyless, register '" + registers[var] +
                                                  "' is read twice in '" + source + "'");
        }
      }
      nu[q] = value;
      ++i;
    } else if (key == "on") {
      if (l.fields.size() != 5 || l.fields[3].text != "->") fail_line(l, "expected 'on <state> <symbol> -> <state>'");
      const std::size_t from = lookup(l, states, l.fields[1].text, "state");
      if (!alphabet->contains(l.fields[2].text)) fail_at(l, l.fields[2].col, "symbol '" + l.fields[2].text + "' is not in the alphabet");
      const std::size_t letter = alphabet->index(l.fields[2].text);
      const std::size_t to = lookup(l, states, l.fields[4].text, "state");
      if (delta[from][letter]) fail_line(l, "transition defined twice");
      std::vector<Assignment> assigned;
      ++i;
      while (i < lines.size() && lines[i].text.find(":=") != std::string::npos &&
             lines[i].fields[0].text != "init" && lines[i].fields[0].text != "output") {
        const Line& a = lines[i];
        std::string source;
        auto [lhs, value] = parse_assignment(a, 0, registers, &source);
        const std::size_t r = lookup(a, registers, lhs, "register");
        for (const auto& prev : assigned) {
          if (prev.reg == r) fail_line(a, "register '" + lhs + "' assigned twice");
        }
        assigned.push_back({r, value, &a, source});
        ++i;
      }
      check_copyless(assigned, d);
      PolyMap update = PolyMap::identity(d);
      for (auto& a : assigned) update.components[a.reg] = a.value;
      delta[from][letter] = CcraTransition{to, std::move(update)};
    } else {
      fail_line(l, "unknown keyword '" + key + "'");
    }
  }

  std::vector<std::vector<CcraTransition>> total(states.size());
  for (std::size_t q = 0; q < states.size(); ++q) {
    for (std::size_t a = 0; a < alphabet->size(); ++a) {
      if (!delta[q][a]) {
        throw ParseError(lines.back().no, 1,
                         "no transition from '" + states[q] + "' on '" + alphabet->symbol(a) + "'");
      }
      total[q].push_back(std::move(*delta[q][a]));
    }
  }
  return Ccra(std::move(states), initial, std::move(registers), *alphabet, std::move(total), std::move(mu),
              std::move(nu));
}

std::string render_ccra(const Ccra& c) {
  std::ostringstream os;
  const auto& regs = c.registers();
  os << format_header(DocumentKind::Ccra);
  os << "states";
  for (const auto& s : c.states()) os << ' ' << s;
  os << "\ninitial " << c.states()[c.initial_state()] << "\n";
  os << "registers";
  for (const auto& r : regs) os << ' ' << r;
  os << "\nalphabet";
  for (const auto& s : c.alphabet().symbols()) os << ' ' << s;
  os << "\n";
  for (std::size_t r = 0; r < regs.size(); ++r) {
    os << "init " << regs[r] << " := " << Expr::constant(c.mu()[r]).to_string(regs) << "\n";
  }
  for (std::size_t q = 0; q < c.state_count(); ++q) {
    for (std::size_t a = 0; a < c.alphabet().size(); ++a) {
      const auto& t = c.transition(q, a);
      os << "on " << c.states()[q] << ' ' << c.alphabet().symbol(a) << " -> " << c.states()[t.target] << "\n";
      for (std::size_t r = 0; r < regs.size(); ++r) {
        const Expr& e = t.update.components[r];
        if (e.kind() == Expr::Kind::Variable && e.index() == r) continue;
        os << "  " << regs[r] << " := " << e.to_string(regs) << "\n";
      }
    }
  }
  for (std::size_t q = 0; q < c.state_count(); ++q) {
    os << "output " << c.states()[q] << " := " << c.nu()[q].to_string(regs) << "\n";
  }
  return os.str();
}

SequenceDocument parse_sequence(std::string_view text) {
  SequenceDocument doc;
  for (const auto& l : body_lines(text, DocumentKind::Sequence)) {
    if (l.fields[0].text == "modulus") {
      if (l.fields.size() != 2) fail_line(l, "expected 'modulus <p>'");
      const std::size_t p = field_count(l, l.fields[1]);
      if (!is_prime(p)) fail_at(l, l.fields[1].col, "modulus must be prime");
      doc.modulus = p;
      continue;
    }
    for (const auto& f : l.fields) doc.terms.push_back(field_rational(l, f));
  }
  return doc;
}

std::string render_sequence(const SequenceDocument& s) {
  std::ostringstream os;
  os << format_header(DocumentKind::Sequence);
  if (s.modulus) os << "modulus " << *s.modulus << "\n";
  for (const auto& t : s.terms) os << t.get_str() << "\n";
  return os.str();
}

ExpPoly parse_exppoly(std::string_view text) {
  ExpPoly q;
  for (const auto& l : body_lines(text, DocumentKind::ExpPoly)) {
    if (l.fields[0].text == "valid_from") {
      if (l.fields.size() != 2) fail_line(l, "expected 'valid_from <n>'");
      q.valid_from = field_count(l, l.fields[1]);
      continue;
    }
    if (l.fields.size() < 3 || l.fields[1].text != ":") fail_line(l, "expected '<base> : <c0> <c1> ...'");
    const Rational base = field_rational(l, l.fields[0]);
    if (base == 0) fail_at(l, l.fields[0].col, "bases must be nonzero");
    if (q.terms.count(base)) fail_at(l, l.fields[0].col, "base given twice");
    RationalVector coeffs;
    for (std::size_t i = 2; i < l.fields.size(); ++i) coeffs.push_back(field_rational(l, l.fields[i]));
    q.terms.emplace(base, UniPoly(std::move(coeffs)));
  }
  q.normalize();
  return q;
}

std::string render_exppoly(const ExpPoly& q) {
  std::ostringstream os;
  os << format_header(DocumentKind::ExpPoly);
  if (q.valid_from > 0) os << "valid_from " << q.valid_from << "\n";
  for (const auto& [base, poly] : q.terms) {
    if (poly.is_zero()) continue;
    os << base.get_str() << " : " << join(poly.coefficients()) << "\n";
  }
  return os.str();
}

Qbf parse_qbf_document(std::string_view text) {
  if (auto kind = detect_kind(text); kind && *kind != DocumentKind::Qbf) {
    throw ParseError(1, 1, "expected header 'psfwb-format qbf v1'");
  }
  return parse_and_normalize(text);
}

std::string render_qbf_document(const Qbf& q) { return format_header(DocumentKind::Qbf) + render_qbf(q); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace psfwb
