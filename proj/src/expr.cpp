#include "psfwb/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "psfwb/error.hpp"

namespace psfwb {

struct Expr::Node {
  Kind kind;
  Rational value;
  std::size_t index = 0;
  std::vector<Expr> children;
};

Expr::Expr() : Expr(constant(0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(const Rational& value) {
  return Expr(std::make_shared<const Node>(Node{Kind::Constant, value, 0, {}}));
}

Expr Expr::variable(std::size_t index) {
  return Expr(std::make_shared<const Node>(Node{Kind::Variable, Rational(0), index, {}}));
}

Expr Expr::sum(std::vector<Expr> children) {
  return Expr(std::make_shared<const Node>(Node{Kind::Sum, Rational(0), 0, std::move(children)}));
}

Expr Expr::product(std::vector<Expr> children) {
  return Expr(
      std::make_shared<const Node>(Node{Kind::Product, Rational(0), 0, std::move(children)}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
std::size_t Expr::index() const { return node_->index; }
const std::vector<Expr>& Expr::children() const { return node_->children; }

bool Expr::is_constant(const Rational& value) const {
  return node_->kind == Kind::Constant && node_->value == value;
}

Rational Expr::eval(const RationalVector& registers) const {
  switch (node_->kind) {
    case Kind::Constant:
      return node_->value;
    case Kind::Variable:
      if (node_->index >= registers.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "variable x" + std::to_string(node_->index) + " outside register vector");
      }
      return registers[node_->index];
    case Kind::Sum: {
      Rational acc = 0;
      for (const auto& c : node_->children) acc += c.eval(registers);
      return acc;
    }
    case Kind::Product: {
      Rational acc = 1;
      for (const auto& c : node_->children) {
        acc *= c.eval(registers);
        if (acc == 0) break;
      }
      return acc;
    }
  }
  return 0;
}

namespace {

void count_occurrences(const Expr& e, std::map<std::size_t, std::size_t>& out) {
  if (e.kind() == Expr::Kind::Variable) {
    ++out[e.index()];
    return;
  }
  for (const auto& c : e.children()) count_occurrences(c, out);
}

}  // namespace

std::map<std::size_t, std::size_t> Expr::occurrences() const {
  std::map<std::size_t, std::size_t> out;
  count_occurrences(*this, out);
  return out;
}

std::size_t Expr::min_arity() const {
  auto occ = occurrences();
  return occ.empty() ? 0 : occ.rbegin()->first + 1;
}

Expr Expr::substitute(const std::vector<Expr>& images) const {
  switch (node_->kind) {
    case Kind::Constant:
      return *this;
    case Kind::Variable:
      if (node_->index >= images.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "no image for variable x" + std::to_string(node_->index));
      }
      return images[node_->index];
    case Kind::Sum:
    case Kind::Product: {
      std::vector<Expr> kids;
      kids.reserve(node_->children.size());
      for (const auto& c : node_->children) kids.push_back(c.substitute(images));
      return node_->kind == Kind::Sum ? sum(std::move(kids)) : product(std::move(kids));
    }
  }
  return *this;
}

Expr Expr::simplified() const {
  if (node_->kind == Kind::Constant || node_->kind == Kind::Variable) return *this;
  const bool is_sum = node_->kind == Kind::Sum;
  Rational folded = is_sum ? 0 : 1;
  std::vector<Expr> kids;
  std::function<void(const Expr&)> absorb = [&](const Expr& raw) {
    Expr c = raw.simplified();
    if (c.kind() == Kind::Constant) {
      if (is_sum) {
        folded += c.value();
      } else {
        folded *= c.value();
      }
    } else if (c.kind() == node_->kind) {
      for (const auto& g : c.children()) absorb(g);
    } else {
      kids.push_back(c);
    }
  };
  for (const auto& c : node_->children) absorb(c);
  if (!is_sum && folded == 0) return constant(0);
  const Rational neutral = is_sum ? 0 : 1;
  if (folded != neutral) {
    if (is_sum) {
      kids.push_back(constant(folded));
    } else {
      kids.insert(kids.begin(), constant(folded));
    }
  }
  if (kids.empty()) return constant(folded);
  if (kids.size() == 1) return kids.front();
  return is_sum ? sum(std::move(kids)) : product(std::move(kids));
}

void Expr::collect_constants(std::set<Rational>& out) const {
  if (node_->kind == Kind::Constant) {
    out.insert(node_->value);
    return;
  }
  for (const auto& c : node_->children) c.collect_constants(out);
}

std::size_t Expr::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

namespace {

void render(const Expr& e, const std::vector<std::string>* names, std::ostream& os, bool in_product) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      if (e.value() < 0) {
        os << "(" << e.value().get_str() << ")";
      } else {
        os << e.value().get_str();
      }
      return;
    case Expr::Kind::Variable:
      if (names != nullptr && e.index() < names->size()) {
        os << (*names)[e.index()];
      } else {
        os << "x" << e.index();
      }
      return;
    case Expr::Kind::Sum: {
      if (e.children().empty()) {
        os << "0";
        return;
      }
      if (in_product) os << "(";
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) os << " + ";
        render(e.children()[i], names, os, false);
      }
      if (in_product) os << ")";
      return;
    }
    case Expr::Kind::Product: {
      if (e.children().empty()) {
        os << "1";
        return;
      }
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) os << "*";
        render(e.children()[i], names, os, true);
      }
      return;
    }
  }
}

}  // namespace

std::string Expr::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  render(*this, &names, os, false);
  return os.str();
}

std::string Expr::to_string() const {
  std::ostringstream os;
  render(*this, nullptr, os, false);
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum({a, Expr::product({Expr::constant(-1), b})});
}

namespace {

using SetMap = std::map<std::vector<std::size_t>, Rational>;

void add_into(Polynomial& acc, const Monomial& m, const Rational& c) {
  auto [it, inserted] = acc.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  } else if (c == 0) {
    acc.erase(it);
  }
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, bool squarefree) {
  Polynomial out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      if (squarefree && std::adjacent_find(m.begin(), m.end()) != m.end()) {
        throw Error(ErrorCode::SquareDetected,
                    "variable x" + std::to_string(*std::adjacent_find(m.begin(), m.end())) +
                        " would appear squared");
      }
      add_into(out, m, ca * cb);
    }
  }
  return out;
}

Polynomial expand_impl(const Expr& t, bool squarefree) {
  switch (t.kind()) {
    case Expr::Kind::Constant: {
      Polynomial p;
      if (t.value() != 0) p.emplace(Monomial{}, t.value());
      return p;
    }
    case Expr::Kind::Variable:
      return Polynomial{{Monomial{t.index()}, Rational(1)}};
    case Expr::Kind::Sum: {
      Polynomial acc;
      for (const auto& c : t.children()) {
        for (const auto& [m, k] : expand_impl(c, squarefree)) add_into(acc, m, k);
      }
      return acc;
    }
    case Expr::Kind::Product: {
      Polynomial acc{{Monomial{}, Rational(1)}};
      for (const auto& c : t.children()) {
        acc = multiply(acc, expand_impl(c, squarefree), squarefree);
        if (acc.empty()) break;
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

Polynomial expand(const Expr& t) { return expand_impl(t, false); }

std::map<std::vector<std::size_t>, Rational> expand_squarefree(const Expr& t, std::size_t arity) {
  for (const auto& [v, n] : t.occurrences()) {
    if (v >= arity) {
      throw Error(ErrorCode::DimensionMismatch,
                  "variable x" + std::to_string(v) + " exceeds arity " + std::to_string(arity));
    }
  }
  return expand_impl(t, true);
}

bool semantically_equal(const Expr& a, const Expr& b) {
  if (a.to_string() == b.to_string()) return true;
  return expand(a) == expand(b);
}

PolyMap::PolyMap(std::size_t arity_, std::vector<Expr> components_)
    : arity(arity_), components(std::move(components_)) {
  if (components.size() != arity) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial map needs one component per register");
  }
  for (const auto& c : components) {
    if (c.min_arity() > arity) {
      throw Error(ErrorCode::DimensionMismatch, "component reads a variable beyond the arity");
    }
  }
}

PolyMap PolyMap::identity(std::size_t arity) {
  std::vector<Expr> comps;
  comps.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) comps.push_back(Expr::variable(i));
  return PolyMap(arity, std::move(comps));
}

RationalVector PolyMap::apply(const RationalVector& registers) const {
  if (registers.size() != arity) {
    throw Error(ErrorCode::DimensionMismatch, "register vector length differs from arity");
  }
  RationalVector out;
  out.reserve(arity);
  for (const auto& c : components) out.push_back(c.eval(registers));
  return out;
}

CopylessVerdict is_copyless(const PolyMap& map) {
  CopylessVerdict v;
  std::map<std::size_t, std::size_t> total;
  for (const auto& c : map.components) {
    bool ok = true;
    for (const auto& [var, n] : c.occurrences()) {
      if (n > 1) ok = false;
      total[var] += n;
    }
    v.component_ok.push_back(ok);
  }
  for (const auto& [var, n] : total) {
    if (n > 1) v.repeated.push_back(var);
  }
  v.copyless = v.repeated.empty();
  return v;
}

PolyMap compose_maps(const PolyMap& outer, const PolyMap& inner) {
  if (outer.arity != inner.arity) {
    throw Error(ErrorCode::DimensionMismatch, "cannot compose maps of different arity");
  }
  std::vector<Expr> comps;
  comps.reserve(outer.arity);
  for (const auto& c : outer.components) comps.push_back(c.substitute(inner.components).simplified());
  PolyMap result(outer.arity, std::move(comps));
  if (is_copyless(outer).copyless && is_copyless(inner).copyless && !is_copyless(result).copyless) {
    throw Error(ErrorCode::NotCopyless, "composition of copyless maps lost copylessness");
  }
  return result;
}

bool semantically_equal(const PolyMap& a, const PolyMap& b) {
  if (a.arity != b.arity) return false;
  for (std::size_t i = 0; i < a.arity; ++i) {
    if (!semantically_equal(a.components[i], b.components[i])) return false;
  }
  return true;
}

}  // namespace psfwb
