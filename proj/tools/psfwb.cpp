#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psfwb/psfwb.h"

namespace {

struct Failure {
  psfwb_status status;
};

void check(psfwb_status s) {
  if (s != PSFWB_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  psfwb_string_free(s);
  return out;
}

struct Model {
  psfwb_model* h = nullptr;
  explicit Model(const std::string& path) { check(psfwb_model_load(path.c_str(), &h)); }
  Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  ~Model() { psfwb_model_free(h); }
};

struct Qbf {
  psfwb_qbf* h = nullptr;
  explicit Qbf(const std::string& path) { check(psfwb_qbf_load(path.c_str(), &h)); }
  Qbf(const Qbf&) = delete;
  Qbf& operator=(const Qbf&) = delete;
  ~Qbf() { psfwb_qbf_free(h); }
};

struct ExpPoly {
  psfwb_exppoly* h = nullptr;
  uint64_t modulus = 0;
  ExpPoly() = default;
  ExpPoly(const ExpPoly&) = delete;
  ExpPoly& operator=(const ExpPoly&) = delete;
  ~ExpPoly() { psfwb_exppoly_free(h); }
};

struct Report {
  psfwb_report* h = nullptr;
  Report() = default;
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;
  ~Report() { psfwb_report_free(h); }
};

struct Options {
  bool json_lines = false;
  std::size_t budget = PSFWB_DEFAULT_BUDGET;
  std::string file;
  std::string file2;
  std::string word;
  std::vector<std::string> words;
  std::vector<std::string> witnesses;
  std::size_t random = 0;
  uint64_t seed = 20240601;
  std::size_t max_len = 6;
  std::size_t step = 1;
  std::string gens = "1";
  std::vector<std::size_t> ks;
  std::string out;
  uint64_t modulus = 0;
  std::string exponent;
  std::size_t horizon = 0;
};

void print(const Report& r, const Options& o) {
  char* text = nullptr;
  check(psfwb_report_render(r.h, o.json_lines ? 1 : 0, &text));
  std::cout << take(text);
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_all(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// Header kind of a document, or "" when the header is absent.
std::string header_kind(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    std::istringstream words(line.substr(start));
    std::string tag, kind;
    words >> tag >> kind;
    return tag == "psfwb-format" ? kind : "";
  }
  return "";
}

std::vector<std::string> witness_list(const Model& m, const Options& o) {
  std::vector<std::string> out = o.witnesses;
  if (o.random > 0) {
    char* joined = nullptr;
    check(psfwb_random_witnesses(m.h, o.random, o.seed, o.max_len, &joined));
    std::istringstream lines(take(joined));
    std::string line;
    while (std::getline(lines, line)) {
      if (!line.empty()) out.push_back(line);
    }
  }
  return out;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

// A sequence document, an exppoly document, or a model with one witness.
void load_exppoly(const Options& o, ExpPoly& q) {
  const std::string& path = o.file;
  const std::string text = read_all(path);
  const std::string kind = header_kind(text);
  if (kind == "sequence") {
    check(psfwb_exppoly_from_sequence(text.c_str(), 0, &q.h, &q.modulus));
  } else if (kind == "exppoly") {
    check(psfwb_exppoly_parse(text.c_str(), &q.h));
  } else {
    Model m(path);
    if (o.witnesses.size() != 1) throw CLI::ValidationError("--witness", "a model input needs exactly one witness");
    check(psfwb_exppoly_from_model(m.h, o.witnesses[0].c_str(), o.step, &q.h));
  }
  if (o.modulus > 0) q.modulus = o.modulus;
}

int run(const std::string& command, const Options& o) {
  Report r;
  if (command == "eval") {
    Model m(o.file);
    for (const auto& w : o.words) {
      char* value = nullptr;
      check(psfwb_model_eval(m.h, w.c_str(), &value));
      const std::string v = take(value);
      if (o.json_lines) {
        std::cout << "{\"type\":\"eval\",\"word\":\"" << w << "\",\"value\":\"" << v << "\"}\n";
      } else {
        std::cout << v << "\n";
      }
    }
    return 0;
  }
  if (command == "translate") {
    Model m(o.file);
    Model t;
    check(psfwb_model_translate(m.h, o.budget, &t.h));
    char* text = nullptr;
    check(psfwb_model_render(t.h, &text));
    const std::string rendered = take(text);
    if (o.out.empty()) {
      std::cout << rendered;
    } else {
      write_all(o.out, rendered);
    }
    return 0;
  }
  if (command == "zeroness") {
    Model m(o.file);
    check(psfwb_zeroness(m.h, o.budget, &r.h));
  } else if (command == "equivalence") {
    Model a(o.file);
    Model b(o.file2);
    check(psfwb_equivalence(a.h, b.h, o.budget, &r.h));
  } else if (command == "ambiguity") {
    Model m(o.file);
    check(psfwb_ambiguity(m.h, &r.h));
  } else if (command == "triangularize") {
    Model m(o.file);
    check(psfwb_triangularize(m.h, o.word.c_str(), o.exponent.empty() ? nullptr : o.exponent.c_str(), &r.h));
  } else if (command == "psf") {
    Model m(o.file);
    check(psfwb_psf(m.h, o.word.c_str(), o.horizon, &r.h));
  } else if (command == "subsample") {
    Model m(o.file);
    check(psfwb_subsample(m.h, o.word.c_str(), o.step, &r.h));
  } else if (command == "exppoly") {
    ExpPoly q;
    load_exppoly(o, q);
    check(psfwb_exppoly_report(q.h, q.modulus, &r.h));
  } else if (command == "coeffsums") {
    ExpPoly q;
    load_exppoly(o, q);
    check(psfwb_coeffsums(q.h, o.gens.c_str(), o.ks.data(), o.ks.size(), &r.h));
  } else if (command == "obstruct-ccra") {
    Model m(o.file);
    const auto ws = witness_list(m, o);
    const auto cs = c_strings(ws);
    check(psfwb_obstruct_ccra(m.h, cs.data(), cs.size(), o.step, o.gens.c_str(), o.ks.data(), o.ks.size(), &r.h));
  } else if (command == "obstruct-pa") {
    Model m(o.file);
    const auto ws = witness_list(m, o);
    const auto cs = c_strings(ws);
    check(psfwb_obstruct_pa(m.h, cs.data(), cs.size(), &r.h));
  } else if (command == "qbf2ccra") {
    Qbf q(o.file);
    Model c;
    check(psfwb_qbf_to_ccra(q.h, &c.h, &r.h));
    if (!o.out.empty()) {
      char* text = nullptr;
      check(psfwb_model_render(c.h, &text));
      write_all(o.out, take(text));
    }
  } else if (command == "qbf-solve") {
    Qbf q(o.file);
    check(psfwb_qbf_solve(q.h, &r.h));
  } else if (command == "examples") {
    check(psfwb_examples(o.out.empty() ? nullptr : o.out.c_str(), &r.h));
  }
  print(r, o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for weighted automata, copyless cost-register automata and their sequences"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(psfwb_version()));
  Options o;
  app.add_flag("--json-lines", o.json_lines, "Emit one JSON object per report record");

  auto budget = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "Size bound for the CCRA translation")->capture_default_str();
  };
  auto gens_and_ks = [&](CLI::App* c) {
    c->add_option("--gens", o.gens, "Comma-separated generators of the semigroup, e.g. 1,2,1/2")->capture_default_str();
    c->add_option("--k", o.ks, "Coefficient-sum degrees (default: all)");
  };
  auto witness_options = [&](CLI::App* c) {
    c->add_option("--witness", o.witnesses, "Witness triple u,w,v (eps for the empty word)");
    c->add_option("--random", o.random, "Number of random witnesses to add");
    c->add_option("--seed", o.seed, "Seed for random witnesses")->capture_default_str();
    c->add_option("--max-len", o.max_len, "Longest random witness component")->capture_default_str();
  };
  auto step = [&](CLI::App* c) {
    c->add_option("--m,--step", o.step, "Subsampling step")->capture_default_str()->check(CLI::PositiveNumber);
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a model on words");
  eval->add_option("model", o.file, "Model file")->required();
  eval->add_option("words", o.words, "Words (eps for the empty word)")->required();

  auto* zero = app.add_subcommand("zeroness", "Decide whether a model is identically zero");
  zero->add_option("model", o.file, "Model file")->required();
  budget(zero);

  auto* equiv = app.add_subcommand("equivalence", "Decide whether two models compute the same function");
  equiv->add_option("left", o.file, "First model file")->required();
  equiv->add_option("right", o.file2, "Second model file")->required();
  budget(equiv);

  auto* translate = app.add_subcommand("translate", "Translate a CCRA into a weighted automaton");
  translate->add_option("model", o.file, "Model file")->required();
  translate->add_option("--out", o.out, "Write the automaton here instead of stdout");
  budget(translate);

  auto* amb = app.add_subcommand("ambiguity", "Classify the ambiguity of the support automaton");
  amb->add_option("model", o.file, "Model file")->required();

  auto* tri = app.add_subcommand("triangularize", "Triangular form of the trim automaton and the roots on a word");
  tri->add_option("model", o.file, "Model file")->required();
  tri->add_option("word", o.word, "Word w")->required();
  tri->add_option("--exponent", o.exponent, "Power N of M(w) (default dim!)");

  auto* psf = app.add_subcommand("psf", "Linear recurrence of n -> f(u w^n v)");
  psf->add_option("model", o.file, "Model file")->required();
  psf->add_option("triple", o.word, "Witness u,w,v")->required();
  psf->add_option("--horizon", o.horizon, "Number of direct terms (default from the model size)");

  auto* sub = app.add_subcommand("subsample", "Recurrence of n -> f(u w^(m n) v)");
  sub->add_option("model", o.file, "Model file")->required();
  sub->add_option("triple", o.word, "Witness u,w,v")->required();
  step(sub);

  auto* exp = app.add_subcommand("exppoly", "Exponential polynomial of a sequence or witness");
  exp->add_option("input", o.file, "Sequence, exppoly or model file")->required();
  exp->add_option("--witness", o.witnesses, "Witness u,w,v for a model input");
  exp->add_option("--modulus", o.modulus, "Reduce over F_p");
  step(exp);

  auto* sums = app.add_subcommand("coeffsums", "Check coefficient sums against a generator set");
  sums->add_option("input", o.file, "Sequence, exppoly or model file")->required();
  sums->add_option("--witness", o.witnesses, "Witness u,w,v for a model input");
  gens_and_ks(sums);
  step(sums);

  auto* occra = app.add_subcommand("obstruct-ccra", "Coefficient-sum obstruction to CCRA membership");
  occra->add_option("model", o.file, "Model file")->required();
  witness_options(occra);
  gens_and_ks(occra);
  step(occra);

  auto* opa = app.add_subcommand("obstruct-pa", "Characteristic-root obstruction to polynomial automata");
  opa->add_option("model", o.file, "Model file")->required();
  witness_options(opa);

  auto* q2c = app.add_subcommand("qbf2ccra", "Reduce a forall-exists QBF to a CCRA");
  q2c->add_option("qbf", o.file, "QBF file")->required();
  q2c->add_option("--out", o.out, "Write the CCRA here");

  auto* qsolve = app.add_subcommand("qbf-solve", "Decide a QBF through its CCRA and check against brute force");
  qsolve->add_option("qbf", o.file, "QBF file")->required();

  auto* ex = app.add_subcommand("examples", "List the bundled fixtures and optionally write them");
  ex->add_option("--out", o.out, "Directory to write the fixtures into");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const Failure& f) {
    std::cerr << "error: " << psfwb_status_name(f.status) << ": " << psfwb_last_error() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
