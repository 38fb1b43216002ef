#include "psfwb/fixtures.hpp"

#include "psfwb/error.hpp"

namespace psfwb {

namespace {

const char* const kFig1a = R"(psfwb-format wa v1
# Four-state unambiguous automaton: states p1 p2 q1 q2.
# Left cycle p1 <-> p2 with weight 2, right cycle q1 <-> q2 with weight 3.
dim 4
alphabet a
initial 1 0 1 0
final 0 1 1 0
matrix a
0 2 0 0
2 0 0 0
0 0 0 3
0 0 3 0
)";

const char* const kFig1b = R"(psfwb-format wa v1
# Two states, every word a^n has n runs of value 1.
dim 2
alphabet a
initial 1 0
final 0 1
matrix a
1 1
0 1
)";

const char* const kLinearWa = R"(psfwb-format wa v1
# Companion form of a_{n+2} = 2 a_{n+1} - a_n with a_0 = 0, a_1 = 1.
dim 2
alphabet a
initial 0 1
final 1 0
matrix a
0 -1
1 2
)";

const char* const kLinearCcra = R"(psfwb-format ccra v1
# Counts the letters.
states p
initial p
registers x
alphabet a
init x := 0
on p a -> p
  x := x + 1
output p := x
)";

const char* const kFig2Left = R"(psfwb-format ccra v1
states p
initial p
registers x
alphabet a
init x := 0
on p a -> p
  x := 3*x + 1
output p := x
)";

const char* const kFig2Right = R"(psfwb-format ccra v1
states p
initial p
registers x y z
alphabet a
init x := 1
init y := 6
init z := 1
on p a -> p
  x := 5*x + 1
  y := y + 1
  z := 3*z
output p := x*y + z
)";

const char* const kFig3 = R"(psfwb-format ccra v1
# Variable flow q -> r -> y -> x -> z -> y, a cycle through three registers.
states p
initial p
registers q r y x z
alphabet a
init q := 1
init r := 1
init y := 1
init x := 1
init z := 1
on p a -> p
  q := 2
  r := q
  y := r + z
  x := 2*y
  z := x + 1
output p := x + z
)";

const char* const kFig4 = R"(psfwb-format ccra v1
# Simple: y is a constant register, x and z are updating.
states p
initial p
registers x y z
alphabet a
init x := 1
init y := 1
init z := 1
on p a -> p
  x := 2*x + y
  y := 4
  z := z/2 + 1
output p := x + z
)";

const char* const kFig5 = R"(psfwb-format wa v1
# Polynomially ambiguous, states p0 p1 p2.
dim 3
alphabet a b
initial 1 0 0
final 0 0 1
matrix a
2 2 0
0 2 0
0 0 1
matrix b
1 0 0
0 1 1
0 0 1
)";

const char* const kFig6 = R"(psfwb-format ccra v1
# g(w) = sum of 2^k over the positions k of the letters 1.
states p
initial p
registers x y
alphabet 0 1
init x := 2
init y := 0
on p 0 -> p
  x := 2*x
  y := y/2
on p 1 -> p
  x := 2*x
  y := y/2 + 1
output p := y*x/2
)";

const char* const kFig7 = R"(psfwb-format ccra v1
# f((a^k b)^n) = k^n.
states p
initial p
registers x y
alphabet a b
init x := 1
init y := 0
on p a -> p
  y := y + 1
on p b -> p
  x := x*y
  y := 0
output p := x
)";

const char* const kFig8 = R"(psfwb-format ccra v1
# Over Q this outputs n^3 + n^2 + 1 on a^n; reduce modulo 3 for the F_3 reading.
states p
initial p
registers x y z
alphabet a
init x := 0
init y := 0
init z := 1
on p a -> p
  x := x + 1
  y := y + 1
  z := z + 1
output p := x*y*z + 1
)";

const char* const kBinary = R"(psfwb-format wa v1
# Value of a binary word, least significant bit on the left.
dim 2
alphabet 0 1
initial 1 0
final 0 1
matrix 0
2 0
0 1
matrix 1
2 1
0 1
)";

const char* const kEda = R"(psfwb-format wa v1
# Complete graph on two states: exponentially many runs.
dim 2
alphabet a
initial 1 0
final 1 0
matrix a
1 1
1 1
)";

const char* const kPositionSum = R"(psfwb-format wa v1
# Sum of the 1-based positions of the letters 1, kept as (1, position, sum).
dim 3
alphabet 0 1
initial 1 0 0
final 0 0 1
matrix 0
1 1 0
0 1 0
0 0 1
matrix 1
1 1 1
0 1 1
0 0 1
)";

const char* const kValidK1 = R"(psfwb-format qbf v1
forall-exists k=1
iff x1 y1
)";

const char* const kInvalidK1 = R"(psfwb-format qbf v1
forall-exists k=1
and x1 y1
)";

const char* const kValidK2 = R"(psfwb-format qbf v1
forall-exists k=2
or x1 or y2 not x1
)";

std::vector<Fixture> build() {
  using K = DocumentKind;
  return {
      {"fig1a.wa", K::Wa, "Fig. 1a: 3^n for even n, 2^n for odd n", "aaaa", "81", kFig1a},
      {"fig1b.wa", K::Wa, "Fig. 1b: n runs of value 1 on a^n", "aaaaa", "5", kFig1b},
      {"linear.wa", K::Wa, "recurrence a_{n+2} = 2a_{n+1} - a_n as a companion matrix", "aaa", "3", kLinearWa},
      {"linear.ccra", K::Ccra, "letter count as a one-register CCRA", "aaa", "3", kLinearCcra},
      {"fig2_left.ccra", K::Ccra, "Fig. 2 left: (3^{n+1} - 1)/2 on a^{n+1}", "aaa", "13", kFig2Left},
      {"fig2_right.ccra", K::Ccra, "Fig. 2 right: (5^{n+2} - 1)/4 (n + 7) + 3^{n+1} on a^{n+1}", "a", "45",
       kFig2Right},
      {"fig3.ccra", K::Ccra, "Fig. 3: flow graph with a cycle through y, x, z", "a", "4", kFig3},
      {"fig4.ccra", K::Ccra, "Fig. 4: simple CCRA, y constant, x and z updating", "a", "9/2", kFig4},
      {"fig5.wa", K::Wa, "Fig. 5: f(a^k b) = k 2^k", "aab", "8", kFig5},
      {"fig6.ccra", K::Ccra, "Fig. 6: g(w) = sum of 2^{k_i} over the positions of 1", "11", "6", kFig6},
      {"fig7.ccra", K::Ccra, "Fig. 7: f((a^k b)^n) = k^n", "aabaab", "4", kFig7},
      {"fig8.ccra", K::Ccra, "Fig. 8: n^3 + n^2 + 1 on a^n", "aa", "13", kFig8},
      {"binary.wa", K::Wa, "binary value, least significant bit first", "011", "6", kBinary},
      {"eda.wa", K::Wa, "two states with two distinct cycles through each", "aa", "2", kEda},
      {"position_sum.wa", K::Wa, "sum of positions of the letters 1", "0110", "5", kPositionSum},
      {"valid_k1.qbf", K::Qbf, "forall x exists y (x <-> y)", "", "", kValidK1},
      {"invalid_k1.qbf", K::Qbf, "forall x exists y (x and y)", "", "", kInvalidK1},
      {"valid_k2.qbf", K::Qbf, "forall x1 exists y1 forall x2 exists y2 (x1 or y2 or not x1)", "", "", kValidK2},
  };
}

}  // namespace

const std::vector<Fixture>& bundled_fixtures() {
  static const std::vector<Fixture> all = build();
  return all;
}

const Fixture& fixture(std::string_view file) {
  for (const auto& f : bundled_fixtures()) {
    if (f.file == file) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "no bundled fixture named '" + std::string(file) + "'");
}

WeightedAutomaton fixture_wa(std::string_view file) { return parse_wa(fixture(file).text); }

Ccra fixture_ccra(std::string_view file) { return parse_ccra(fixture(file).text); }

Qbf fixture_qbf(std::string_view file) { return parse_qbf_document(fixture(file).text); }

}  // namespace psfwb
