#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psfwb/ccra.hpp"
#include "psfwb/eps.hpp"
#include "psfwb/expr.hpp"
#include "psfwb/qbf.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

/// Every document starts with "psfwb-format <kind> v1". Lines whose first
/// non-blank character is '#' are comments.
enum class DocumentKind { Wa, Ccra, Qbf, Sequence, ExpPoly, Report };

const char* document_kind_name(DocumentKind kind);
std::string format_header(DocumentKind kind);
/// Kind named by the header line, if there is one.
std::optional<DocumentKind> detect_kind(std::string_view text);

/// dim, alphabet, initial, final, then "matrix <symbol>" followed by dim rows.
WeightedAutomaton parse_wa(std::string_view text);
std::string render_wa(const WeightedAutomaton& a);

/// Infix expression over named registers with + - * and division by
/// constants.
Expr parse_expr(std::string_view text, const std::vector<std::string>& registers);

/// states, initial, registers, alphabet, "init r := c", "on p a -> q" blocks of
/// "r := expr" lines (unassigned registers keep their value) and
/// "output p := expr". Non-copyless updates are rejected with the line.
Ccra parse_ccra(std::string_view text);
std::string render_ccra(const Ccra& c);

struct SequenceDocument {
  RationalVector terms;
  std::optional<std::uint64_t> modulus;
};

/// Optional "modulus p", then one term per line.
SequenceDocument parse_sequence(std::string_view text);
std::string render_sequence(const SequenceDocument& s);

/// Optional "valid_from n", then lines "base : c0 c1 ..." with the
/// polynomial coefficients in increasing degree.
ExpPoly parse_exppoly(std::string_view text);
std::string render_exppoly(const ExpPoly& q);

Qbf parse_qbf_document(std::string_view text);
std::string render_qbf_document(const Qbf& q);

/// Throws Error(Io) when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace psfwb
