#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psfwb/ccra.hpp"
#include "psfwb/io.hpp"
#include "psfwb/qbf.hpp"
#include "psfwb/wa.hpp"

namespace psfwb {

/// A bundled automaton or formula from the figures and worked examples, kept as
/// its document text.
struct Fixture {
  std::string file;
  DocumentKind kind;
  std::string description;
  /// A word and the value the figure caption or example states for it.
  std::string headline_word;
  std::string headline_value;
  std::string text;
};

const std::vector<Fixture>& bundled_fixtures();
/// Lookup by file name, e.g. "fig5.wa". Throws InvalidArgument.
const Fixture& fixture(std::string_view file);

WeightedAutomaton fixture_wa(std::string_view file);
Ccra fixture_ccra(std::string_view file);
Qbf fixture_qbf(std::string_view file);

}  // namespace psfwb
