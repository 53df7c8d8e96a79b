#pragma once

// Plain-text state files.
//   QSV (pure):    "qsv 1 <n>" then 2^n lines "<re> <im>"
//   QDM (density): "qdm 1 <n>" then lines "<row> <col> <re> <im>" for the
//                  nonzero entries (0-based indices)
// Qubit 1 is the most significant bit. Blank lines and text after '#' are
// ignored.

#include <iosfwd>
#include <string>
#include <variant>

#include "entweb/qstate.hpp"

namespace entweb {

using StateVariant = std::variant<PureState, DensityOperator>;

/// Parses either format; throws InputError on malformed content. A norm or
/// trace within 1e-6 of one is rescaled to one exactly.
StateVariant read_state(std::istream &in);
StateVariant read_state_file(const std::string &path);

void write_qsv(std::ostream &out, const PureState &state);
void write_qdm(std::ostream &out, const DensityOperator &state);

} // namespace entweb
