#pragma once

#include <string>

#include "uaco/mdqn.hpp"

namespace uaco {

/// Text checkpoint (format v1): header line, config digest, agent mode, then
/// per-learner tensor blocks (name, element count, values as decimal text
/// with 17 significant digits) plus Adam moments and step counters. Reading
/// restores forward-pass outputs bit-identically.
void writeCheckpoint(const std::string& path, const MdqnSystem& sys,
                     const WorldConfig& cfg);

/// Throws std::runtime_error on malformed/mismatched files. A digest
/// mismatch is refused unless force is set (tensor shapes must match the
/// config regardless).
MdqnSystem readCheckpoint(const std::string& path, const WorldConfig& cfg, bool force);

}  // namespace uaco
