#pragma once

#include <string>

#include "bcsim/config.hpp"
#include "bcsim/engine.hpp"

namespace bcsim {

inline constexpr const char* kVersion = "1.0.0";

// Writes the full report set into `out_dir`:
//   costs_<scenario>.csv        display tier, million PLN, mean +/- CI half-width
//   events_<scenario>.csv       display tier, yearly deaths and diagnoses
//   differences.csv             covid - nocovid per metric with CI and p-value
//   raw/<scenario>_replications.csv      per-replication yearly values, 17 digits
//   raw/<scenario>_<metric>.csv          yearly replication statistics, 17 digits
//   manifest.json               config snapshot, calibrated dump, seeds, checksums
// Directories are created as needed. Throws std::invalid_argument for empty
// results before touching the filesystem and IoError on write failures.
void emit_reports(const ExperimentResult& result, const LoadedInputs& inputs,
                  const std::string& out_dir);

// FNV-1a 64-bit digest used for the manifest's content checksums.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace bcsim
