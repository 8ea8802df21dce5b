#pragma once
// Serialization layer: canonical JSON for models and ladder factors, FNV-1a
// hashing, deterministic CSV artifacts, and raw binary sample persistence
// with a JSON sidecar.  Canonical means sorted keys, two-space indent and a
// trailing newline, so save(load(text)) is byte-stable and the hash is well
// defined.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "levyfn/errors.hpp"
#include "levyfn/exponent.hpp"
#include "levyfn/ladders.hpp"
#include "levyfn/sampler.hpp"

namespace levyfn {

inline constexpr const char* kLibraryVersion = "0.1.0";

std::string model_to_json(const LevyModel& model);
// Structural problems (parse errors, wrong types, unknown families, missing
// keys) throw Schema; admissibility problems surface as ParameterViolation
// from the jump factories.
LevyModel model_from_json(const std::string& text);
LevyModel load_model(const std::string& path);
void save_model(const LevyModel& model, const std::string& path);

// FNV-1a 64 over the canonical JSON text.
uint64_t model_hash(const LevyModel& model);
uint64_t text_hash(const std::string& text);
// "0x" + 16 lowercase hex digits.
std::string hash_hex(uint64_t h);

// Triplet ladder factors round-trip with a role field
// ("ascending" | "descending"); custom quotient factors have no parametric
// form and throw ParameterViolation.
std::string factor_to_json(const LadderExponent& factor);
LadderExponent factor_from_json(const std::string& text);

// Fixed 17-significant-digit general format, '.' decimal point, no locale.
std::string format_double(double v);

struct CsvMeta {
  uint64_t model_hash = 0;
  uint64_t seed = 0;
  std::string scheme;
  std::vector<std::pair<std::string, std::string>> extra;
};

// '#'-prefixed header block (library version, model hash, seed, scheme,
// extras), then a column header row and the data rows.
std::string csv_format(const CsvMeta& meta,
                       const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Little-endian f64 array at `path` plus sidecar metadata at `path`.json.
void save_samples(const SampleSet& samples, const std::string& path);
SampleSet load_samples(const std::string& path);

// {"error": <code name>, "message": ...} envelope used by the CLI.
std::string error_json(ErrorCode code, const std::string& message);

}  // namespace levyfn
