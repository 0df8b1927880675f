#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qmetro/probes.hpp"
#include "qmetro/readout.hpp"

namespace qmetro {

/// Parsed state descriptor; see docs/state-descriptor.md for the schema.
struct StateDescriptor {
    std::string kind = "werner"; // werner | nghz | bell | classical | raw-matrix
    std::size_t n = 2;
    double eta = 1.0;
    std::optional<ClassicalTable> table;
    std::optional<ComplexMatrix> entries;
    std::optional<ComplexMatrix> generator; // empty ⇒ Σ_i |1⟩⟨1|_i
    int sign = 1;
};

/// Throws Error{Schema} on malformed documents.
StateDescriptor parse_state_descriptor(const nlohmann::json &doc);
nlohmann::json to_json(const StateDescriptor &desc);
ProbeFamily build_family(const StateDescriptor &desc);

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json to_json(const AdaptivePolicy &policy);
AdaptivePolicy parse_policy(const nlohmann::json &doc);
/// Canonical textual form: sorted keys, two-space indent, trailing newline.
std::string canonical_policy_text(const AdaptivePolicy &policy);

nlohmann::json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace qmetro
