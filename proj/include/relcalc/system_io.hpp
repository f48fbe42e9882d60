#pragma once

#include <filesystem>
#include <string>

#include "relcalc/system.hpp"

namespace relcalc {

/// System files are UTF-8 JSON:
///
///   {
///     "name": "T1",
///     "components": [{"id": 0, "reliability": 0.5, "label": "1"}, ...],
///     "functions": [[{"label": "A", "components": [0, 1, 2]}, ...], ...],
///     "network": {"nodes": [{"label": "d1", "component": 0}, ...],
///                 "edges": [{"from": "d1", "to": "s1"}, ...],
///                 "terminals": [{"source": "d1", "sink": "ofc"}, ...]},
///     "claimed_reliability": 0.2668,
///     "claimed_lower_bound": 0.2260049,
///     "seed": 7
///   }
///
/// `network`, component labels and the metadata fields are optional.
/// Parsing checks shape and types only; call validate_system for the
/// domain invariants. Parse failures throw InputError.
SystemSpec parse_system(const std::string& json_text);
SystemSpec load_system(const std::filesystem::path& path);

/// Stable serialisation: same spec gives byte-identical text.
std::string serialize_system(const SystemSpec& spec);
void save_system(const SystemSpec& spec, const std::filesystem::path& path);

}  // namespace relcalc
