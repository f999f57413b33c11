#pragma once

#include <string>

#include "tangleforge/diagram.hpp"
#include "tangleforge/equiv.hpp"
#include "tangleforge/realize.hpp"

#include "json.hpp"

namespace tf {

using Json = nlohmann::ordered_json;

// Homomorphism file: `genus = G`, `bridges = B`, then one `<name> -> <word>`
// line per domain generator ('e' is the empty image).
FreeTargetHom parse_hom(const std::string& text);
std::string serialize_hom(const FreeTargetHom& hom);

// Tuple file: `flavor = ...` then [phi1]/[phi2]/[phi3] homomorphism blocks.
SplittingTuple parse_tuple(const std::string& text);
std::string serialize_tuple(const SplittingTuple& t);

Json diagram_to_json(const Diagram& d);
Json realization_to_json(const RealizationResult& r);
Diagram diagram_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tf
