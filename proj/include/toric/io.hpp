#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

#include <string>

#include "json.hpp"
#include "toric/complements.hpp"
#include "toric/divisor.hpp"
#include "toric/morphism.hpp"

namespace toric {

using Json = nlohmann::json;

// Self-describing one-object-per-file documents with a top-level "kind".
// Every number is a string: integers in decimal, rationals as reduced "p/q".
// Cones appear as sorted ray-index arrays and are emitted in (dimension,
// lexicographic ray set) order, so serialization is bit-exact and canonical.
// Parse errors throw InputError carrying the JSON field path.

Json fan_to_json(const Fan& fan);
Fan fan_from_json(const Json& j);

// Divisors, cycles, and complement choices reference their fan by cone ray
// sets, so parsing needs the fan the document was written against.
Json divisor_to_json(const QCartierDivisor& d);
QCartierDivisor divisor_from_json(const Json& j, const Fan& fan);

Json cycle_to_json(const Cycle& z);
Cycle cycle_from_json(const Json& j, const Fan& fan);

Json complements_to_json(const ComplementChoice& psi);
ComplementChoice complements_from_json(const Json& j, const Fan& fan);

// A morphism document embeds both fans plus the lattice map.
struct MorphismDocument {
    Fan source;
    Fan target;
    IMat phi;
};
Json morphism_to_json(const ToricMorphism& f);
MorphismDocument morphism_from_json(const Json& j);

// Small result documents for the CLI.
Json rational_to_json(const Rat& q);

std::string dump_canonical(const Json& j); // sorted keys, indented, newline-terminated
Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace toric

#endif
