#ifndef VARBOUND_IO_HPP
#define VARBOUND_IO_HPP

#include <iosfwd>
#include <string>

#include "varbound/core.hpp"
#include "varbound/gen.hpp"

// Instance files and the generator-spec grammar.
//
// An instance file is either a JSON object {"lower": [...], "upper": [...]}
// or CSV rows `lower,upper` (one header line allowed). Reals are written
// shortest-round-trip, so a written file parses back to bit-identical
// doubles; the sweep schedule's exact-value dedup depends on that.

namespace varbound {

enum class InstanceFormat { autodetect, json, csv };

/// Shortest decimal string that round-trips to exactly x.
std::string format_double(double x);

Instance parse_instance_json(const std::string& text);
Instance parse_instance_csv(const std::string& text);

/// Reads and parses an instance file; autodetect sniffs JSON by a leading
/// '{'. Throws std::invalid_argument with a readable message on any
/// problem (unreadable file, malformed syntax, NaN/infinity, lower >
/// upper, length mismatch, empty).
Instance read_instance_file(const std::string& path,
                            InstanceFormat format = InstanceFormat::autodetect);

void write_instance_json(std::ostream& out, const Instance& inst);
void write_instance_csv(std::ostream& out, const Instance& inst);

/// Grammar: whitespace-separated `center=<kind>:<params>`
/// `radius=<kind>:<params>` and optional `seed=<u64>`, params
/// comma-separated reals. Center kinds: uniform:a,b gaussian:mean,sigma
/// power:eps. Radius kinds: const:c exp:lambda pareto:shape,scale
/// halfgauss:sigma deppow:eps. Example: `center=uniform:0,1 radius=exp:1
/// seed=42`.
GeneratorSpec parse_generator_spec(const std::string& text);

/// Inverse of parse_generator_spec (round-trips exactly).
std::string format_generator_spec(const GeneratorSpec& spec);

}  // namespace varbound

#endif  // VARBOUND_IO_HPP
