#pragma once

#include <string>

#include "json.hpp"
#include "opf/operad.hpp"
#include "opf/wconstruction.hpp"

namespace opf::io {

using json = nlohmann::ordered_json;

// Operads are described by small spec objects:
//   {"kind":"point","rmax":3}
//   {"kind":"selector","rmax":2}
//   {"kind":"obm","rmax":3}                 signed-block monomials
//   {"kind":"nerve","rmax":2,"dim":1}       tuples of equal-arity monomials
//   {"kind":"product","left":spec,"right":spec}
//   {"kind":"truncate","base":spec,"k":2}
//   {"kind":"unitarize","base":spec}
//   {"kind":"table", ...}                   explicit finite tables
ops::OperadPtr operad_from_spec(const json& spec);

json elem_to_json(const ops::FiniteOperad& p, ops::Elem e);
ops::Elem elem_from_json(const ops::FiniteOperad& p, const json& j);

json welement_to_json(const wcons::WElement& w);
wcons::WElement welement_from_json(const json& j);

// {"dom":spec, "cod":spec, "map":{"<arity>":[codomain names in domain
// index order], ...}}
ops::Morphism morphism_from_json(const json& j);

// Graphviz rendering: vertices carry label names, edges their lengths,
// numbered boxes mark the leaves.
std::string to_dot(const wcons::WElement& w);

json parse_json(const std::string& text);
json load_json_file(const std::string& path);

}  // namespace opf::io
