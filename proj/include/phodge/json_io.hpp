#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "phodge/classdata.hpp"
#include "phodge/pst.hpp"
#include "phodge/weights.hpp"

namespace phodge::io {

// Insertion-ordered JSON so emitted reports have a stable field order and
// identical inputs produce byte-identical outputs.
using json = nlohmann::ordered_json;

// --- files -----------------------------------------------------------------------

// Read and parse a JSON document; "-" reads standard input. Malformed documents
// raise ParseError with the source location nlohmann reports.
json load_json_file(const std::string& path);

// Canonical dump used for every report: two-space indent plus trailing newline.
std::string dump_report(const json& j);

// --- scalars -----------------------------------------------------------------------
//
// Exact values only. A rational is a string "p/q" (or "p"); bare JSON integers
// are accepted on input, floats are rejected. An algebra element is
//   - a rational literal (constant),
//   - an array of rational coefficient literals, little-endian by degree, read
//     in the ambient algebra, or
//   - an object {"mod": [...], "val": [...]}, both arrays of rational literals,
//     giving the element's own quotient algebra (input convenience; outputs
//     always use the file-level "E" instead).

Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);

// The file-level base algebra: key "E" holds the monic modulus coefficients
// (little-endian). Absent "E" means the rational line.
std::shared_ptr<const AlgebraQ> ambient_algebra(const json& file);
json ambient_to_json(const AlgebraQ& a); // modulus coefficient array

ElemQ elem_from_json(const json& j, const std::shared_ptr<const AlgebraQ>& ambient);
json elem_to_json(const ElemQ& e); // string when the parent has degree 1, else array

// Product-ring entries with a fixed component count (the module's f).
//   f == 1: the entry is just an element encoding.
//   f >  1: a top-level array is the component list (length exactly f, entries
//           element encodings); any non-array encoding is the constant entry.
EtaleElem<ElemQ> etale_from_json(const json& j, std::size_t arity,
                                 const std::shared_ptr<const AlgebraQ>& ambient);
json etale_to_json(const EtaleElem<ElemQ>& e);

// --- matrices ---------------------------------------------------------------------
// {"rows": r, "cols": c, "data": [...]} with data row-major, length r*c.

Matrix<ElemQ> matrix_from_json(const json& j, const std::shared_ptr<const AlgebraQ>& ambient);
json matrix_to_json(const Matrix<ElemQ>& m);

Matrix<EtaleElem<ElemQ>> etale_matrix_from_json(const json& j, std::size_t arity,
                                                const std::shared_ptr<const AlgebraQ>& ambient);
json etale_matrix_to_json(const Matrix<EtaleElem<ElemQ>>& m);

// --- combinatorics ------------------------------------------------------------------

Partition partition_from_json(const json& j); // array of weakly decreasing ints
json partition_to_json(const Partition& u);
json tableau_to_json(const Tableau& t); // array of row arrays

// --- classification data -------------------------------------------------------------
// {"flavor": "HT"|"dR", "blocks": [{"weight": elem, "depth": n}, ...], "E"?: [...]}

ClassData<ElemQ> classdata_from_json(const json& j);
json classdata_to_json(const ClassData<ElemQ>& c);

// --- weight systems ------------------------------------------------------------------
// {"labels": [...], "weights": [[elem, ...], ...], "E"?: [...]}

WeightSystem<ElemQ> weight_system_from_json(const json& j);
json weight_system_to_json(const WeightSystem<ElemQ>& ws);

json character_weights_to_json(const CharacterWeights<ElemQ>& cw);
json tensor_solve_to_json(const TensorSolve<ElemQ>& s);
json schur_solve_to_json(const SchurSolve<ElemQ>& s);

// --- group shapes and modules ---------------------------------------------------------
// Module document: {"group": multiplication table, "inertia": [ids], "omega": id,
// "f": f, "phi": matrix, "N": matrix, "rho": {"<gid>": matrix, ...}, "p": "2",
// "deg"?: [ints], "E"?: [...]}. "deg" is validated against the group when given;
// "p" defaults to 2; matrix entries are product-ring entries of arity f.

std::shared_ptr<const GaloisShape> shape_from_json(const json& j);
void shape_fields_to_json(const GaloisShape& g, json& out);
PhiNGalModule<ElemQ> module_from_json(const json& j);
json module_to_json(const PhiNGalModule<ElemQ>& d);

// --- reports ----------------------------------------------------------------------------

json validation_to_json(const ValidationReport& rep);
json character_to_json(const Character<ElemQ>& eta);
json descent_to_json(const DescentVerdict& v);
// Twist-recovery report: subgroup character, extension modulus, full-group
// character (values are coefficient arrays over the extension generator),
// semistability/crystallinity flags, optional descent verdict.
json pipeline_to_json(const TwistPipelineResult<ElemQ>& r);
json error_to_json(const Error& e);

} // namespace phodge::io
