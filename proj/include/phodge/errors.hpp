#pragma once

#include <stdexcept>
#include <string>

namespace phodge {

// Every error the library raises on purpose carries a stable machine name so the
// CLI can pass it through as {"error": {"name": ...}} without string matching.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define PHODGE_ERROR(Name)                                                    \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

PHODGE_ERROR(ParseError);        // malformed input (JSON, rationals, shapes)
PHODGE_ERROR(NotAUnit);          // inversion of a non-invertible algebra element
PHODGE_ERROR(ParentMismatch);    // mixing elements of different algebras
PHODGE_ERROR(DimensionMismatch); // incompatible matrix/vector shapes
PHODGE_ERROR(NotNilpotent);      // block-structure request on a non-nilpotent map
PHODGE_ERROR(FlavorMismatch);    // combining integral with mod-Z class data
PHODGE_ERROR(EmptySchur);        // shape has more rows than the space has rank
PHODGE_ERROR(RankTooSmall);      // pipeline needs rank >= r(shape)
PHODGE_ERROR(ChainUnavailable);  // no tableau chain exists for this shape/rank
PHODGE_ERROR(BadShape);          // not a partition / not a group table / bad module
PHODGE_ERROR(NotSemistable);     // semistability required but absent
PHODGE_ERROR(ContextNotSemistable); // derived object fails semistability
PHODGE_ERROR(HypothesisNotMet);  // descent argument invoked with nonzero context N
PHODGE_ERROR(ZeroDivisorPivot);  // elimination stuck on a column of zero divisors
PHODGE_ERROR(InvalidModule);     // module data violates a structural relation
PHODGE_ERROR(ShapeMismatch);     // combining modules over different group shapes
PHODGE_ERROR(NotScalar);         // inertia action is not by scalar matrices
PHODGE_ERROR(NotConjInvariant);  // character not invariant under omega-conjugation

#undef PHODGE_ERROR

} // namespace phodge
