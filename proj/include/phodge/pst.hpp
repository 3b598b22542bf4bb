#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phodge/etale.hpp"
#include "phodge/galois.hpp"
#include "phodge/schur.hpp"

namespace phodge {

template <class B>
using EtaleMatrix = Matrix<EtaleElem<B>>;

// entrywise cyclic shift: the coefficient-ring automorphism applied k times
template <class B>
EtaleMatrix<B> sigma_matrix(const EtaleMatrix<B>& m, long k) {
    if (k == 0 || m.empty()) return m;
    return m.template map<EtaleElem<B>>(
        [k](const EtaleElem<B>& e) { return e.shifted(k); });
}

template <class B>
std::vector<Matrix<B>> etale_components(const EtaleMatrix<B>& m) {
    const std::size_t f = m.exemplar().arity();
    std::vector<Matrix<B>> out;
    out.reserve(f);
    for (std::size_t c = 0; c < f; ++c)
        out.push_back(m.template map<B>([c](const EtaleElem<B>& e) { return e.comp(c); }));
    return out;
}

// Multiplicative character of (part of) the group, valued in units of B.
template <class B>
struct Character {
    std::shared_ptr<const GaloisShape> shape;
    bool full_domain = false; // false: defined on the distinguished subgroup only
    std::map<int, B> values;

    const B& at(int g) const {
        auto it = values.find(g);
        if (it == values.end())
            throw DimensionMismatch("character has no value at element " + std::to_string(g));
        return it->second;
    }
};

// Module over the product ring B^f carrying a shift-semilinear invertible phi,
// a nilpotent linear nmat, and a twisted group action rho (one matrix per group
// element; rho(g) is shift^{deg g}-semilinear).
template <class B>
struct PhiNGalModule {
    std::shared_ptr<const GaloisShape> shape;
    EtaleMatrix<B> phi;
    EtaleMatrix<B> nmat;
    std::vector<EtaleMatrix<B>> rho; // indexed by group element id
    Rational p = 2;

    std::size_t rank() const { return phi.rows(); }
    const EtaleElem<B>& exemplar() const { return phi.exemplar(); }
};

struct ValidationIssue {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const {
        if (ok()) return "all checks passed";
        std::string s;
        for (const auto& i : issues) {
            if (!s.empty()) s += "; ";
            s += i.check + ": " + i.detail;
        }
        return s;
    }
};

template <class B>
ValidationReport validate(const PhiNGalModule<B>& D) {
    ValidationReport rep;
    auto add = [&](const std::string& check, const std::string& detail) {
        rep.issues.push_back({check, detail});
    };

    if (!D.shape) {
        add("shape", "missing group data");
        return rep;
    }
    const GaloisShape& G = *D.shape;
    const std::size_t d = D.phi.rows();
    if (d == 0) {
        add("rank", "module rank must be positive");
        return rep;
    }
    if (!D.phi.is_square() || !D.nmat.is_square() || D.nmat.rows() != d) {
        add("dimensions", "phi and N must be square of equal size");
        return rep;
    }
    if (D.rho.size() != static_cast<std::size_t>(G.size())) {
        add("rho", "need exactly one matrix per group element");
        return rep;
    }
    for (int g = 0; g < G.size(); ++g)
        if (!D.rho[static_cast<std::size_t>(g)].is_square() ||
            D.rho[static_cast<std::size_t>(g)].rows() != d) {
            add("rho", "matrix for element " + std::to_string(g) + " has wrong size");
            return rep;
        }

    const std::size_t f = static_cast<std::size_t>(G.f());
    auto arity_ok = [&](const EtaleMatrix<B>& m) {
        for (const auto& e : m.data())
            if (e.arity() != f) return false;
        return true;
    };
    bool arities = arity_ok(D.phi) && arity_ok(D.nmat);
    for (const auto& u : D.rho) arities = arities && arity_ok(u);
    if (!arities) {
        add("arity", "every entry must have one component per quotient power");
        return rep;
    }

    if (!is_integer(D.p) || D.p < 2)
        add("p", "parameter p must be an integer >= 2");

    try {
        // phi invertible in every component
        const auto comps = etale_components(D.phi);
        for (std::size_t c = 0; c < comps.size(); ++c)
            if (!try_inverse(comps[c]))
                add("phi", "component " + std::to_string(c) + " is singular");

        if (!D.nmat.pow(static_cast<unsigned long>(d)).is_zero())
            add("N", "not nilpotent");

        const EtaleElem<B> p_elem =
            scalar_from_rational(D.phi.exemplar(), D.p);
        if (!(D.nmat * D.phi == p_elem * (D.phi * sigma_matrix(D.nmat, 1))))
            add("N-phi", "N*phi != p * phi * shift(N)");

        if (!D.rho[static_cast<std::size_t>(G.identity())].is_identity())
            add("rho", "identity element must act as the identity matrix");

        for (int g = 0; g < G.size(); ++g)
            for (int h = 0; h < G.size(); ++h) {
                const auto lhs = D.rho[static_cast<std::size_t>(G.mul(g, h))];
                const auto rhs = D.rho[static_cast<std::size_t>(g)] *
                                 sigma_matrix(D.rho[static_cast<std::size_t>(h)], G.deg(g));
                if (!(lhs == rhs)) {
                    add("rho-twisted-hom",
                        "rho(gh) != rho(g)*shift^deg(g)(rho(h)) at (g,h)=(" + std::to_string(g) +
                            "," + std::to_string(h) + ")");
                }
            }

        for (int g = 0; g < G.size(); ++g) {
            const auto& u = D.rho[static_cast<std::size_t>(g)];
            if (!(D.phi * sigma_matrix(u, 1) == u * sigma_matrix(D.phi, G.deg(g))))
                add("phi-rho", "phi*shift(rho(g)) != rho(g)*shift^deg(g)(phi) at g=" +
                                   std::to_string(g));
            if (!(D.nmat * u == u * sigma_matrix(D.nmat, G.deg(g))))
                add("N-rho", "N*rho(g) != rho(g)*shift^deg(g)(N) at g=" + std::to_string(g));
        }
    } catch (const Error& e) {
        add("internal", std::string("relation arithmetic failed: ") + e.what());
    }
    return rep;
}

template <class B>
void require_valid(const PhiNGalModule<B>& D) {
    const auto rep = validate(D);
    if (!rep.ok()) throw InvalidModule(rep.summary());
}

// Inertia-triviality flag alone, without the validity sweep. Callers must have
// established validity (directly or by construction from validated inputs).
template <class B>
bool inertia_acts_trivially(const PhiNGalModule<B>& D) {
    for (int g : D.shape->inertia())
        if (!D.rho[static_cast<std::size_t>(g)].is_identity()) return false;
    return true;
}

template <class B>
bool is_semistable(const PhiNGalModule<B>& D) {
    require_valid(D);
    return inertia_acts_trivially(D);
}

template <class B>
bool is_crystalline(const PhiNGalModule<B>& D) {
    return is_semistable(D) && D.nmat.is_zero();
}

// --- constructions -------------------------------------------------------------

template <class B>
PhiNGalModule<B> module_tensor(const PhiNGalModule<B>& a, const PhiNGalModule<B>& b) {
    if (!a.shape || !b.shape || !(*a.shape == *b.shape))
        throw ShapeMismatch("tensor factors live over different Galois data");
    if (a.p != b.p) throw ShapeMismatch("tensor factors use different p parameters");
    const auto ia = EtaleMatrix<B>::identity(a.rank(), a.exemplar());
    const auto ib = EtaleMatrix<B>::identity(b.rank(), b.exemplar());
    std::vector<EtaleMatrix<B>> rho;
    rho.reserve(a.rho.size());
    for (std::size_t g = 0; g < a.rho.size(); ++g) rho.push_back(kron(a.rho[g], b.rho[g]));
    return PhiNGalModule<B>{a.shape, kron(a.phi, b.phi),
                            kron(a.nmat, ib) + kron(ia, b.nmat), std::move(rho), a.p};
}

template <class B>
PhiNGalModule<B> module_schur(const PhiNGalModule<B>& D, const Partition& u) {
    SchurSpace sp(u, static_cast<int>(D.rank()));
    if (sp.dim() == 0)
        throw EmptySchur("functor vanishes: rank " + std::to_string(D.rank()) +
                         " is below " + std::to_string(u.rows()) + " rows");
    std::vector<EtaleMatrix<B>> rho;
    rho.reserve(D.rho.size());
    for (const auto& u_g : D.rho) rho.push_back(schur_matrix(u_g, sp));
    return PhiNGalModule<B>{D.shape, schur_matrix(D.phi, sp), schur_derivation(D.nmat, sp),
                            std::move(rho), D.p};
}

// --- inertia character extraction ------------------------------------------------

// Core extraction: every subgroup element must act by a shift-fixed scalar matrix.
template <class B>
Character<B> extract_inertia_character(const PhiNGalModule<B>& D) {
    Character<B> eta{D.shape, false, {}};
    const GaloisShape& G = *D.shape;
    for (int g : G.inertia()) {
        const auto& U = D.rho[static_cast<std::size_t>(g)];
        const EtaleElem<B> c = U.at(0, 0);
        for (std::size_t i = 0; i < U.rows(); ++i)
            for (std::size_t j = 0; j < U.cols(); ++j) {
                const bool ok = (i == j) ? (U.at(i, j) == c) : U.at(i, j).is_zero();
                if (!ok)
                    throw NotScalar("action at subgroup element " + std::to_string(g) +
                                    " is not scalar");
            }
        if (!(c.shifted(1) == c))
            throw NotScalar("scalar at subgroup element " + std::to_string(g) +
                            " is not shift-fixed");
        if (!scalar_try_invert(c.comp(0)))
            throw NotAUnit("scalar at subgroup element " + std::to_string(g) +
                           " is not a unit");
        eta.values.emplace(g, c.comp(0));
    }
    for (int g : G.inertia())
        if (!(eta.at(G.conj_by_omega(g)) == eta.at(g)))
            throw NotConjInvariant("character is not invariant under conjugation at element " +
                                   std::to_string(g));
    return eta;
}

template <class B>
Character<B> inertia_scalar_extract_tensor(const PhiNGalModule<B>& D,
                                           const PhiNGalModule<B>& Dp) {
    require_valid(D);
    require_valid(Dp);
    // the tensor of validated modules is valid by construction
    if (!inertia_acts_trivially(module_tensor(D, Dp)))
        throw ContextNotSemistable("tensor context is not semistable");
    return extract_inertia_character(D);
}

template <class B>
Character<B> inertia_scalar_extract_schur(const PhiNGalModule<B>& D, const Partition& u) {
    if (static_cast<int>(D.rank()) < u.rows())
        throw RankTooSmall("functor vanishes: need rank at least " +
                           std::to_string(u.rows()) + ", got " + std::to_string(D.rank()));
    require_valid(D);
    // A non-semistable context is reported first; the rank bound below only matters
    // for the validity of the scalar-forcing inference once the context is semistable.
    if (!inertia_acts_trivially(module_schur(D, u)))
        throw ContextNotSemistable("functor context is not semistable");
    if (static_cast<int>(D.rank()) < r_of(u))
        throw RankTooSmall("need rank at least " + std::to_string(r_of(u)) + ", got " +
                           std::to_string(D.rank()));
    return extract_inertia_character(D);
}

// --- character extension ----------------------------------------------------------

template <class B>
struct ExtendedCharacter {
    std::shared_ptr<const QuotientAlgebra<B>> F; // B[x]/(x^f - c) or a supplied factor
    Character<AlgebraElem<B>> mu;                // full-group character into F
};

template <class B>
ExtendedCharacter<B> extend_character(const Character<B>& eta,
                                      std::type_identity_t<std::optional<Poly<B>>> factor =
                                          std::nullopt) {
    if (!eta.shape) throw DimensionMismatch("character carries no group data");
    const GaloisShape& G = *eta.shape;
    for (int g : G.inertia())
        if (!eta.values.count(g))
            throw DimensionMismatch("character is missing subgroup element " + std::to_string(g));
    for (int g : G.inertia())
        if (!(eta.at(G.conj_by_omega(g)) == eta.at(g)))
            throw NotConjInvariant("character value changes under conjugation at element " +
                                   std::to_string(g));
    for (int g : G.inertia())
        for (int h : G.inertia())
            if (!(eta.at(G.mul(g, h)) == eta.at(g) * eta.at(h)))
                throw HypothesisNotMet("character is not multiplicative at (" + std::to_string(g) +
                                       "," + std::to_string(h) + ")");

    const int f = G.f();
    const B c = eta.at(G.omega_pow(f));
    const B zero = scalar_zero(c), one = scalar_one(c);
    std::vector<B> coeffs(static_cast<std::size_t>(f) + 1, zero);
    coeffs[0] = -c;
    coeffs[static_cast<std::size_t>(f)] = one;
    Poly<B> full(std::move(coeffs)); // x^f - c

    Poly<B> modulus = full;
    if (factor) {
        auto qr = poly_divmod(full, *factor);
        if (!qr || !qr->second.is_zero())
            throw HypothesisNotMet("supplied factor does not divide the extension modulus");
        modulus = *factor;
    }
    auto F = QuotientAlgebra<B>::create(std::move(modulus));
    const AlgebraElem<B> x = F->gen();
    if (!scalar_try_invert(x))
        throw NotAUnit("extension generator is not a unit (is the subgroup value a unit?)");

    Character<AlgebraElem<B>> mu{eta.shape, true, {}};
    for (int g = 0; g < G.size(); ++g)
        mu.values.emplace(g, F->from_base(eta.at(G.inertia_part(g))) *
                                 x.pow(static_cast<unsigned long>(G.deg(g))));

    for (int g = 0; g < G.size(); ++g)
        for (int h = 0; h < G.size(); ++h)
            if (!(mu.at(G.mul(g, h)) == mu.at(g) * mu.at(h)))
                throw HypothesisNotMet("extension is not multiplicative at (" + std::to_string(g) +
                                       "," + std::to_string(h) + ")");
    for (int g : G.inertia())
        if (!(mu.at(g) == F->from_base(eta.at(g))))
            throw HypothesisNotMet("extension does not restrict to the input character");
    if (!(mu.at(G.omega()).pow(static_cast<unsigned long>(f)) == F->from_base(c)))
        throw HypothesisNotMet("extension root power check failed");
    return {std::move(F), std::move(mu)};
}

// --- twisting -----------------------------------------------------------------------

template <class B>
EtaleMatrix<AlgebraElem<B>> lift_matrix(const EtaleMatrix<B>& m,
                                        const std::shared_ptr<const QuotientAlgebra<B>>& F) {
    return m.template map<EtaleElem<AlgebraElem<B>>>([&](const EtaleElem<B>& e) {
        std::vector<AlgebraElem<B>> comps;
        comps.reserve(e.arity());
        for (const auto& v : e.comps()) comps.push_back(F->from_base(v));
        return EtaleElem<AlgebraElem<B>>(std::move(comps));
    });
}

// Extend coefficients along B -> F and scale the group action by mu^sign.
template <class B>
PhiNGalModule<AlgebraElem<B>> twist_module(const PhiNGalModule<B>& D,
                                           const Character<AlgebraElem<B>>& mu, int sign) {
    if (sign != 1 && sign != -1) throw DimensionMismatch("twist sign must be +1 or -1");
    if (!mu.full_domain)
        throw HypothesisNotMet("twisting needs a character on the full group");
    if (!D.shape || !mu.shape || !(*D.shape == *mu.shape))
        throw ShapeMismatch("character group does not match the module group");
    const auto F = mu.at(D.shape->identity()).parent();
    const std::size_t f = D.phi.exemplar().arity();

    std::vector<EtaleMatrix<AlgebraElem<B>>> rho;
    rho.reserve(D.rho.size());
    for (int g = 0; g < D.shape->size(); ++g) {
        AlgebraElem<B> scale = mu.at(g);
        if (sign < 0) scale = scalar_invert(scale);
        const auto diag = EtaleElem<AlgebraElem<B>>::diagonal(f, scale);
        rho.push_back(diag * lift_matrix(D.rho[static_cast<std::size_t>(g)], F));
    }
    return PhiNGalModule<AlgebraElem<B>>{D.shape, lift_matrix(D.phi, F),
                                         lift_matrix(D.nmat, F), std::move(rho), D.p};
}

// --- monodromy descent ------------------------------------------------------------

struct DescentVerdict {
    bool ok = false;
    std::string detail;
};

template <class B>
DescentVerdict monodromy_descend_tensor(const PhiNGalModule<B>& a, const PhiNGalModule<B>& b) {
    if (!a.shape || !b.shape || !(*a.shape == *b.shape))
        throw ShapeMismatch("descent factors live over different Galois data");
    const auto ia = EtaleMatrix<B>::identity(a.rank(), a.exemplar());
    const auto ib = EtaleMatrix<B>::identity(b.rank(), b.exemplar());
    if (!(kron(a.nmat, ib) + kron(ia, b.nmat)).is_zero())
        throw HypothesisNotMet("combined monodromy operator is nonzero");
    if (!a.nmat.is_zero()) return {false, "left monodromy operator is nonzero"};
    if (!b.nmat.is_zero()) return {false, "right monodromy operator is nonzero"};
    return {true, "both monodromy operators vanish"};
}

template <class B>
DescentVerdict monodromy_descend_schur(const PhiNGalModule<B>& D, const Partition& u) {
    if (static_cast<int>(D.rank()) < r_of(u))
        throw RankTooSmall("need rank at least " + std::to_string(r_of(u)) + ", got " +
                           std::to_string(D.rank()));
    SchurSpace sp(u, static_cast<int>(D.rank()));
    if (!schur_derivation(D.nmat, sp).is_zero())
        throw HypothesisNotMet("derived monodromy operator is nonzero");
    if (!D.nmat.is_zero())
        return {false, "monodromy operator is nonzero despite a vanishing derivation"};
    return {true, "monodromy operator vanishes"};
}

// --- full pipelines ----------------------------------------------------------------

template <class B>
struct TwistPipelineResult {
    Character<B> eta;                                   // on the subgroup
    std::shared_ptr<const QuotientAlgebra<B>> F;        // extension algebra
    Character<AlgebraElem<B>> mu;                       // on the full group
    std::vector<PhiNGalModule<AlgebraElem<B>>> twisted; // one or two modules
    std::vector<bool> twist_semistable;
    bool context_crystalline = false;
    std::vector<bool> twist_crystalline;                // filled when context is crystalline
    std::optional<DescentVerdict> descent;
};

template <class B>
TwistPipelineResult<B> pipeline_sst_tensor(const PhiNGalModule<B>& a,
                                           const PhiNGalModule<B>& b) {
    require_valid(a);
    require_valid(b);
    // tensors and twists of validated modules are valid by construction; each derived
    // module below is still validated once, but never repeatedly
    const auto t = module_tensor(a, b);
    if (!inertia_acts_trivially(t))
        throw ContextNotSemistable("tensor context is not semistable");

    TwistPipelineResult<B> out{extract_inertia_character(a), nullptr,
                               Character<AlgebraElem<B>>{}, {}, {}, false, {}, std::nullopt};
    auto ext = extend_character(out.eta);
    out.F = std::move(ext.F);
    out.mu = std::move(ext.mu);
    out.twisted.push_back(twist_module(a, out.mu, -1));
    out.twisted.push_back(twist_module(b, out.mu, +1));
    for (const auto& m : out.twisted) {
        require_valid(m);
        out.twist_semistable.push_back(inertia_acts_trivially(m));
    }
    out.context_crystalline = t.nmat.is_zero(); // semistability established above
    if (out.context_crystalline) {
        out.descent = monodromy_descend_tensor(a, b);
        for (std::size_t i = 0; i < out.twisted.size(); ++i)
            out.twist_crystalline.push_back(out.twist_semistable[i] &&
                                            out.twisted[i].nmat.is_zero());
    }
    return out;
}

template <class B>
TwistPipelineResult<B> pipeline_sst_schur(const PhiNGalModule<B>& D, const Partition& u) {
    if (static_cast<int>(D.rank()) < r_of(u))
        throw RankTooSmall("need rank at least " + std::to_string(r_of(u)) + ", got " +
                           std::to_string(D.rank()));
    require_valid(D);
    const auto s = module_schur(D, u);
    if (!inertia_acts_trivially(s))
        throw ContextNotSemistable("functor context is not semistable");

    TwistPipelineResult<B> out{extract_inertia_character(D), nullptr,
                               Character<AlgebraElem<B>>{}, {}, {}, false, {}, std::nullopt};
    auto ext = extend_character(out.eta);
    out.F = std::move(ext.F);
    out.mu = std::move(ext.mu);
    out.twisted.push_back(twist_module(D, out.mu, -1));
    require_valid(out.twisted[0]);
    out.twist_semistable.push_back(inertia_acts_trivially(out.twisted[0]));
    out.context_crystalline = s.nmat.is_zero();
    if (out.context_crystalline) {
        out.descent = monodromy_descend_schur(D, u);
        out.twist_crystalline.push_back(out.twist_semistable[0] &&
                                        out.twisted[0].nmat.is_zero());
    }
    return out;
}

} // namespace phodge
