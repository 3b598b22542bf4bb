#include "phodge/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace phodge::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with field \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

long long int_of(const json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        fail(std::string(what) + " must be an integer");
    return j.get<long long>();
}

std::vector<int> int_list_of(const json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(static_cast<int>(int_of(v, what)));
    return out;
}

std::vector<Rational> rational_list_of(const json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array of rationals");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(rational_from_json(v));
    return out;
}

// Group-element keys of a JSON object ("0", "1", ...), strictly parsed.
int gid_of_key(const std::string& key, int group_size) {
    if (key.empty()) fail("empty group-element key");
    std::size_t pos = 0;
    int id = 0;
    try {
        id = std::stoi(key, &pos);
    } catch (const std::exception&) {
        fail("group-element key is not an integer: \"" + key + "\"");
    }
    if (pos != key.size()) fail("group-element key is not an integer: \"" + key + "\"");
    if (id < 0 || id >= group_size)
        fail("group-element key out of range: \"" + key + "\"");
    return id;
}

} // namespace

// --- files -----------------------------------------------------------------------

json load_json_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) fail("cannot open input file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(path + ": " + e.what());
    }
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

// --- scalars -----------------------------------------------------------------------

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned())
        return Rational(Int(j.get<long long>()));
    if (j.is_number_float())
        fail("floating-point literals are not exact; write the value as a string \"p/q\"");
    fail("expected a rational literal (string \"p/q\" or integer)");
}

json rational_to_json(const Rational& q) { return json(format_rational(q)); }

std::shared_ptr<const AlgebraQ> ambient_algebra(const json& file) {
    if (!file.is_object() || !file.contains("E")) return rational_line_algebra();
    try {
        auto coeffs = rational_list_of(file.at("E"), "\"E\"");
        return AlgebraQ::create(Poly<Rational>(std::move(coeffs)));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(std::string("bad base-algebra modulus \"E\": ") + e.what());
    }
}

json ambient_to_json(const AlgebraQ& a) {
    json out = json::array();
    for (const auto& c : a.modulus().c) out.push_back(rational_to_json(c));
    return out;
}

ElemQ elem_from_json(const json& j, const std::shared_ptr<const AlgebraQ>& ambient) {
    if (j.is_string() || j.is_number())
        return ambient->from_rational(rational_from_json(j));
    if (j.is_array())
        return ambient->element(rational_list_of(j, "element coefficients"));
    if (j.is_object()) {
        auto val = rational_list_of(field(j, "val"), "\"val\"");
        if (!j.contains("mod")) return ambient->element(std::move(val));
        auto mod = rational_list_of(j.at("mod"), "\"mod\"");
        try {
            return AlgebraQ::create(Poly<Rational>(std::move(mod)))->element(std::move(val));
        } catch (const Error& e) {
            fail(std::string("bad element modulus \"mod\": ") + e.what());
        }
    }
    fail("expected an algebra element (rational, coefficient array, or {\"mod\",\"val\"})");
}

json elem_to_json(const ElemQ& e) {
    if (e.parent()->degree() == 1) return rational_to_json(e.coeffs()[0]);
    json out = json::array();
    for (const auto& c : e.coeffs()) out.push_back(rational_to_json(c));
    return out;
}

EtaleElem<ElemQ> etale_from_json(const json& j, std::size_t arity,
                                 const std::shared_ptr<const AlgebraQ>& ambient) {
    if (arity > 1 && j.is_array()) {
        if (j.size() != arity)
            fail("product-ring entry needs exactly " + std::to_string(arity) +
                 " components, got " + std::to_string(j.size()));
        std::vector<ElemQ> comps;
        comps.reserve(arity);
        for (const auto& v : j) comps.push_back(elem_from_json(v, ambient));
        return EtaleElem<ElemQ>(std::move(comps));
    }
    return EtaleElem<ElemQ>::diagonal(arity, elem_from_json(j, ambient));
}

json etale_to_json(const EtaleElem<ElemQ>& e) {
    // Constant entries compress to their single value, but only when that value
    // encodes as a scalar; a coefficient array could be misread as a component
    // list on the way back in.
    if (e.arity() == 1) return elem_to_json(e.comp(0));
    if (e.is_diagonal()) {
        json one = elem_to_json(e.comp(0));
        if (!one.is_array()) return one;
    }
    json out = json::array();
    for (const auto& c : e.comps()) out.push_back(elem_to_json(c));
    return out;
}

// --- matrices ---------------------------------------------------------------------

namespace {

template <class S, class EntryParser>
Matrix<S> parse_matrix(const json& j, EntryParser&& entry) {
    const long long rows = int_of(field(j, "rows"), "\"rows\"");
    const long long cols = int_of(field(j, "cols"), "\"cols\"");
    if (rows < 1 || cols < 1) fail("matrix dimensions must be positive");
    const json& data = field(j, "data");
    if (!data.is_array()) fail("\"data\" must be an array");
    if (data.size() != static_cast<std::size_t>(rows * cols))
        fail("\"data\" holds " + std::to_string(data.size()) + " entries, expected " +
             std::to_string(rows * cols));
    std::vector<S> entries;
    entries.reserve(data.size());
    for (const auto& v : data) entries.push_back(entry(v));
    return Matrix<S>(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                     std::move(entries));
}

template <class S, class EntryDumper>
json dump_matrix(const Matrix<S>& m, EntryDumper&& entry) {
    json out = json::object();
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    json data = json::array();
    for (const auto& x : m.data()) data.push_back(entry(x));
    out["data"] = std::move(data);
    return out;
}

} // namespace

Matrix<ElemQ> matrix_from_json(const json& j, const std::shared_ptr<const AlgebraQ>& ambient) {
    return parse_matrix<ElemQ>(j, [&](const json& v) { return elem_from_json(v, ambient); });
}

json matrix_to_json(const Matrix<ElemQ>& m) {
    return dump_matrix(m, [](const ElemQ& e) { return elem_to_json(e); });
}

Matrix<EtaleElem<ElemQ>> etale_matrix_from_json(const json& j, std::size_t arity,
                                                const std::shared_ptr<const AlgebraQ>& ambient) {
    return parse_matrix<EtaleElem<ElemQ>>(
        j, [&](const json& v) { return etale_from_json(v, arity, ambient); });
}

json etale_matrix_to_json(const Matrix<EtaleElem<ElemQ>>& m) {
    return dump_matrix(m, [](const EtaleElem<ElemQ>& e) { return etale_to_json(e); });
}

// --- combinatorics ------------------------------------------------------------------

Partition partition_from_json(const json& j) {
    return Partition(int_list_of(j, "partition"));
}

json partition_to_json(const Partition& u) {
    json out = json::array();
    for (int p : u.parts()) out.push_back(p);
    return out;
}

json tableau_to_json(const Tableau& t) {
    json out = json::array();
    for (const auto& row : t.row_data()) {
        json r = json::array();
        for (int v : row) r.push_back(v);
        out.push_back(std::move(r));
    }
    return out;
}

// --- classification data -------------------------------------------------------------

ClassData<ElemQ> classdata_from_json(const json& j) {
    const auto ambient = ambient_algebra(j);
    const json& fl = field(j, "flavor");
    if (!fl.is_string()) fail("\"flavor\" must be \"HT\" or \"dR\"");
    const std::string name = fl.get<std::string>();
    Flavor flavor;
    if (name == flavor_name(Flavor::HodgeTate)) flavor = Flavor::HodgeTate;
    else if (name == flavor_name(Flavor::DeRham)) flavor = Flavor::DeRham;
    else fail("unknown flavor \"" + name + "\" (expected \"HT\" or \"dR\")");

    const json& bl = field(j, "blocks");
    if (!bl.is_array()) fail("\"blocks\" must be an array");
    std::vector<ClassBlock<ElemQ>> blocks;
    blocks.reserve(bl.size());
    for (const auto& b : bl) {
        ClassBlock<ElemQ> block{elem_from_json(field(b, "weight"), ambient),
                                static_cast<int>(int_of(field(b, "depth"), "\"depth\""))};
        blocks.push_back(std::move(block));
    }
    return ClassData<ElemQ>(flavor, std::move(blocks));
}

json classdata_to_json(const ClassData<ElemQ>& c) {
    json out = json::object();
    out["flavor"] = flavor_name(c.flavor());
    json blocks = json::array();
    const auto ambient = c.blocks().front().weight.parent();
    for (const auto& b : c.blocks()) {
        json block = json::object();
        block["weight"] = elem_to_json(b.weight);
        block["depth"] = b.depth;
        blocks.push_back(std::move(block));
    }
    out["blocks"] = std::move(blocks);
    if (ambient->degree() > 1) out["E"] = ambient_to_json(*ambient);
    return out;
}

// --- weight systems ------------------------------------------------------------------

WeightSystem<ElemQ> weight_system_from_json(const json& j) {
    const auto ambient = ambient_algebra(j);
    const json& lb = field(j, "labels");
    if (!lb.is_array()) fail("\"labels\" must be an array of strings");
    std::vector<std::string> labels;
    labels.reserve(lb.size());
    for (const auto& v : lb) {
        if (!v.is_string()) fail("\"labels\" must be an array of strings");
        labels.push_back(v.get<std::string>());
    }
    const json& ws = field(j, "weights");
    if (!ws.is_array()) fail("\"weights\" must be an array of weight arrays");
    std::vector<std::vector<ElemQ>> weights;
    weights.reserve(ws.size());
    for (const auto& row : ws) {
        if (!row.is_array()) fail("\"weights\" must be an array of weight arrays");
        std::vector<ElemQ> w;
        w.reserve(row.size());
        for (const auto& v : row) w.push_back(elem_from_json(v, ambient));
        weights.push_back(std::move(w));
    }
    return WeightSystem<ElemQ>(std::move(labels), std::move(weights));
}

json weight_system_to_json(const WeightSystem<ElemQ>& ws) {
    json out = json::object();
    json labels = json::array();
    for (const auto& l : ws.labels()) labels.push_back(l);
    out["labels"] = std::move(labels);
    json weights = json::array();
    std::shared_ptr<const AlgebraQ> ambient;
    for (std::size_t h = 0; h < ws.labels().size(); ++h) {
        json row = json::array();
        for (const auto& w : ws.at(h)) {
            if (!ambient) ambient = w.parent();
            row.push_back(elem_to_json(w));
        }
        weights.push_back(std::move(row));
    }
    out["weights"] = std::move(weights);
    if (ambient && ambient->degree() > 1) out["E"] = ambient_to_json(*ambient);
    return out;
}

json character_weights_to_json(const CharacterWeights<ElemQ>& cw) {
    json out = json::object();
    json labels = json::array();
    for (const auto& l : cw.labels) labels.push_back(l);
    out["labels"] = std::move(labels);
    json omega = json::array();
    std::shared_ptr<const AlgebraQ> ambient;
    for (const auto& w : cw.omega) {
        if (!ambient) ambient = w.parent();
        omega.push_back(elem_to_json(w));
    }
    out["omega"] = std::move(omega);
    if (ambient && ambient->degree() > 1) out["E"] = ambient_to_json(*ambient);
    return out;
}

json tensor_solve_to_json(const TensorSolve<ElemQ>& s) {
    if (s.ok()) return character_weights_to_json(*s.mu);
    json w = json::object();
    w["label"] = s.witness->label;
    w["i"] = s.witness->i;
    w["j"] = s.witness->j;
    w["sum"] = elem_to_json(s.witness->sum);
    json out = json::object();
    out["no_solution"] = std::move(w);
    return out;
}

json schur_solve_to_json(const SchurSolve<ElemQ>& s) {
    if (s.ok()) return character_weights_to_json(*s.mu);
    json w = json::object();
    w["label"] = s.witness->label;
    w["tableau"] = tableau_to_json(s.witness->tableau);
    w["sum"] = elem_to_json(s.witness->sum);
    json out = json::object();
    out["no_solution"] = std::move(w);
    return out;
}

// --- group shapes and modules ---------------------------------------------------------

std::shared_ptr<const GaloisShape> shape_from_json(const json& j) {
    const json& tbl = field(j, "group");
    if (!tbl.is_array()) fail("\"group\" must be a square array of id arrays");
    std::vector<std::vector<int>> table;
    table.reserve(tbl.size());
    for (const auto& row : tbl) table.push_back(int_list_of(row, "\"group\" row"));

    std::vector<int> inertia = int_list_of(field(j, "inertia"), "\"inertia\"");
    const int omega = static_cast<int>(int_of(field(j, "omega"), "\"omega\""));
    std::optional<std::vector<int>> deg;
    if (j.contains("deg")) deg = int_list_of(j.at("deg"), "\"deg\"");

    std::shared_ptr<const GaloisShape> shape;
    try {
        shape = std::make_shared<const GaloisShape>(std::move(table), std::move(inertia), omega,
                                                    std::move(deg));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(std::string("bad group data: ") + e.what());
    }
    const long long f = int_of(field(j, "f"), "\"f\"");
    if (f != shape->f())
        fail("declared \"f\" = " + std::to_string(f) + " but the group has quotient order " +
             std::to_string(shape->f()));
    return shape;
}

void shape_fields_to_json(const GaloisShape& g, json& out) {
    json table = json::array();
    for (const auto& row : g.table()) {
        json r = json::array();
        for (int v : row) r.push_back(v);
        table.push_back(std::move(r));
    }
    out["group"] = std::move(table);
    json inertia = json::array();
    for (int v : g.inertia()) inertia.push_back(v);
    out["inertia"] = std::move(inertia);
    out["omega"] = g.omega();
    out["f"] = g.f();
    json deg = json::array();
    for (int gid = 0; gid < g.size(); ++gid) deg.push_back(g.deg(gid));
    out["deg"] = std::move(deg);
}

PhiNGalModule<ElemQ> module_from_json(const json& j) {
    const auto shape = shape_from_json(j);
    const auto ambient = ambient_algebra(j);
    const auto arity = static_cast<std::size_t>(shape->f());

    auto phi = etale_matrix_from_json(field(j, "phi"), arity, ambient);
    auto nmat = etale_matrix_from_json(field(j, "N"), arity, ambient);

    const json& rj = field(j, "rho");
    if (!rj.is_object()) fail("\"rho\" must map group-element ids to matrices");
    const auto n = static_cast<std::size_t>(shape->size());
    const auto exemplar = EtaleElem<ElemQ>::diagonal(arity, ambient->zero());
    std::vector<Matrix<EtaleElem<ElemQ>>> rho(n, Matrix<EtaleElem<ElemQ>>(1, 1, exemplar));
    std::vector<bool> seen(n, false);
    for (const auto& [key, value] : rj.items()) {
        const int gid = gid_of_key(key, shape->size());
        rho[static_cast<std::size_t>(gid)] = etale_matrix_from_json(value, arity, ambient);
        seen[static_cast<std::size_t>(gid)] = true;
    }
    for (std::size_t gid = 0; gid < n; ++gid)
        if (!seen[gid]) fail("\"rho\" is missing group element " + std::to_string(gid));

    Rational p(2);
    if (j.contains("p")) p = rational_from_json(j.at("p"));
    return PhiNGalModule<ElemQ>{shape, std::move(phi), std::move(nmat), std::move(rho), p};
}

json module_to_json(const PhiNGalModule<ElemQ>& d) {
    json out = json::object();
    if (!d.shape) fail("module carries no group data");
    shape_fields_to_json(*d.shape, out);
    out["phi"] = etale_matrix_to_json(d.phi);
    out["N"] = etale_matrix_to_json(d.nmat);
    json rho = json::object();
    for (std::size_t gid = 0; gid < d.rho.size(); ++gid)
        rho[std::to_string(gid)] = etale_matrix_to_json(d.rho[gid]);
    out["rho"] = std::move(rho);
    out["p"] = rational_to_json(d.p);
    const auto ambient = d.exemplar().comp(0).parent();
    if (ambient->degree() > 1) out["E"] = ambient_to_json(*ambient);
    return out;
}

// --- reports ----------------------------------------------------------------------------

json validation_to_json(const ValidationReport& rep) {
    json out = json::object();
    out["ok"] = rep.ok();
    json issues = json::array();
    for (const auto& i : rep.issues) {
        json issue = json::object();
        issue["check"] = i.check;
        issue["detail"] = i.detail;
        issues.push_back(std::move(issue));
    }
    out["issues"] = std::move(issues);
    return out;
}

json character_to_json(const Character<ElemQ>& eta) {
    json values = json::object();
    for (const auto& [gid, value] : eta.values) values[std::to_string(gid)] = elem_to_json(value);
    json out = json::object();
    out["values"] = std::move(values);
    return out;
}

json descent_to_json(const DescentVerdict& v) {
    json out = json::object();
    out["ok"] = v.ok;
    out["detail"] = v.detail;
    return out;
}

json pipeline_to_json(const TwistPipelineResult<ElemQ>& r) {
    json out = json::object();
    out["eta"] = character_to_json(r.eta);

    json modulus = json::array();
    for (const auto& c : r.F->modulus().c) modulus.push_back(elem_to_json(c));
    out["extension_modulus"] = std::move(modulus);

    json mu_values = json::object();
    for (const auto& [gid, value] : r.mu.values) {
        json coeffs = json::array();
        for (const auto& c : value.coeffs()) coeffs.push_back(elem_to_json(c));
        mu_values[std::to_string(gid)] = std::move(coeffs);
    }
    json mu = json::object();
    mu["values"] = std::move(mu_values);
    out["mu"] = std::move(mu);

    json sst = json::array();
    for (bool b : r.twist_semistable) sst.push_back(b);
    out["twist_semistable"] = std::move(sst);
    out["context_crystalline"] = r.context_crystalline;
    if (r.context_crystalline) {
        json crys = json::array();
        for (bool b : r.twist_crystalline) crys.push_back(b);
        out["twist_crystalline"] = std::move(crys);
    } else {
        out["twist_crystalline"] = nullptr;
    }
    out["descent"] = r.descent ? descent_to_json(*r.descent) : json(nullptr);

    const auto ambient = r.F->base_exemplar().parent();
    if (ambient->degree() > 1) out["E"] = ambient_to_json(*ambient);
    return out;
}

json error_to_json(const Error& e) {
    json inner = json::object();
    inner["name"] = e.name();
    inner["detail"] = e.what();
    json out = json::object();
    out["error"] = std::move(inner);
    return out;
}

} // namespace phodge::io
