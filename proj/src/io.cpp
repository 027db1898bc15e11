#include "toric/io.hpp"

#include <fstream>
#include <sstream>

namespace toric {

namespace {

InputError bad(const std::string& path, const std::string& what) {
    return InputError(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw bad(path, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string str_at(const Json& j, const std::string& path) {
    if (!j.is_string()) throw bad(path, "expected a string");
    return j.get<std::string>();
}

Rat rat_at(const Json& j, const std::string& path) {
    try {
        return rat_from_string(str_at(j, path));
    } catch (const InputError& e) {
        throw bad(path, e.what());
    }
}

Int int_at(const Json& j, const std::string& path) {
    Rat q = rat_at(j, path);
    if (q.get_den() != 1) throw bad(path, "expected an integer");
    return q.get_num();
}

int small_int_at(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw bad(path, "expected an integer");
    return j.get<int>();
}

const Json& array_at(const Json& j, const std::string& path) {
    if (!j.is_array()) throw bad(path, "expected an array");
    return j;
}

std::string idx(const std::string& path, size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

void check_kind(const Json& j, const char* kind) {
    if (str_at(field(j, "kind", kind), std::string(kind) + ".kind") != kind)
        throw InputError(std::string(kind) + ".kind: expected \"" + kind + "\"");
}

Json ivec_to_json(const IVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
}

Json rvec_to_json(const RVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_to_string(x));
    return a;
}

IVec ivec_at(const Json& j, const std::string& path) {
    IVec v;
    for (size_t i = 0; i < array_at(j, path).size(); ++i)
        v.push_back(int_at(j[i], idx(path, i)));
    return v;
}

RVec rvec_at(const Json& j, const std::string& path) {
    RVec v;
    for (size_t i = 0; i < array_at(j, path).size(); ++i)
        v.push_back(rat_at(j[i], idx(path, i)));
    return v;
}

IMat imat_at(const Json& j, const std::string& path, int rows, int cols) {
    array_at(j, path);
    if (static_cast<int>(j.size()) != rows) throw bad(path, "wrong number of rows");
    IMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        IVec row = ivec_at(j[i], idx(path, i));
        if (static_cast<int>(row.size()) != cols) throw bad(idx(path, i), "wrong row length");
        for (int k = 0; k < cols; ++k) m.at(i, k) = row[k];
    }
    return m;
}

Json imat_to_json(const IMat& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows; ++i) a.push_back(ivec_to_json(m.row(i)));
    return a;
}

Json cone_to_json(const Fan& fan, ConeId c) {
    Json a = Json::array();
    for (int r : fan.cone(c).rays) a.push_back(r);
    return a;
}

ConeId cone_at(const Json& j, const std::string& path, const Fan& fan) {
    std::vector<int> rays;
    for (size_t i = 0; i < array_at(j, path).size(); ++i) {
        int r = small_int_at(j[i], idx(path, i));
        if (r < 0 || r >= fan.num_rays())
            throw bad(idx(path, i), "unknown ray index " + std::to_string(r));
        rays.push_back(r);
    }
    std::optional<ConeId> c = fan.find_cone(rays);
    if (!c) throw bad(path, "ray set spans no cone of the fan");
    return *c;
}

} // namespace

Json fan_to_json(const Fan& fan) {
    Json j;
    j["kind"] = "fan";
    j["rank"] = fan.rank();
    Json rays = Json::array();
    for (const IVec& v : fan.rays()) rays.push_back(ivec_to_json(v));
    j["rays"] = rays;
    Json mx = Json::array();
    for (ConeId c : fan.maximal_cones()) mx.push_back(cone_to_json(fan, c));
    j["maximal_cones"] = mx;
    return j;
}

Fan fan_from_json(const Json& j) {
    check_kind(j, "fan");
    int rank = small_int_at(field(j, "rank", "fan"), "fan.rank");
    std::vector<IVec> rays;
    const Json& jr = array_at(field(j, "rays", "fan"), "fan.rays");
    for (size_t i = 0; i < jr.size(); ++i) rays.push_back(ivec_at(jr[i], idx("fan.rays", i)));
    std::vector<std::vector<int>> mx;
    const Json& jm = array_at(field(j, "maximal_cones", "fan"), "fan.maximal_cones");
    for (size_t i = 0; i < jm.size(); ++i) {
        std::string path = idx("fan.maximal_cones", i);
        std::vector<int> cone;
        for (size_t k = 0; k < array_at(jm[i], path).size(); ++k) {
            int r = small_int_at(jm[i][k], idx(path, k));
            if (r < 0 || r >= static_cast<int>(rays.size()))
                throw bad(idx(path, k), "unknown ray index " + std::to_string(r));
            cone.push_back(r);
        }
        mx.push_back(cone);
    }
    return Fan::build(rank, rays, mx);
}

Json divisor_to_json(const QCartierDivisor& d) {
    Json j;
    j["kind"] = "divisor";
    Json eqs = Json::array();
    for (const auto& [c, m] : d.local_eq) { // ConeId order = (dim, lex rays)
        Json e;
        e["cone"] = cone_to_json(*d.fan, c);
        e["m"] = rvec_to_json(m);
        eqs.push_back(e);
    }
    j["local_equations"] = eqs;
    return j;
}

QCartierDivisor divisor_from_json(const Json& j, const Fan& fan) {
    check_kind(j, "divisor");
    QCartierDivisor d;
    d.fan = &fan;
    const Json& eqs =
        array_at(field(j, "local_equations", "divisor"), "divisor.local_equations");
    for (size_t i = 0; i < eqs.size(); ++i) {
        std::string path = idx("divisor.local_equations", i);
        ConeId c = cone_at(field(eqs[i], "cone", path), path + ".cone", fan);
        RVec m = rvec_at(field(eqs[i], "m", path), path + ".m");
        if (static_cast<int>(m.size()) != fan.rank())
            throw bad(path + ".m", "wrong dimension");
        if (!fan.cone(c).maximal) throw bad(path + ".cone", "not a maximal cone");
        d.local_eq[c] = m;
    }
    validate_divisor(d);
    return d;
}

Json cycle_to_json(const Cycle& z) {
    Json j;
    j["kind"] = "cycle";
    Json terms = Json::array();
    for (const auto& [c, q] : z.terms) {
        Json t;
        t["cone"] = cone_to_json(*z.fan, c);
        t["coeff"] = rat_to_string(q);
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

Cycle cycle_from_json(const Json& j, const Fan& fan) {
    check_kind(j, "cycle");
    Cycle z(fan);
    const Json& terms = array_at(field(j, "terms", "cycle"), "cycle.terms");
    for (size_t i = 0; i < terms.size(); ++i) {
        std::string path = idx("cycle.terms", i);
        ConeId c = cone_at(field(terms[i], "cone", path), path + ".cone", fan);
        z.add(c, rat_at(field(terms[i], "coeff", path), path + ".coeff"));
    }
    return z;
}

Json complements_to_json(const ComplementChoice& psi) {
    Json j;
    j["kind"] = "complements";
    switch (psi.kind()) {
    case ComplementKind::InnerProduct:
        j["type"] = "inner_product";
        j["gram"] = imat_to_json(psi.gram());
        break;
    case ComplementKind::Flag: {
        j["type"] = "flag";
        Json f = Json::array();
        for (const IVec& v : psi.flag()) f.push_back(ivec_to_json(v));
        j["flag"] = f;
        break;
    }
    case ComplementKind::Explicit: {
        j["type"] = "explicit";
        Json bases = Json::array();
        const Fan& fan = psi.fan();
        for (ConeId c = 0; c < fan.num_cones(); ++c) {
            Json e;
            e["cone"] = cone_to_json(fan, c);
            Json b = Json::array();
            for (const RVec& v : psi.psi(c)) b.push_back(rvec_to_json(v));
            e["basis"] = b;
            bases.push_back(e);
        }
        j["bases"] = bases;
        break;
    }
    }
    return j;
}

ComplementChoice complements_from_json(const Json& j, const Fan& fan) {
    check_kind(j, "complements");
    std::string type = str_at(field(j, "type", "complements"), "complements.type");
    if (type == "inner_product")
        return ComplementChoice::from_inner_product(
            fan,
            imat_at(field(j, "gram", "complements"), "complements.gram", fan.rank(),
                    fan.rank()));
    if (type == "flag") {
        std::vector<IVec> flag;
        const Json& jf = array_at(field(j, "flag", "complements"), "complements.flag");
        for (size_t i = 0; i < jf.size(); ++i)
            flag.push_back(ivec_at(jf[i], idx("complements.flag", i)));
        return ComplementChoice::from_flag(fan, flag);
    }
    if (type == "explicit") {
        std::vector<std::vector<RVec>> bases(fan.num_cones());
        std::vector<bool> seen(fan.num_cones(), false);
        const Json& jb = array_at(field(j, "bases", "complements"), "complements.bases");
        for (size_t i = 0; i < jb.size(); ++i) {
            std::string path = idx("complements.bases", i);
            ConeId c = cone_at(field(jb[i], "cone", path), path + ".cone", fan);
            if (seen[c]) throw bad(path + ".cone", "duplicate cone");
            seen[c] = true;
            const Json& b = array_at(field(jb[i], "basis", path), path + ".basis");
            for (size_t k = 0; k < b.size(); ++k)
                bases[c].push_back(rvec_at(b[k], idx(path + ".basis", k)));
        }
        for (ConeId c = 0; c < fan.num_cones(); ++c)
            if (!seen[c]) throw InputError("complements.bases: no basis for a cone");
        return ComplementChoice::from_explicit(fan, bases);
    }
    throw InputError("complements.type: unknown type \"" + type + "\"");
}

Json morphism_to_json(const ToricMorphism& f) {
    Json j;
    j["kind"] = "morphism";
    j["phi"] = imat_to_json(f.phi());
    j["source"] = fan_to_json(f.source());
    j["target"] = fan_to_json(f.target());
    return j;
}

MorphismDocument morphism_from_json(const Json& j) {
    check_kind(j, "morphism");
    MorphismDocument doc{fan_from_json(field(j, "source", "morphism")),
                         fan_from_json(field(j, "target", "morphism")),
                         {}};
    doc.phi = imat_at(field(j, "phi", "morphism"), "morphism.phi", doc.target.rank(),
                      doc.source.rank());
    return doc;
}

Json rational_to_json(const Rat& q) {
    Json j;
    j["kind"] = "rational";
    j["value"] = rat_to_string(q);
    return j;
}

std::string dump_canonical(const Json& j) {
    return j.dump(2) + "\n";
}

Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON document");
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << dump_canonical(j);
}

} // namespace toric
