// Command-line front end: every subcommand reads JSON documents, runs one
// library operation, and writes a result document to --out or stdout.
// Exit codes: 0 success, 1 mathematical-precondition failure, 2 input error.

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toric/cycle_ring.hpp"
#include "toric/intersection.hpp"
#include "toric/io.hpp"
#include "toric/morphism.hpp"

using namespace toric;

namespace {

struct Inputs {
    std::string fan_path;
    std::vector<std::string> divisor_paths;
    std::vector<std::string> complements_paths;
    std::vector<std::string> cycle_paths;
    std::string morphism_path;
    std::string poly_expr;
    std::string cone_spec;
    std::string ray_spec;
    std::string out_path;
    int exponent = 1;
    int index = 0;
    unsigned seed = 0;
};

void emit(const Inputs& in, const Json& j) {
    if (in.out_path.empty())
        std::cout << dump_canonical(j);
    else
        write_json_file(in.out_path, j);
}

Fan load_fan(const Inputs& in) {
    if (in.fan_path.empty()) throw InputError("--fan is required");
    return fan_from_json(load_json_file(in.fan_path));
}

ComplementChoice load_psi(const Inputs& in, const Fan& fan, size_t which = 0) {
    if (which >= in.complements_paths.size()) throw InputError("--complements is required");
    return complements_from_json(load_json_file(in.complements_paths[which]), fan);
}

std::vector<QCartierDivisor> load_divisors(const Inputs& in, const Fan& fan) {
    if (in.divisor_paths.empty()) throw InputError("--divisor is required");
    std::vector<QCartierDivisor> ds;
    for (const std::string& p : in.divisor_paths)
        ds.push_back(divisor_from_json(load_json_file(p), fan));
    return ds;
}

Cycle load_cycle_or_fundamental(const Inputs& in, const Fan& fan, size_t which = 0) {
    if (which >= in.cycle_paths.size()) {
        Cycle z(fan);
        z.add(fan.zero_cone(), Rat(1));
        return z;
    }
    return cycle_from_json(load_json_file(in.cycle_paths[which]), fan);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError(std::string("malformed ") + what + " \"" + text + "\"");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

ConeId parse_cone(const Inputs& in, const Fan& fan) {
    if (in.cone_spec.empty()) throw InputError("--cone is required");
    std::vector<int> rays = parse_int_list(in.cone_spec, "cone");
    for (int r : rays)
        if (r < 0 || r >= fan.num_rays())
            throw InputError("unknown ray index " + std::to_string(r) + " in --cone");
    return fan.cone_id(rays);
}

std::vector<IVec> flag_of(const ComplementChoice& psi) {
    if (psi.kind() != ComplementKind::Flag)
        throw InputError("this subcommand needs a flag-type complements document");
    return psi.flag();
}

IMat gram_of(const ComplementChoice& psi) {
    if (psi.kind() != ComplementKind::InnerProduct)
        throw InputError("this subcommand needs an inner-product complements document");
    return psi.gram();
}

Json report(std::initializer_list<std::pair<const char*, Json>> fields) {
    Json j;
    j["kind"] = "report";
    for (const auto& [k, v] : fields) j[k] = v;
    return j;
}

int run(const std::string& cmd, const Inputs& in) {
    if (cmd == "validate") {
        Fan fan = load_fan(in);
        Json checked = Json::array();
        checked.push_back("fan");
        for (const std::string& p : in.divisor_paths) {
            divisor_from_json(load_json_file(p), fan);
            checked.push_back("divisor");
        }
        for (const std::string& p : in.complements_paths) {
            complements_from_json(load_json_file(p), fan);
            checked.push_back("complements");
        }
        for (const std::string& p : in.cycle_paths) {
            cycle_from_json(load_json_file(p), fan);
            checked.push_back("cycle");
        }
        if (!in.morphism_path.empty()) {
            MorphismDocument doc = morphism_from_json(load_json_file(in.morphism_path));
            ToricMorphism::build(doc.phi, doc.source, doc.target);
            checked.push_back("morphism");
        }
        emit(in, report({{"ok", true}, {"checked", checked}}));
    } else if (cmd == "intersect") {
        Fan fan = load_fan(in);
        ComplementChoice psi = load_psi(in, fan);
        Cycle z = load_cycle_or_fundamental(in, fan);
        for (const QCartierDivisor& d : load_divisors(in, fan)) z = intersect(d, z, psi);
        emit(in, cycle_to_json(z));
    } else if (cmd == "power") {
        Fan fan = load_fan(in);
        ComplementChoice psi = load_psi(in, fan);
        std::vector<QCartierDivisor> ds = load_divisors(in, fan);
        if (ds.size() != 1) throw InputError("power takes exactly one --divisor");
        if (in.exponent < 0) throw InputError("--exponent must be nonnegative");
        Cycle z = load_cycle_or_fundamental(in, fan);
        for (int i = 0; i < in.exponent; ++i) z = intersect(ds[0], z, psi);
        emit(in, cycle_to_json(z));
    } else if (cmd == "poly") {
        Fan fan = load_fan(in);
        ComplementChoice psi = load_psi(in, fan);
        std::vector<QCartierDivisor> ds = load_divisors(in, fan);
        Polynomial p = parse_polynomial(in.poly_expr, "d", static_cast<int>(ds.size()));
        emit(in, cycle_to_json(
                     evaluate_polynomial(p, ds, load_cycle_or_fundamental(in, fan), psi)));
    } else if (cmd == "ring-product") {
        Fan fan = load_fan(in);
        ComplementChoice psi = load_psi(in, fan);
        Cycle z = load_cycle_or_fundamental(in, fan, 0);
        for (size_t i = 1; i < in.cycle_paths.size(); ++i)
            z = product(z, load_cycle_or_fundamental(in, fan, i), psi);
        emit(in, cycle_to_json(z));
    } else if (cmd == "todd") {
        Fan fan = load_fan(in);
        emit(in, cycle_to_json(todd_cycle(fan, load_psi(in, fan))));
    } else if (cmd == "chern") {
        Fan fan = load_fan(in);
        emit(in, cycle_to_json(chern_cycle(fan, load_psi(in, fan), in.index)));
    } else if (cmd == "degree") {
        Fan fan = load_fan(in);
        if (in.cycle_paths.empty()) throw InputError("--cycle is required");
        emit(in, rational_to_json(degree(load_cycle_or_fundamental(in, fan))));
    } else if (cmd == "flag-coeff") {
        Fan fan = load_fan(in);
        std::vector<QCartierDivisor> ds = load_divisors(in, fan);
        Polynomial q = parse_polynomial(in.poly_expr, "d", static_cast<int>(ds.size()));
        Rat value =
            flag_closed_form(q, ds, parse_cone(in, fan), flag_of(load_psi(in, fan)));
        emit(in, rational_to_json(value));
    } else if (cmd == "symbolic-coeff") {
        Fan fan = load_fan(in);
        std::vector<QCartierDivisor> ds = load_divisors(in, fan);
        Polynomial q = parse_polynomial(in.poly_expr, "d", static_cast<int>(ds.size()));
        RationalFunction rf = symbolic_flag_coefficient(q, ds, parse_cone(in, fan), fan);
        Json j;
        j["kind"] = "rational_function";
        j["numerator"] = rf.numerator().to_string("w");
        j["denominator"] = rf.denominator().to_string("w");
        emit(in, j);
    } else if (cmd == "reduce") {
        Fan fan = load_fan(in);
        RingPresentation pres = make_presentation(fan, gram_of(load_psi(in, fan)));
        Polynomial p = parse_polynomial(in.poly_expr, "d", fan.num_rays());
        Json j;
        j["kind"] = "polynomial";
        j["expr"] = reduce(p, pres).to_string("d");
        emit(in, j);
    } else if (cmd == "pushforward") {
        if (in.morphism_path.empty()) throw InputError("--morphism is required");
        MorphismDocument doc = morphism_from_json(load_json_file(in.morphism_path));
        ToricMorphism f = ToricMorphism::build(doc.phi, doc.source, doc.target);
        if (in.cycle_paths.empty()) throw InputError("--cycle is required");
        Cycle z = cycle_from_json(load_json_file(in.cycle_paths[0]), doc.source);
        emit(in, cycle_to_json(pushforward(f, z)));
    } else if (cmd == "projection-check") {
        if (in.morphism_path.empty()) throw InputError("--morphism is required");
        MorphismDocument doc = morphism_from_json(load_json_file(in.morphism_path));
        ToricMorphism f = ToricMorphism::build(doc.phi, doc.source, doc.target);
        std::vector<QCartierDivisor> ds = load_divisors(in, doc.target);
        if (ds.size() != 1) throw InputError("projection-check takes exactly one --divisor");
        if (in.complements_paths.size() != 2)
            throw InputError("projection-check takes --complements twice: target then source");
        ComplementChoice psi = load_psi(in, doc.target, 0);
        ComplementChoice psi_src = load_psi(in, doc.source, 1);
        if (in.cycle_paths.empty()) throw InputError("--cycle is required");
        Cycle z = cycle_from_json(load_json_file(in.cycle_paths[0]), doc.source);
        ProjectionFormulaReport rep = projection_formula_check(f, ds[0], z, psi, psi_src);
        emit(in, report({{"ok", rep.ok},
                         {"lhs", cycle_to_json(rep.lhs)},
                         {"rhs", cycle_to_json(rep.rhs)}}));
    } else if (cmd == "subdivide") {
        Fan fan = load_fan(in);
        if (in.ray_spec.empty()) throw InputError("--ray is required");
        IVec rho;
        for (int x : parse_int_list(in.ray_spec, "ray")) rho.emplace_back(x);
        emit(in, fan_to_json(star_subdivision(fan, rho)));
    } else if (cmd == "lefschetz") {
        Fan fan = load_fan(in);
        std::vector<Rat> coeffs(fan.num_rays(), Rat(1));
        std::mt19937 rng(in.seed);
        std::uniform_int_distribution<int> pick(-3, 3);
        LefschetzReport rep;
        for (int attempt = 0; attempt < 3; ++attempt) {
            IMat b(fan.rank(), fan.rank());
            for (auto& x : b.a) x = pick(rng);
            IMat g = mul(transpose(b), b);
            for (int i = 0; i < fan.rank(); ++i) g.at(i, i) += 1;
            rep = lefschetz_injectivity(fan, coeffs, in.index, g);
            if (rep.injective) break;
        }
        emit(in, report({{"i", rep.i},
                         {"domain", rep.domain},
                         {"codomain", rep.codomain},
                         {"rank", rep.rank},
                         {"injective", rep.injective}}));
    } else {
        throw InputError("unknown subcommand " + cmd);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cycle-level intersection theory on toric varieties"};
    app.require_subcommand(1);

    Inputs in;
    const std::vector<std::string> names = {
        "validate",    "intersect",      "power",  "poly",        "ring-product",
        "todd",        "chern",          "degree", "flag-coeff",  "symbolic-coeff",
        "reduce",      "pushforward",    "projection-check",      "subdivide",
        "lefschetz"};
    for (const std::string& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--fan", in.fan_path, "fan document");
        sub->add_option("--divisor", in.divisor_paths, "divisor document (repeatable, ordered)");
        sub->add_option("--complements", in.complements_paths, "complement-choice document");
        sub->add_option("--cycle", in.cycle_paths, "cycle document (repeatable, ordered)");
        sub->add_option("--morphism", in.morphism_path, "morphism document");
        sub->add_option("--poly", in.poly_expr, "polynomial in d1..ds");
        sub->add_option("--cone", in.cone_spec, "comma-separated ray indices");
        sub->add_option("--ray", in.ray_spec, "comma-separated lattice vector");
        sub->add_option("--exponent", in.exponent, "power of the divisor");
        sub->add_option("--index", in.index, "characteristic-class / Lefschetz index");
        sub->add_option("--seed", in.seed, "seed for randomized subcommands");
        sub->add_option("--out", in.out_path, "output path (default: stdout)");
    }

    try {
        app.parse(argc, argv);
        return run(app.get_subcommands().front()->get_name(), in);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
