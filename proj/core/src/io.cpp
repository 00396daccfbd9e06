#include "lorentz/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lorentz {

using nlohmann::json;

json number_json(double x) {
    if (x == kInfinity) return "inf";
    return x;
}

json to_json(const StepFunction& f) {
    json pieces = json::array();
    for (const auto& p : f.pieces()) pieces.push_back({{"a", p.a}, {"b", p.b}, {"value", p.value}});
    return {{"kind", "step"}, {"pieces", pieces}};
}

json to_json(const MonomialFunction& f) {
    json pieces = json::array();
    for (const auto& p : f.pieces())
        pieces.push_back({{"a", p.a}, {"b", p.b}, {"coeff", p.coeff}, {"beta", p.beta}});
    return {{"kind", "monomial"}, {"pieces", pieces}};
}

json to_json(const AnyFunction& f) {
    return std::visit([](const auto& g) { return to_json(g); }, f);
}

namespace {

double get_number(const json& obj, const std::string& key, const std::string& path) {
    const std::string where = path + "." + key;
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where, "missing");
    if (it->is_string()) {
        const auto& s = it->get_ref<const std::string&>();
        if (s == "inf") return kInfinity;
        throw InputError(where, "expected a number");
    }
    if (!it->is_number()) throw InputError(where, "expected a number");
    return it->get<double>();
}

}  // namespace

AnyFunction function_from_json(const json& j) {
    if (!j.is_object()) throw InputError("$", "expected an object");
    auto kind_it = j.find("kind");
    std::string kind = "step";
    if (kind_it != j.end()) {
        if (!kind_it->is_string()) throw InputError("kind", "expected \"step\" or \"monomial\"");
        kind = kind_it->get<std::string>();
        if (kind != "step" && kind != "monomial") throw InputError("kind", "expected \"step\" or \"monomial\"");
    }
    auto pieces_it = j.find("pieces");
    if (pieces_it == j.end()) throw InputError("pieces", "missing");
    if (!pieces_it->is_array()) throw InputError("pieces", "expected an array");
    const json& arr = *pieces_it;
    try {
        if (kind == "step") {
            std::vector<StepPiece> ps;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string path = "pieces[" + std::to_string(i) + "]";
                if (!arr[i].is_object()) throw InputError(path, "expected an object");
                ps.push_back({get_number(arr[i], "a", path), get_number(arr[i], "b", path),
                              get_number(arr[i], "value", path)});
            }
            return StepFunction(std::move(ps));
        }
        std::vector<MonomialPiece> ps;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "pieces[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) throw InputError(path, "expected an object");
            double beta = arr[i].contains("beta") ? get_number(arr[i], "beta", path) : 0.0;
            ps.push_back({get_number(arr[i], "a", path), get_number(arr[i], "b", path),
                          get_number(arr[i], "coeff", path), beta});
        }
        return MonomialFunction(std::move(ps));
    } catch (const InvalidArgument& e) {
        // Validation messages already lead with the field path.
        std::string msg = e.what();
        auto colon = msg.find(": ");
        if (colon != std::string::npos && msg.rfind("pieces", 0) == 0)
            throw InputError(msg.substr(0, colon), msg.substr(colon + 2));
        throw InputError("pieces", msg);
    }
}

AnyFunction parse_function(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "invalid JSON at byte " << e.byte;
        throw InputError("$", os.str());
    }
    return function_from_json(j);
}

AnyFunction load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("file", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_function(ss.str());
}

StepFunction require_step(const AnyFunction& f, const std::string& context) {
    if (const auto* s = std::get_if<StepFunction>(&f)) return *s;
    const auto& m = std::get<MonomialFunction>(f);
    if (!m.all_steps()) throw InputError("kind", context + " needs a step function");
    std::vector<StepPiece> ps;
    for (const auto& p : m.pieces()) ps.push_back({p.a, p.b, p.coeff});
    return StepFunction(std::move(ps));
}

json to_json(const NormValue& v) {
    return {{"value", v.value}, {"method", to_string(v.method)}, {"err", v.est_abs_error}};
}

json to_json(const LevelResult& lr) {
    json iv = json::array();
    for (const auto& I : lr.intervals) iv.push_back({I.a, I.b});
    return {{"alpha", lr.alpha}, {"intervals", iv}, {"slopes", lr.slopes}, {"level", to_json(lr.level)}};
}

json to_json(const DualResult& d) {
    return {{"value", d.value},
            {"branch", to_string(d.branch)},
            {"witness", d.witness ? to_json(*d.witness) : json(nullptr)}};
}

json to_json(const DecompositionCertificate& c, bool include_parts) {
    json j = {{"lower", c.lower_bound}, {"upper", c.upper_bound}, {"epsilon", c.epsilon},
              {"delta", c.delta},       {"N", c.N},                {"nu", c.nu},
              {"cells", c.cells()},     {"converged", c.converged}, {"p", c.exps.p},
              {"s", number_json(c.exps.s)}};
    if (include_parts) {
        json parts = json::array();
        json mult = json::array();
        for (const auto& f : c.parts()) parts.push_back(to_json(f));
        for (std::size_t i = 0; i < c.part_count(); ++i) mult.push_back(c.multiplicity(i));
        j["parts"] = std::move(parts);
        j["multiplicities"] = std::move(mult);
    }
    return j;
}

}  // namespace lorentz
