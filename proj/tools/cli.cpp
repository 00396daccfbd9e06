#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lorentz/decomposition.hpp"
#include "lorentz/duality.hpp"
#include "lorentz/io.hpp"
#include "lorentz/level.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/verify.hpp"

namespace lorentz::cli {

namespace {

using nlohmann::json;

// Parts are written out only while the JSON stays reasonably small.
constexpr std::size_t kMaxPartCells = 2'000'000;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string six(double x) {
    if (x == kInfinity) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(parse_exponent(item));
        } catch (const InvalidArgument& e) {
            throw InputError(flag, e.what());
        }
    }
    if (out.empty()) throw InputError(flag, "missing value");
    return out;
}

Exponents single_exponents(const RunConfig& c) {
    auto ps = parse_list(c.p, "--p");
    auto ss = parse_list(c.s, "--s");
    if (ps.size() != 1) throw InputError("--p", "expects a single value for " + c.command);
    if (ss.size() != 1) throw InputError("--s", "expects a single value for " + c.command);
    try {
        return Exponents::make(ps[0], ss[0]);
    } catch (const InvalidArgument& e) {
        std::string msg = e.what();
        throw InputError(msg.rfind("p ", 0) == 0 ? "--p" : "--s", msg);
    }
}

AnyFunction input_function(const RunConfig& c) {
    if (!c.input_path) throw InputError("-f", c.command + " needs a function file");
    return load_function(*c.input_path);
}

Format format_for(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int cmd_norm(const RunConfig& c, std::ostream& out) {
    Exponents e = single_exponents(c);
    AnyFunction f = input_function(c);
    NormValue n;
    std::optional<NormValue> m;
    if (const auto* st = std::get_if<StepFunction>(&f)) {
        n = lorentz_norm(*st, e);
        m = maximal_norm(*st, e);
    } else {
        const auto& mf = std::get<MonomialFunction>(f);
        if (!mf.is_nonincreasing()) throw InputError("pieces", "monomial input must be non-increasing");
        n = lorentz_norm(mf, e);
        if (mf.all_steps()) m = maximal_norm(require_step(f, "norm"), e);
    }
    if (format_for(c, Format::json) == Format::csv) {
        out << "p,s,norm,method,maximal_norm\n"
            << six(e.p) << ',' << six(e.s) << ',' << six(n.value) << ',' << to_string(n.method) << ','
            << (m ? six(m->value) : std::string()) << '\n';
    } else {
        emit_json(out, {{"p", e.p},
                        {"s", number_json(e.s)},
                        {"norm", to_json(n)},
                        {"maximal_norm", m ? to_json(*m) : json(nullptr)}});
    }
    return 0;
}

int cmd_level(const RunConfig& c, std::ostream& out) {
    Exponents e = single_exponents(c);
    if (!(e.alpha >= 0.0 && e.alpha < 1.0)) throw InputError("--s", "level needs s >= p so that alpha lies in [0, 1)");
    StepFunction f = rearrange(require_step(input_function(c), "level"));
    LevelResult lr = level_function(f, e.alpha);
    if (format_for(c, Format::json) == Format::csv) {
        out << "k,a,b,slope\n";
        for (std::size_t k = 0; k < lr.intervals.size(); ++k)
            out << k << ',' << six(lr.intervals[k].a) << ',' << six(lr.intervals[k].b) << ',' << six(lr.slopes[k])
                << '\n';
    } else {
        emit_json(out, to_json(lr));
    }
    return 0;
}

int cmd_dual(const RunConfig& c, std::ostream& out) {
    Exponents e = single_exponents(c);
    StepFunction f = require_step(input_function(c), "dual");
    DualResult d = dual_norm(f, e);
    if (format_for(c, Format::json) == Format::csv) {
        out << "p,s,value,branch\n" << six(e.p) << ',' << six(e.s) << ',' << six(d.value) << ',' << to_string(d.branch)
            << '\n';
    } else {
        emit_json(out, to_json(d));
    }
    return 0;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
    Exponents e = single_exponents(c);
    if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) throw InputError("--epsilon", "must be > 0");
    if (!(e.p < e.s)) throw InputError("--s", "decompose needs p < s");
    StepFunction f = require_step(input_function(c), "decompose");
    DecompositionCertificate cert = epsilon_decomposition(f, e, c.epsilon);
    CertificateCheck ck = check_certificate(cert);
    if (format_for(c, Format::json) == Format::csv) {
        out << "p,s,epsilon,lower,upper,delta,N,nu,cells,parts,converged,checks\n"
            << six(e.p) << ',' << six(e.s) << ',' << six(c.epsilon) << ',' << six(cert.lower_bound) << ','
            << six(cert.upper_bound) << ',' << six(cert.delta) << ',' << cert.N << ',' << cert.nu << ','
            << cert.cells() << ',' << cert.part_count() << ',' << (cert.converged ? "true" : "false") << ','
            << (ck.all() ? "pass" : "fail") << '\n';
    } else {
        const bool with_parts = cert.part_count() * cert.cells() <= kMaxPartCells;
        json j = to_json(cert, with_parts);
        if (!with_parts) j["parts_omitted"] = true;
        j["checks"] = {{"cover", ck.cover_ok},
                       {"cover_margin", ck.cover_margin},
                       {"permutation", ck.permutation_ok},
                       {"norms", ck.norms_ok},
                       {"bracket", ck.bracket_ok}};
        emit_json(out, j);
    }
    return ck.all() ? 0 : 1;
}

int cmd_constants(const RunConfig& c, std::ostream& out) {
    auto ps = parse_list(c.p, "--p");
    auto ss = parse_list(c.s, "--s");
    std::vector<Exponents> rows;
    for (double p : ps)
        for (double s : ss) {
            try {
                rows.push_back(Exponents::make(p, s));
            } catch (const InvalidArgument& e) {
                std::string msg = e.what();
                throw InputError(msg.rfind("p ", 0) == 0 ? "--p" : "--s", msg);
            }
        }
    if (format_for(c, Format::csv) == Format::csv) {
        out << "p,s,p_prime,s_prime,alpha,c_ps,char_norm,char_dual\n";
        for (const auto& e : rows)
            out << six(e.p) << ',' << six(e.s) << ',' << six(e.p_conj) << ',' << six(e.s_conj) << ','
                << (e.alpha == -kInfinity ? std::string("-inf") : six(e.alpha)) << ',' << six(e.c_ps) << ','
                << six(e.char_norm()) << ',' << six(e.char_dual()) << '\n';
    } else {
        json arr = json::array();
        for (const auto& e : rows)
            arr.push_back({{"p", e.p},
                           {"s", number_json(e.s)},
                           {"p_prime", e.p_conj},
                           {"s_prime", number_json(e.s_conj)},
                           {"alpha", e.alpha == -kInfinity ? json("-inf") : json(e.alpha)},
                           {"c_ps", e.c_ps},
                           {"char_norm", e.char_norm()},
                           {"char_dual", e.char_dual()}});
        emit_json(out, arr);
    }
    return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const Format fmt = format_for(c, Format::json);
    if (c.list) {
        const auto& reg = property_registry();
        if (fmt == Format::csv) {
            out << "property,module,statement\n";
            for (const auto& p : reg) out << p.name << ',' << p.module << ",\"" << p.statement << "\"\n";
        } else {
            json arr = json::array();
            for (const auto& p : reg) arr.push_back({{"property", p.name}, {"module", p.module}, {"statement", p.statement}});
            emit_json(out, arr);
        }
        return 0;
    }
    if (c.trials == 0) throw InputError("--trials", "must be >= 1");
    VerifyContext ctx{c.trials, c.seed};
    auto reports = run_suite(ctx);
    bool all = true;
    for (const auto& r : reports) all = all && r.outcome.pass();
    if (fmt == Format::csv) out << reports_csv(reports);
    else emit_json(out, reports_json(reports, ctx));
    return all ? 0 : 1;
}

int dispatch(const RunConfig& c, std::ostream& out) {
    if (c.command == "norm") return cmd_norm(c, out);
    if (c.command == "level") return cmd_level(c, out);
    if (c.command == "dual") return cmd_dual(c, out);
    if (c.command == "decompose") return cmd_decompose(c, out);
    if (c.command == "constants") return cmd_constants(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    throw InputError("command", "unknown command '" + c.command + "'");
}

}  // namespace

std::vector<std::string> command_names() { return {"norm", "level", "dual", "decompose", "constants", "verify"}; }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.output_path) {
            std::ostringstream buf;
            int code = dispatch(config, buf);
            std::ofstream file(*config.output_path);
            if (!file) throw InputError("-o", "cannot write " + *config.output_path);
            file << buf.str();
            return code;
        }
        return dispatch(config, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const NotInSpace& e) {
        err << "error: " << e.what() << '\n';
    }
    return 2;
}

}  // namespace lorentz::cli
