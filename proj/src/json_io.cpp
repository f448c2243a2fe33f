#include "jcalc/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "jcalc/error.hpp"
#include "jcalc/forms.hpp"

namespace jcalc::jsonio {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    fail("SchemaError", path + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) schema_fail(path, std::string("missing field '") + key + "'");
    return j.at(key);
}

void require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) schema_fail(path, "expected an object");
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || it.key() == k;
        if (!known) schema_fail(path, "unknown field '" + it.key() + "'");
    }
}

std::vector<Int> int_vector(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of integers");
    std::vector<Int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(int_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::uint8_t> bit_vector(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of 0/1");
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Int v = int_from_json(j[i], path + "[" + std::to_string(i) + "]");
        if (v != 0 && v != 1) schema_fail(path + "[" + std::to_string(i) + "]", "must be 0 or 1");
        out.push_back(static_cast<std::uint8_t>(v.get_ui()));
    }
    return out;
}

Json bits_to_json(const std::vector<std::uint8_t>& v) {
    Json a = Json::array();
    for (auto b : v) a.push_back(static_cast<int>(b));
    return a;
}

long small_long(const Int& v, const std::string& path, long lo, long hi) {
    if (v < lo || v > hi)
        schema_fail(path, "value " + v.get_str() + " outside [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    return static_cast<long>(v.get_si());
}

/* Plain copy of a JSON scalar for text output: numbers verbatim, strings
 * unquoted. */
std::string scalar_str(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

} // namespace

Json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
    return Json(v.get_str());
}

Int int_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned() && j.get<std::uint64_t>() > 9223372036854775807ull)
            schema_fail(path, "unsigned value overflows int64; use a decimal string");
        return Int(static_cast<long>(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        bool ok = !s.empty();
        for (std::size_t i = 0; i < s.size() && ok; ++i) {
            if (i == 0 && s[i] == '-' && s.size() > 1) continue;
            ok = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
        }
        if (!ok) schema_fail(path, "'" + s + "' is not a decimal integer");
        return Int(s);
    }
    schema_fail(path, "expected an integer (number or decimal string)");
}

Json to_json(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(int_to_json(x));
    return a;
}

Json to_json(const jspace::Residue& r) {
    return Json{{"value", int_to_json(r.value)}, {"mod", int_to_json(r.modulus)}};
}

Json to_json(const FinAbGroup& g) { return Json(g.to_string()); }

Json to_json(const GroupElement& g) {
    return Json{{"group", to_json(g.group)}, {"coords", to_json(g.coords)}};
}

Json to_json(const FormDescriptor& f) {
    return Json{{"b_plus", int_to_json(f.b_plus)},
                {"b_minus", int_to_json(f.b_minus)},
                {"parity", f.parity == FormDescriptor::Parity::Even ? "even" : "odd"}};
}

Json to_json(const kirby::LinkingPresentation& P) {
    Json j;
    Json rows = Json::array();
    for (long r = 0; r < P.n(); ++r) {
        Json row = Json::array();
        for (long c = 0; c < P.n(); ++c) row.push_back(int_to_json(P.L.at(r, c)));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    if (!P.component_names.empty()) j["names"] = P.component_names;
    if (!P.arf_overrides.empty()) {
        Json arr = Json::array();
        for (const auto& [sub, arf] : P.arf_overrides)
            arr.push_back(Json{{"sublink", bits_to_json(sub)}, {"arf", arf}});
        j["arf_overrides"] = arr;
    }
    if (P.hyperbolic_block) j["hyperbolic_block"] = *P.hyperbolic_block;
    return j;
}

Json to_json(const kirby::ManifoldInvariants& inv) {
    return Json{{"chi", int_to_json(inv.chi_Y)},
                {"sigma", inv.sigma_Y},
                {"b_plus", inv.b_plus},
                {"b_minus", inv.b_minus},
                {"b1", inv.b1},
                {"H1", to_json(inv.H1)},
                {"spin_count", int_to_json(inv.spin_count)}};
}

Json to_json(const jspace::JClassDescriptor& d) {
    return Json{{"gamma", to_json(d.gamma)},
                {"c1", to_json(d.c1)},
                {"spin", bits_to_json(d.spin.c)},
                {"theta", to_json(d.theta)},
                {"orbit_order", int_to_json(d.orbit_order)}};
}

Json to_json(const embed::TargetSurface& X) {
    Json j{{"b_plus", int_to_json(X.b_plus)},
           {"b_minus", int_to_json(X.b_minus)},
           {"div_c1", int_to_json(X.div_c1)},
           {"spin", X.spin},
           {"simply_connected", X.simply_connected}};
    if (X.pairing_values) j["pairing_values"] = to_json(*X.pairing_values);
    if (X.c1_squared) j["c1_squared"] = int_to_json(*X.c1_squared);
    return j;
}

Json to_json(const embed::ConditionRecord& r) {
    return Json{{"name", r.name}, {"required", r.required}, {"actual", r.actual}, {"pass", r.pass}};
}

Json to_json(const embed::FeasibilityReport& r) {
    Json j;
    j["verdict"] = embed::verdict_name(r.verdict);
    j["spin_realizable"] = embed::spin_realizable_name(r.spin_realizable);
    Json reasons = Json::array();
    for (const auto& c : r.reasons) reasons.push_back(to_json(c));
    j["reasons"] = reasons;
    if (r.witness_m) j["witness_m"] = int_to_json(*r.witness_m);
    if (r.witness_beta) j["witness_beta"] = to_json(*r.witness_beta);
    return j;
}

Json to_json(const embed::ConstructionCertificate& cert) {
    Json j;
    j["base"] = to_json(cert.base);
    j["spin_branch"] = cert.spin_branch;
    j["params"] = Json{{"m", int_to_json(cert.m)},
                       {"m_c", int_to_json(cert.m_c)},
                       {"j", int_to_json(cert.j)},
                       {"k", int_to_json(cert.k)},
                       {"k_prime", int_to_json(cert.k_prime)},
                       {"p_plus", int_to_json(cert.p_plus)},
                       {"p_minus", int_to_json(cert.p_minus)},
                       {"mu", int_to_json(cert.mu)},
                       {"witness_b", to_json(cert.witness_b)}};
    Json summands = Json::array();
    if (cert.j != 0)
        summands.push_back(Json{{"type", "s2xs2-tuning"}, {"count", int_to_json(cert.j)}});
    if (cert.m_c != 0) {
        summands.push_back(Json{{"type", "surface-component"},
                                {"location", "reserved"},
                                {"class", to_json(std::vector<Int>{cert.m_c, Int(cert.m_c * cert.k)})}});
        summands.push_back(Json{{"type", "surface-component"},
                                {"location", "mirror"},
                                {"class", to_json(std::vector<Int>{cert.m_c, Int(cert.m_c * cert.k_prime)})}});
    }
    if (cert.p_plus != 0)
        summands.push_back(Json{{"type", "projective"},
                                {"sign", 1},
                                {"count", int_to_json(cert.p_plus)},
                                {"coefficient", int_to_json(cert.mu)}});
    if (cert.p_minus != 0)
        summands.push_back(Json{{"type", "projective"},
                                {"sign", -1},
                                {"count", int_to_json(cert.p_minus)},
                                {"coefficient", int_to_json(cert.mu)}});
    j["summands"] = summands;
    j["c"] = to_json(cert.c);
    j["target"] = Json{{"b_plus", int_to_json(cert.x_b_plus)},
                       {"b_minus", int_to_json(cert.x_b_minus)},
                       {"spin", cert.x_spin}};
    j["claimed"] = Json{{"c_square", int_to_json(cert.claimed_c_square)},
                        {"divisibility", int_to_json(cert.claimed_div)},
                        {"sigma_z", int_to_json(cert.claimed_sigma_z)},
                        {"sigma_x", int_to_json(cert.claimed_sigma_x)},
                        {"theta", to_json(cert.claimed_theta)},
                        {"gamma", to_json(cert.claimed_gamma)}};
    j["perp"] = to_json(cert.perp);
    return j;
}

Json to_json(const embed::CertCheckReport& rep) {
    Json records = Json::array();
    for (const auto& r : rep.records) records.push_back(to_json(r));
    return Json{{"ok", rep.ok}, {"records", records}};
}

kirby::LinkingPresentation presentation_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, {"matrix", "names", "arf_overrides", "hyperbolic_block"}, path);
    const Json& rows = need(j, "matrix", path);
    if (!rows.is_array()) schema_fail(path + ".matrix", "expected an array of rows");
    long n = static_cast<long>(rows.size());
    IntMatrix m(n, n);
    for (long r = 0; r < n; ++r) {
        const Json& row = rows[r];
        std::string rp = path + ".matrix[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<long>(row.size()) != n)
            schema_fail(rp, "expected a row of length " + std::to_string(n));
        for (long c = 0; c < n; ++c)
            m.at(r, c) = int_from_json(row[c], rp + "[" + std::to_string(c) + "]");
    }
    kirby::LinkingPresentation P;
    try {
        P.L = IntSymMatrix(std::move(m));
    } catch (const Error&) {
        schema_fail(path + ".matrix", "matrix must be symmetric");
    }
    if (j.contains("names")) {
        const Json& names = j.at("names");
        if (!names.is_array()) schema_fail(path + ".names", "expected an array of strings");
        for (const auto& s : names) {
            if (!s.is_string()) schema_fail(path + ".names", "expected an array of strings");
            P.component_names.push_back(s.get<std::string>());
        }
    }
    if (j.contains("arf_overrides")) {
        const Json& arr = j.at("arf_overrides");
        if (!arr.is_array()) schema_fail(path + ".arf_overrides", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string ap = path + ".arf_overrides[" + std::to_string(i) + "]";
            require_object(arr[i], ap);
            reject_unknown(arr[i], {"sublink", "arf"}, ap);
            auto sub = bit_vector(need(arr[i], "sublink", ap), ap + ".sublink");
            Int arf = int_from_json(need(arr[i], "arf", ap), ap + ".arf");
            P.arf_overrides[sub] = static_cast<int>(small_long(arf, ap + ".arf", 0, 1));
        }
    }
    if (j.contains("hyperbolic_block") && !j.at("hyperbolic_block").is_null())
        P.hyperbolic_block = small_long(
            int_from_json(j.at("hyperbolic_block"), path + ".hyperbolic_block"),
            path + ".hyperbolic_block", 0, n > 1 ? n - 2 : 0);
    try {
        P.validate();
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
    return P;
}

jspace::SurfaceData surface_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, {"a", "twists"}, path);
    jspace::SurfaceData F;
    F.a = int_vector(need(j, "a", path), path + ".a");
    if (j.contains("twists"))
        F.twists = int_vector(j.at("twists"), path + ".twists");
    else
        F.twists.assign(F.a.size(), 0);
    if (F.twists.size() != F.a.size())
        schema_fail(path, "a and twists must have the same length");
    return F;
}

kirby::SpinStructureRep spin_from_json(const Json& j, const std::string& path) {
    kirby::SpinStructureRep s;
    s.c = bit_vector(j, path);
    return s;
}

embed::TargetSurface target_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j,
                   {"b_plus", "b_minus", "div_c1", "spin", "simply_connected", "pairing_values",
                    "c1_squared"},
                   path);
    embed::TargetSurface X;
    X.b_plus = int_from_json(need(j, "b_plus", path), path + ".b_plus");
    X.b_minus = int_from_json(need(j, "b_minus", path), path + ".b_minus");
    X.div_c1 = int_from_json(need(j, "div_c1", path), path + ".div_c1");
    if (j.contains("spin")) {
        if (!j.at("spin").is_boolean()) schema_fail(path + ".spin", "expected a boolean");
        X.spin = j.at("spin").get<bool>();
    }
    if (j.contains("simply_connected")) {
        if (!j.at("simply_connected").is_boolean())
            schema_fail(path + ".simply_connected", "expected a boolean");
        X.simply_connected = j.at("simply_connected").get<bool>();
    }
    if (j.contains("pairing_values"))
        X.pairing_values = int_vector(j.at("pairing_values"), path + ".pairing_values");
    if (j.contains("c1_squared"))
        X.c1_squared = int_from_json(j.at("c1_squared"), path + ".c1_squared");
    try {
        X.validate();
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
    return X;
}

FormDescriptor form_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, {"b_plus", "b_minus", "parity"}, path);
    FormDescriptor f;
    f.b_plus = int_from_json(need(j, "b_plus", path), path + ".b_plus");
    f.b_minus = int_from_json(need(j, "b_minus", path), path + ".b_minus");
    const Json& par = need(j, "parity", path);
    if (par.is_string() && par.get<std::string>() == "even")
        f.parity = FormDescriptor::Parity::Even;
    else if (par.is_string() && par.get<std::string>() == "odd")
        f.parity = FormDescriptor::Parity::Odd;
    else
        schema_fail(path + ".parity", "expected \"even\" or \"odd\"");
    return f;
}

embed::ConstructionCertificate certificate_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, {"base", "spin_branch", "params", "summands", "c", "target", "claimed", "perp"},
                   path);
    embed::ConstructionCertificate cert;
    cert.base = presentation_from_json(need(j, "base", path), path + ".base");
    const Json& sb = need(j, "spin_branch", path);
    if (!sb.is_boolean()) schema_fail(path + ".spin_branch", "expected a boolean");
    cert.spin_branch = sb.get<bool>();
    const Json& params = need(j, "params", path);
    std::string pp = path + ".params";
    require_object(params, pp);
    reject_unknown(params, {"m", "m_c", "j", "k", "k_prime", "p_plus", "p_minus", "mu", "witness_b"},
                   pp);
    cert.m = int_from_json(need(params, "m", pp), pp + ".m");
    cert.m_c = int_from_json(need(params, "m_c", pp), pp + ".m_c");
    cert.j = int_from_json(need(params, "j", pp), pp + ".j");
    cert.k = int_from_json(need(params, "k", pp), pp + ".k");
    cert.k_prime = int_from_json(need(params, "k_prime", pp), pp + ".k_prime");
    cert.p_plus = int_from_json(need(params, "p_plus", pp), pp + ".p_plus");
    cert.p_minus = int_from_json(need(params, "p_minus", pp), pp + ".p_minus");
    cert.mu = int_from_json(need(params, "mu", pp), pp + ".mu");
    cert.witness_b = int_vector(need(params, "witness_b", pp), pp + ".witness_b");
    cert.c = int_vector(need(j, "c", path), path + ".c");
    const Json& tgt = need(j, "target", path);
    std::string tp = path + ".target";
    require_object(tgt, tp);
    reject_unknown(tgt, {"b_plus", "b_minus", "spin"}, tp);
    cert.x_b_plus = int_from_json(need(tgt, "b_plus", tp), tp + ".b_plus");
    cert.x_b_minus = int_from_json(need(tgt, "b_minus", tp), tp + ".b_minus");
    const Json& xs = need(tgt, "spin", tp);
    if (!xs.is_boolean()) schema_fail(tp + ".spin", "expected a boolean");
    cert.x_spin = xs.get<bool>();
    const Json& cl = need(j, "claimed", path);
    std::string cp = path + ".claimed";
    require_object(cl, cp);
    reject_unknown(cl, {"c_square", "divisibility", "sigma_z", "sigma_x", "theta", "gamma"}, cp);
    cert.claimed_c_square = int_from_json(need(cl, "c_square", cp), cp + ".c_square");
    cert.claimed_div = int_from_json(need(cl, "divisibility", cp), cp + ".divisibility");
    cert.claimed_sigma_z = int_from_json(need(cl, "sigma_z", cp), cp + ".sigma_z");
    cert.claimed_sigma_x = int_from_json(need(cl, "sigma_x", cp), cp + ".sigma_x");
    const Json& th = need(cl, "theta", cp);
    require_object(th, cp + ".theta");
    reject_unknown(th, {"value", "mod"}, cp + ".theta");
    cert.claimed_theta = jspace::Residue(
        int_from_json(need(th, "value", cp + ".theta"), cp + ".theta.value"),
        int_from_json(need(th, "mod", cp + ".theta"), cp + ".theta.mod"));
    cert.claimed_gamma = int_vector(need(cl, "gamma", cp), cp + ".gamma");
    cert.perp = form_from_json(need(j, "perp", path), path + ".perp");
    return cert;
}

const std::map<std::string, kirby::LinkingPresentation>& builtin_presentations() {
    static const std::map<std::string, kirby::LinkingPresentation> m = [] {
        std::map<std::string, kirby::LinkingPresentation> out;
        out["empty"] = kirby::LinkingPresentation{};
        out["e8"] = kirby::e8_presentation();
        kirby::LinkingPresentation s2;
        s2.L = IntSymMatrix(IntMatrix(1, 1));
        out["s2xs1"] = s2;
        IntMatrix h(2, 2);
        h.at(0, 1) = 1;
        h.at(1, 0) = 1;
        kirby::LinkingPresentation hyp;
        hyp.L = IntSymMatrix(std::move(h));
        hyp.hyperbolic_block = 0;
        out["hyp"] = hyp;
        return out;
    }();
    return m;
}

kirby::LinkingPresentation resolve_presentation(const InputDocument& doc,
                                                const std::string& name) {
    auto it = doc.presentations.find(name);
    if (it != doc.presentations.end()) return it->second;
    const auto& b = builtin_presentations();
    auto bit = b.find(name);
    if (bit != b.end()) return bit->second;
    fail("SchemaError", "unknown presentation '" + name + "'");
}

kirby::SpinStructureRep resolve_spin(const InputDocument& doc, const std::string& name, long n) {
    kirby::SpinStructureRep s;
    auto it = doc.spins.find(name);
    if (it != doc.spins.end()) {
        if (static_cast<long>(it->second.size()) != n)
            fail("SchemaError", "spin '" + name + "' has length " +
                                    std::to_string(it->second.size()) + ", presentation needs " +
                                    std::to_string(n));
        s.c = it->second;
        return s;
    }
    if (name == "s0") {
        s.c.assign(static_cast<std::size_t>(n), 0);
        return s;
    }
    fail("SchemaError", "unknown spin '" + name + "'");
}

jspace::SurfaceData resolve_surface(const InputDocument& doc, const std::string& name, long n) {
    auto it = doc.surfaces.find(name);
    if (it != doc.surfaces.end()) {
        if (static_cast<long>(it->second.a.size()) != n)
            fail("SchemaError", "surface '" + name + "' has length " +
                                    std::to_string(it->second.a.size()) +
                                    ", presentation needs " + std::to_string(n));
        return it->second;
    }
    if (name == "emptyF") {
        jspace::SurfaceData F;
        F.a.assign(static_cast<std::size_t>(n), 0);
        F.twists.assign(static_cast<std::size_t>(n), 0);
        return F;
    }
    fail("SchemaError", "unknown surface '" + name + "'");
}

embed::TargetSurface resolve_target(const InputDocument& doc, const std::string& name) {
    auto it = doc.targets.find(name);
    if (it != doc.targets.end()) return it->second;
    fail("SchemaError", "unknown target '" + name + "'");
}

namespace {

Int literal_int(const std::string& s, const std::string& path) {
    bool ok = !s.empty();
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
        if (i == 0 && s[i] == '-' && s.size() > 1) continue;
        ok = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
    }
    if (!ok) fail("SchemaError", path + ": '" + s + "' is not an integer literal");
    return Int(s);
}

struct JobSpec {
    std::size_t arity;
    const char* usage;
};

const std::map<std::string, JobSpec>& job_specs() {
    static const std::map<std::string, JobSpec> m = {
        {"invariants", {1, "invariants <presentation>"}},
        {"jclass", {3, "jclass <presentation> <spin> <surface>"}},
        {"orbit", {4, "orbit <presentation> <spin> <surface> <k>"}},
        {"lens", {2, "lens <p> <q>"}},
        {"feasible", {4, "feasible <presentation> <spin> <surface> <target>"}},
        {"construct", {4, "construct <presentation> <spin> <surface> <target>"}},
        {"check-cert", {0, "check-cert <certificate.json> | check-cert <presentation> <spin> <surface> <target>"}},
        {"selftest", {0, "selftest"}},
    };
    return m;
}

void validate_job(const InputDocument& doc, const std::string& command,
                  const std::vector<std::string>& args, const std::string& path) {
    auto it = job_specs().find(command);
    if (it == job_specs().end()) schema_fail(path, "unknown command '" + command + "'");
    const char* usage = it->second.usage;
    auto wrong_arity = [&]() { schema_fail(path, std::string("usage: ") + usage); };
    try {
        if (command == "invariants") {
            if (args.size() != 1) wrong_arity();
            resolve_presentation(doc, args[0]);
        } else if (command == "jclass" || command == "orbit" || command == "feasible" ||
                   command == "construct") {
            std::size_t want = it->second.arity;
            if (args.size() != want) wrong_arity();
            auto P = resolve_presentation(doc, args[0]);
            resolve_spin(doc, args[1], P.n());
            resolve_surface(doc, args[2], P.n());
            if (command == "orbit") literal_int(args[3], path);
            if (command == "feasible" || command == "construct") resolve_target(doc, args[3]);
        } else if (command == "lens") {
            if (args.size() != 2) wrong_arity();
            literal_int(args[0], path);
            literal_int(args[1], path);
        } else if (command == "check-cert") {
            if (args.size() == 1) {
                // certificate file; content is validated when the job runs
            } else if (args.size() == 4) {
                auto P = resolve_presentation(doc, args[0]);
                resolve_spin(doc, args[1], P.n());
                resolve_surface(doc, args[2], P.n());
                resolve_target(doc, args[3]);
            } else {
                wrong_arity();
            }
        } else if (command == "selftest") {
            if (!args.empty()) wrong_arity();
        }
    } catch (const Error& e) {
        if (e.code() == "SchemaError") {
            std::string what = e.what();
            std::string prefix = e.code() + ": ";
            if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
            schema_fail(path, what);
        }
        throw;
    }
}

} // namespace

InputDocument parse_document(const Json& doc) {
    require_object(doc, "document");
    reject_unknown(doc, {"version", "presentations", "surfaces", "spins", "targets", "jobs"},
                   "document");
    InputDocument out;
    const Json& ver = need(doc, "version", "document");
    if (!ver.is_string() || ver.get<std::string>() != "jcalc/1")
        schema_fail("document.version", "expected \"jcalc/1\"");
    out.version = ver.get<std::string>();
    if (doc.contains("presentations")) {
        require_object(doc.at("presentations"), "document.presentations");
        for (auto it = doc.at("presentations").begin(); it != doc.at("presentations").end(); ++it)
            out.presentations[it.key()] =
                presentation_from_json(it.value(), "presentations." + it.key());
    }
    if (doc.contains("surfaces")) {
        require_object(doc.at("surfaces"), "document.surfaces");
        for (auto it = doc.at("surfaces").begin(); it != doc.at("surfaces").end(); ++it)
            out.surfaces[it.key()] = surface_from_json(it.value(), "surfaces." + it.key());
    }
    if (doc.contains("spins")) {
        require_object(doc.at("spins"), "document.spins");
        for (auto it = doc.at("spins").begin(); it != doc.at("spins").end(); ++it)
            out.spins[it.key()] = bit_vector(it.value(), "spins." + it.key());
    }
    if (doc.contains("targets")) {
        require_object(doc.at("targets"), "document.targets");
        for (auto it = doc.at("targets").begin(); it != doc.at("targets").end(); ++it)
            out.targets[it.key()] = target_from_json(it.value(), "targets." + it.key());
    }
    if (doc.contains("jobs")) {
        const Json& jobs = doc.at("jobs");
        if (!jobs.is_array()) schema_fail("document.jobs", "expected an array");
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            std::string jp = "jobs[" + std::to_string(i) + "]";
            require_object(jobs[i], jp);
            reject_unknown(jobs[i], {"command", "args"}, jp);
            const Json& cmd = need(jobs[i], "command", jp);
            if (!cmd.is_string()) schema_fail(jp + ".command", "expected a string");
            std::vector<std::string> args;
            if (jobs[i].contains("args")) {
                const Json& ja = jobs[i].at("args");
                if (!ja.is_array()) schema_fail(jp + ".args", "expected an array of strings");
                for (const auto& a : ja) {
                    if (!a.is_string()) schema_fail(jp + ".args", "expected an array of strings");
                    args.push_back(a.get<std::string>());
                }
            }
            out.jobs.emplace_back(cmd.get<std::string>(), std::move(args));
        }
    }
    for (std::size_t i = 0; i < out.jobs.size(); ++i)
        validate_job(out, out.jobs[i].first, out.jobs[i].second,
                     "jobs[" + std::to_string(i) + "]");
    return out;
}

namespace {

Json job_invariants(const InputDocument& doc, const std::vector<std::string>& args) {
    auto P = resolve_presentation(doc, args[0]);
    auto inv = kirby::invariants(P);
    Json out = to_json(inv);
    Json table = Json::array();
    for (const auto& s : kirby::spin_structures(P))
        table.push_back(Json{{"spin", bits_to_json(s.c)}, {"mu", int_to_json(kirby::rohlin(P, s))}});
    out["spin_structures"] = table;
    return out;
}

Json job_jclass(const InputDocument& doc, const std::vector<std::string>& args) {
    auto P = resolve_presentation(doc, args[0]);
    auto s = resolve_spin(doc, args[1], P.n());
    auto F = resolve_surface(doc, args[2], P.n());
    auto d = jspace::theta_tilde(P, s, F);
    Json out;
    out["descriptor"] = to_json(d);
    Int mu = kirby::rohlin(P, s);
    Int lhs = mod_floor(d.theta.value, 4);
    Int rhs = mod_floor(2 * (1 + Int(d.ctx->inv.b1)) - mu, 4);
    out["mod4_check"] = Json{{"theta_mod4", int_to_json(lhs)},
                             {"coset_mod4", int_to_json(rhs)},
                             {"ok", lhs == rhs}};
    return out;
}

Json job_orbit(const InputDocument& doc, const std::vector<std::string>& args) {
    auto P = resolve_presentation(doc, args[0]);
    auto s = resolve_spin(doc, args[1], P.n());
    auto F = resolve_surface(doc, args[2], P.n());
    Int k = literal_int(args[3], "orbit k");
    if (k < 0) fail("DimensionMismatch", "orbit window must be non-negative");
    long kl = small_long(k, "orbit k", 0, 10000);
    auto d = jspace::theta_tilde(P, s, F);
    Json out;
    out["orbit_order"] = int_to_json(d.orbit_order);
    Json tj = Json::array(), tw = Json::array();
    for (long i = 0; i <= kl; ++i) {
        tj.push_back(to_json(jspace::act_J(d, i).theta));
        tw.push_back(to_json(jspace::act_omega(d, i).theta));
    }
    out["act_J"] = tj;
    out["act_omega"] = tw;
    out["round_trip_identity"] = jspace::act_omega(jspace::act_J(d, kl), kl) == d;
    out["theta_phi"] = to_json(jspace::theta_phi(d));
    return out;
}

Json job_lens(const std::vector<std::string>& args) {
    Int p = literal_int(args[0], "lens p");
    Int q = literal_int(args[1], "lens q");
    Json out;
    out["p"] = int_to_json(p);
    out["q"] = int_to_json(q);
    if (p == 0) {
        // The p = 0 fiber: presented by a single 0-framed component; both
        // spin structures have vanishing Rohlin invariant.
        if (q != 1 && q != -1)
            fail("InvalidLensParameter", "p = 0 requires q = +-1");
        kirby::LinkingPresentation P;
        P.L = IntSymMatrix(IntMatrix(1, 1));
        Json pair = Json::array();
        std::vector<Int> mus;
        for (const auto& s : kirby::spin_structures(P)) mus.push_back(kirby::rohlin(P, s));
        std::sort(mus.begin(), mus.end());
        for (const auto& v : mus) pair.push_back(int_to_json(v));
        out["coefficients"] = Json::array();
        out["chain"] = to_json(P)["matrix"];
        out["rohlin_pair"] = pair;
        out["exception"] = false;
        return out;
    }
    auto cf = lens::even_cf(p, q);
    auto chain = lens::chain_matrix(cf);
    auto pair = lens::rohlin_pair(p, q);
    out["coefficients"] = to_json(cf.coeffs);
    out["chain"] = to_json(chain)["matrix"];
    out["odd_index_sum"] = int_to_json(lens::odd_index_sum(cf));
    out["rohlin_pair"] = Json::array({int_to_json(pair.first), int_to_json(pair.second)});
    out["exception"] = lens::lens_exception(p, q);
    return out;
}

Json job_feasible(const InputDocument& doc, const std::vector<std::string>& args) {
    auto P = resolve_presentation(doc, args[0]);
    auto s = resolve_spin(doc, args[1], P.n());
    auto F = resolve_surface(doc, args[2], P.n());
    auto X = resolve_target(doc, args[3]);
    auto d = jspace::theta_tilde(P, s, F);
    Int nM = embed::n_M(P);
    Json out;
    out["n_M"] = int_to_json(nM);
    out["descriptor"] = to_json(d);
    out["immersion"] = to_json(embed::immersion_feasible(d, X));
    out["embedding"] = to_json(embed::embedding_feasible(d, X, nM));
    return out;
}

Json job_construct(const InputDocument& doc, const std::vector<std::string>& args) {
    auto P = resolve_presentation(doc, args[0]);
    auto s = resolve_spin(doc, args[1], P.n());
    auto F = resolve_surface(doc, args[2], P.n());
    auto X = resolve_target(doc, args[3]);
    auto d = jspace::theta_tilde(P, s, F);
    return to_json(embed::construct_plan(P, s, F, d, X));
}

Json job_check_cert(const InputDocument& doc, const std::vector<std::string>& args) {
    if (args.size() == 1) {
        std::ifstream in(args[0]);
        if (!in) fail("SchemaError", "cannot open certificate file '" + args[0] + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const std::exception& e) {
            fail("SchemaError", "certificate file '" + args[0] + "': " + e.what());
        }
        auto cert = certificate_from_json(j, "certificate");
        return to_json(embed::check_certificate(cert));
    }
    auto P = resolve_presentation(doc, args[0]);
    auto s = resolve_spin(doc, args[1], P.n());
    auto F = resolve_surface(doc, args[2], P.n());
    auto X = resolve_target(doc, args[3]);
    auto d = jspace::theta_tilde(P, s, F);
    auto cert = embed::construct_plan(P, s, F, d, X);
    Json out;
    out["certificate"] = to_json(cert);
    out["check"] = to_json(embed::check_certificate(cert));
    return out;
}

Json job_selftest() {
    Json checks = Json::array();
    bool all = true;
    auto push = [&](const std::string& name, const std::string& expected, const std::string& got) {
        bool pass = expected == got;
        all = all && pass;
        checks.push_back(
            Json{{"name", name}, {"expected", expected}, {"got", got}, {"pass", pass}});
    };

    {
        kirby::LinkingPresentation P;
        jspace::SurfaceData F;
        kirby::SpinStructureRep s;
        auto d = jspace::theta_tilde(P, s, F);
        push("theta-standard-empty", "-2", d.theta.value.get_str());
        push("theta-mirror-empty", "2", jspace::act_J(d, -1).theta.value.get_str());
    }
    {
        auto P = kirby::e8_presentation();
        kirby::SpinStructureRep s;
        s.c.assign(8, 0);
        push("rohlin-e8", "8", kirby::rohlin(P, s).get_str());
        auto inv = kirby::invariants(P);
        push("e8-chi", "9", inv.chi_Y.get_str());
        push("e8-sigma", "-8", std::to_string(inv.sigma_Y));
        push("e8-H1", "0", inv.H1.to_string());
    }
    {
        kirby::LinkingPresentation P;
        P.L = IntSymMatrix(IntMatrix(1, 1));
        for (const auto& s : kirby::spin_structures(P))
            push("rohlin-s2xs1-spin" + std::to_string(static_cast<int>(s.c[0])), "0",
                 kirby::rohlin(P, s).get_str());
    }
    return Json{{"checks", checks}, {"ok", all}};
}

} // namespace

Json run_job(const InputDocument& doc, const std::string& command,
             const std::vector<std::string>& args) {
    if (command == "invariants") return job_invariants(doc, args);
    if (command == "jclass") return job_jclass(doc, args);
    if (command == "orbit") return job_orbit(doc, args);
    if (command == "lens") return job_lens(args);
    if (command == "feasible") return job_feasible(doc, args);
    if (command == "construct") return job_construct(doc, args);
    if (command == "check-cert") return job_check_cert(doc, args);
    if (command == "selftest") return job_selftest();
    fail("SchemaError", "unknown command '" + command + "'");
}

RunOutcome run_document(const InputDocument& doc) {
    RunOutcome out;
    out.report = Json::object();
    out.report["version"] = doc.version.empty() ? "jcalc/1" : doc.version;
    Json jobs = Json::array();
    for (const auto& [cmd, args] : doc.jobs) {
        Json entry;
        entry["command"] = cmd;
        entry["args"] = args;
        try {
            Json res = run_job(doc, cmd, args);
            if (cmd == "selftest" && res.contains("ok") && !res.at("ok").get<bool>())
                out.exit_code = std::max(out.exit_code, 1);
            entry["result"] = std::move(res);
        } catch (const Error& e) {
            std::string what = e.what();
            std::string prefix = e.code() + ": ";
            if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
            entry["error"] = Json{{"code", e.code()}, {"what", what}};
            out.exit_code = std::max(out.exit_code, e.code() == "SchemaError" ? 2 : 1);
        }
        jobs.push_back(std::move(entry));
    }
    out.report["jobs"] = std::move(jobs);
    return out;
}

namespace {

void text_reasons(std::ostringstream& os, const Json& reasons) {
    for (const auto& r : reasons)
        os << "    [" << (r.at("pass").get<bool>() ? "ok" : "FAIL") << "] "
           << r.at("name").get<std::string>() << ": need " << r.at("required").get<std::string>()
           << "; got " << r.at("actual").get<std::string>() << "\n";
}

void text_feasibility(std::ostringstream& os, const std::string& label, const Json& rep) {
    os << "  " << label << ": " << rep.at("verdict").get<std::string>()
       << " (spin: " << rep.at("spin_realizable").get<std::string>() << ")\n";
    text_reasons(os, rep.at("reasons"));
    if (rep.contains("witness_m"))
        os << "    witness m = " << scalar_str(rep.at("witness_m")) << "\n";
}

std::string residue_str(const Json& r) {
    std::string out = scalar_str(r.at("value"));
    if (!(r.at("mod").is_number_integer() && r.at("mod").get<std::int64_t>() == 0))
        out += " (mod " + scalar_str(r.at("mod")) + ")";
    return out;
}

void text_result(std::ostringstream& os, const std::string& cmd, const Json& res) {
    if (cmd == "invariants") {
        os << "  chi = " << scalar_str(res.at("chi")) << ", sigma = " << scalar_str(res.at("sigma"))
           << ", b1 = " << scalar_str(res.at("b1")) << ", H1 = " << res.at("H1").get<std::string>()
           << ", spin structures = " << scalar_str(res.at("spin_count")) << "\n";
        for (const auto& row : res.at("spin_structures"))
            os << "    spin " << row.at("spin").dump() << "  mu = " << scalar_str(row.at("mu"))
               << "\n";
    } else if (cmd == "jclass") {
        const Json& d = res.at("descriptor");
        os << "  Gamma = " << d.at("gamma").at("coords").dump() << " in "
           << d.at("gamma").at("group").get<std::string>() << "\n";
        os << "  c1 = " << d.at("c1").at("coords").dump() << "\n";
        os << "  theta = " << residue_str(d.at("theta")) << "\n";
        Json oo = d.at("orbit_order");
        bool infinite = oo.is_number_integer() && oo.get<std::int64_t>() == 0;
        os << "  orbit = " << (infinite ? std::string("Z") : "Z/2*" + scalar_str(oo)) << "\n";
        os << "  mod4 check: "
           << (res.at("mod4_check").at("ok").get<bool>() ? "ok" : "VIOLATED") << "\n";
    } else if (cmd == "orbit") {
        os << "  orbit_order = " << scalar_str(res.at("orbit_order")) << "\n  act_J theta:";
        for (const auto& t : res.at("act_J")) os << " " << residue_str(t) << ";";
        os << "\n  act_omega theta:";
        for (const auto& t : res.at("act_omega")) os << " " << residue_str(t) << ";";
        os << "\n  round trip identity: "
           << (res.at("round_trip_identity").get<bool>() ? "ok" : "VIOLATED") << "\n";
    } else if (cmd == "lens") {
        os << "  coefficients = " << res.at("coefficients").dump() << "\n";
        os << "  rohlin pair = " << res.at("rohlin_pair").dump() << "\n";
        os << "  exception = " << (res.at("exception").get<bool>() ? "true" : "false") << "\n";
    } else if (cmd == "feasible") {
        os << "  n_M = " << scalar_str(res.at("n_M")) << "\n";
        text_feasibility(os, "immersion", res.at("immersion"));
        text_feasibility(os, "embedding", res.at("embedding"));
    } else if (cmd == "construct") {
        const Json& p = res.at("params");
        os << "  branch = " << (res.at("spin_branch").get<bool>() ? "spin" : "odd")
           << ", m = " << scalar_str(p.at("m")) << ", j = " << scalar_str(p.at("j"))
           << ", k = " << scalar_str(p.at("k")) << ", k' = " << scalar_str(p.at("k_prime"))
           << ", p = (" << scalar_str(p.at("p_plus")) << ", " << scalar_str(p.at("p_minus"))
           << "), mu = " << scalar_str(p.at("mu")) << "\n";
        const Json& cl = res.at("claimed");
        os << "  claims: c^2 = " << scalar_str(cl.at("c_square"))
           << ", div = " << scalar_str(cl.at("divisibility"))
           << ", sigma_z = " << scalar_str(cl.at("sigma_z"))
           << ", theta = " << residue_str(cl.at("theta")) << "\n";
    } else if (cmd == "check-cert") {
        const Json& chk = res.contains("check") ? res.at("check") : res;
        os << "  certificate " << (chk.at("ok").get<bool>() ? "VERIFIED" : "REJECTED") << "\n";
        for (const auto& r : chk.at("records"))
            if (!r.at("pass").get<bool>())
                os << "    FAIL " << r.at("name").get<std::string>() << ": need "
                   << r.at("required").get<std::string>() << "; got "
                   << r.at("actual").get<std::string>() << "\n";
    } else if (cmd == "selftest") {
        for (const auto& c : res.at("checks"))
            os << "  [" << (c.at("pass").get<bool>() ? "ok" : "FAIL") << "] "
               << c.at("name").get<std::string>() << ": expected "
               << c.at("expected").get<std::string>() << ", got "
               << c.at("got").get<std::string>() << "\n";
        os << "  selftest " << (res.at("ok").get<bool>() ? "passed" : "FAILED") << "\n";
    } else {
        os << res.dump(2) << "\n";
    }
}

} // namespace

std::string render_text(const Json& report, bool quiet) {
    std::ostringstream os;
    for (const auto& entry : report.at("jobs")) {
        if (!quiet) {
            os << "== " << entry.at("command").get<std::string>();
            for (const auto& a : entry.at("args")) os << " " << a.get<std::string>();
            os << " ==\n";
        }
        if (entry.contains("error")) {
            os << "  error " << entry.at("error").at("code").get<std::string>() << ": "
               << entry.at("error").at("what").get<std::string>() << "\n";
        } else {
            text_result(os, entry.at("command").get<std::string>(), entry.at("result"));
        }
    }
    return os.str();
}

} // namespace jcalc::jsonio
