#include "chc/keyfile.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "chc/errors.hpp"

namespace chc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::map<std::string, std::string>& kv, const std::string& name) {
    const auto it = kv.find(name);
    if (it == kv.end()) throw KeyFileError("key file: missing '" + name + "'");
    const std::string& v = it->second;
    double out;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw KeyFileError("key file: bad number for '" + name + "': " + v);
    return out;
}

std::uint64_t parse_u64(const std::map<std::string, std::string>& kv,
                        const std::string& name) {
    const auto it = kv.find(name);
    if (it == kv.end()) throw KeyFileError("key file: missing '" + name + "'");
    const std::string& v = it->second;
    std::uint64_t out;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw KeyFileError("key file: bad integer for '" + name + "': " + v);
    return out;
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    const std::set<std::string>& known) {
    for (const auto& [name, _] : kv)
        if (!known.count(name))
            throw KeyFileError("key file: unknown entry '" + name + "'");
}

void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

std::map<std::string, std::string> parse_key_value_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw KeyFileError("key file line " + std::to_string(lineno) +
                               ": expected 'name = value'");
        const std::string name = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (name.empty() || value.empty())
            throw KeyFileError("key file line " + std::to_string(lineno) +
                               ": empty name or value");
        if (kv.count(name))
            throw KeyFileError("key file: duplicate entry '" + name + "'");
        kv[name] = value;
    }
    return kv;
}

ChaosKey parse_chaos_key(const std::string& text) {
    const auto kv = parse_key_value_text(text);
    reject_unknown(kv, {"a", "b", "c", "e1", "e2", "k", "m", "x0", "y0", "z0", "w0",
                        "dt", "transient"});
    ChaosKey key = default_chaos_key();
    key.params = {parse_double(kv, "a"),  parse_double(kv, "b"),
                  parse_double(kv, "c"),  parse_double(kv, "e1"),
                  parse_double(kv, "e2"), parse_double(kv, "k"),
                  parse_double(kv, "m")};
    key.initial = {parse_double(kv, "x0"), parse_double(kv, "y0"),
                   parse_double(kv, "z0"), parse_double(kv, "w0")};
    if (kv.count("dt")) key.dt = parse_double(kv, "dt");
    if (kv.count("transient")) key.n_transient = parse_u64(kv, "transient");
    validate_params(key.params);
    if (!(key.dt > 0.0)) throw KeyFileError("key file: dt must be > 0");
    return key;
}

EccKeyMaterial parse_ecc_key(const std::string& text) {
    const auto kv = parse_key_value_text(text);
    reject_unknown(kv, {"a", "b", "p", "G.x", "G.y", "y", "k", "P_B.x", "P_B.y"});
    EccKeyMaterial m;
    m.curve = validate_curve(parse_u64(kv, "a"), parse_u64(kv, "b"), parse_u64(kv, "p"));
    m.G = CurvePoint::affine(parse_u64(kv, "G.x"), parse_u64(kv, "G.y"));
    m.private_scalar = parse_u64(kv, "y");
    m.ephemeral_k = parse_u64(kv, "k");
    m.public_point = CurvePoint::affine(parse_u64(kv, "P_B.x"), parse_u64(kv, "P_B.y"));
    if (!is_on_curve(m.G, m.curve)) throw KeyFileError("key file: G is not on the curve");
    if (!is_on_curve(m.public_point, m.curve))
        throw KeyFileError("key file: P_B is not on the curve");
    if (m.private_scalar == 0 || m.ephemeral_k == 0)
        throw KeyFileError("key file: y and k must be >= 1");
    if (!(scalar_mul(m.private_scalar, m.G, m.curve) == m.public_point))
        throw KeyFileError("key file: P_B does not equal y * G");
    return m;
}

ChaosKey load_chaos_key_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw KeyFileError("cannot open " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_chaos_key(ss.str());
}

EccKeyMaterial load_ecc_key_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw KeyFileError("cannot open " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ecc_key(ss.str());
}

std::string format_chaos_key(const ChaosKey& key) {
    std::string out;
    const std::pair<const char*, double> fields[] = {
        {"a", key.params.a},   {"b", key.params.b},   {"c", key.params.c},
        {"e1", key.params.e1}, {"e2", key.params.e2}, {"k", key.params.k_fb},
        {"m", key.params.m},   {"x0", key.initial.x}, {"y0", key.initial.y},
        {"z0", key.initial.z}, {"w0", key.initial.w}, {"dt", key.dt},
    };
    for (const auto& [name, value] : fields) {
        out += name;
        out += " = ";
        append_double(out, value);
        out += '\n';
    }
    out += "transient = " + std::to_string(key.n_transient) + '\n';
    return out;
}

std::string format_ecc_key(const EccKeyMaterial& ecc) {
    std::string out;
    const std::pair<const char*, std::uint64_t> fields[] = {
        {"a", ecc.curve.a},       {"b", ecc.curve.b},       {"p", ecc.curve.p},
        {"G.x", ecc.G.x},         {"G.y", ecc.G.y},         {"y", ecc.private_scalar},
        {"k", ecc.ephemeral_k},   {"P_B.x", ecc.public_point.x},
        {"P_B.y", ecc.public_point.y},
    };
    for (const auto& [name, value] : fields)
        out += std::string(name) + " = " + std::to_string(value) + '\n';
    return out;
}

}  // namespace chc
