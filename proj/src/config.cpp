#include "shadowlab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace shadowlab {

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::shadowing: return "shadowing";
        case Suite::average_shadowing: return "average_shadowing";
        case Suite::limit_shadowing: return "limit_shadowing";
        case Suite::asymptotic_shadowing: return "asymptotic_shadowing";
        case Suite::chain_dynamics: return "chain_dynamics";
        case Suite::hyperbolicity: return "hyperbolicity";
        case Suite::manifolds: return "manifolds";
        case Suite::full: return "full";
    }
    return "full";
}

std::optional<Suite> suite_from_name(const std::string& name) {
    for (Suite s : {Suite::shadowing, Suite::average_shadowing, Suite::limit_shadowing,
                    Suite::asymptotic_shadowing, Suite::chain_dynamics, Suite::hyperbolicity,
                    Suite::manifolds, Suite::full})
        if (name == suite_name(s)) return s;
    return std::nullopt;
}

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::config, "config field '" + field + "': " + what);
}

}  // namespace

ExperimentSpec experiment_from_json(const nlohmann::ordered_json& doc) {
    ExperimentSpec spec;
    if (!doc.is_object()) throw Error(ErrorKind::config, "config root must be a table/object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "system") {
            if (!value.is_object()) schema_error("system", "must be a table");
            for (const auto& [k2, v2] : value.items()) {
                if (k2 == "kind") {
                    spec.system.kind = v2.get<std::string>();
                } else if (k2 == "name") {
                    spec.system.name = v2.get<std::string>();
                } else if (k2 == "params") {
                    for (const auto& [pk, pv] : v2.items()) {
                        if (!pv.is_number()) schema_error("system.params." + pk, "must be a number");
                        spec.system.params[pk] = pv.get<double>();
                    }
                } else if (k2 == "poly") {
                    for (const auto& comp : v2) {
                        std::vector<PolyTerm> terms;
                        for (const auto& t : comp) {
                            PolyTerm term;
                            term.coeff = t.at("coeff").get<double>();
                            term.exponents = t.at("exponents").get<std::vector<int>>();
                            terms.push_back(std::move(term));
                        }
                        spec.system.poly.push_back(std::move(terms));
                    }
                } else {
                    schema_error("system." + k2, "unknown key");
                }
            }
        } else if (key == "suite") {
            auto s = suite_from_name(value.get<std::string>());
            if (!s) schema_error("suite", "unknown suite '" + value.get<std::string>() + "'");
            spec.suite = *s;
        } else if (key == "params") {
            for (const auto& [pk, pv] : value.items()) {
                if (!pv.is_number()) schema_error("params." + pk, "must be a number");
                spec.params[pk] = pv.get<double>();
            }
        } else if (key == "seed") {
            if (!value.is_number_integer()) schema_error("seed", "must be an integer");
            spec.seed = value.get<std::uint64_t>();
        } else if (key == "output_dir") {
            spec.output_dir = value.get<std::string>();
        } else {
            schema_error(key, "unknown key");
        }
    }
    if (spec.system.kind.empty()) schema_error("system.kind", "missing");
    if (!doc.contains("seed")) schema_error("seed", "missing (reproducibility is mandatory)");
    return spec;
}

nlohmann::ordered_json experiment_to_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    j["system"]["kind"] = spec.system.kind;
    if (!spec.system.name.empty()) j["system"]["name"] = spec.system.name;
    if (!spec.system.params.empty()) {
        for (const auto& [k, v] : spec.system.params) j["system"]["params"][k] = v;
    }
    if (!spec.system.poly.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& comp : spec.system.poly) {
            auto c = nlohmann::ordered_json::array();
            for (const auto& t : comp)
                c.push_back({{"coeff", t.coeff}, {"exponents", t.exponents}});
            arr.push_back(std::move(c));
        }
        j["system"]["poly"] = std::move(arr);
    }
    j["suite"] = suite_name(spec.suite);
    if (!spec.params.empty())
        for (const auto& [k, v] : spec.params) j["params"][k] = v;
    j["seed"] = spec.seed;
    j["output_dir"] = spec.output_dir;
    return j;
}

namespace {

struct TomlCursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "toml parse error at line " << line << ", column " << col << ": " << what;
        throw Error(ErrorKind::config, os.str());
    }
    void skip_ws_inline() {
        while (!done() && (peek() == ' ' || peek() == '\t')) take();
    }
    void skip_to_eol() {
        while (!done() && peek() != '\n') take();
        if (!done()) take();
    }
};

nlohmann::ordered_json parse_toml_value(TomlCursor& cur) {
    cur.skip_ws_inline();
    if (cur.done()) cur.fail("expected a value");
    char c = cur.peek();
    if (c == '"') {
        cur.take();
        std::string s;
        while (!cur.done() && cur.peek() != '"') {
            char ch = cur.take();
            if (ch == '\\' && !cur.done()) {
                char esc = cur.take();
                if (esc == 'n') ch = '\n';
                else if (esc == 't') ch = '\t';
                else ch = esc;
            }
            s.push_back(ch);
        }
        if (cur.done()) cur.fail("unterminated string");
        cur.take();
        return s;
    }
    if (c == '[') {
        cur.take();
        auto arr = nlohmann::ordered_json::array();
        cur.skip_ws_inline();
        while (!cur.done() && cur.peek() != ']') {
            arr.push_back(parse_toml_value(cur));
            cur.skip_ws_inline();
            if (!cur.done() && cur.peek() == ',') {
                cur.take();
                cur.skip_ws_inline();
            }
        }
        if (cur.done()) cur.fail("unterminated array");
        cur.take();
        return arr;
    }
    std::string tok;
    while (!cur.done() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                           strchr("+-._", cur.peek())))
        tok.push_back(cur.take());
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.empty()) cur.fail("expected a value");
    try {
        if (tok.find_first_of(".eE") == std::string::npos &&
            tok.find_first_not_of("+-0123456789") == std::string::npos)
            return std::stoll(tok);
        return std::stod(tok);
    } catch (const std::exception&) {
        cur.fail("cannot parse number '" + tok + "'");
    }
}

}  // namespace

nlohmann::ordered_json toml_subset_to_json(const std::string& text) {
    nlohmann::ordered_json root = nlohmann::ordered_json::object();
    nlohmann::ordered_json* table = &root;
    TomlCursor cur{text};
    while (!cur.done()) {
        cur.skip_ws_inline();
        if (cur.done()) break;
        char c = cur.peek();
        if (c == '\n' || c == '\r') {
            cur.take();
            continue;
        }
        if (c == '#') {
            cur.skip_to_eol();
            continue;
        }
        if (c == '[') {
            cur.take();
            std::string path;
            while (!cur.done() && cur.peek() != ']') path.push_back(cur.take());
            if (cur.done()) cur.fail("unterminated table header");
            cur.take();
            table = &root;
            std::istringstream ps(path);
            std::string part;
            while (std::getline(ps, part, '.')) {
                if (part.empty()) cur.fail("empty table name component");
                table = &(*table)[part];
                if (table->is_null()) *table = nlohmann::ordered_json::object();
            }
            cur.skip_to_eol();
            continue;
        }
        // key = value
        std::string key;
        while (!cur.done() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                               cur.peek() == '_' || cur.peek() == '-'))
            key.push_back(cur.take());
        if (key.empty()) cur.fail("expected a key");
        cur.skip_ws_inline();
        if (cur.done() || cur.take() != '=') cur.fail("expected '=' after key '" + key + "'");
        (*table)[key] = parse_toml_value(cur);
        cur.skip_ws_inline();
        if (!cur.done() && cur.peek() == '#') cur.skip_to_eol();
        else if (!cur.done()) {
            if (cur.peek() != '\n' && cur.peek() != '\r')
                cur.fail("trailing characters after value for key '" + key + "'");
        }
    }
    return root;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    nlohmann::ordered_json doc;
    if (path.extension() == ".json") {
        try {
            doc = nlohmann::ordered_json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorKind::config, std::string("json parse error: ") + e.what());
        }
    } else if (path.extension() == ".toml") {
        doc = toml_subset_to_json(text);
    } else {
        throw Error(ErrorKind::config, "config must be a .toml or .json file");
    }
    return experiment_from_json(doc);
}

std::uint64_t config_hash(const ExperimentSpec& spec) {
    // the hash identifies the experiment; the output location is not part of it
    auto doc = experiment_to_json(spec);
    doc.erase("output_dir");
    const std::string s = doc.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace shadowlab
