#include "lfem/study_config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lfem/errors.hpp"

namespace lfem {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "domain", "side", "n0",   "refinements",    "lambda", "mu",  "E",
        "nu",     "alpha", "g",   "mesh", "dirichlet_tags", "solver", "tol"};
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
        out.push_back(item);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw std::invalid_argument(key + ": expected a number, got '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw std::invalid_argument(key + ": expected an integer, got '" + text + "'");
    return v;
}

}  // namespace

ConfigValues parse_config(std::istream& in) {
    ConfigValues values;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto content = trim(line.substr(0, line.find('#')));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ParseError(number, "expected key=value");
        const auto key = trim(content.substr(0, eq));
        const auto value = trim(content.substr(eq + 1));
        if (!known_keys().contains(key)) throw ParseError(number, "unknown key '" + key + "'");
        if (value.empty()) throw ParseError(number, "empty value for '" + key + "'");
        if (!values.emplace(key, value).second)
            throw ParseError(number, "key '" + key + "' given twice");
    }
    return values;
}

ConfigValues load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    return parse_config(in);
}

StudyConfig build_config(const ConfigValues& values) {
    for (const auto& [key, v] : values)
        if (!known_keys().contains(key)) throw std::invalid_argument("unknown key '" + key + "'");
    auto get = [&](const char* key) -> const std::string* {
        const auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };

    StudyConfig c;
    if (const auto* d = get("domain")) {
        if (*d == "square") c.domain = Domain::square;
        else if (*d == "cook") c.domain = Domain::cook;
        else if (*d == "file") c.domain = Domain::file;
        else throw std::invalid_argument("domain must be square, cook or file");
    } else if (get("mesh")) {
        c.domain = Domain::file;
    }

    switch (c.domain) {
        case Domain::square:
            c.side = std::numbers::pi;
            c.n0 = 16;
            c.levels = 5;
            c.lambdas = {1e3, 1e4, 1e5};
            c.mu = 1.0;
            break;
        case Domain::cook: {
            c.n0 = 9;
            c.levels = 5;
            const auto lp = lame_from_young_poisson(1.12499998125, 0.499999975);
            c.lambdas = {lp.lambda};
            c.mu = lp.mu;
            break;
        }
        case Domain::file:
            c.levels = 1;
            c.lambdas = {1e3};
            c.mu = 1.0;
            break;
    }
    c.policies = {AlphaPolicy::standard(), AlphaPolicy::locking_free()};

    if (const auto* v = get("side")) c.side = to_double("side", *v);
    if (const auto* v = get("n0")) c.n0 = to_int("n0", *v);
    if (const auto* v = get("refinements")) c.levels = to_int("refinements", *v) + 1;
    if (const auto* v = get("g")) c.g = to_double("g", *v);
    if (const auto* v = get("tol")) c.tol = to_double("tol", *v);
    if (const auto* v = get("mesh")) c.mesh_file = *v;
    if (const auto* v = get("solver")) {
        if (*v == "direct") c.solver = SolverKind::direct;
        else if (*v == "cg") c.solver = SolverKind::cg;
        else throw std::invalid_argument("solver must be direct or cg");
    }
    if (const auto* v = get("dirichlet_tags")) {
        c.dirichlet_tags.clear();
        if (*v != "none")
            for (const auto& t : split_list(*v)) c.dirichlet_tags.push_back(to_int("dirichlet_tags", t));
    }
    if (const auto* v = get("alpha")) {
        c.policies.clear();
        for (const auto& a : split_list(*v)) c.policies.push_back(AlphaPolicy::parse(a));
    }

    const auto* E = get("E");
    const auto* nu = get("nu");
    if (E || nu) {
        if (!E || !nu) throw std::invalid_argument("E and nu must be given together");
        if (get("lambda") || get("mu"))
            throw std::invalid_argument("give either E/nu or lambda/mu, not both");
        const auto lp = lame_from_young_poisson(to_double("E", *E), to_double("nu", *nu));
        c.lambdas = {lp.lambda};
        c.mu = lp.mu;
    }
    if (const auto* v = get("lambda")) {
        c.lambdas.clear();
        for (const auto& l : split_list(*v)) c.lambdas.push_back(to_double("lambda", l));
    }
    if (const auto* v = get("mu")) c.mu = to_double("mu", *v);

    if (c.domain == Domain::square && !(c.side > 0.0)) throw std::invalid_argument("side must be positive");
    if (c.domain != Domain::file && c.n0 < 1) throw std::invalid_argument("n0 must be >= 1");
    if (c.domain == Domain::file && c.mesh_file.empty())
        throw std::invalid_argument("domain=file needs mesh=<path>");
    if (c.levels < 1) throw std::invalid_argument("refinements must be >= 0");
    if (!(c.mu > 0.0)) throw std::invalid_argument("mu must be positive");
    for (double l : c.lambdas)
        if (!(l > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(c.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    return c;
}

Mesh base_mesh(const StudyConfig& config) {
    switch (config.domain) {
        case Domain::square: return generate_square_mesh(config.side, config.n0);
        case Domain::cook: return generate_cook_mesh(config.n0);
        case Domain::file: return read_mesh(config.mesh_file);
    }
    throw std::logic_error("unhandled domain");
}

}  // namespace lfem
