#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slag/dsl/expr.hpp"
#include "slag/dsl/parser.hpp"
#include "slag/dsl/printer.hpp"
#include "slag/error.hpp"
#include "slag/families/constructors.hpp"
#include "slag/families/family.hpp"

namespace slag::report {

/// Malformed scenario input. `line` is 0 when no line applies.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& source, std::size_t line, const std::string& msg)
        : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class Kind { embed, verify, family_check, phi, phi2d };
enum class Mode { exact, floating };

inline std::string name(Kind k)
{
    switch (k) {
    case Kind::embed: return "embed";
    case Kind::verify: return "verify";
    case Kind::family_check: return "family-check";
    case Kind::phi: return "phi";
    case Kind::phi2d: return "phi2d";
    }
    return "?";
}

inline std::string name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline std::optional<Kind> parse_kind(const std::string& s)
{
    for (Kind k : {Kind::embed, Kind::verify, Kind::family_check, Kind::phi, Kind::phi2d})
        if (name(k) == s)
            return k;
    return std::nullopt;
}

inline std::optional<Mode> parse_mode(const std::string& s)
{
    if (s == "exact")
        return Mode::exact;
    if (s == "float")
        return Mode::floating;
    return std::nullopt;
}

/// Entry text as written plus its parsed form.
struct NamedExpr {
    std::string key;
    std::string text;
    dsl::Expr expr;
};

struct Scenario {
    std::string source;
    Kind kind = Kind::embed;
    Mode mode = Mode::exact;
    int order = 6;
    std::size_t grid = 64;
    int t_samples = 11;
    double tolerance = 0.0;
    std::string expect; // phi kinds: "constant" or "non-constant"; empty when not asserted

    std::vector<NamedExpr> metric; // embed: g11 g22 g33 g12 g13 g23
    std::array<slag::Rational, 3> base_x{};
    slag::Rational base_t{0};

    std::vector<NamedExpr> family; // upper-triangle entries in from_upper order
    std::string constructor = "explicit";
    families::MetricFamily fam;

    std::string json_path;
    std::string csv_path;
    std::string dump_path;
};

/// Command-line overrides; unset fields keep the scenario's values.
struct Overrides {
    std::optional<int> order;
    std::optional<std::size_t> grid;
    std::optional<std::string> mode;
    std::optional<std::string> json_path;
    std::optional<std::string> csv_path;
    std::optional<std::string> dump_path;
};

inline double default_tolerance(Kind k, Mode m)
{
    if (const char* env = std::getenv("SLAG_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v >= 0.0))
            throw ScenarioError("SLAG_TOLERANCE", 0, "not a non-negative number: '" + std::string(env) + "'");
        return v;
    }
    switch (k) {
    case Kind::embed:
    case Kind::verify: return m == Mode::exact ? 0.0 : 1e-12;
    case Kind::family_check: return 1e-10;
    case Kind::phi:
    case Kind::phi2d: return 1e-8;
    }
    return 0.0;
}

namespace detail {

// "section.key" -> line number, from a plain scan of the INI text.
inline std::map<std::string, std::size_t> key_lines(const std::string& text)
{
    std::map<std::string, std::size_t> out;
    std::istringstream in(text);
    std::string line, section;
    std::size_t n = 0;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++n;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';')
            continue;
        if (s.front() == '[' && s.back() == ']') {
            section = trim(s.substr(1, s.size() - 2));
            out.emplace(section, n);
        } else if (const auto eq = s.find('='); eq != std::string::npos) {
            out.emplace(section + "." + trim(s.substr(0, eq)), n);
        }
    }
    return out;
}

// Drops a trailing ';' or '#' comment outside double quotes, then one pair of quotes.
inline std::string unquote(std::string v)
{
    bool quoted = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == '"')
            quoted = !quoted;
        else if (!quoted && (v[k] == ';' || v[k] == '#')) {
            v.erase(k);
            break;
        }
    }
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
        v.pop_back();
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
    return v;
}

class Reader {
public:
    Reader(std::string source, const std::string& text) : source_(std::move(source)), lines_(key_lines(text))
    {
        std::istringstream in(text);
        try {
            boost::property_tree::read_ini(in, tree_);
        } catch (const boost::property_tree::ini_parser_error& e) {
            throw ScenarioError(source_, e.line(), e.message());
        }
        for (const auto& [section, body] : tree_)
            if (body.empty() && !body.data().empty())
                throw ScenarioError(source_, line(section), "key '" + section + "' outside any section");
    }

    std::size_t line(const std::string& path) const
    {
        const auto it = lines_.find(path);
        return it == lines_.end() ? 0 : it->second;
    }

    bool has_section(const std::string& s) const { return tree_.find(s) != tree_.not_found(); }

    std::optional<std::string> get(const std::string& path) const
    {
        const auto v = tree_.get_optional<std::string>(boost::property_tree::ptree::path_type(path, '.'));
        if (!v)
            return std::nullopt;
        return unquote(*v);
    }

    std::string require(const std::string& path) const
    {
        auto v = get(path);
        if (!v)
            throw fail(path.substr(0, path.find('.')), "missing required key '" + path + "'");
        return *v;
    }

    template <class T>
    std::optional<T> number(const std::string& path) const
    {
        const auto v = get(path);
        if (!v)
            return std::nullopt;
        std::istringstream in(*v);
        T x{};
        in >> x;
        if (!in || !(in >> std::ws).eof())
            throw fail(path, "'" + path + "' is not a number: '" + *v + "'");
        return x;
    }

    std::optional<bool> boolean(const std::string& path) const
    {
        const auto v = get(path);
        if (!v)
            return std::nullopt;
        if (*v == "true" || *v == "yes" || *v == "1")
            return true;
        if (*v == "false" || *v == "no" || *v == "0")
            return false;
        throw fail(path, "'" + path + "' is not a boolean: '" + *v + "'");
    }

    NamedExpr expr(const std::string& path, const std::string& fallback = {}) const
    {
        const auto v = get(path);
        if (!v && fallback.empty())
            throw fail(path.substr(0, path.find('.')), "missing required key '" + path + "'");
        const std::string text = v ? *v : fallback;
        try {
            return {path.substr(path.find('.') + 1), text, dsl::parse(text)};
        } catch (const ParseError& e) {
            throw fail(path, "'" + path + "': " + e.what() + "\n  " + text + "\n  " + std::string(e.offset(), ' ') +
                                 "^");
        }
    }

    slag::Rational rational(const std::string& path, const std::string& text) const
    {
        try {
            if (auto r = dsl::fold_rational(dsl::parse(text)))
                return *r;
        } catch (const ParseError& e) {
            throw fail(path, "'" + path + "': " + e.what());
        }
        throw fail(path, "'" + path + "' must be a rational constant, got '" + text + "'");
    }

    ScenarioError fail(const std::string& path, const std::string& msg) const
    {
        return ScenarioError(source_, line(path), msg);
    }

private:
    std::string source_;
    std::map<std::string, std::size_t> lines_;
    boost::property_tree::ptree tree_;
};

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> upper_keys(int dim)
{
    return dim == 3 ? std::vector<std::string>{"g11", "g22", "g33", "g12", "g13", "g23"}
                    : std::vector<std::string>{"g11", "g22", "g12"};
}

// Builds sc.fam with a named constructor; entries are echoed from the result.
inline void construct_family(const Reader& r, Scenario& sc)
{
    using namespace families;
    const auto e = [&r](const std::string& key, const std::string& fallback = {}) {
        return r.expr("family." + key, fallback).expr;
    };
    const int points = r.number<int>("family.points").value_or(default_mean_points);
    if (points < 2)
        throw r.fail("family.points", "family.points must be at least 2");
    const auto t1 = [&r] {
        const auto v = r.number<double>("family.t1");
        if (!v)
            throw r.fail("family", "missing required key 'family.t1'");
        return *v;
    };
    const double t_lo = r.number<double>("family.t_lo").value_or(0.0);
    try {
        if (sc.constructor == "block")
            sc.fam = make_block_family(e("u"), e("q11"), e("q22"), e("q12", "0"), e("q", "1"), t_lo,
                                       r.number<double>("family.t_hi").value_or(1.0),
                                       r.boolean("family.t_open").value_or(false), sc.grid);
        else if (sc.constructor == "collapse22")
            sc.fam = make_collapsing_22(e("w"), t1(), t_lo, points);
        else if (sc.constructor == "collapse21")
            sc.fam = make_collapsing_21(e("w"), e("v"), t1(), t_lo, points);
        else if (sc.constructor == "cone")
            sc.fam = make_cone_family(e("f"), t_lo, r.number<double>("family.t_hi").value_or(1.0),
                                      r.number<double>("family.x1_lo").value_or(0.5),
                                      r.number<double>("family.x1_hi").value_or(2.0), sc.grid);
        else
            throw r.fail("family.constructor", "unknown constructor '" + sc.constructor +
                                                   "' (explicit, block, collapse22, collapse21, cone)");
    } catch (const FamilyError& err) {
        throw r.fail("family.constructor", err.what());
    } catch (const DomainError& err) {
        throw r.fail("family.constructor", err.what());
    }
    if (const auto label = r.get("family.label"))
        sc.fam.kind = *label;
    static constexpr int idx[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
    const auto keys = upper_keys(3);
    for (int m = 0; m < 6; ++m) {
        const auto& x = sc.fam.entry(idx[m][0], idx[m][1]);
        sc.family.push_back({keys[static_cast<std::size_t>(m)], dsl::to_string(x), x});
    }
}

inline void read_family(const Reader& r, Scenario& sc)
{
    sc.constructor = r.get("family.constructor").value_or("explicit");
    if (sc.constructor != "explicit") {
        construct_family(r, sc);
        return;
    }
    const int dim = r.number<int>("family.dim").value_or(3);
    if (dim != 2 && dim != 3)
        throw r.fail("family.dim", "family.dim must be 2 or 3");
    std::vector<dsl::Expr> upper;
    for (const auto& k : upper_keys(dim)) {
        const bool diagonal = k[1] == k[2];
        sc.family.push_back(r.expr("family." + k, diagonal ? "" : "0"));
        upper.push_back(sc.family.back().expr);
    }
    sc.fam = families::MetricFamily::from_upper(dim, upper);
    sc.fam.kind = r.get("family.label").value_or("explicit");
    sc.fam.t_lo = r.number<double>("family.t_lo").value_or(0.0);
    sc.fam.t_hi = r.number<double>("family.t_hi").value_or(1.0);
    sc.fam.t_hi_open = r.boolean("family.t_open").value_or(false);
    if (!(sc.fam.t_hi > sc.fam.t_lo))
        throw r.fail("family.t_hi", "family.t_hi must exceed family.t_lo");
    for (int k = 1; k <= dim; ++k) {
        const std::string lo = "family.x" + std::to_string(k) + "_lo", hi = "family.x" + std::to_string(k) + "_hi";
        const auto a = r.number<double>(lo), b = r.number<double>(hi);
        if (!a && !b)
            continue;
        if (!a || !b || !(*b > *a))
            throw r.fail(a ? hi : lo, "interval domain needs both " + lo + " < " + hi);
        sc.fam.domains[static_cast<std::size_t>(k - 1)] = families::AxisDomain::interval(*a, *b);
    }
}

} // namespace detail

/// Parses scenario text. `source` names the input in diagnostics.
inline Scenario parse_scenario(const std::string& text, const std::string& source, const Overrides& ov = {})
{
    const detail::Reader r(source, text);
    Scenario sc;
    sc.source = source;

    const std::string kind = r.require("scenario.kind");
    const auto k = parse_kind(kind);
    if (!k)
        throw r.fail("scenario.kind", "unknown kind '" + kind + "' (embed, verify, family-check, phi, phi2d)");
    sc.kind = *k;

    const bool numeric_kind = sc.kind != Kind::embed && sc.kind != Kind::verify;
    const std::string mode = ov.mode.value_or(r.get("scenario.mode").value_or(numeric_kind ? "float" : "exact"));
    const auto m = parse_mode(mode);
    if (!m)
        throw r.fail("scenario.mode", "mode must be exact or float, got '" + mode + "'");
    if (*m == Mode::exact && numeric_kind)
        throw r.fail("scenario.mode", name(sc.kind) + " runs in float mode only");
    sc.mode = *m;

    sc.order = ov.order.value_or(r.number<int>("scenario.order").value_or(6));
    if (sc.order < 2 || sc.order > 40)
        throw r.fail("scenario.order", "order must be in [2, 40]");
    sc.grid = ov.grid.value_or(r.number<std::size_t>("scenario.grid").value_or(64));
    if (sc.grid < 4)
        throw r.fail("scenario.grid", "grid must be at least 4");
    sc.t_samples = r.number<int>("scenario.t_samples").value_or(numeric_kind && sc.kind != Kind::family_check ? 21 : 11);
    if (sc.t_samples < 3)
        throw r.fail("scenario.t_samples", "t_samples must be at least 3");
    sc.tolerance = r.number<double>("scenario.tolerance").value_or(default_tolerance(sc.kind, sc.mode));
    if (!(sc.tolerance >= 0.0))
        throw r.fail("scenario.tolerance", "tolerance must be non-negative");
    sc.expect = r.get("scenario.expect").value_or("");
    if (!sc.expect.empty() && sc.expect != "constant" && sc.expect != "non-constant")
        throw r.fail("scenario.expect", "expect must be constant or non-constant");
    if (!sc.expect.empty() && sc.kind != Kind::phi && sc.kind != Kind::phi2d)
        throw r.fail("scenario.expect", "expect applies to phi and phi2d only");

    if (sc.kind == Kind::embed) {
        if (!r.has_section("metric"))
            throw ScenarioError(source, 0, "embed needs a [metric] section");
        for (const char* key : {"g11", "g22", "g33", "g12", "g13", "g23"}) {
            const std::string k2 = key;
            sc.metric.push_back(r.expr("metric." + k2, k2[1] == k2[2] ? "" : "0"));
            if (dsl::depends_on(sc.metric.back().expr, dsl::Variable::t))
                throw r.fail("metric." + k2, "metric entries may not depend on t");
        }
    } else {
        if (!r.has_section("family"))
            throw ScenarioError(source, 0, name(sc.kind) + " needs a [family] section");
        detail::read_family(r, sc);
        if (sc.kind == Kind::verify && sc.fam.dim != 3)
            throw r.fail("family.dim", "verify needs a 3-dimensional family");
        if (sc.kind == Kind::phi && sc.fam.dim != 3)
            throw r.fail("family.dim", "phi needs a 3-dimensional family (use phi2d)");
        if (sc.kind == Kind::phi2d && sc.fam.dim != 2)
            throw r.fail("family.dim", "phi2d needs a 2-dimensional family");
    }

    const std::string base_section = sc.kind == Kind::embed ? "metric" : "family";
    if (const auto base = r.get(base_section + ".base")) {
        const auto parts = detail::split_list(*base);
        if (parts.size() != 3)
            throw r.fail(base_section + ".base", "base needs three comma-separated coordinates");
        for (std::size_t i = 0; i < 3; ++i)
            sc.base_x[i] = r.rational(base_section + ".base", parts[i]);
    }
    if (const auto bt = r.get("family.base_t"))
        sc.base_t = r.rational("family.base_t", *bt);

    sc.json_path = ov.json_path.value_or(r.get("output.json").value_or(""));
    sc.csv_path = ov.csv_path.value_or(r.get("output.csv").value_or(""));
    sc.dump_path = ov.dump_path.value_or(r.get("output.dump").value_or(""));
    return sc;
}

inline Scenario load_scenario(const std::string& path, const Overrides& ov = {})
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError(path, 0, "cannot open scenario file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path, ov);
}

} // namespace slag::report
