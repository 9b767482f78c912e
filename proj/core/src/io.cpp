#include <swf/io.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace swf
{

using Json = nlohmann::ordered_json;

namespace
{

[[noreturn]] void schema_error(const std::string &path, const std::string &what)
{
    fail(ErrorKind::schema, path + ": " + what);
}

double rounded(const Rational &q)
{
    const HighPrecision num(numerator(q).str()), den(denominator(q).str());
    return static_cast<double>(num / den);
}

const Json &require(const Json &j, const char *key, const std::string &path)
{
    if (!j.is_object() || !j.contains(key)) {
        schema_error(path, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

int as_int(const Json &j, const std::string &path, int lo = std::numeric_limits<int>::min())
{
    if (!j.is_number_integer()) {
        schema_error(path, "expected an integer");
    }
    const auto v = j.get<long long>();
    if (v < lo || v > std::numeric_limits<int>::max()) {
        schema_error(path, "integer out of range");
    }
    return static_cast<int>(v);
}

Number as_number(const Json &j, const std::string &path)
{
    try {
        if (j.is_number_integer()) {
            return Number::from_rational(Rational(j.get<long long>()));
        }
        if (j.is_number_float()) {
            return Number::from_double(j.get<double>());
        }
        if (j.is_string()) {
            return Number::parse(j.get<std::string>());
        }
        if (j.is_array() && j.size() == 2) {
            auto part = [&](const Json &e) {
                if (e.is_string()) {
                    return e.get<std::string>();
                }
                if (e.is_number_integer()) {
                    return std::to_string(e.get<long long>());
                }
                schema_error(path, "fraction parts must be integers or integer strings");
            };
            return Number::from_rational(parse_numeral<Rational>(part(j[0]) + "/" + part(j[1])));
        }
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::schema) {
            throw;
        }
        schema_error(path, e.what());
    }
    schema_error(path, "expected a number, a numeral string or a [numerator, denominator] pair");
}

Exponent as_exponent(const Json &j, int n, const std::string &path)
{
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        schema_error(path, "expected " + std::to_string(n) + " exponents");
    }
    Exponent e;
    for (std::size_t i = 0; i < j.size(); ++i) {
        e.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]", 0));
    }
    return e;
}

void only_keys(const Json &j, std::initializer_list<const char *> keys, const std::string &path)
{
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto &[k, v] : j.items()) {
        if (!allowed.count(k)) {
            schema_error(path, "unknown field '" + k + "'");
        }
    }
}

std::vector<PolyTerm> as_poly(const Json &j, int n, const std::string &path)
{
    if (!j.is_array()) {
        schema_error(path, "expected a list of {x, c} terms");
    }
    std::vector<PolyTerm> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        only_keys(j[i], {"x", "c"}, p);
        Exponent x = j[i].contains("x") ? as_exponent(j[i]["x"], n, p + ".x") : Exponent(static_cast<std::size_t>(n), 0);
        out.push_back({std::move(x), as_number(require(j[i], "c", p), p + ".c")});
    }
    return out;
}

std::vector<FTerm> as_f(const Json &j, int n, const std::string &path)
{
    if (!j.is_array()) {
        schema_error(path, "expected a list of monomials");
    }
    std::vector<FTerm> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const Json &mono = j[i];
        only_keys(mono, {"c", "coeff", "tau", "xi"}, p);
        FTerm t;
        t.tau = mono.contains("tau") ? as_int(mono["tau"], p + ".tau", 0) : 0;
        t.xi = mono.contains("xi") ? as_exponent(mono["xi"], n, p + ".xi") : Exponent(static_cast<std::size_t>(n), 0);
        if (mono.contains("c") == mono.contains("coeff")) {
            schema_error(p, "give exactly one of 'c' (constant) or 'coeff' (terms in t and x)");
        }
        if (mono.contains("c")) {
            t.coeff.emplace_back(0, Exponent(static_cast<std::size_t>(n), 0), as_number(mono["c"], p + ".c"));
        } else {
            const Json &cj = mono["coeff"];
            if (!cj.is_array() || cj.empty()) {
                schema_error(p + ".coeff", "expected a non-empty list of {t, x, c} terms");
            }
            for (std::size_t k = 0; k < cj.size(); ++k) {
                const std::string q = p + ".coeff[" + std::to_string(k) + "]";
                only_keys(cj[k], {"t", "x", "c"}, q);
                const int tp = cj[k].contains("t") ? as_int(cj[k]["t"], q + ".t", 0) : 0;
                Exponent x = cj[k].contains("x") ? as_exponent(cj[k]["x"], n, q + ".x")
                                                 : Exponent(static_cast<std::size_t>(n), 0);
                t.coeff.emplace_back(tp, std::move(x), as_number(require(cj[k], "c", q), q + ".c"));
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<double> as_doubles(const Json &j, const std::string &path)
{
    if (!j.is_array()) {
        schema_error(path, "expected a list of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]").value);
    }
    return out;
}

GridOptions as_grid(const Json &j, int n, const std::string &path)
{
    GridOptions g;
    if (j.is_string()) {
        if (j.get<std::string>() != "default") {
            schema_error(path, "grid must be \"default\" or an object");
        }
        return g;
    }
    only_keys(j, {"grid", "T", "x_points", "trust_region"}, path);
    if (j.contains("grid") && j["grid"] != "default") {
        schema_error(path + ".grid", "only \"default\" is recognised");
    }
    if (j.contains("T")) {
        g.standard = false;
        g.T_values = as_doubles(j["T"], path + ".T");
    }
    if (j.contains("x_points")) {
        g.standard = false;
        const Json &xp = j["x_points"];
        if (!xp.is_array()) {
            schema_error(path + ".x_points", "expected a list of points");
        }
        for (std::size_t i = 0; i < xp.size(); ++i) {
            auto pt = as_doubles(xp[i], path + ".x_points[" + std::to_string(i) + "]");
            if (static_cast<int>(pt.size()) != n) {
                schema_error(path + ".x_points[" + std::to_string(i) + "]", "wrong dimension");
            }
            g.x_points.push_back(std::move(pt));
        }
    }
    if (j.contains("trust_region")) {
        g.trust_region = as_number(j["trust_region"], path + ".trust_region").value;
    }
    return g;
}

// float: shortest decimal string; rational: [numerator, denominator]
Json number_json(double x)
{
    return format_numeral(x);
}

Json number_json(const Rational &x)
{
    return Json::array({numerator(x).str(), denominator(x).str()});
}

Json number_json(const Number &x, Arithmetic mode)
{
    return mode == Arithmetic::rational ? number_json(x.exact) : number_json(x.value);
}

template <class S>
S scalar_from(const Json &j, const std::string &path)
{
    return to_scalar<S>(as_number(j, path));
}

template <class S>
Json series_json(const XSeries<S> &x)
{
    Json terms = Json::array();
    const auto dense = x.dense();
    for (std::size_t k = 0; k < dense.size(); ++k) {
        if (dense[k] == 0) {
            continue;
        }
        const auto e = x.basis().exponent(k);
        terms.push_back(Json{{"x", std::vector<int>(e.begin(), e.end())}, {"c", number_json(dense[k])}});
    }
    return Json{{"exact", x.exact()}, {"reliable", x.reliable()}, {"terms", std::move(terms)}};
}

template <class S>
XSeries<S> series_from(const Json &j, const FramePtr<S> &frame, const std::string &path)
{
    only_keys(j, {"exact", "reliable", "terms"}, path);
    const bool exact = require(j, "exact", path).get<bool>();
    const int reliable = as_int(require(j, "reliable", path), path + ".reliable", -1);
    const auto &basis = *frame->basis;
    std::vector<S> dense(basis.size(), S(0));
    const Json &terms = require(j, "terms", path);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + ".terms[" + std::to_string(i) + "]";
        const auto e = as_exponent(require(terms[i], "x", p), frame->variables, p + ".x");
        const std::size_t k = basis.index(e);
        if (k == MonomialBasis::npos) {
            schema_error(p + ".x", "degree exceeds the truncation");
        }
        dense[k] = scalar_from<S>(require(terms[i], "c", p), p + ".c");
    }
    return XSeries<S>::from_dense(frame, std::move(dense), reliable, exact);
}

Json f_json(const std::vector<FTerm> &f, Arithmetic mode)
{
    Json out = Json::array();
    for (const auto &t : f) {
        Json coeff = Json::array();
        for (const auto &[tp, x, c] : t.coeff) {
            coeff.push_back(Json{{"t", tp}, {"x", x}, {"c", number_json(c, mode)}});
        }
        out.push_back(Json{{"coeff", std::move(coeff)}, {"tau", t.tau}, {"xi", t.xi}});
    }
    return out;
}

Json grid_json(const GridOptions &g)
{
    if (g.standard) {
        return Json{{"grid", "default"}, {"trust_region", format_numeral(g.trust_region)}};
    }
    Json T = Json::array(), X = Json::array();
    for (double t : g.T_values) {
        T.push_back(format_numeral(t));
    }
    for (const auto &p : g.x_points) {
        Json pt = Json::array();
        for (double v : p) {
            pt.push_back(format_numeral(v));
        }
        X.push_back(std::move(pt));
    }
    Json out{{"T", std::move(T)}, {"trust_region", format_numeral(g.trust_region)}};
    if (!g.x_points.empty()) {
        out["x_points"] = std::move(X);
    }
    return out;
}

Json parse_json(std::string_view text, const char *what)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        fail(ErrorKind::schema, std::string(what) + " is not valid JSON: " + e.what());
    }
}

} // namespace

Number Number::parse(std::string_view text)
{
    Number n;
    n.exact = parse_numeral<Rational>(text);
    n.value = text.find('/') == std::string_view::npos ? parse_numeral<double>(text) : rounded(n.exact);
    return n;
}

Number Number::from_double(double x)
{
    return {Rational(x), x};
}

Number Number::from_rational(const Rational &q)
{
    return {q, rounded(q)};
}

template <>
double to_scalar<double>(const Number &x)
{
    return x.value;
}

template <>
Rational to_scalar<Rational>(const Number &x)
{
    return x.exact;
}

std::string_view to_string(Arithmetic a) noexcept
{
    return a == Arithmetic::rational ? "rational" : "float";
}

Arithmetic parse_arithmetic(std::string_view text)
{
    if (text == "float") {
        return Arithmetic::floating;
    }
    if (text == "rational") {
        return Arithmetic::rational;
    }
    fail(ErrorKind::schema, "arithmetic must be \"float\" or \"rational\"");
}

ProblemSpec parse_problem(std::string_view json_text)
{
    const Json j = parse_json(json_text, "problem");
    only_keys(j, {"name", "description", "n", "mode", "m", "a", "base_point", "truncation", "f", "psi", "v0", "verify",
                  "arithmetic", "max_t_degree"},
              "$");
    ProblemSpec p;
    p.n = as_int(require(j, "n", "$"), "$.n", 0);
    const Json &mode = require(j, "mode", "$");
    if (!mode.is_string()) {
        schema_error("$.mode", "expected a string");
    }
    p.mode = parse_regime(mode.get<std::string>());
    if (p.mode == Regime::elliptic && p.n < 1) {
        schema_error("$.n", "the elliptic mode needs n >= 1");
    }
    if (p.mode == Regime::fractional) {
        p.m = as_int(require(j, "m", "$"), "$.m", 2);
    } else if (j.contains("m") && as_int(j["m"], "$.m") != 1) {
        schema_error("$.m", "m is only meaningful in the fractional mode");
    }
    p.a = as_number(require(j, "a", "$"), "$.a");
    const int nv = p.frame_variables();

    if (j.contains("base_point")) {
        const Json &b = j["base_point"];
        if (!b.is_array() || static_cast<int>(b.size()) != nv) {
            schema_error("$.base_point", "expected " + std::to_string(nv) + " coordinates");
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            p.base_point.push_back(as_number(b[i], "$.base_point[" + std::to_string(i) + "]"));
        }
    } else {
        p.base_point.assign(static_cast<std::size_t>(nv), Number{});
    }
    if (j.contains("truncation")) {
        const Json &t = j["truncation"];
        only_keys(t, {"D", "K"}, "$.truncation");
        if (t.contains("D")) {
            p.D = as_int(t["D"], "$.truncation.D", 0);
        }
        if (t.contains("K")) {
            p.K = as_int(t["K"], "$.truncation.K", 0);
        }
    }
    if (j.contains("max_t_degree")) {
        p.max_t_degree = as_int(j["max_t_degree"], "$.max_t_degree", 0);
    }
    if (p.mode == Regime::elliptic) {
        if (j.contains("f")) {
            schema_error("$.f", "the elliptic mode fixes f = a^-1 (tau^2 + |xi|^2)");
        }
    } else {
        p.f = as_f(require(j, "f", "$"), p.n, "$.f");
    }
    if (j.contains("psi")) {
        const Json &ps = j["psi"];
        if (ps.is_object()) {
            only_keys(ps, {"solve"}, "$.psi");
            if (p.mode != Regime::log && p.mode != Regime::negative_side) {
                schema_error("$.psi.solve", "the eikonal solve applies to the log and negative_side modes");
            }
            if (p.n < 1) {
                schema_error("$.psi.solve", "the eikonal solve needs n >= 1");
            }
            const Json &s = ps["solve"];
            only_keys(s, {"init", "branch", "slope", "f2"}, "$.psi.solve");
            EikonalDirective d;
            if (s.contains("init")) {
                d.init = as_poly(s["init"], p.n - 1, "$.psi.solve.init");
            }
            if (s.contains("branch")) {
                if (!s["branch"].is_string()) {
                    schema_error("$.psi.solve.branch", "expected \"+\" or \"-\"");
                }
                d.branch = s["branch"].get<std::string>();
                if (d.branch != "+" && d.branch != "-") {
                    schema_error("$.psi.solve.branch", "expected \"+\" or \"-\"");
                }
            }
            if (s.contains("slope")) {
                d.slope = as_number(s["slope"], "$.psi.solve.slope");
            }
            if (s.contains("f2")) {
                d.f2 = as_f(s["f2"], p.n, "$.psi.solve.f2");
            }
            p.psi = std::move(d);
        } else {
            p.psi = as_poly(ps, nv, "$.psi");
        }
    }
    if (j.contains("v0")) {
        if (p.mode == Regime::fractional) {
            schema_error("$.v0", "the fractional mode has no free trace");
        }
        p.v0 = as_poly(j["v0"], nv, "$.v0");
        p.has_v0 = true;
    }
    if (j.contains("verify")) {
        p.verify = as_grid(j["verify"], nv, "$.verify");
    }
    if (j.contains("arithmetic")) {
        if (!j["arithmetic"].is_string()) {
            schema_error("$.arithmetic", "expected a string");
        }
        p.arithmetic = parse_arithmetic(j["arithmetic"].get<std::string>());
    }
    return p;
}

ProblemSpec load_problem(const std::filesystem::path &path)
{
    return parse_problem(read_text(path));
}

GridOptions parse_grid_option(std::string_view spec, const GridOptions &base)
{
    if (spec == "default") {
        GridOptions g;
        g.trust_region = base.trust_region;
        return g;
    }
    GridOptions g = base;
    g.standard = false;
    g.T_values.clear();
    std::string s(spec);
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            g.T_values.push_back(parse_numeral<double>(item));
        } catch (const Error &) {
            fail(ErrorKind::schema, "--grid expects \"default\" or comma-separated T values, got '" + s + "'");
        }
    }
    if (g.T_values.empty()) {
        fail(ErrorKind::schema, "--grid has no T values");
    }
    return g;
}

template <class S>
FramePtr<S> problem_frame(const ProblemSpec &p)
{
    std::vector<S> base;
    for (const auto &b : p.base_point) {
        base.push_back(to_scalar<S>(b));
    }
    return make_frame<S>(p.frame_variables(), p.D, std::move(base));
}

template <class S>
XSeries<S> to_series(const FramePtr<S> &frame, const std::vector<PolyTerm> &terms)
{
    std::vector<std::pair<Exponent, S>> t;
    for (const auto &term : terms) {
        if (total_degree(term.x) > frame->max_degree) {
            fail(ErrorKind::input, "polynomial term of degree " + std::to_string(total_degree(term.x))
                                       + " exceeds the truncation D = " + std::to_string(frame->max_degree));
        }
        t.emplace_back(term.x, to_scalar<S>(term.c));
    }
    return XSeries<S>::from_terms(frame, t);
}

template <class S>
Nonlinearity<S> to_nonlinearity(const FramePtr<S> &frame, const std::vector<FTerm> &terms, int m, int max_t_degree)
{
    std::vector<RawMonomial<S>> raw;
    for (const auto &t : terms) {
        RawMonomial<S> r;
        for (const auto &[tp, x, c] : t.coeff) {
            r.coeff.emplace_back(tp, x, to_scalar<S>(c));
        }
        r.tau_power = t.tau;
        r.xi_powers = t.xi;
        raw.push_back(std::move(r));
    }
    return decompose_homogeneous(frame, raw, m, max_t_degree);
}

template <class S>
Nonlinearity<S> problem_nonlinearity(const ProblemSpec &p, const FramePtr<S> &frame)
{
    if (p.mode == Regime::elliptic) {
        return elliptic_nonlinearity(frame, to_scalar<S>(p.a));
    }
    return to_nonlinearity(frame, p.f, p.mode == Regime::fractional ? p.m : 1, p.max_t_degree);
}

namespace
{

GridSpec grid_from(const GridOptions &g, const std::vector<double> &base)
{
    GridSpec spec = GridSpec::standard(base);
    spec.trust_region = g.trust_region;
    if (!g.standard) {
        if (!g.T_values.empty()) {
            spec.T_values = g.T_values;
        }
        if (!g.x_points.empty()) {
            spec.x_points = g.x_points;
        }
    }
    return spec;
}

} // namespace

GridSpec problem_grid(const ProblemSpec &p)
{
    std::vector<double> base;
    for (const auto &b : p.base_point) {
        base.push_back(b.value);
    }
    return grid_from(p.verify, base);
}

template <class S>
std::string write_solution_json(const StoredSolution<S> &s)
{
    const auto &sol = s.solution;
    const auto &frame = sol.frame();
    const Arithmetic mode = arithmetic_of_v<S>;
    Json base = Json::array();
    for (const auto &b : frame->base_point) {
        base.push_back(number_json(b));
    }
    Json v = Json::array();
    for (int k = 0; k < sol.v.stored(); ++k) {
        v.push_back(series_json(sol.v[k]));
    }
    Json j{{"format", "swf-solution"},
           {"version", 1},
           {"arithmetic", to_string(mode)},
           {"regime", to_string(sol.regime)},
           {"n", frame->variables},
           {"m", sol.m},
           {"a", number_json(sol.a)},
           {"time_sign", sol.time_sign},
           {"signature", sol.signature},
           {"base_point", std::move(base)},
           {"truncation", Json{{"D", frame->max_degree}, {"K", sol.v.order()}}},
           {"psi", series_json(sol.psi)},
           {"v", Json{{"reliable_order", sol.v.reliable_order()}, {"coefficients", std::move(v)}}}};
    if (sol.v0) {
        j["v0"] = series_json(*sol.v0);
    }
    j["f"] = f_json(s.f, mode);
    j["max_t_degree"] = s.max_t_degree;
    j["verify"] = grid_json(s.grid);
    return j.dump(2) + "\n";
}

Arithmetic solution_arithmetic(std::string_view text)
{
    const Json j = parse_json(text, "solution");
    const Json &a = require(j, "arithmetic", "$");
    if (!a.is_string()) {
        schema_error("$.arithmetic", "expected a string");
    }
    return parse_arithmetic(a.get<std::string>());
}

template <class S>
StoredSolution<S> read_solution_json(std::string_view text)
{
    const Json j = parse_json(text, "solution");
    if (!j.is_object() || j.value("format", "") != "swf-solution") {
        schema_error("$.format", "not a solution document");
    }
    const Regime regime = parse_regime(require(j, "regime", "$").get<std::string>());
    const int n = as_int(require(j, "n", "$"), "$.n", 0);
    const Json &tr = require(j, "truncation", "$");
    const int D = as_int(require(tr, "D", "$.truncation"), "$.truncation.D", 0);
    const int K = as_int(require(tr, "K", "$.truncation"), "$.truncation.K", 0);
    const Json &bj = require(j, "base_point", "$");
    if (!bj.is_array() || static_cast<int>(bj.size()) != n) {
        schema_error("$.base_point", "wrong dimension");
    }
    std::vector<S> base;
    for (std::size_t i = 0; i < bj.size(); ++i) {
        base.push_back(scalar_from<S>(bj[i], "$.base_point"));
    }
    const auto frame = make_frame<S>(n, D, std::move(base));

    SingularSolution<S> sol{regime,
                            scalar_from<S>(require(j, "a", "$"), "$.a"),
                            as_int(require(j, "m", "$"), "$.m", 1),
                            as_int(require(j, "time_sign", "$"), "$.time_sign"),
                            as_int(require(j, "signature", "$"), "$.signature"),
                            series_from<S>(require(j, "psi", "$"), frame, "$.psi"),
                            SigmaSeries<S>(frame, 1, 0),
                            std::nullopt};
    const Json &vj = require(j, "v", "$");
    const Json &cj = require(vj, "coefficients", "$.v");
    std::vector<XSeries<S>> coeffs;
    for (std::size_t k = 0; k < cj.size(); ++k) {
        coeffs.push_back(series_from<S>(cj[k], frame, "$.v.coefficients[" + std::to_string(k) + "]"));
    }
    sol.v = SigmaSeries<S>(frame, sol.denominator(), K, std::move(coeffs),
                           as_int(require(vj, "reliable_order", "$.v"), "$.v.reliable_order", -1));
    if (j.contains("v0")) {
        sol.v0 = series_from<S>(j["v0"], frame, "$.v0");
    }

    StoredSolution<S> out{std::move(sol), {}, default_max_t_degree, {}};
    const int fn = regime == Regime::elliptic ? n + 1 : n;
    if (regime != Regime::elliptic) {
        out.f = as_f(require(j, "f", "$"), fn, "$.f");
    }
    if (j.contains("max_t_degree")) {
        out.max_t_degree = as_int(j["max_t_degree"], "$.max_t_degree", 0);
    }
    if (j.contains("verify")) {
        out.grid = as_grid(j["verify"], n, "$.verify");
    }
    return out;
}

template <class S>
std::string write_series_json(const XSeries<S> &x, std::string_view name)
{
    const auto &frame = x.frame();
    Json base = Json::array();
    for (const auto &b : frame->base_point) {
        base.push_back(number_json(b));
    }
    Json j{{"arithmetic", to_string(arithmetic_of_v<S>)},
           {"n", frame->variables},
           {"D", frame->max_degree},
           {"base_point", std::move(base)},
           {std::string(name), series_json(x)}};
    return j.dump(2) + "\n";
}

std::string write_residual_csv(const ResidualReport &r, int variables)
{
    std::ostringstream out;
    out << "T";
    for (int i = 1; i <= variables; ++i) {
        out << ",x" << i;
    }
    out << ",residual,u,du_dt\n";
    for (const auto &s : r.samples) {
        out << format_numeral(s.T);
        for (double x : s.x) {
            out << ',' << format_numeral(x);
        }
        out << ',' << format_numeral(s.residual) << ',' << format_numeral(s.u) << ',' << format_numeral(s.du_dt) << '\n';
    }
    return out.str();
}

std::string write_fit_json(const ResidualReport &r, bool symbolic_ok, bool numeric_ok, int through_order)
{
    auto real = [](double x) { return std::isfinite(x) ? Json(format_numeral(x)) : Json(nullptr); };
    Json orders = Json::array();
    for (const auto &[k, v] : r.symbolic_orders) {
        orders.push_back(Json{{"order", k}, {"max_abs", real(v)}});
    }
    Json j{{"symbolic_orders", std::move(orders)},
           {"through_order", through_order},
           {"fitted_slope", real(r.fitted_slope)},
           {"fitted_slope_stderr", real(r.residual_fit.stderr_slope)},
           {"fitted_slope_points", r.residual_fit.points},
           {"fitted_blowup_exponent", real(r.fitted_blowup_exponent)},
           {"fitted_blowup_exponent_stderr", real(r.blowup_fit.stderr_slope)},
           {"max_residual", real(r.max_residual)},
           {"all_at_noise_floor", r.all_at_noise_floor},
           {"samples", r.samples.size()},
           {"symbolic_pass", symbolic_ok},
           {"numeric_pass", numeric_ok},
           {"pass", symbolic_ok && numeric_ok}};
    return j.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::schema, "cannot read " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::filesystem::path &path, std::string_view text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorKind::configuration, "cannot write " + path.string());
    }
    out << text;
}

#define SWF_INSTANTIATE(S)                                                                                             \
    template FramePtr<S> problem_frame<S>(const ProblemSpec &);                                                        \
    template XSeries<S> to_series(const FramePtr<S> &, const std::vector<PolyTerm> &);                                 \
    template Nonlinearity<S> to_nonlinearity(const FramePtr<S> &, const std::vector<FTerm> &, int, int);               \
    template Nonlinearity<S> problem_nonlinearity(const ProblemSpec &, const FramePtr<S> &);                           \
    template std::string write_solution_json(const StoredSolution<S> &);                                               \
    template StoredSolution<S> read_solution_json<S>(std::string_view);                                                \
    template std::string write_series_json(const XSeries<S> &, std::string_view);

SWF_INSTANTIATE(double)
SWF_INSTANTIATE(Rational)

#undef SWF_INSTANTIATE

} // namespace swf
