#include "twistfold/scenario.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace twistfold {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

[[noreturn]] void fail_line(const std::string& origin, int line, const std::string& msg) {
    throw Error(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    Scenario s;
    s.origin = origin;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool header = false;
    enum { none, setup, checks } section = none;
    while (std::getline(in, raw)) {
        ++line;
        std::string ref;
        std::string body = raw;
        if (size_t h = body.find('#'); h != std::string::npos) {
            std::string comment = trim(body.substr(h + 1));
            if (comment.rfind("ref:", 0) == 0) ref = trim(comment.substr(4));
            body = body.substr(0, h);
        }
        body = trim(body);
        if (body.empty()) continue;
        if (!header) {
            if (body != "twistfold-scenario v1") fail_line(origin, line, "expected header 'twistfold-scenario v1'");
            header = true;
            continue;
        }
        if (body == "[setup]") {
            section = setup;
            continue;
        }
        if (body == "[checks]") {
            section = checks;
            continue;
        }
        if (section == setup) {
            size_t eq = body.find('=');
            if (eq == std::string::npos) fail_line(origin, line, "expected 'key = value'");
            std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
            if (key == "name")
                s.name = value;
            else
                s.setup.emplace_back(key, value);
        } else if (section == checks) {
            size_t colon = body.find(':');
            if (colon == std::string::npos) fail_line(origin, line, "expected 'name: kind arguments'");
            ScenarioCheck c;
            c.name = trim(body.substr(0, colon));
            if (c.name.empty() || c.name.find(' ') != std::string::npos)
                fail_line(origin, line, "check names are single words");
            std::string rest = trim(body.substr(colon + 1));
            size_t sp = rest.find(' ');
            c.kind = rest.substr(0, sp);
            c.args = sp == std::string::npos ? "" : trim(rest.substr(sp + 1));
            c.ref = ref;
            c.line = line;
            s.checks.push_back(std::move(c));
        } else {
            fail_line(origin, line, "content outside [setup] and [checks]");
        }
    }
    if (!header) fail_line(origin, line, "empty scenario");
    if (s.name.empty()) s.name = origin;
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open scenario " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

// ---------------------------------------------------------------- workspace

namespace {

Scalar parse_scalar(const std::string& s) {
    try {
        return Scalar(mpq_class(s));
    } catch (const std::exception&) {
        throw Error("not a rational number: " + s);
    }
}

Metric parse_metric(const std::string& v, int n) {
    auto w = words(v);
    if (w.empty()) throw Error("metric is empty");
    if (w[0] == "euclidean") return Metric::euclidean(n);
    if (w[0] == "minkowski") return Metric::minkowski(n);
    if (w[0] != "custom") throw Error("unknown metric '" + w[0] + "'");
    ScalarMatrix m;
    for (const auto& row : split(trim(v.substr(v.find("custom") + 6)), ';')) {
        std::vector<Scalar> r;
        for (const auto& x : words(row)) r.push_back(parse_scalar(x));
        m.push_back(std::move(r));
    }
    return Metric::custom(m);
}

TwistSpec parse_twist(const std::string& v, const Generators& gens) {
    auto w = words(v);
    TwistSpec spec;
    if (w.empty() || w[0] == "identity") return spec;
    auto index = [&](const std::string& name) {
        if (!gens) throw Error("twist needs generators");
        int i = gens->index(name);
        if (i < 0) throw Error("unknown generator '" + name + "' in twist");
        return i;
    };
    if (w[0] == "abelian") {
        spec.family = TwistFamily::abelian;
        for (const auto& pair : split(trim(v.substr(7)), ';')) {
            auto p = words(pair);
            if (p.size() != 2) throw Error("abelian twists take generator pairs 'A B; C D'");
            spec.pairs.emplace_back(index(p[0]), index(p[1]));
        }
        return spec;
    }
    if (w[0] == "jordanian") {
        if (w.size() != 3) throw Error("jordanian twists take 'H E'");
        spec.family = TwistFamily::jordanian;
        spec.h = index(w[1]);
        spec.e = index(w[2]);
        return spec;
    }
    throw Error("unknown twist family '" + w[0] + "'");
}

}  // namespace

Workspace build_workspace(const Scenario& s, std::uint64_t* seed) {
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        for (const auto& [k, v] : s.setup)
            if (k == key) return v;
        return std::nullopt;
    };
    auto coords = words(get("coordinates").value_or(""));
    if (coords.size() != 2) throw Error("setup needs 'coordinates = PREFIX COUNT'");
    int n = std::stoi(coords[1]);
    if (n < 1) throw Error("coordinate count must be positive");
    std::vector<std::string> params;
    for (const auto& p : words(get("parameters").value_or(""))) params.push_back(p);

    Workspace ws;
    ws.ring = standard_ring(n, params, coords[0]);
    if (auto m = get("metric")) ws.metric = parse_metric(*m, n);
    if (seed) *seed = get("seed") ? std::stoull(*get("seed")) : 1;

    std::vector<std::string> gnames;
    std::vector<VectorField> gfields;
    for (const auto& [k, v] : s.setup) {
        if (k.rfind("generator ", 0) != 0) continue;
        std::string name = trim(k.substr(10));
        Value val = evaluate(ws, v);
        auto X = std::get_if<VectorField>(&val);
        if (!X) throw Error("generator " + name + " is not a vector field");
        gnames.push_back(name);
        gfields.push_back(*X);
    }
    if (!gnames.empty()) ws.gens = make_generators(ws.ring, gnames, gfields);

    int order = get("order") ? std::stoi(*get("order")) : 0;
    if (auto t = get("twist")) {
        TwistSpec spec = parse_twist(*t, ws.gens);
        Generators g = ws.gens;
        if (!g) g = make_generators(ws.ring, {}, {});
        ws.ctx.emplace(build_twist(g, spec, order));
    }

    std::vector<Polynomial> f;
    for (const auto& [k, v] : s.setup) {
        if (k != "level_set") continue;
        Value val = evaluate(ws, v);
        auto h = std::get_if<Function>(&val);
        if (!h || !h->is_polynomial()) throw Error("level_set must be a polynomial: " + v);
        f.push_back(h->numerator());
    }
    if (!f.empty()) {
        if (!ws.metric) throw Error("level sets need a metric");
        ws.family.emplace(f, *ws.metric);
        if (has_normal_frame(*ws.family)) ws.emb.emplace(*ws.family);
    }

    // twist preconditions
    if (ws.ctx && ws.metric) {
        std::string basis = get("twist_basis").value_or("killing");
        if (basis != "killing" && basis != "equivariance") throw Error("twist_basis is killing or equivariance");
        bool killing = basis == "killing";
        ws.conn.emplace(*ws.ctx, *ws.metric);
        if (killing) ws.conn->require_killing();
        if (ws.family)
            for (int i : twist_letters(ws.ctx->twist())) {
                auto t = classify(ws.ctx->generators()->field(i), *ws.family);
                if (killing ? !t.tangent : !t.chi_c)
                    throw Error("twist legs not tangent: " + ws.ctx->generators()->name(i));
            }
        if (killing && ws.emb) ws.twisted.emplace(*ws.conn, *ws.emb);
    }

    for (const auto& [k, v] : s.setup) {
        if (k.rfind("let ", 0) != 0) continue;
        ws.names[trim(k.substr(4))] = evaluate(ws, v);
    }
    if (auto fr = get("frame")) {
        for (const auto& item : split(*fr, ',')) {
            Value val = evaluate(ws, item);
            auto X = std::get_if<VectorField>(&val);
            if (!X) throw Error("frame entry is not a vector field: " + item);
            ws.frame.push_back(*X);
        }
    }
    return ws;
}

// ------------------------------------------------------------------- checks

int Report::passed() const {
    int p = 0;
    for (const auto& c : checks) p += c.pass;
    return p;
}
int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

namespace {

class Runner {
public:
    Runner(const Workspace& ws, std::uint64_t seed) : ws_(ws), seed_(seed) {}

    CheckResult run(const ScenarioCheck& c, size_t index) {
        CheckResult r;
        r.name = c.name;
        r.kind = c.kind;
        r.ref = c.ref;
        r.nu_order = ws_.order();
        std::seed_seq sq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                         static_cast<std::uint32_t>(index)};
        rng_.seed(sq);
        try {
            Outcome o = dispatch(c);
            r.pass = o.pass;
            r.residual = o.residual;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.residual = "error";
            r.detail = e.what();
        }
        return r;
    }

private:
    struct Outcome {
        bool pass = false;
        std::string residual = "0";
        std::string detail;
    };

    static Outcome boolean(bool ok, std::string detail = "") { return {ok, ok ? "0" : "1", std::move(detail)}; }
    Outcome from_value(const Value& v) const { return {is_zero(v), value_str(v, true), ""}; }

    const StarContext& ctx() const {
        if (!ws_.ctx) throw Error("check needs a twist");
        return *ws_.ctx;
    }
    const LevelSetFamily& family() const {
        if (!ws_.family) throw Error("check needs a level set");
        return *ws_.family;
    }
    const Embedding& emb() const {
        if (!ws_.emb) throw Error("check needs a level set with a normal frame");
        return *ws_.emb;
    }
    int N() const { return ws_.order(); }

    static int count(const std::string& args, int fallback) {
        auto w = words(args);
        return w.empty() ? fallback : std::stoi(w[0]);
    }

    Scalar scalar() {
        std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
        return Scalar(mpq_class(num(rng_), den(rng_)), mpq_class(num(rng_), den(rng_)));
    }
    Polynomial poly(int deg, int terms = 4) {
        Polynomial p(ws_.ring);
        std::uniform_int_distribution<int> pick(0, ws_.ring->dim() - 1), dd(0, deg);
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            int d = dd(rng_);
            for (int k = 0; k < d; ++k) m.e[pick(rng_)] += 1;
            p += Polynomial(ws_.ring, FlatPoly(m, scalar()));
        }
        return p;
    }
    VectorField field(int deg) {
        std::vector<Polynomial> c;
        for (int i = 0; i < ws_.ring->dim(); ++i) c.push_back(poly(deg, 3));
        return VectorField::from_polys(ws_.ring, c);
    }
    PForm one_form(int deg) {
        std::vector<Function> c;
        for (int i = 0; i < ws_.ring->dim(); ++i) c.emplace_back(poly(deg, 2));
        return PForm::one_form(ws_.ring, c);
    }
    // sum h_k G_k over the generators tangent to the level sets
    VectorField tangent_field() {
        if (tangent_gens_.empty()) {
            if (!ws_.gens) throw Error("check needs generators");
            for (int g = 0; g < ws_.gens->size(); ++g)
                if (classify(ws_.gens->field(g), family()).tangent) tangent_gens_.push_back(g);
            if (tangent_gens_.empty()) throw Error("no generator is tangent to the level sets");
        }
        std::uniform_int_distribution<size_t> pick(0, tangent_gens_.size() - 1);
        VectorField out = ws_.gens->field(tangent_gens_[0]) * Scalar(0);
        for (int t = 0; t < 2; ++t) out += ws_.gens->field(tangent_gens_[pick(rng_)]).times(Function(poly(1, 2)));
        return out;
    }

    Outcome first_nonzero(const std::vector<Value>& residuals) const {
        for (const auto& v : residuals)
            if (!is_zero(v)) return from_value(v);
        return {true, "0", ""};
    }

    std::pair<Value, Value> sides(const std::string& args) const {
        size_t eq = args.find("==");
        if (eq == std::string::npos) throw Error("expected 'A == B'");
        return {evaluate(ws_, args.substr(0, eq)), evaluate(ws_, args.substr(eq + 2))};
    }

    Outcome dispatch(const ScenarioCheck& c) {
        const std::string& k = c.kind;
        if (k == "equal" || k == "equal_mod") {
            auto [a, b] = sides(c.args);
            Value r = subtract(a, b);
            if (ws_.ctx) r = truncate(r, N());
            if (k == "equal_mod") r = reduce(ws_, r);
            return from_value(r);
        }
        if (k == "tangency") return tangency(c.args);
        if (k == "fails") {
            auto parts = split(c.args, '|');
            if (parts.size() != 2) throw Error("expected 'EXPR | TEXT'");
            try {
                evaluate(ws_, parts[0]);
            } catch (const std::exception& e) {
                std::string msg = e.what();
                return boolean(msg.find(parts[1]) != std::string::npos, msg);
            }
            return boolean(false, "evaluation succeeded");
        }
        if (k == "twist_axioms") {
            auto rep = check_twist_axioms(ctx().twist());
            std::string d;
            if (!rep.counital_left || !rep.counital_right) d += "counit ";
            if (!rep.cocycle_algebraic) d += "cocycle ";
            if (!rep.inverse_ok || !rep.r_inverse_ok || !rep.beta_inverse_ok) d += "inverses ";
            return boolean(rep.ok(), trim(d));
        }
        if (k == "centrality") {
            auto rep = verify_algebra_relations(family(), &ctx(), {}, count(c.args, 4));
            std::string d = std::to_string(rep.central_monomials) + " monomials";
            if (rep.central_failures) return {false, std::to_string(rep.central_failures), d + " not central"};
            return {true, "0", d};
        }
        if (k == "relations") {
            auto rep = verify_algebra_relations(family(), ws_.ctx ? &*ws_.ctx : nullptr, {}, 0);
            for (const auto& rel : rep.relations)
                if (!rel.holds) return {false, rel.residual, rel.name};
            return {true, "0", std::to_string(rep.relations.size()) + " relations"};
        }
        if (k == "associativity") {
            std::vector<Value> out;
            for (int t = 0; t < count(c.args, 10); ++t) {
                Function a(poly(3)), b(poly(3)), cc(poly(3));
                const auto& x = ctx();
                out.push_back((star_product(x, star_product(x, a, b), cc) - star_product(x, a, star_product(x, b, cc)))
                                  .truncated(N()));
            }
            return first_nonzero(out);
        }
        if (k == "leibniz") {
            std::vector<Value> out;
            for (int t = 0; t < count(c.args, 10); ++t) {
                VectorField X = field(1);
                Function h(poly(2)), hp(poly(2));
                const auto& x = ctx();
                out.push_back((twisted_vector_action(x, X, star_product(x, h, hp)) - twisted_leibniz_rhs(x, X, h, hp))
                                  .truncated(N()));
            }
            return first_nonzero(out);
        }
        if (k == "braiding") {
            for (int t = 0; t < count(c.args, 10); ++t) {
                auto rep = braiding_check(ctx(), poly(2), poly(2));
                if (!rep.ok()) return boolean(false, rep.detail);
            }
            return boolean(true);
        }
        if (k == "projections") {
            const Embedding& m = emb();
            std::vector<Value> out;
            for (int t = 0; t < count(c.args, 10); ++t) {
                VectorField X = field(2);
                VectorField Xt = m.tangent_part(X), Xn = m.normal_part(X);
                out.push_back(Xt + Xn - X);
                out.push_back(m.tangent_part(Xt) - Xt);
                out.push_back(m.normal_part(Xn) - Xn);
                PForm w = one_form(2);
                PForm wt = m.tangent_part(w), wn = m.normal_part(w);
                out.push_back(wt + wn - w);
                out.push_back(m.tangent_part(wt) - wt);
                out.push_back(m.normal_part(wn) - wn);
                if (ws_.twisted) {
                    out.push_back(twisted_normal_part(ctx(), m, X) - Xn);
                    out.push_back(twisted_normal_part(ctx(), m, w) - wn);
                }
            }
            return first_nonzero(out);
        }
        if (k == "duality") {
            const Embedding& m = emb();
            const auto& fam = m.family();
            std::vector<Value> out;
            for (int a = 0; a < fam.codim(); ++a)
                for (int b = 0; b < fam.codim(); ++b) {
                    Function delta(ws_.ring, Scalar(a == b ? 1 : 0));
                    const auto& Na = m.frame().normals()[a];
                    out.push_back(fam.reduce(pairing(Na, fam.df(b)) - delta));
                    if (ws_.ctx) out.push_back(fam.reduce(star_pairing(ctx(), Na, fam.df(b)).truncated(N()) - delta));
                }
            return first_nonzero(out);
        }
        if (k == "levi_civita") {
            if (!ws_.conn) throw Error("check needs a twist and a metric");
            std::vector<Value> out;
            for (int t = 0; t < count(c.args, 10); ++t) {
                VectorField A = tangent_field(), B = tangent_field(), C = tangent_field();
                out.push_back(ws_.conn->torsion(A, B));
                out.push_back(ws_.conn->compatibility_residual(A, B, C));
            }
            return first_nonzero(out);
        }
        if (k == "gauss" || k == "twisted_gauss") {
            if (k == "twisted_gauss" && !ws_.twisted) throw Error("check needs a Killing twist tangent to the level sets");
            std::vector<Value> out;
            for (int t = 0; t < count(c.args, 10); ++t) {
                VectorField A = tangent_field(), B = tangent_field(), C = tangent_field(), D = tangent_field();
                out.push_back(k == "gauss" ? gauss_residual(emb(), A, B, C, D)
                                           : ws_.twisted->gauss_residual(A, B, C, D));
            }
            return first_nonzero(out);
        }
        throw Error("unknown check kind '" + k + "'");
    }

    Outcome tangency(const std::string& args) {
        size_t is = args.find(" is ");
        if (is == std::string::npos) throw Error("expected 'X is CLASS [on F]'");
        Value v = evaluate(ws_, args.substr(0, is));
        auto rest = words(args.substr(is + 4));
        if (rest.empty()) throw Error("expected a class name");
        std::string want = rest[0];
        std::optional<LevelSetFamily> other;
        if (rest.size() > 1) {
            size_t on = args.find(" on ", is);
            if (on == std::string::npos || rest[1] != "on") throw Error("expected 'on F'");
            Value fv = evaluate(ws_, args.substr(on + 4));
            auto h = std::get_if<Function>(&fv);
            if (!h || !h->is_polynomial()) throw Error("level set must be a polynomial");
            if (!ws_.metric) throw Error("level sets need a metric");
            other.emplace(std::vector<Polynomial>{h->numerator()}, *ws_.metric);
        }
        const LevelSetFamily& fam = other ? *other : family();
        if (auto X = std::get_if<VectorField>(&v)) {
            auto t = classify(*X, fam);
            std::string residual = "0";
            for (const auto& w : t.witnesses)
                if (!w.is_zero()) {
                    residual = w.str(true);
                    break;
                }
            return {t.name() == want, residual, "class " + t.name()};
        }
        auto w = std::get_if<PForm>(&v);
        if (!w) throw Error("tangency classifies vector fields and 1-forms");
        auto fc = classify(*w, fam);
        return boolean(fc.name() == want, "class " + fc.name());
    }

    const Workspace& ws_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    std::vector<int> tangent_gens_;
};

}  // namespace

Report run_scenario(const Scenario& s, std::uint64_t seed_override) {
    std::uint64_t seed = 1;
    Workspace ws = build_workspace(s, &seed);
    if (seed_override) seed = seed_override;
    Report r;
    r.scenario = s.name;
    r.twist = ws.ctx ? ws.ctx->twist().family_name() : "none";
    r.order = ws.order();
    Runner run(ws, seed);
    for (size_t i = 0; i < s.checks.size(); ++i) r.checks.push_back(run.run(s.checks[i], i));
    return r;
}

std::string emit_report(const Report& r, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::structured) {
        out << "scenario " << r.scenario << " twist=" << r.twist << " order=" << r.order << "\n";
        for (const auto& c : r.checks)
            out << "check " << c.name << " " << (c.pass ? "pass" : "fail") << " " << c.residual
                << " nu_order=" << c.nu_order << "\n";
        out << "summary passed=" << r.passed() << " failed=" << r.failed() << "\n";
        return out.str();
    }
    out << "scenario " << r.scenario << " (twist " << r.twist << ", order " << r.order << ")\n";
    for (const auto& c : r.checks) {
        out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << ": residual " << c.residual;
        if (!c.detail.empty()) out << "  [" << c.detail << "]";
        out << "\n";
    }
    out << r.checks.size() << " checks: " << r.passed() << " passed, " << r.failed() << " failed\n";
    return out.str();
}

}  // namespace twistfold
