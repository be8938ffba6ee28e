#pragma once

/// The .msx scripting language: lexer, parser, canonical renderer, and
/// interpreter.  Statements:
///
///   chart Z(n=2, k=1)
///   let v = vf{x1: 1, y1: x1^2}
///   obs f = momentum(v)          (tensorial(v) on the frame bundle)
///   ham X = solve(f)
///   bracket b = {v, w}
///   map F = phi(B=[1, 2; 3, 4], lambda=1/2)
///   verify pbexact(n=2, k=1, trials=10, seed=1)
///   emit X

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "msx/render.hpp"
#include "msx/verify.hpp"

namespace msx {

enum class StmtKind { Chart, Let, Obs, Ham, Bracket, Map, Verify, Emit };

struct Statement {
    StmtKind kind{};
    std::string name;  // bound name, emitted name, or verify suite id
    int line = 1;

    // chart
    std::string space;
    int n = 0, k = 0;

    // let
    std::vector<std::pair<std::string, Scalar>> components;

    // obs / ham / bracket
    std::string func;  // "momentum" | "tensorial" | "solve"
    std::string arg, arg2;

    // map
    std::vector<std::vector<Rational>> B;
    Rational lambda = 0;

    // verify
    SuiteParams params;
    bool seed_given = false;

    friend bool operator==(const Statement& a, const Statement& b) {
        if (a.kind != b.kind || a.name != b.name) return false;
        switch (a.kind) {
        case StmtKind::Chart:
            return a.space == b.space && a.n == b.n && a.k == b.k;
        case StmtKind::Let:
            if (a.components.size() != b.components.size()) return false;
            for (size_t i = 0; i < a.components.size(); ++i)
                if (a.components[i].first != b.components[i].first ||
                    !(a.components[i].second == b.components[i].second))
                    return false;
            return true;
        case StmtKind::Obs:
        case StmtKind::Ham:
            return a.func == b.func && a.arg == b.arg;
        case StmtKind::Bracket:
            return a.arg == b.arg && a.arg2 == b.arg2;
        case StmtKind::Map:
            return a.B == b.B && a.lambda == b.lambda;
        case StmtKind::Verify:
            return a.params.n == b.params.n && a.params.k == b.params.k &&
                   a.params.m == b.params.m && a.params.trials == b.params.trials &&
                   a.params.seed == b.params.seed;
        case StmtKind::Emit:
            return true;
        }
        return false;
    }
};

struct Script {
    std::vector<Statement> statements;

    friend bool operator==(const Script& a, const Script& b) {
        return a.statements == b.statements;
    }
};

namespace script_detail {

struct Token {
    enum Type { Ident, Number, Punct, End } type = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(tok_.line, tok_.col, msg);
    }

private:
    std::string src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    int cur() const { return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1; }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void advance() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(cur())) bump();
            if (cur() == '#') {
                while (pos_ < src_.size() && cur() != '\n') bump();
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = Token{Token::End, "", line_, col_};
            return;
        }
        if (std::isalpha(cur()) || cur() == '_') {
            std::string s;
            while (pos_ < src_.size() && (std::isalnum(cur()) || cur() == '_')) {
                s += static_cast<char>(cur());
                bump();
            }
            tok_ = Token{Token::Ident, s, tok_.line, tok_.col};
            return;
        }
        if (std::isdigit(cur())) {
            std::string s;
            while (pos_ < src_.size() && std::isdigit(cur())) {
                s += static_cast<char>(cur());
                bump();
            }
            tok_ = Token{Token::Number, s, tok_.line, tok_.col};
            return;
        }
        static const std::string puncts = "(){}[]=,:;+-*/^.";
        if (puncts.find(static_cast<char>(cur())) != std::string::npos) {
            tok_ = Token{Token::Punct, std::string(1, static_cast<char>(cur())), tok_.line, tok_.col};
            bump();
            return;
        }
        throw SyntaxError(line_, col_, "unexpected character");
    }
};

class Parser {
public:
    explicit Parser(const std::string& src) : lx_(src) {}

    Script parse() {
        Script sc;
        while (lx_.peek().type != Token::End) sc.statements.push_back(statement());
        return sc;
    }

private:
    Lexer lx_;
    ChartPtr chart_;  // current chart, for expression variables
    std::set<std::string> bound_;

    Token expect_ident() {
        if (lx_.peek().type != Token::Ident) lx_.fail("expected identifier");
        return lx_.take();
    }

    void expect_punct(const std::string& p) {
        if (lx_.peek().type != Token::Punct || lx_.peek().text != p)
            lx_.fail("expected '" + p + "'");
        lx_.take();
    }

    bool at_punct(const std::string& p) const {
        return lx_.peek().type == Token::Punct && lx_.peek().text == p;
    }

    long integer() {
        if (lx_.peek().type != Token::Number) lx_.fail("expected number");
        return std::stol(lx_.take().text);
    }

    Rational rational() {
        bool neg = false;
        if (at_punct("-")) {
            lx_.take();
            neg = true;
        }
        if (lx_.peek().type != Token::Number) lx_.fail("expected number");
        Rational r{BigInt(lx_.take().text)};
        if (at_punct("/")) {
            lx_.take();
            if (lx_.peek().type != Token::Number) lx_.fail("expected denominator");
            BigInt d(lx_.take().text);
            if (d == 0) lx_.fail("zero denominator");
            r /= Rational(d);
        }
        return neg ? -r : r;
    }

    void require_name(const std::string& n) const {
        if (!bound_.count(n)) throw UnboundName(n);
    }

    Statement statement() {
        Token kw = expect_ident();
        Statement st;
        st.line = kw.line;
        if (kw.text == "chart") return chart_stmt(st);
        if (kw.text == "let") return let_stmt(st);
        if (kw.text == "obs") return obs_stmt(st);
        if (kw.text == "ham") return ham_stmt(st);
        if (kw.text == "bracket") return bracket_stmt(st);
        if (kw.text == "map") return map_stmt(st);
        if (kw.text == "verify") return verify_stmt(st);
        if (kw.text == "emit") return emit_stmt(st);
        throw SyntaxError(kw.line, kw.col, "unknown statement keyword '" + kw.text + "'");
    }

    Statement chart_stmt(Statement st) {
        st.kind = StmtKind::Chart;
        Token sp = expect_ident();
        std::string space = sp.text;
        if (at_punct(".")) {
            lx_.take();
            space += "." + expect_ident().text;
        }
        if (space != "Z" && space != "LVY" && space != "Y" && space != "LM" &&
            space != "Jstar.gunther" && space != "Jstar.kt")
            throw SyntaxError(sp.line, sp.col, "unknown space '" + space + "'");
        st.space = space;
        expect_punct("(");
        for (int got = 0; got < 2; ++got) {
            Token key = expect_ident();
            expect_punct("=");
            long val = integer();
            if (key.text == "n") st.n = static_cast<int>(val);
            else if (key.text == "k") st.k = static_cast<int>(val);
            else throw SyntaxError(key.line, key.col, "expected n= or k=");
            if (got == 0) expect_punct(",");
        }
        expect_punct(")");
        if (st.n < 1 || st.k < 0) throw SyntaxError(st.line, 1, "invalid chart dimensions");
        SpaceTag tag = space == "Z"             ? SpaceTag::Z
                       : space == "LVY"         ? SpaceTag::LVY
                       : space == "Y"           ? SpaceTag::Y
                       : space == "Jstar.gunther" ? SpaceTag::JstarGunther
                       : space == "Jstar.kt"    ? SpaceTag::JstarKT
                                                : SpaceTag::LM;
        chart_ = make_chart({tag, st.n, st.k});
        return st;
    }

    Statement let_stmt(Statement st) {
        st.kind = StmtKind::Let;
        st.name = expect_ident().text;
        expect_punct("=");
        Token fn = expect_ident();
        if (fn.text != "vf") throw SyntaxError(fn.line, fn.col, "expected vf{...}");
        expect_punct("{");
        if (!chart_) throw SyntaxError(fn.line, fn.col, "no chart declared");
        if (!at_punct("}")) {
            for (;;) {
                Token coord = expect_ident();
                if (!chart_->has(coord.text))
                    throw SyntaxError(coord.line, coord.col,
                                      "no coordinate '" + coord.text + "' on current chart");
                expect_punct(":");
                st.components.emplace_back(coord.text, expression());
                if (at_punct(",")) {
                    lx_.take();
                    continue;
                }
                break;
            }
        }
        expect_punct("}");
        bound_.insert(st.name);
        return st;
    }

    Statement obs_stmt(Statement st) {
        st.kind = StmtKind::Obs;
        st.name = expect_ident().text;
        expect_punct("=");
        Token fn = expect_ident();
        if (fn.text != "momentum" && fn.text != "tensorial")
            throw SyntaxError(fn.line, fn.col, "expected momentum(...) or tensorial(...)");
        st.func = fn.text;
        expect_punct("(");
        st.arg = expect_ident().text;
        require_name(st.arg);
        expect_punct(")");
        bound_.insert(st.name);
        return st;
    }

    Statement ham_stmt(Statement st) {
        st.kind = StmtKind::Ham;
        st.name = expect_ident().text;
        expect_punct("=");
        Token fn = expect_ident();
        if (fn.text != "solve") throw SyntaxError(fn.line, fn.col, "expected solve(...)");
        st.func = fn.text;
        expect_punct("(");
        st.arg = expect_ident().text;
        require_name(st.arg);
        expect_punct(")");
        bound_.insert(st.name);
        return st;
    }

    Statement bracket_stmt(Statement st) {
        st.kind = StmtKind::Bracket;
        st.name = expect_ident().text;
        expect_punct("=");
        expect_punct("{");
        st.arg = expect_ident().text;
        require_name(st.arg);
        expect_punct(",");
        st.arg2 = expect_ident().text;
        require_name(st.arg2);
        expect_punct("}");
        bound_.insert(st.name);
        return st;
    }

    Statement map_stmt(Statement st) {
        st.kind = StmtKind::Map;
        st.name = expect_ident().text;
        expect_punct("=");
        Token fn = expect_ident();
        if (fn.text != "phi") throw SyntaxError(fn.line, fn.col, "expected phi(...)");
        expect_punct("(");
        Token key = expect_ident();
        if (key.text != "B") throw SyntaxError(key.line, key.col, "expected B=[...]");
        expect_punct("=");
        expect_punct("[");
        std::vector<Rational> row;
        for (;;) {
            row.push_back(rational());
            if (at_punct(",")) {
                lx_.take();
                continue;
            }
            if (at_punct(";")) {
                lx_.take();
                st.B.push_back(row);
                row.clear();
                continue;
            }
            break;
        }
        st.B.push_back(row);
        expect_punct("]");
        expect_punct(",");
        key = expect_ident();
        if (key.text != "lambda") throw SyntaxError(key.line, key.col, "expected lambda=");
        expect_punct("=");
        st.lambda = rational();
        expect_punct(")");
        for (const auto& r : st.B)
            if (r.size() != st.B.front().size())
                throw SyntaxError(st.line, 1, "ragged matrix rows");
        bound_.insert(st.name);
        return st;
    }

    Statement verify_stmt(Statement st) {
        st.kind = StmtKind::Verify;
        std::string id = expect_ident().text;
        while (at_punct("-")) {  // suite ids may be hyphenated
            lx_.take();
            id += "-" + expect_ident().text;
        }
        const auto& ids = suite_ids();
        if (std::find(ids.begin(), ids.end(), id) == ids.end())
            throw SyntaxError(st.line, 1, "unknown verify suite '" + id + "'");
        st.name = id;
        expect_punct("(");
        if (!at_punct(")")) {
            for (;;) {
                Token key = expect_ident();
                expect_punct("=");
                long val = integer();
                if (key.text == "n") st.params.n = static_cast<int>(val);
                else if (key.text == "k") st.params.k = static_cast<int>(val);
                else if (key.text == "m") st.params.m = static_cast<int>(val);
                else if (key.text == "trials") st.params.trials = static_cast<int>(val);
                else if (key.text == "seed") {
                    st.params.seed = static_cast<std::uint64_t>(val);
                    st.seed_given = true;
                }
                else throw SyntaxError(key.line, key.col, "unknown parameter '" + key.text + "'");
                if (at_punct(",")) {
                    lx_.take();
                    continue;
                }
                break;
            }
        }
        expect_punct(")");
        return st;
    }

    Statement emit_stmt(Statement st) {
        st.kind = StmtKind::Emit;
        st.name = expect_ident().text;
        require_name(st.name);
        return st;
    }

    // expr := term (('+' | '-') term)*
    // term := factor (('*' | '/') factor)*
    // factor := '-' factor | base ('^' number)?
    // base := number | ident | '(' expr ')'
    Scalar expression() {
        Scalar s = term();
        while (at_punct("+") || at_punct("-")) {
            bool plus = lx_.take().text == "+";
            Scalar t = term();
            s = plus ? s + t : s - t;
        }
        return s;
    }

    Scalar term() {
        Scalar s = factor();
        while (at_punct("*") || at_punct("/")) {
            bool mul = lx_.take().text == "*";
            Scalar t = factor();
            if (mul) {
                s = s * t;
            } else {
                if (t.is_zero()) lx_.fail("division by zero");
                s = s / t;
            }
        }
        return s;
    }

    Scalar factor() {
        if (at_punct("-")) {
            lx_.take();
            return -factor();
        }
        Scalar s = base();
        if (at_punct("^")) {
            lx_.take();
            long e = integer();
            if (e < 0) lx_.fail("negative exponent");
            Scalar r(1);
            for (long i = 0; i < e; ++i) r = r * s;
            return r;
        }
        return s;
    }

    Scalar base() {
        if (lx_.peek().type == Token::Number)
            return Scalar(Rational(BigInt(lx_.take().text)));
        if (lx_.peek().type == Token::Ident) {
            Token id = lx_.take();
            if (!chart_ || !chart_->has(id.text)) throw UnboundName(id.text);
            return Scalar::variable(id.text);
        }
        if (at_punct("(")) {
            lx_.take();
            Scalar s = expression();
            expect_punct(")");
            return s;
        }
        lx_.fail("expected expression");
    }
};

}  // namespace script_detail

inline Script parse(const std::string& source) { return script_detail::Parser(source).parse(); }

/// Canonical textual form; parse(render(s)) == s.
inline std::string render(const Script& sc) {
    std::ostringstream os;
    for (const auto& st : sc.statements) {
        switch (st.kind) {
        case StmtKind::Chart:
            os << "chart " << st.space << "(n=" << st.n << ", k=" << st.k << ")";
            break;
        case StmtKind::Let: {
            os << "let " << st.name << " = vf{";
            bool first = true;
            for (const auto& [c, s] : st.components) {
                if (!first) os << ", ";
                first = false;
                os << c << ": " << s.str();
            }
            os << "}";
            break;
        }
        case StmtKind::Obs:
        case StmtKind::Ham:
            os << (st.kind == StmtKind::Obs ? "obs " : "ham ") << st.name << " = " << st.func
               << "(" << st.arg << ")";
            break;
        case StmtKind::Bracket:
            os << "bracket " << st.name << " = {" << st.arg << ", " << st.arg2 << "}";
            break;
        case StmtKind::Map: {
            os << "map " << st.name << " = phi(B=[";
            for (size_t r = 0; r < st.B.size(); ++r) {
                if (r) os << "; ";
                for (size_t c = 0; c < st.B[r].size(); ++c) {
                    if (c) os << ", ";
                    os << to_string(st.B[r][c]);
                }
            }
            os << "], lambda=" << to_string(st.lambda) << ")";
            break;
        }
        case StmtKind::Verify:
            os << "verify " << st.name << "(n=" << st.params.n << ", k=" << st.params.k
               << ", m=" << st.params.m << ", trials=" << st.params.trials
               << ", seed=" << st.params.seed << ")";
            break;
        case StmtKind::Emit:
            os << "emit " << st.name;
            break;
        }
        os << "\n";
    }
    return os.str();
}

struct RunResult {
    Json document;
    std::string text;
    bool verify_ok = true;
};

/// Execute a script.  `default_seed` overrides the seed of verify statements
/// that did not set one explicitly (they keep SuiteParams' default otherwise).
inline RunResult run(const Script& sc, std::optional<std::uint64_t> default_seed = {}) {
    RunResult out;
    out.document["bindings"] = Json::object();
    out.document["verify"] = Json::array();
    std::ostringstream text;

    struct Value {
        enum Kind { Field, Form, HamField, MapVal } kind;
        ProjectableField vf;
        VForm form{nullptr, 0, 0};
        VField x{nullptr};
        std::vector<std::vector<Rational>> B;
        Rational lambda;
    };
    std::map<std::string, Value> env;
    ChartPtr chart;
    SpaceTag tag = SpaceTag::Z;

    auto lookup = [&](const std::string& name) -> Value& {
        auto it = env.find(name);
        if (it == env.end()) throw UnboundName(name);
        return it->second;
    };

    for (size_t si = 0; si < sc.statements.size(); ++si) {
        const Statement& st = sc.statements[si];
        try {
            switch (st.kind) {
            case StmtKind::Chart: {
                tag = st.space == "Z"               ? SpaceTag::Z
                      : st.space == "LVY"           ? SpaceTag::LVY
                      : st.space == "Y"             ? SpaceTag::Y
                      : st.space == "Jstar.gunther" ? SpaceTag::JstarGunther
                      : st.space == "Jstar.kt"      ? SpaceTag::JstarKT
                                                    : SpaceTag::LM;
                chart = make_chart({tag, st.n, st.k});
                break;
            }
            case StmtKind::Let: {
                if (!chart) throw Error("no chart declared");
                Value v;
                v.kind = Value::Field;
                v.vf.n = chart->n();
                v.vf.k = chart->k();
                for (const auto& [c, s] : st.components) {
                    if (c.size() > 1 && c[0] == 'x')
                        v.vf.vi[std::stoi(c.substr(1))] = s;
                    else if (c.size() > 1 && c[0] == 'y')
                        v.vf.vA[std::stoi(c.substr(1))] = s;
                    else
                        throw Error("vf components must be x or y coordinates, got " + c);
                }
                v.vf.validate();
                env[st.name] = std::move(v);
                break;
            }
            case StmtKind::Obs: {
                Value& a = lookup(st.arg);
                if (a.kind != Value::Field) throw Error(st.arg + " is not a vector field");
                Value v;
                v.kind = Value::Form;
                v.form = st.func == "momentum" ? momentum_observable_Z(a.vf, chart)
                                               : tensorial_from_vf_LVY(a.vf, chart);
                env[st.name] = std::move(v);
                break;
            }
            case StmtKind::Ham: {
                Value& a = lookup(st.arg);
                if (a.kind != Value::Form) throw Error(st.arg + " is not an observable");
                VForm pot = tag == SpaceTag::Z ? Theta_Z(chart) : theta_LVY(chart);
                Value v;
                v.kind = Value::HamField;
                v.x = solve_structure(ext_d(pot), a.form);
                env[st.name] = std::move(v);
                break;
            }
            case StmtKind::Bracket: {
                Value& a = lookup(st.arg);
                Value& b = lookup(st.arg2);
                if (a.kind != Value::Field || b.kind != Value::Field)
                    throw Error("bracket arguments must be vector fields");
                Value v;
                v.kind = Value::Form;
                v.form = tag == SpaceTag::Z ? bracket_Z(a.vf, b.vf, chart).bracket
                                            : bracket_T1V(a.vf, b.vf, chart).bracket;
                env[st.name] = std::move(v);
                break;
            }
            case StmtKind::Map: {
                if (!chart) throw Error("no chart declared");
                Value v;
                v.kind = Value::MapVal;
                v.B = st.B;
                v.lambda = st.lambda;
                env[st.name] = std::move(v);
                break;
            }
            case StmtKind::Verify: {
                SuiteParams params = st.params;
                if (!st.seed_given && default_seed) params.seed = *default_seed;
                SuiteReport rep = run_suite(st.name, params);
                if (!rep.pass) out.verify_ok = false;
                Json j;
                j["suite"] = rep.id;
                j["n"] = st.params.n;
                j["k"] = st.params.k;
                j["m"] = st.params.m;
                j["trials"] = st.params.trials;
                j["seed"] = std::to_string(params.seed);
                j["pass"] = rep.pass;
                j["detail"] = rep.detail;
                out.document["verify"].push_back(j);
                text << "verify " << rep.id << "(n=" << st.params.n << ", k=" << st.params.k
                     << "): " << (rep.pass ? "PASS" : "FAIL") << "\n";
                break;
            }
            case StmtKind::Emit: {
                Value& v = lookup(st.name);
                Json j;
                switch (v.kind) {
                case Value::Field: {
                    j["type"] = "vector_field";
                    Json comps = Json::object();
                    for (const auto& [i, s] : v.vf.vi) comps[xname(i)] = json_scalar(s);
                    for (const auto& [a, s] : v.vf.vA) comps[yname(a)] = json_scalar(s);
                    j["components"] = comps;
                    text << st.name << ":";
                    for (const auto& [i, s] : v.vf.vi)
                        text << " (" << s.str() << ") d/d" << xname(i);
                    for (const auto& [a, s] : v.vf.vA)
                        text << " (" << s.str() << ") d/d" << yname(a);
                    text << "\n";
                    break;
                }
                case Value::Form:
                    j["type"] = "form";
                    j["value"] = json_vform(v.form);
                    text << st.name << ": " << text_vform(v.form) << "\n";
                    break;
                case Value::HamField:
                    j["type"] = "vector_field";
                    j["value"] = json_vfield(v.x);
                    text << st.name << ": " << text_vfield(v.x) << "\n";
                    break;
                case Value::MapVal: {
                    j["type"] = "map";
                    Json rows = Json::array();
                    for (const auto& r : v.B) {
                        Json row = Json::array();
                        for (const auto& q : r) row.push_back(json_rational(q));
                        rows.push_back(row);
                    }
                    j["B"] = rows;
                    j["lambda"] = json_rational(v.lambda);
                    text << st.name << ": affine label, B " << v.B.size() << "x"
                         << (v.B.empty() ? 0 : v.B[0].size()) << "\n";
                    break;
                }
                }
                out.document["bindings"][st.name] = j;
                break;
            }
            }
        } catch (const Error& e) {
            throw Error("statement " + std::to_string(si + 1) + " (line " +
                        std::to_string(st.line) + "): " + e.what());
        }
    }
    out.document["ok"] = out.verify_ok;
    out.text = text.str();
    return out;
}

}  // namespace msx
