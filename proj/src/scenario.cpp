#include "lndkit/scenario.hpp"

#include "lndkit/constructions.hpp"
#include "lndkit/lnd.hpp"
#include "lndkit/modification.hpp"
#include "lndkit/parse.hpp"
#include "lndkit/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace lndkit {

const SchemeDecl* Scenario::scheme(std::string_view name) const
{
    for (const auto& d : schemes)
        if (d.name == name)
            return &d;
    return nullptr;
}

const DerivationDecl* Scenario::derivation(std::string_view name) const
{
    for (const auto& d : derivations)
        if (d.name == name)
            return &d;
    return nullptr;
}

const MorphismDecl* Scenario::morphism(std::string_view name) const
{
    for (const auto& d : morphisms)
        if (d.name == name)
            return &d;
    return nullptr;
}

const CoverDecl* Scenario::cover(std::string_view name) const
{
    for (const auto& d : covers)
        if (d.name == name)
            return &d;
    return nullptr;
}

namespace {

using Kind = ScenarioToken::Kind;

Scenario::Line tokenize_line(std::string_view text, int line)
{
    Scenario::Line out;
    std::size_t i = 0;
    auto col = [&](std::size_t k) { return static_cast<int>(k) + 1; };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        }
        else if (c == '#') {
            out.comment = std::string(text.substr(i + 1));
            while (!out.comment.empty() && (out.comment.back() == ' ' || out.comment.back() == '\r'))
                out.comment.pop_back();
            out.has_comment = true;
            break;
        }
        else if (c == '"') {
            std::size_t j = text.find('"', i + 1);
            if (j == std::string_view::npos)
                throw ScenarioError("unterminated string", line, col(i));
            std::string body(text.substr(i + 1, j - i - 1));
            auto b = body.find_first_not_of(' ');
            auto e = body.find_last_not_of(' ');
            body = b == std::string::npos ? std::string() : body.substr(b, e - b + 1);
            out.tokens.push_back({Kind::String, body, line, col(i)});
            i = j + 1;
        }
        else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.tokens.push_back({Kind::Word, std::string(text.substr(i, j - i)), line, col(i)});
            i = j;
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                throw ScenarioError("malformed number", line, col(i));
            out.tokens.push_back({Kind::Number, std::string(text.substr(i, j - i)), line, col(i)});
            i = j;
        }
        else if (c == ',' || c == ':') {
            out.tokens.push_back({Kind::Punct, std::string(1, c), line, col(i)});
            ++i;
        }
        else {
            throw ScenarioError(std::string("unexpected character '") + c + "'", line, col(i));
        }
    }
    return out;
}

class Cursor {
public:
    Cursor(const std::vector<ScenarioToken>& toks, int line, int end_col) : toks_(toks), line_(line), end_col_(end_col) {}

    bool at_end() const { return pos_ >= toks_.size(); }
    const ScenarioToken* peek() const { return at_end() ? nullptr : &toks_[pos_]; }
    bool peek_word(std::string_view w) const
    {
        return !at_end() && toks_[pos_].kind == Kind::Word && toks_[pos_].text == w;
    }
    bool peek_punct(char c) const
    {
        return !at_end() && toks_[pos_].kind == Kind::Punct && toks_[pos_].text[0] == c;
    }

    [[noreturn]] void error(const std::string& msg) const
    {
        if (at_end())
            throw ScenarioError(msg + " (found end of line)", line_, end_col_);
        throw ScenarioError(msg + " (found '" + toks_[pos_].text + "')", toks_[pos_].line, toks_[pos_].column);
    }

    const ScenarioToken& take(Kind k, const char* what)
    {
        if (at_end() || toks_[pos_].kind != k)
            error(std::string("expected ") + what);
        return toks_[pos_++];
    }
    const ScenarioToken& word() { return take(Kind::Word, "a name"); }
    std::string string() { return take(Kind::String, "a quoted expression").text; }
    const ScenarioToken& string_token() { return take(Kind::String, "a quoted expression"); }
    unsigned number()
    {
        const auto& t = take(Kind::Number, "a number");
        if (t.text.size() > 9)
            throw ScenarioError("number too large", t.line, t.column);
        return static_cast<unsigned>(std::stoul(t.text));
    }
    void keyword(std::string_view w)
    {
        if (!peek_word(w))
            error("expected '" + std::string(w) + "'");
        ++pos_;
    }
    bool accept_word(std::string_view w)
    {
        if (!peek_word(w))
            return false;
        ++pos_;
        return true;
    }
    bool accept_punct(char c)
    {
        if (!peek_punct(c))
            return false;
        ++pos_;
        return true;
    }
    std::vector<std::string> word_list()
    {
        std::vector<std::string> out{word().text};
        while (accept_punct(','))
            out.push_back(word().text);
        return out;
    }
    std::vector<std::string> string_list()
    {
        std::vector<std::string> out{string()};
        while (accept_punct(','))
            out.push_back(string());
        return out;
    }
    // `tokens` receives the name and expression token of every entry.
    std::vector<std::pair<std::string, std::string>> image_list(
        std::vector<std::pair<const ScenarioToken*, const ScenarioToken*>>& tokens)
    {
        std::vector<std::pair<std::string, std::string>> out;
        do {
            const auto& n = word();
            if (!accept_punct(':'))
                error("expected ':'");
            const auto& e = string_token();
            out.emplace_back(n.text, e.text);
            tokens.emplace_back(&n, &e);
        } while (accept_punct(','));
        return out;
    }
    void finish()
    {
        if (!at_end())
            error("unexpected token");
    }
    const ScenarioToken& previous() const { return toks_[pos_ - 1]; }

private:
    const std::vector<ScenarioToken>& toks_;
    std::size_t pos_ = 0;
    int line_;
    int end_col_;
};

const std::set<std::string> kOptionKeys{"cap", "bound", "grading", "codim", "degree", "pole", "expect", "h", "params"};
const std::set<std::string> kMarkers{"contains", "radical"};

struct CheckShape {
    std::vector<char> targets;  // 's' scheme, 'd' derivation, 'm' morphism, 'c' cover
    int strings;                // -1: any number, otherwise exact
};

const std::map<std::string, CheckShape> kCheckShapes{
    {"smooth", {{'s'}, 0}},          {"lnd", {{'d'}, 0}},         {"action", {{'d'}, 0}},
    {"kernel", {{'d'}, -1}},         {"fixed_point_free", {{'d'}, 0}}, {"fixed_locus", {{'d'}, -1}},
    {"equivariant", {{'m', 'd', 'd'}, 0}}, {"isomorphism", {{'m', 'm'}, 0}}, {"morphism", {{'m'}, 0}},
    {"zero", {{'s'}, 1}},            {"invariant", {{'d'}, 1}},   {"cocycle", {{'c'}, 0}},
    {"coboundary", {{'c'}, 0}},      {"construction", {{}, 0}},
};

// Construction name -> number of integer arguments.
const std::map<std::string, int> kConstructions{
    {"xm", 1},         {"invariant_ring", 1}, {"xmnr", 3},     {"y", 3},      {"phi", 1},
    {"fiber_ring", 1}, {"slice_charts", 3},   {"y_charts", 3}, {"cylinder", 3}, {"russell_cubic", 0},
    {"punctured_plane", 0}, {"modification", 3},
};

class Parser {
public:
    Scenario run(std::string_view src)
    {
        int line = 0;
        std::size_t start = 0;
        while (start <= src.size()) {
            std::size_t end = src.find('\n', start);
            if (end == std::string_view::npos)
                end = src.size();
            ++line;
            auto text = src.substr(start, end - start);
            auto l = tokenize_line(text, line);
            if (!l.tokens.empty()) {
                Cursor c(l.tokens, line, static_cast<int>(text.size()) + 1);
                statement(c);
            }
            if (!(end == src.size() && l.tokens.empty() && !l.has_comment && text.empty()))
                s_.lines.push_back(std::move(l));
            start = end + 1;
        }
        return std::move(s_);
    }

private:
    Scenario s_;
    std::map<std::string, char> names_;

    void declare(const ScenarioToken& t, char kind)
    {
        if (names_.count(t.text))
            throw ScenarioError("duplicate name '" + t.text + "'", t.line, t.column);
        names_.emplace(t.text, kind);
    }

    void reference(const ScenarioToken& t, char kind) const
    {
        auto it = names_.find(t.text);
        static const std::map<char, const char*> what{
            {'s', "scheme"}, {'d', "derivation"}, {'m', "morphism"}, {'c', "cover"}};
        if (it == names_.end())
            throw ScenarioError("undeclared " + std::string(what.at(kind)) + " '" + t.text + "'", t.line, t.column);
        if (it->second != kind)
            throw ScenarioError("'" + t.text + "' is not a " + what.at(kind), t.line, t.column);
    }

    SchemeDecl& scheme_ref(const ScenarioToken& t)
    {
        reference(t, 's');
        for (auto& d : s_.schemes)
            if (d.name == t.text)
                return d;
        throw ScenarioError("undeclared scheme '" + t.text + "'", t.line, t.column);
    }

    static VarTablePtr table_of(const SchemeDecl& d)
    {
        std::optional<RootsOfUnity> roots;
        if (d.roots)
            roots = RootsOfUnity{d.roots->first, d.roots->second};
        return scheme_vars(d.vars, d.params, d.inverted, roots);
    }

    // Parses a quoted expression over the table, reporting errors at the token.
    static void expression(const ScenarioToken& t, const VarTablePtr& V)
    {
        try {
            parse_poly(t.text, V);
        }
        catch (const Error& e) {
            throw ScenarioError(e.what(), t.line, t.column);
        }
    }

    static void check_identifiers(const std::vector<std::string>& names, const ScenarioToken& at)
    {
        std::set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                throw ScenarioError("variable '" + n + "' listed twice", at.line, at.column);
    }

    void statement(Cursor& c)
    {
        const auto& kw = c.word();
        if (kw.text == "scheme")
            scheme(c);
        else if (kw.text == "invert") {
            auto& d = scheme_ref(c.word());
            for (const auto& v : c.word_list())
                add_inverted(d, v, c.previous());
        }
        else if (kw.text == "roots_of_unity") {
            auto& d = scheme_ref(c.word());
            set_roots(d, c);
        }
        else if (kw.text == "derivation") {
            DerivationDecl d;
            const auto& n = c.word();
            d.name = n.text;
            c.keyword("on");
            const auto& sn = c.word();
            reference(sn, 's');
            d.scheme = sn.text;
            std::vector<std::pair<const ScenarioToken*, const ScenarioToken*>> toks;
            if (c.accept_word("images"))
                d.images = c.image_list(toks);
            c.finish();
            const auto& sd = scheme_ref(sn);
            auto V = table_of(sd);
            std::set<std::string> seen;
            for (const auto& [name, expr] : toks) {
                if (std::find(sd.vars.begin(), sd.vars.end(), name->text) == sd.vars.end())
                    throw ScenarioError("'" + name->text + "' is not a variable of " + sd.name, name->line, name->column);
                if (!seen.insert(name->text).second)
                    throw ScenarioError("image of '" + name->text + "' given twice", name->line, name->column);
                expression(*expr, V);
            }
            declare(n, 'd');
            s_.derivations.push_back(std::move(d));
        }
        else if (kw.text == "morphism") {
            MorphismDecl d;
            const auto& n = c.word();
            d.name = n.text;
            c.keyword("from");
            const auto& a = c.word();
            reference(a, 's');
            c.keyword("to");
            const auto& b = c.word();
            reference(b, 's');
            d.source = a.text;
            d.target = b.text;
            std::vector<std::pair<const ScenarioToken*, const ScenarioToken*>> toks;
            if (c.accept_word("images"))
                d.images = c.image_list(toks);
            c.finish();
            const auto& src = scheme_ref(a);
            const auto& tgt = scheme_ref(b);
            auto V = table_of(src);
            std::set<std::string> seen;
            for (const auto& [name, expr] : toks) {
                bool known = std::find(tgt.vars.begin(), tgt.vars.end(), name->text) != tgt.vars.end() ||
                             std::find(tgt.params.begin(), tgt.params.end(), name->text) != tgt.params.end() ||
                             (tgt.roots && tgt.roots->first == name->text);
                if (!known)
                    throw ScenarioError("'" + name->text + "' is not a variable of " + tgt.name, name->line, name->column);
                if (!seen.insert(name->text).second)
                    throw ScenarioError("image of '" + name->text + "' given twice", name->line, name->column);
                expression(*expr, V);
            }
            declare(n, 'm');
            s_.morphisms.push_back(std::move(d));
        }
        else if (kw.text == "cover") {
            CoverDecl d;
            const auto& n = c.word();
            d.name = n.text;
            c.keyword("on");
            const auto& sn = c.word();
            reference(sn, 's');
            d.scheme = sn.text;
            c.keyword("charts");
            auto V = table_of(scheme_ref(sn));
            do {
                const auto& e = c.string_token();
                expression(e, V);
                d.charts.push_back(e.text);
            } while (c.accept_punct(','));
            while (c.accept_word("transition")) {
                TransitionDecl t;
                t.i = c.number();
                t.j = c.number();
                if (t.i >= d.charts.size() || t.j >= d.charts.size() || t.i == t.j)
                    throw ScenarioError("transition chart indices out of range", c.previous().line, c.previous().column);
                const auto& num = c.string_token();
                expression(num, V);
                t.numerator = num.text;
                c.keyword("overlap");
                const auto& ov = c.string_token();
                expression(ov, V);
                t.overlap = ov.text;
                if (c.accept_word("pole"))
                    t.pole = c.number();
                d.transitions.push_back(std::move(t));
            }
            c.finish();
            declare(n, 'c');
            s_.covers.push_back(std::move(d));
        }
        else if (kw.text == "check")
            check(c);
        else
            throw ScenarioError("unknown statement '" + kw.text + "'", kw.line, kw.column);
    }

    void add_inverted(SchemeDecl& d, const std::string& v, const ScenarioToken& at)
    {
        if (std::find(d.vars.begin(), d.vars.end(), v) == d.vars.end())
            throw ScenarioError("cannot invert '" + v + "': not a variable of " + d.name, at.line, at.column);
        if (std::find(d.inverted.begin(), d.inverted.end(), v) == d.inverted.end())
            d.inverted.push_back(v);
    }

    void set_roots(SchemeDecl& d, Cursor& c)
    {
        const auto& sym = c.word();
        unsigned order = c.number();
        if (order == 0)
            throw ScenarioError("root of unity order must be positive", c.previous().line, c.previous().column);
        d.roots = std::make_pair(sym.text, order);
    }

    void scheme(Cursor& c)
    {
        SchemeDecl d;
        const auto& n = c.word();
        d.name = n.text;
        c.keyword("vars");
        d.vars = c.word_list();
        check_identifiers(d.vars, n);
        std::vector<const ScenarioToken*> rel_tokens;
        while (!c.at_end()) {
            if (c.accept_word("params")) {
                d.params = c.word_list();
            }
            else if (c.accept_word("invert")) {
                for (const auto& v : c.word_list())
                    add_inverted(d, v, c.previous());
            }
            else if (c.accept_word("roots")) {
                set_roots(d, c);
            }
            else if (c.accept_word("rel")) {
                rel_tokens.push_back(&c.string_token());
                d.relations.push_back(rel_tokens.back()->text);
            }
            else
                c.error("expected 'params', 'invert', 'roots' or 'rel'");
        }
        auto all = d.vars;
        all.insert(all.end(), d.params.begin(), d.params.end());
        check_identifiers(all, n);
        VarTablePtr V;
        try {
            V = table_of(d);
        }
        catch (const Error& e) {
            throw ScenarioError(e.what(), n.line, n.column);
        }
        for (const auto* t : rel_tokens)
            expression(*t, V);
        declare(n, 's');
        s_.schemes.push_back(std::move(d));
    }

    void check(Cursor& c)
    {
        const auto& kind = c.word();
        auto shape = kCheckShapes.find(kind.text);
        if (shape == kCheckShapes.end())
            throw ScenarioError("unknown check '" + kind.text + "'", kind.line, kind.column);
        CheckDecl d;
        d.kind = kind.text;
        d.line = kind.line;
        std::vector<const ScenarioToken*> string_tokens;
        if (d.kind == "construction") {
            const auto& cn = c.word();
            auto it = kConstructions.find(cn.text);
            if (it == kConstructions.end())
                throw ScenarioError("unknown construction '" + cn.text + "'", cn.line, cn.column);
            d.targets.push_back(cn.text);
            for (int k = 0; k < it->second; ++k)
                d.targets.push_back(std::to_string(c.number()));
        }
        else {
            for (char t : shape->second.targets) {
                const auto& tok = c.word();
                reference(tok, t);
                d.targets.push_back(tok.text);
            }
        }
        while (!c.at_end()) {
            const auto* t = c.peek();
            if (t->kind == Kind::Word && kOptionKeys.count(t->text)) {
                std::string key = c.word().text;
                if (d.options.count(key))
                    c.error("option '" + key + "' given twice");
                if (key == "h")
                    d.options[key] = c.string();
                else if (key == "params") {
                    std::string joined;
                    for (const auto& p : c.word_list())
                        joined += (joined.empty() ? "" : ",") + p;
                    d.options[key] = joined;
                }
                else if (key == "grading" || key == "expect")
                    d.options[key] = c.word().text;
                else
                    d.options[key] = std::to_string(c.number());
            }
            else if ((t->kind == Kind::Word && kMarkers.count(t->text)) || t->kind == Kind::String) {
                if (t->kind == Kind::Word)
                    c.word();
                if (!d.strings.empty())
                    c.error("quoted arguments given twice");
                do {
                    string_tokens.push_back(&c.string_token());
                    d.strings.push_back(string_tokens.back()->text);
                } while (c.accept_punct(','));
            }
            else
                c.error("unexpected token in check");
        }
        int want = shape->second.strings;
        if (want >= 0 && static_cast<int>(d.strings.size()) != want)
            throw ScenarioError("check '" + d.kind + "' takes " + std::to_string(want) + " quoted argument(s)", kind.line,
                                kind.column);
        if (d.kind == "fixed_locus" && d.strings.empty())
            throw ScenarioError("check 'fixed_locus' needs the expected ideal generators", kind.line, kind.column);
        if (auto it = d.options.find("grading"); it != d.options.end() && it->second != "box" && it->second != "total")
            throw ScenarioError("grading must be 'box' or 'total'", kind.line, kind.column);
        if (auto it = d.options.find("expect"); it != d.options.end() && it->second != "solution" && it->second != "none")
            throw ScenarioError("expect must be 'solution' or 'none'", kind.line, kind.column);
        if (!string_tokens.empty()) {
            const auto& owner = shape->second.targets.at(0) == 's' ? d.targets[0] : s_.derivation(d.targets[0])->scheme;
            auto V = table_of(*s_.scheme(owner));
            for (const auto* t : string_tokens)
                expression(*t, V);
        }
        s_.checks.push_back(std::move(d));
    }
};

// Objects materialized on demand inside one check.
class Env {
public:
    explicit Env(const Scenario& s) : s_(s) {}

    SchemePtr scheme(const std::string& name)
    {
        if (auto it = schemes_.find(name); it != schemes_.end())
            return it->second;
        const auto& d = *s_.scheme(name);
        std::optional<RootsOfUnity> roots;
        if (d.roots)
            roots = RootsOfUnity{d.roots->first, d.roots->second};
        auto V = scheme_vars(d.vars, d.params, d.inverted, roots);
        std::vector<Poly> rels;
        for (const auto& r : d.relations)
            rels.push_back(parse_poly(r, V));
        auto X = make_scheme(d.name, V, rels, d.inverted, roots);
        schemes_.emplace(name, X);
        return X;
    }

    const Derivation& derivation(const std::string& name)
    {
        if (auto it = derivations_.find(name); it != derivations_.end())
            return it->second;
        const auto& d = *s_.derivation(name);
        std::map<std::string, std::string> images(d.images.begin(), d.images.end());
        return derivations_.emplace(name, make_derivation(d.name, scheme(d.scheme), images, true)).first->second;
    }

    const Morphism& morphism(const std::string& name)
    {
        if (auto it = morphisms_.find(name); it != morphisms_.end())
            return it->second;
        const auto& d = *s_.morphism(name);
        std::map<std::string, std::string> images(d.images.begin(), d.images.end());
        return morphisms_.emplace(name, make_morphism(d.name, scheme(d.source), scheme(d.target), images))
            .first->second;
    }

    CoverDatum cover(const std::string& name)
    {
        const auto& d = *s_.cover(name);
        CoverDatum c;
        c.name = d.name;
        c.ring = scheme(d.scheme);
        for (const auto& ch : d.charts) {
            c.chart_names.push_back(ch);
            c.localizers.push_back(c.ring->parse(ch));
        }
        for (const auto& t : d.transitions)
            c.transitions.push_back(Transition{t.i, t.j, c.ring->parse(t.numerator), c.ring->parse(t.overlap), t.pole});
        return c;
    }

private:
    const Scenario& s_;
    std::map<std::string, SchemePtr> schemes_;
    std::map<std::string, Derivation> derivations_;
    std::map<std::string, Morphism> morphisms_;
};

unsigned option_or(const CheckDecl& c, const std::string& key, unsigned fallback)
{
    auto it = c.options.find(key);
    return it == c.options.end() ? fallback : static_cast<unsigned>(std::stoul(it->second));
}

FamilyParams family_from(const CheckDecl& c)
{
    FamilyParams p;
    p.m = static_cast<unsigned>(std::stoul(c.targets[1]));
    p.n = static_cast<unsigned>(std::stoul(c.targets[2]));
    p.r = static_cast<unsigned>(std::stoul(c.targets[3]));
    if (auto it = c.options.find("h"); it != c.options.end())
        p.h = it->second;
    if (auto it = c.options.find("params"); it != c.options.end()) {
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ','))
            p.params.push_back(item);
    }
    return p;
}

Report run_construction(const CheckDecl& c, const RunOptions& opts)
{
    const auto& n = c.targets[0];
    auto arg = [&](std::size_t k) { return static_cast<unsigned>(std::stoul(c.targets[k])); };
    if (n == "xm")
        return check_Xm(arg(1));
    if (n == "invariant_ring")
        return invariant_ring_Xm(arg(1), option_or(c, "bound", opts.degree_bound.value_or(3)));
    if (n == "xmnr")
        return check_Xmnr(arg(1), arg(2), arg(3));
    if (n == "y")
        return check_Y(family_from(c));
    if (n == "phi")
        return phi_trivialization(arg(1));
    if (n == "fiber_ring")
        return fiber_ring_decomposition(arg(1));
    if (n == "slice_charts")
        return slice_charts(arg(1), arg(2), arg(3));
    if (n == "y_charts")
        return y_charts(family_from(c));
    if (n == "cylinder")
        return cylinder_splitting(arg(1), arg(2), arg(3));
    if (n == "russell_cubic")
        return deformed_russell_cubic();
    if (n == "punctured_plane")
        return punctured_plane_cocycles(option_or(c, "degree", kDefaultCoboundaryDegree),
                                        option_or(c, "pole", kDefaultCoboundaryPole));
    if (n == "modification")
        return verify_modification_is_Y(family_from(c));
    throw InvalidArgument("unknown construction '" + n + "'");
}

std::string label_of(const CheckDecl& c)
{
    std::string s = c.kind;
    for (const auto& t : c.targets)
        s += " " + t;
    return s;
}

Report run_one(const Scenario& s, const CheckDecl& c, const RunOptions& opts)
{
    return run_check(label_of(c), [&](Report& out) {
        Env env(s);
        const unsigned cap = option_or(c, "cap", kDefaultNilpotencyCap);
        Report r;
        if (c.kind == "smooth") {
            std::optional<std::size_t> codim;
            if (c.options.count("codim"))
                codim = option_or(c, "codim", 0);
            r = smoothness_check(*env.scheme(c.targets[0]), codim);
        }
        else if (c.kind == "lnd")
            r = is_locally_nilpotent(env.derivation(c.targets[0]), cap);
        else if (c.kind == "action") {
            const auto& d = env.derivation(c.targets[0]);
            r = run_check("action(" + d.name + ")", [&](Report& a) {
                a.step(is_locally_nilpotent(d, cap));
                if (a.passed())
                    a.step(check_action_axioms(exp_action(d, cap)));
            });
        }
        else if (c.kind == "kernel") {
            const auto& d = env.derivation(c.targets[0]);
            unsigned bound = option_or(c, "bound", opts.degree_bound.value_or(kDefaultDegreeBound));
            Grading g = c.options.count("grading") && c.options.at("grading") == "total" ? Grading::TotalDegree
                                                                                          : Grading::Box;
            r = run_check("kernel(" + d.name + ",bound=" + std::to_string(bound) + ")", [&](Report& k) {
                auto K = kernel_search(d, bound, g);
                k.witness("dimension", std::to_string(K.size()));
                std::string basis;
                for (const auto& p : K)
                    basis += (basis.empty() ? "" : "; ") + p.to_string();
                k.witness("basis", basis);
                for (const auto& text : c.strings) {
                    Poly p = d.scheme->parse(text);
                    k.require(span_contains(K, p, d.scheme->ideal()), "contains " + text);
                }
            });
        }
        else if (c.kind == "fixed_point_free") {
            const auto& d = env.derivation(c.targets[0]);
            r = run_check("fixed_point_free(" + d.name + ")", [&](Report& f) {
                auto cert = comaximal(d.scheme->ideal(), Ideal(d.scheme->vars(), d.images));
                if (cert)
                    f.witness("combination_of_images", cert->second);
                else
                    f.fail("the fixed-point ideal is proper", "fixed_ideal", fixed_locus(d).to_string());
            });
        }
        else if (c.kind == "fixed_locus") {
            const auto& d = env.derivation(c.targets[0]);
            std::vector<Poly> gens;
            for (const auto& text : c.strings)
                gens.push_back(d.scheme->parse(text));
            r = compare_radical(fixed_locus(d), Ideal(d.scheme->vars(), gens), "fixed_locus(" + d.name + ")");
        }
        else if (c.kind == "equivariant")
            r = check_equivariant(env.morphism(c.targets[0]), env.derivation(c.targets[1]),
                                  env.derivation(c.targets[2]));
        else if (c.kind == "isomorphism")
            r = is_isomorphism(env.morphism(c.targets[0]), env.morphism(c.targets[1]));
        else if (c.kind == "morphism")
            r = env.morphism(c.targets[0]).certificate;
        else if (c.kind == "zero") {
            auto X = env.scheme(c.targets[0]);
            r = run_check("zero(" + X->name() + "," + c.strings[0] + ")", [&](Report& z) {
                Poly nf = X->normal_form(X->parse(c.strings[0]));
                if (!nf.is_zero())
                    z.fail("nonzero modulo the ideal", "normal_form", nf);
            });
        }
        else if (c.kind == "invariant") {
            const auto& d = env.derivation(c.targets[0]);
            r = run_check("invariant(" + d.name + "," + c.strings[0] + ")", [&](Report& z) {
                Poly img = d.scheme->normal_form(d.apply(d.scheme->parse(c.strings[0])));
                if (!img.is_zero())
                    z.fail("the derivation does not kill the element", "image", img);
            });
        }
        else if (c.kind == "cocycle")
            r = cocycle_check(env.cover(c.targets[0]));
        else if (c.kind == "coboundary") {
            bool expect = !c.options.count("expect") || c.options.at("expect") == "solution";
            r = coboundary_solve(env.cover(c.targets[0]), option_or(c, "degree", kDefaultCoboundaryDegree),
                                 option_or(c, "pole", kDefaultCoboundaryPole), expect);
        }
        else
            r = run_construction(c, opts);
        out = std::move(r);
    });
}

}  // namespace

Scenario parse_scenario(std::string_view source)
{
    return Parser().run(source);
}

std::vector<Report> run_scenario(const Scenario& s, const RunOptions& options)
{
    std::vector<std::function<Report()>> tasks;
    for (const auto& c : s.checks)
        tasks.push_back([&s, &c, &options] { return run_one(s, c, options); });
    return run_tasks(tasks, options);
}

std::string format_scenario(const Scenario& s)
{
    std::ostringstream os;
    bool previous_blank = true;
    for (const auto& l : s.lines) {
        if (l.tokens.empty() && !l.has_comment) {
            if (!previous_blank)
                os << "\n";
            previous_blank = true;
            continue;
        }
        previous_blank = false;
        std::string text;
        const ScenarioToken* prev = nullptr;
        for (const auto& t : l.tokens) {
            bool glue = prev && ((t.kind == Kind::Punct) || (prev->kind == Kind::Punct && prev->text == ":"));
            if (prev && !glue)
                text += ' ';
            text += t.kind == Kind::String ? "\"" + t.text + "\"" : t.text;
            prev = &t;
        }
        if (l.has_comment)
            text += (text.empty() ? "#" : "  #") + l.comment;
        os << text << "\n";
    }
    std::string out = os.str();
    while (out.size() >= 2 && out[out.size() - 1] == '\n' && out[out.size() - 2] == '\n')
        out.pop_back();
    return out;
}

}  // namespace lndkit
