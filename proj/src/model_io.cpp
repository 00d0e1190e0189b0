#include "elastoball/model_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace elastoball {

namespace {

struct Token {
    enum class Kind { ident, number, string, punct, end };
    Kind kind = Kind::end;
    std::string text;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    void expect_punct(char c) {
        if (tok_.kind != Token::Kind::punct || tok_.text[0] != c)
            fail(std::string("expected '") + c + "'");
        advance();
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("model definition: " + what + " near position " +
                                    std::to_string(pos_));
    }

  private:
    void advance() {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= s_.size()) {
            tok_ = {Token::Kind::end, ""};
            return;
        }
        const char c = s_[pos_];
        if (c == '=' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',') {
            tok_ = {Token::Kind::punct, std::string(1, c)};
            ++pos_;
            return;
        }
        if (c == '"') {
            const std::size_t close = s_.find('"', pos_ + 1);
            if (close == std::string::npos) fail("unterminated string");
            tok_ = {Token::Kind::string, s_.substr(pos_ + 1, close - pos_ - 1)};
            pos_ = close + 1;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
                ++end;
            tok_ = {Token::Kind::ident, s_.substr(pos_, end - pos_)};
            pos_ = end;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            std::size_t end = pos_;
            while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) ||
                                       s_[end] == '-' || s_[end] == '+' || s_[end] == '.' ||
                                       s_[end] == 'e' || s_[end] == 'E' || s_[end] == '/'))
                ++end;
            tok_ = {Token::Kind::number, s_.substr(pos_, end - pos_)};
            pos_ = end;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    Token tok_;
};

double take_number(Lexer& lex, const char* key) {
    const Token t = lex.take();
    if (t.kind != Token::Kind::number)
        lex.fail(std::string("expected a number for '") + key + "'");
    double v = 0.0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
        lex.fail(std::string("bad number '") + t.text + "'");
    return v;
}

Rational take_rational(Lexer& lex, const char* key) {
    const Token t = lex.take();
    if (t.kind != Token::Kind::string && t.kind != Token::Kind::number)
        lex.fail(std::string("expected a rational string for '") + key + "'");
    try {
        return Rational::parse(t.text);
    } catch (const std::invalid_argument& e) {
        lex.fail(std::string("bad rational '") + t.text + "' (exponents are written as \"p/q\")");
    }
}

PowerLawTerm parse_term(Lexer& lex) {
    lex.expect_punct('{');
    PowerLawTerm term;
    bool have_alpha = false, have_beta = false;
    while (true) {
        const Token key = lex.take();
        if (key.kind != Token::Kind::ident) lex.fail("expected a key inside a term");
        lex.expect_punct('=');
        if (key.text == "alpha") {
            term.alpha = take_number(lex, "alpha");
            have_alpha = true;
        } else if (key.text == "beta") {
            term.beta = take_rational(lex, "beta");
            have_beta = true;
        } else {
            lex.fail("unknown term key '" + key.text + "'");
        }
        if (lex.peek().kind == Token::Kind::punct && lex.peek().text == ",") {
            lex.take();
            if (lex.peek().kind == Token::Kind::punct && lex.peek().text == "}") break;
            continue;
        }
        break;
    }
    lex.expect_punct('}');
    if (!have_alpha || !have_beta) lex.fail("term requires both alpha and beta");
    return term;
}

PowerLawGroup parse_group(Lexer& lex) {
    lex.expect_punct('{');
    PowerLawGroup group;
    bool have_gamma = false, have_terms = false;
    while (true) {
        const Token key = lex.take();
        if (key.kind != Token::Kind::ident) lex.fail("expected a key inside a group");
        lex.expect_punct('=');
        if (key.text == "gamma") {
            group.gamma = take_rational(lex, "gamma");
            have_gamma = true;
        } else if (key.text == "terms") {
            lex.expect_punct('[');
            while (!(lex.peek().kind == Token::Kind::punct && lex.peek().text == "]")) {
                group.terms.push_back(parse_term(lex));
                if (lex.peek().kind == Token::Kind::punct && lex.peek().text == ",") lex.take();
            }
            lex.expect_punct(']');
            have_terms = true;
        } else {
            lex.fail("unknown group key '" + key.text + "'");
        }
        if (lex.peek().kind == Token::Kind::punct && lex.peek().text == ",") {
            lex.take();
            if (lex.peek().kind == Token::Kind::punct && lex.peek().text == "}") break;
            continue;
        }
        break;
    }
    lex.expect_punct('}');
    if (!have_gamma || !have_terms) lex.fail("group requires gamma and terms");
    return group;
}

}  // namespace

ModelDefinition parse_model_definition(const std::string& text) {
    Lexer lex(text);
    ModelDefinition def;
    bool have_groups = false, have_w0 = false;
    double w0 = 0.0;
    std::vector<PowerLawGroup> groups;
    while (lex.peek().kind != Token::Kind::end) {
        const Token key = lex.take();
        if (key.kind != Token::Kind::ident)
            lex.fail("expected a key at top level, got '" + key.text + "'");
        lex.expect_punct('=');
        if (key.text == "lambda") {
            def.lame.lambda = take_number(lex, "lambda");
        } else if (key.text == "mu") {
            def.lame.mu = take_number(lex, "mu");
        } else if (key.text == "kappa_ref") {
            def.lame.kappa_ref = take_number(lex, "kappa_ref");
        } else if (key.text == "w0") {
            w0 = take_number(lex, "w0");
            have_w0 = true;
        } else if (key.text == "builtin") {
            const Token name = lex.take();
            if (name.kind != Token::Kind::ident && name.kind != Token::Kind::string)
                lex.fail("expected a builtin name");
            def.builtin = builtin_from_string(name.text);
        } else if (key.text == "groups") {
            lex.expect_punct('[');
            while (!(lex.peek().kind == Token::Kind::punct && lex.peek().text == "]")) {
                groups.push_back(parse_group(lex));
                if (lex.peek().kind == Token::Kind::punct && lex.peek().text == ",") lex.take();
            }
            lex.expect_punct(']');
            have_groups = true;
        } else {
            lex.fail("unknown key '" + key.text + "'");
        }
    }
    if (def.builtin && have_groups)
        throw std::invalid_argument("model definition: give either builtin or groups, not both");
    if (!def.builtin && !have_groups)
        throw std::invalid_argument("model definition: requires builtin = <name> or groups = [...]");
    if (have_groups) {
        PowerLawSpec spec;
        spec.groups = std::move(groups);
        spec.w0 = have_w0 ? w0 : 0.0;
        spec.lame = def.lame;
        validate_power_law_structure(spec);
        def.spec = std::move(spec);
    }
    return def;
}

ModelDefinition load_model_definition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model definition file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model_definition(ss.str());
}

ConstitutiveModel ModelDefinition::instantiate(bool require_conditions) const {
    if (builtin) return make_builtin(*builtin, lame);
    return ConstitutiveModel::from_power_law(*spec, "user", require_conditions);
}

}  // namespace elastoball
