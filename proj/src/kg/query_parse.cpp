#include "ckg/error.hpp"
#include "ckg/kg/ontology.hpp"
#include "ckg/kg/query.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace ckg::kg {
namespace {

enum class Tok { word, var, iri, literal, punct, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;  // 1-based offset
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
           c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

class Lexer {
public:
    explicit Lexer(std::string_view s) : src_(s) {}

    Token next() {
        skip_space();
        const std::size_t start = i_ + 1;
        if (i_ >= src_.size()) return {Tok::end, "", start};
        const char c = src_[i_];
        if (c == '?' || c == '$') {
            ++i_;
            std::string name;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                name += src_[i_++];
            if (name.empty()) throw ParseError("empty variable name", start);
            return {Tok::var, name, start};
        }
        if (c == '<') {
            auto close = src_.find('>', i_);
            if (close == std::string_view::npos) throw ParseError("unterminated IRI", start);
            std::string iri(src_.substr(i_ + 1, close - i_ - 1));
            i_ = close + 1;
            return {Tok::iri, iri, start};
        }
        if (c == '"') return literal(start);
        if (c == '{' || c == '}' || c == ';' || c == ',' || c == '*') {
            ++i_;
            return {Tok::punct, std::string(1, c), start};
        }
        if (c == '.') {
            ++i_;
            return {Tok::punct, ".", start};
        }
        if (is_name_char(c)) {
            std::string w;
            while (i_ < src_.size() && is_name_char(src_[i_])) w += src_[i_++];
            // A trailing '.' terminates the statement, it is not part of the name.
            while (!w.empty() && w.back() == '.') {
                w.pop_back();
                --i_;
            }
            return {Tok::word, w, start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    void skip_space() {
        while (i_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
                ++i_;
            } else if (src_[i_] == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') ++i_;
            } else {
                break;
            }
        }
    }

    Token literal(std::size_t start) {
        std::string v;
        ++i_;
        while (i_ < src_.size() && src_[i_] != '"') {
            char c = src_[i_++];
            if (c == '\\' && i_ < src_.size()) {
                char e = src_[i_++];
                switch (e) {
                case 'n': c = '\n'; break;
                case 't': c = '\t'; break;
                case 'r': c = '\r'; break;
                default: c = e;
                }
            }
            v += c;
        }
        if (i_ >= src_.size()) throw ParseError("unterminated literal", start);
        ++i_;
        return {Tok::literal, v, start};
    }

    std::string_view src_;
    std::size_t i_ = 0;
};

bool keyword(const Token& t, std::string_view kw) {
    if (t.kind != Tok::word || t.text.size() != kw.size()) return false;
    return std::equal(kw.begin(), kw.end(), t.text.begin(), [](char a, char b) {
        return std::toupper(static_cast<unsigned char>(a)) == std::toupper(static_cast<unsigned char>(b));
    });
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts) : lex_(text), prefixes_(opts.prefixes) {
        advance();
    }

    SelectQuery parse() {
        while (keyword(cur_, "PREFIX")) prefix_decl();
        if (!keyword(cur_, "SELECT")) fail("expected SELECT");
        advance();
        SelectQuery q;
        if (keyword(cur_, "DISTINCT")) {
            q.distinct = true;
            advance();
        }
        bool star = false;
        if (is_punct("*")) {
            star = true;
            advance();
        } else {
            while (cur_.kind == Tok::var) {
                q.projected.push_back(cur_.text);
                advance();
            }
            if (q.projected.empty()) fail("expected projected variables");
        }
        if (keyword(cur_, "WHERE")) advance();
        expect("{");
        triples_block(q.patterns);
        expect("}");
        if (cur_.kind != Tok::end) fail("unexpected trailing input");

        if (star) {
            std::set<std::string> seen;
            for (const auto& p : q.patterns)
                for (const Term* t : {&p.subject, &p.predicate, &p.object})
                    if (t->is_variable() && seen.insert(t->value).second) q.projected.push_back(t->value);
        }
        if (q.patterns.empty()) throw ParseError("empty WHERE block", block_pos_);
        validate_query(q);
        return q;
    }

private:
    void advance() { cur_ = lex_.next(); }
    bool is_punct(std::string_view p) const { return cur_.kind == Tok::punct && cur_.text == p; }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string near = cur_.kind == Tok::end ? "end of input" : "'" + cur_.text + "'";
        throw ParseError(msg + " at offset " + std::to_string(cur_.pos) + " near " + near, cur_.pos);
    }

    void expect(std::string_view p) {
        if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
        if (p == "{") block_pos_ = cur_.pos;
        advance();
    }

    void prefix_decl() {
        advance();
        if (cur_.kind != Tok::word || cur_.text.empty() || cur_.text.back() != ':')
            fail("expected prefix name ending in ':'");
        std::string name = cur_.text.substr(0, cur_.text.size() - 1);
        advance();
        if (cur_.kind != Tok::iri) fail("expected <namespace> in PREFIX");
        prefixes_[name] = cur_.text;
        advance();
    }

    Term term(bool allow_literal, bool allow_a) {
        Term t;
        switch (cur_.kind) {
        case Tok::var:
            t = Term::variable(cur_.text);
            break;
        case Tok::iri:
            if (!is_valid_iri(cur_.text)) fail("malformed IRI");
            t = Term::iri(cur_.text);
            break;
        case Tok::literal:
            if (!allow_literal) fail("literal not allowed here");
            t = Term::literal(cur_.text);
            break;
        case Tok::word:
            if (cur_.text == "a") {
                if (!allow_a) fail("'a' is only valid as a predicate");
                t = Term::iri(std::string(kRdfType));
            } else {
                t = Term::iri(expand(cur_.text));
            }
            break;
        default:
            fail("expected a term");
        }
        advance();
        return t;
    }

    std::string expand(const std::string& word) const {
        auto colon = word.find(':');
        if (colon == std::string::npos) fail("expected prefixed name or IRI");
        auto it = prefixes_.find(std::string_view(word).substr(0, colon));
        if (it == prefixes_.end()) return word;
        return it->second + word.substr(colon + 1);
    }

    void triples_block(std::vector<TriplePattern>& out) {
        while (!is_punct("}") && cur_.kind != Tok::end) {
            Term subject = term(false, false);
            predicate_object_list(subject, out);
            if (is_punct(".")) {
                advance();
            } else if (!is_punct("}")) {
                fail("expected '.' or '}'");
            }
        }
    }

    void predicate_object_list(const Term& subject, std::vector<TriplePattern>& out) {
        for (;;) {
            Term predicate = term(false, true);
            for (;;) {
                out.push_back({subject, predicate, term(true, false)});
                if (!is_punct(",")) break;
                advance();
            }
            if (!is_punct(";")) return;
            while (is_punct(";")) advance();
            if (is_punct(".") || is_punct("}")) return;
        }
    }

    Lexer lex_;
    Token cur_{Tok::end, "", 0};
    std::map<std::string, std::string, std::less<>> prefixes_;
    std::size_t block_pos_ = 0;
};

}  // namespace

SelectQuery parse_query(std::string_view text, const ParseOptions& opts) {
    return Parser(text, opts).parse();
}

}  // namespace ckg::kg
