#include "ckg/kg/ntriples.hpp"

#include "ckg/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ckg::kg {
namespace {

class LineParser {
public:
    LineParser(std::string_view line, std::size_t lineno) : s_(line), lineno_(lineno) {}

    Triple parse() {
        Triple t;
        t.subject = iri();
        t.predicate = iri();
        skip_ws();
        t.object = peek() == '"' ? literal() : iri();
        skip_ws();
        if (peek() != '.') fail("expected terminating '.'");
        ++i_;
        skip_ws();
        if (i_ < s_.size() && s_[i_] != '#') fail("trailing characters after '.'");
        return t;
    }

private:
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r')) ++i_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("line " + std::to_string(lineno_) + ": " + msg, lineno_);
    }

    Term iri() {
        skip_ws();
        if (peek() != '<') fail("expected '<'");
        auto close = s_.find('>', i_);
        if (close == std::string_view::npos) fail("unterminated IRI");
        std::string value(s_.substr(i_ + 1, close - i_ - 1));
        if (!is_valid_iri(value)) fail("malformed IRI '" + value + "'");
        i_ = close + 1;
        return Term::iri(std::move(value));
    }

    Term literal() {
        ++i_;
        std::string v;
        while (i_ < s_.size() && s_[i_] != '"') {
            char c = s_[i_++];
            if (c == '\\') {
                if (i_ >= s_.size()) fail("dangling escape");
                switch (char e = s_[i_++]) {
                case 'n': c = '\n'; break;
                case 'r': c = '\r'; break;
                case 't': c = '\t'; break;
                case '"': c = '"'; break;
                case '\\': c = '\\'; break;
                default: fail(std::string("unknown escape \\") + e);
                }
            }
            v += c;
        }
        if (i_ >= s_.size()) fail("unterminated literal");
        ++i_;
        return Term::literal(std::move(v));
    }

    std::string_view s_;
    std::size_t lineno_;
    std::size_t i_ = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::size_t load_ntriples_into(Graph& g, std::string_view text) {
    std::size_t added = 0;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') {
            if (g.assert_triple(LineParser(line, lineno).parse())) ++added;
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return added;
}

Graph load_ntriples(std::string_view text) {
    Graph g;
    load_ntriples_into(g, text);
    return g;
}

std::string serialize_ntriples(const Graph& g) {
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const auto& t : g.triples())
        lines.push_back(to_string(t.subject) + " " + to_string(t.predicate) + " " + to_string(t.object) + " .\n");
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) out += l;
    return out;
}

Graph read_ntriples_file(const std::string& path) { return load_ntriples(read_file(path)); }

void write_ntriples_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << serialize_ntriples(g);
}

}  // namespace ckg::kg
