#include <algorithm>
#include <cctype>
#include <set>

#include "chadkg/query/query.hpp"

namespace chadkg::query {

QueryError::QueryError(size_t line, size_t column, const std::string& msg)
    : std::runtime_error("query error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

namespace {

struct Lexer {
    explicit Lexer(std::string_view text) : text(text) {}

    std::string_view text;
    size_t pos = 0;
    size_t line = 1;
    size_t col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek(size_t off = 0) const {
        return pos + off < text.size() ? text[pos + off] : '\0';
    }
    char advance() {
        char c = text[pos++];
        if (c == '\n') { ++line; col = 1; } else ++col;
        return c;
    }
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') advance();
            else if (c == '#') { while (!eof() && peek() != '\n') advance(); }
            else break;
        }
    }
    [[noreturn]] void fail(const std::string& msg) const { throw QueryError(line, col, msg); }

    bool match_keyword(const char* kw) {
        skip_ws();
        size_t n = std::string_view(kw).size();
        for (size_t i = 0; i < n; ++i)
            if (std::toupper(static_cast<unsigned char>(peek(i))) != kw[i]) return false;
        char after = peek(n);
        if (std::isalnum(static_cast<unsigned char>(after)) || after == '_') return false;
        for (size_t i = 0; i < n; ++i) advance();
        return true;
    }

    std::string read_var() {
        advance();  // '?'
        std::string name;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') name += advance();
            else break;
        }
        if (name.empty()) fail("empty variable name");
        if (std::isdigit(static_cast<unsigned char>(name[0])))
            fail("variable names start with a letter or underscore");
        return name;
    }

    std::string read_iriref() {
        advance();  // '<'
        std::string out;
        while (true) {
            if (eof()) fail("unterminated IRI reference");
            char c = advance();
            if (c == '>') break;
            out += c;
        }
        return out;
    }

    std::string read_string() {
        advance();  // '"'
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string");
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                char e = advance();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("invalid escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    std::string read_pname_or_keyword() {
        std::string out;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
                c == ':' || c == '.')
                out += advance();
            else break;
        }
        while (!out.empty() && out.back() == '.') {
            out.pop_back();
            --pos;  // give the '.' back; it separates patterns
            --col;
        }
        return out;
    }

    size_t read_number() {
        skip_ws();
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
        if (digits.empty()) fail("expected a number");
        return std::stoul(digits);
    }
};

class QueryParser {
public:
    explicit QueryParser(std::string_view text) : lex_(text) {}

    SelectQuery parse() {
        q_.prefixes = rdf::NamespaceTable::builtins();
        while (lex_.match_keyword("PREFIX")) read_prefix();
        if (!lex_.match_keyword("SELECT")) lex_.fail("expected SELECT");
        read_projection();
        if (!lex_.match_keyword("WHERE")) lex_.fail("expected WHERE");
        lex_.skip_ws();
        if (lex_.eof() || lex_.peek() != '{') lex_.fail("expected '{'");
        lex_.advance();
        read_group();
        if (lex_.match_keyword("LIMIT")) q_.limit = lex_.read_number();
        if (lex_.match_keyword("OFFSET")) q_.offset = lex_.read_number();
        // allow LIMIT after OFFSET too
        if (!q_.limit && lex_.match_keyword("LIMIT")) q_.limit = lex_.read_number();
        lex_.skip_ws();
        if (!lex_.eof()) lex_.fail("unexpected trailing input");
        finish();
        return std::move(q_);
    }

private:
    void read_prefix() {
        lex_.skip_ws();
        std::string prefix;
        while (!lex_.eof() && lex_.peek() != ':') {
            char c = lex_.peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                prefix += lex_.advance();
            else
                lex_.fail("invalid prefix name");
        }
        if (lex_.eof()) lex_.fail("expected ':' in PREFIX");
        lex_.advance();
        lex_.skip_ws();
        if (lex_.eof() || lex_.peek() != '<') lex_.fail("expected namespace IRI");
        q_.prefixes.bind(prefix, lex_.read_iriref());
    }

    void read_projection() {
        lex_.skip_ws();
        if (lex_.peek() == '*') {
            lex_.advance();
            q_.star = true;
            return;
        }
        while (true) {
            lex_.skip_ws();
            if (lex_.peek() != '?') break;
            q_.projection.push_back(lex_.read_var());
        }
        if (q_.projection.empty()) lex_.fail("SELECT needs '*' or at least one variable");
    }

    PatternTerm read_pattern_term() {
        lex_.skip_ws();
        if (lex_.eof()) lex_.fail("expected a pattern term");
        char c = lex_.peek();
        if (c == '?') return Variable{lex_.read_var()};
        if (c == '<') return rdf::Term(rdf::Iri(lex_.read_iriref()));
        if (c == '"') {
            std::string lexical = lex_.read_string();
            if (lex_.peek() == '@') {
                lex_.advance();
                std::string tag;
                while (!lex_.eof() &&
                       (std::isalnum(static_cast<unsigned char>(lex_.peek())) || lex_.peek() == '-'))
                    tag += lex_.advance();
                return rdf::Term(rdf::Literal(lexical, tag));
            }
            if (lex_.peek() == '^' && lex_.peek(1) == '^') {
                lex_.advance();
                lex_.advance();
                rdf::Iri dt = lex_.peek() == '<' ? rdf::Iri(lex_.read_iriref())
                                                 : expand(lex_.read_pname_or_keyword());
                return rdf::Term(rdf::Literal(lexical, std::nullopt, dt));
            }
            return rdf::Term(rdf::Literal(lexical));
        }
        if (c == '_' && lex_.peek(1) == ':') {
            lex_.advance();
            lex_.advance();
            std::string label;
            while (!lex_.eof() &&
                   (std::isalnum(static_cast<unsigned char>(lex_.peek())) || lex_.peek() == '_'))
                label += lex_.advance();
            return rdf::Term(rdf::BlankNode(label));
        }
        size_t line = lex_.line, col = lex_.col;
        std::string token = lex_.read_pname_or_keyword();
        if (token.empty()) lex_.fail("expected a pattern term");
        if (token == "a") return rdf::Term(rdf::vocab::rdf_type());
        try {
            return rdf::Term(expand(token));
        } catch (const rdf::UnknownPrefixError& e) {
            throw QueryError(line, col, e.what());
        }
    }

    rdf::Iri expand(const std::string& token) { return q_.prefixes.expand(token); }

    void read_group() {
        while (true) {
            lex_.skip_ws();
            if (lex_.eof()) lex_.fail("unterminated WHERE group");
            if (lex_.peek() == '}') {
                lex_.advance();
                return;
            }
            if (lex_.match_keyword("FILTER")) {
                read_filter();
                continue;
            }
            TriplePattern p{read_pattern_term(), read_pattern_term(), read_pattern_term()};
            q_.patterns.push_back(std::move(p));
            lex_.skip_ws();
            if (!lex_.eof() && lex_.peek() == '.') lex_.advance();
        }
    }

    void read_filter() {
        lex_.skip_ws();
        bool outer_paren = false;
        if (lex_.peek() == '(') {
            // FILTER(?v = x) or FILTER(regex(...))
            lex_.advance();
            outer_paren = true;
            lex_.skip_ws();
        }
        if (lex_.match_keyword("REGEX")) {
            lex_.skip_ws();
            if (lex_.peek() != '(') lex_.fail("expected '(' after regex");
            lex_.advance();
            lex_.skip_ws();
            if (lex_.peek() != '?') lex_.fail("regex filters apply to a variable");
            std::string var = lex_.read_var();
            lex_.skip_ws();
            if (lex_.peek() != ',') lex_.fail("expected ',' in regex filter");
            lex_.advance();
            lex_.skip_ws();
            if (lex_.peek() != '"') lex_.fail("expected pattern string");
            size_t line = lex_.line, col = lex_.col;
            std::string pattern = lex_.read_string();
            lex_.skip_ws();
            if (lex_.peek() != ')') lex_.fail("expected ')' closing regex");
            lex_.advance();
            try {
                check_regex_subset(pattern);
            } catch (const QueryError&) {
                throw QueryError(line, col, "regex pattern outside the supported subset");
            }
            q_.filters.push_back({var, Filter::Op::regex, std::nullopt, pattern});
        } else {
            lex_.skip_ws();
            if (lex_.peek() != '?') lex_.fail("expected variable in filter");
            std::string var = lex_.read_var();
            lex_.skip_ws();
            if (lex_.peek() != '=') lex_.fail("only '=' and regex filters are supported");
            lex_.advance();
            PatternTerm operand = read_pattern_term();
            if (std::holds_alternative<Variable>(operand))
                lex_.fail("filter operand must be a concrete term");
            q_.filters.push_back(
                {var, Filter::Op::equals, std::get<rdf::Term>(operand), ""});
        }
        if (outer_paren) {
            lex_.skip_ws();
            if (lex_.peek() != ')') lex_.fail("expected ')' closing FILTER");
            lex_.advance();
        }
    }

    void finish() {
        if (q_.patterns.empty())
            throw QueryError(lex_.line, lex_.col, "query needs at least one triple pattern");
        std::vector<std::string> in_order;
        std::set<std::string> seen;
        auto note = [&](const PatternTerm& t) {
            if (const auto* v = std::get_if<Variable>(&t))
                if (seen.insert(v->name).second) in_order.push_back(v->name);
        };
        for (const auto& p : q_.patterns) {
            note(p.s);
            note(p.p);
            note(p.o);
        }
        if (q_.star) {
            q_.projection = in_order;
        } else {
            for (const std::string& v : q_.projection)
                if (!seen.contains(v))
                    throw QueryError(lex_.line, lex_.col,
                                     "projected variable ?" + v + " does not occur in any pattern");
        }
        for (const auto& f : q_.filters)
            if (!seen.contains(f.var))
                throw QueryError(lex_.line, lex_.col,
                                 "filtered variable ?" + f.var + " does not occur in any pattern");
    }

    Lexer lex_;
    SelectQuery q_;
};

}  // namespace

SelectQuery parse_query(std::string_view text) {
    return QueryParser(text).parse();
}

void check_regex_subset(const std::string& pattern) {
    // literals, escapes, '.', classes, anchors, quantifiers (incl. {m,n}),
    // groups and alternation; nothing engine-specific.
    size_t depth = 0;
    for (size_t i = 0; i < pattern.size(); ++i) {
        char c = pattern[i];
        if (c == '\\') {
            if (i + 1 >= pattern.size()) throw QueryError(0, i, "trailing backslash");
            char e = pattern[++i];
            static const std::string allowed = "\\.[]()*+?{}|^$dDwWsSnrt-/";
            if (allowed.find(e) == std::string::npos)
                throw QueryError(0, i, "unsupported escape");
            continue;
        }
        if (c == '[') {
            size_t close = pattern.find(']', i + 1 + (pattern[i + 1] == '^' ? 1 : 0) + 1);
            if (close == std::string::npos) throw QueryError(0, i, "unterminated class");
            i = close;
            continue;
        }
        if (c == '(') {
            ++depth;
            if (i + 1 < pattern.size() && pattern[i + 1] == '?')
                throw QueryError(0, i, "non-capturing and lookaround groups unsupported");
            continue;
        }
        if (c == ')') {
            if (depth == 0) throw QueryError(0, i, "unbalanced ')'");
            --depth;
            continue;
        }
        if (c == '{') {
            size_t close = pattern.find('}', i);
            if (close == std::string::npos) throw QueryError(0, i, "unterminated quantifier");
            for (size_t k = i + 1; k < close; ++k)
                if (!std::isdigit(static_cast<unsigned char>(pattern[k])) && pattern[k] != ',')
                    throw QueryError(0, k, "malformed {m,n} quantifier");
            i = close;
            continue;
        }
    }
    if (depth != 0) throw QueryError(0, pattern.size(), "unbalanced '('");
}

}  // namespace chadkg::query
