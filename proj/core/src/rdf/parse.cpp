#include <cstdio>
#include <fstream>
#include <sstream>

#include "chadkg/rdf/io.hpp"

namespace chadkg::rdf {

ParseError::ParseError(size_t line, size_t column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

namespace {

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Character-level cursor shared by both parsers. Tracks line/column for
// error reporting.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, col_, msg);
    }

    size_t line() const { return line_; }
    size_t col() const { return col_; }

    // Reads <...>, cursor at '<'.
    std::string read_iriref() {
        advance();
        std::string out;
        while (true) {
            if (eof()) fail("unterminated IRI reference");
            char c = advance();
            if (c == '>') break;
            if (c == '\\') {
                if (eof()) fail("unterminated escape in IRI");
                char e = advance();
                if (e == 'u' || e == 'U') {
                    append_utf8(out, read_hex(e == 'u' ? 4 : 8));
                } else {
                    fail("invalid escape in IRI reference");
                }
            } else if (c == ' ' || c == '\t' || c == '\n') {
                fail("whitespace inside IRI reference");
            } else {
                out += c;
            }
        }
        return out;
    }

    // Reads "...", cursor at the opening quote.
    std::string read_string() {
        advance();
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string literal");
            char c = advance();
            if (c == '"') break;
            if (c == '\n') fail("newline inside string literal");
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                char e = advance();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    case 'u': append_utf8(out, read_hex(4)); break;
                    case 'U': append_utf8(out, read_hex(8)); break;
                    default: fail(std::string("invalid escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    std::string read_langtag() {
        advance();  // '@'
        std::string out;
        while (!eof()) {
            char c = peek();
            bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9' && out.find('-') != std::string::npos) || c == '-';
            if (!ok) break;
            out += advance();
        }
        if (out.empty()) fail("empty language tag");
        return out;
    }

    std::string read_blank_label() {
        advance();  // '_'
        if (eof() || peek() != ':') fail("expected ':' after '_'");
        advance();
        std::string out;
        while (!eof()) {
            char c = peek();
            bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_';
            if (!ok) break;
            out += advance();
        }
        if (out.empty()) fail("empty blank node label");
        return out;
    }

private:
    uint32_t read_hex(int digits) {
        uint32_t v = 0;
        for (int i = 0; i < digits; ++i) {
            if (eof()) fail("truncated \\u escape");
            char c = advance();
            v <<= 4;
            if (c >= '0' && c <= '9') v |= c - '0';
            else if (c >= 'a' && c <= 'f') v |= c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v |= c - 'A' + 10;
            else fail("invalid hex digit in escape");
        }
        return v;
    }

    std::string_view text_;
    size_t pos_ = 0;
    size_t line_ = 1;
    size_t col_ = 1;
};

Term make_object_literal(Cursor& cur, std::string lexical) {
    if (!cur.eof() && cur.peek() == '@') {
        return Literal(std::move(lexical), cur.read_langtag());
    }
    if (!cur.eof() && cur.peek() == '^' && cur.peek_at(1) == '^') {
        cur.advance();
        cur.advance();
        if (cur.eof() || cur.peek() != '<') cur.fail("expected IRI after ^^");
        return Literal(std::move(lexical), std::nullopt, Iri(cur.read_iriref()));
    }
    return Literal(std::move(lexical));
}

// ------------------------------------------------------------- N-Triples

Graph parse_ntriples(std::string_view text) {
    Graph g;
    Cursor cur(text);
    while (true) {
        cur.skip_ws_and_comments();
        if (cur.eof()) break;

        size_t stmt_line = cur.line();
        Resource subject = [&]() -> Resource {
            char c = cur.peek();
            if (c == '<') return Resource(Iri(cur.read_iriref()));
            if (c == '_') return Resource(BlankNode(cur.read_blank_label()));
            cur.fail("expected IRI or blank node subject");
        }();

        cur.skip_ws_and_comments();
        if (cur.eof() || cur.peek() != '<') cur.fail("expected predicate IRI");
        Iri predicate(cur.read_iriref());

        cur.skip_ws_and_comments();
        if (cur.eof()) cur.fail("expected object");
        Term object = [&]() -> Term {
            char c = cur.peek();
            if (c == '<') return Iri(cur.read_iriref());
            if (c == '_') return BlankNode(cur.read_blank_label());
            if (c == '"') return make_object_literal(cur, cur.read_string());
            cur.fail("expected IRI, blank node, or literal object");
        }();

        cur.skip_ws_and_comments();
        if (cur.eof() || cur.peek() != '.')
            throw ParseError(stmt_line, cur.col(), "statement missing final '.'");
        cur.advance();

        g.insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
    }
    return g;
}

// ---------------------------------------------------------------- Turtle

class TurtleReader {
public:
    explicit TurtleReader(std::string_view text) : cur_(text) {}

    Graph read() {
        Graph g;
        while (true) {
            cur_.skip_ws_and_comments();
            if (cur_.eof()) break;
            if (cur_.peek() == '@') {
                read_prefix_directive(true);
            } else if (starts_with_keyword("PREFIX")) {
                read_prefix_directive(false);
            } else {
                read_triples(g);
            }
        }
        return g;
    }

private:
    bool starts_with_keyword(std::string_view kw) {
        for (size_t i = 0; i < kw.size(); ++i) {
            char c = cur_.peek_at(i);
            if (std::toupper(static_cast<unsigned char>(c)) != kw[i]) return false;
        }
        return true;
    }

    void read_prefix_directive(bool at_form) {
        // '@prefix p: <iri> .'  or  'PREFIX p: <iri>'
        for (size_t i = 0, n = at_form ? 7 : 6; i < n; ++i) cur_.advance();
        cur_.skip_ws_and_comments();
        std::string prefix = read_prefix_name();
        cur_.skip_ws_and_comments();
        if (cur_.eof() || cur_.peek() != '<') cur_.fail("expected namespace IRI");
        std::string ns = cur_.read_iriref();
        namespaces_.bind(prefix, ns);
        if (at_form) {
            cur_.skip_ws_and_comments();
            if (cur_.eof() || cur_.peek() != '.') cur_.fail("expected '.' after @prefix");
            cur_.advance();
        }
    }

    std::string read_prefix_name() {
        std::string out;
        while (!cur_.eof() && cur_.peek() != ':') {
            char c = cur_.peek();
            bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_' || c == '-';
            if (!ok) cur_.fail("invalid prefix name");
            out += cur_.advance();
        }
        if (cur_.eof()) cur_.fail("expected ':' in prefix declaration");
        cur_.advance();  // ':'
        return out;
    }

    Iri read_pname() {
        size_t line = cur_.line(), col = cur_.col();
        std::string token;
        while (!cur_.eof()) {
            char c = cur_.peek();
            bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' || c == ':';
            if (!ok) break;
            token += cur_.advance();
        }
        // A trailing '.' is the statement terminator, not part of the name.
        while (!token.empty() && token.back() == '.') {
            token.pop_back();
            unread_dot_ = true;
        }
        size_t colon = token.find(':');
        if (colon == std::string::npos)
            throw ParseError(line, col, "expected prefixed name");
        std::string prefix = token.substr(0, colon);
        if (!namespaces_.find(prefix))
            throw ParseError(line, col, "unknown prefix: " + prefix);
        return namespaces_.expand(token);
    }

    Resource read_subject() {
        char c = cur_.peek();
        if (c == '<') return Resource(Iri(cur_.read_iriref()));
        if (c == '_') return Resource(BlankNode(cur_.read_blank_label()));
        return Resource(read_pname());
    }

    Iri read_verb() {
        char c = cur_.peek();
        if (c == '<') return Iri(cur_.read_iriref());
        if (c == 'a') {
            char next = cur_.peek_at(1);
            if (next == ' ' || next == '\t' || next == '\n' || next == '\r') {
                cur_.advance();
                return vocab::rdf_type();
            }
        }
        return read_pname();
    }

    Term read_object() {
        char c = cur_.peek();
        if (c == '<') return Iri(cur_.read_iriref());
        if (c == '_') return BlankNode(cur_.read_blank_label());
        if (c == '"') {
            std::string lexical = cur_.read_string();
            if (!cur_.eof() && cur_.peek() == '@')
                return Literal(std::move(lexical), cur_.read_langtag());
            if (!cur_.eof() && cur_.peek() == '^' && cur_.peek_at(1) == '^') {
                cur_.advance();
                cur_.advance();
                Iri dt = cur_.peek() == '<' ? Iri(cur_.read_iriref()) : read_pname();
                return Literal(std::move(lexical), std::nullopt, dt);
            }
            return Literal(std::move(lexical));
        }
        return read_pname();
    }

    void read_triples(Graph& g) {
        Resource subject = read_subject();
        while (true) {
            cur_.skip_ws_and_comments();
            if (cur_.eof()) cur_.fail("unexpected end of input in triples block");
            Iri verb = read_verb();
            while (true) {
                cur_.skip_ws_and_comments();
                if (cur_.eof()) cur_.fail("expected object");
                Term object = read_object();
                g.insert(Triple{subject, verb, std::move(object)});
                cur_.skip_ws_and_comments();
                if (!unread_dot_ && !cur_.eof() && cur_.peek() == ',') {
                    cur_.advance();
                    continue;
                }
                break;
            }
            if (unread_dot_) {
                unread_dot_ = false;
                return;
            }
            cur_.skip_ws_and_comments();
            if (cur_.eof()) cur_.fail("statement missing final '.'");
            char c = cur_.peek();
            if (c == ';') {
                cur_.advance();
                cur_.skip_ws_and_comments();
                // tolerate trailing ';' before '.'
                if (!cur_.eof() && cur_.peek() == '.') {
                    cur_.advance();
                    return;
                }
                continue;
            }
            if (c == '.') {
                cur_.advance();
                return;
            }
            cur_.fail("expected '.', ';' or ',' after object");
        }
    }

    Cursor cur_;
    NamespaceTable namespaces_;
    bool unread_dot_ = false;
};

}  // namespace

Graph parse(std::string_view text, Format f) {
    switch (f) {
        case Format::ntriples: return parse_ntriples(text);
        case Format::turtle: return TurtleReader(text).read();
        default: throw std::runtime_error("parsing is only supported for ntriples and turtle");
    }
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto fmt = format_from_path(path);
    if (!fmt || (*fmt != Format::ntriples && *fmt != Format::turtle))
        throw std::runtime_error("cannot infer a readable format (.nt/.ttl) from path: " + path);
    return parse(buf.str(), *fmt);
}

}  // namespace chadkg::rdf
