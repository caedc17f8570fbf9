#include "chadkg/rdf/term.hpp"

#include <functional>

namespace chadkg::rdf {

namespace {

bool valid_iri_text(const std::string& v) {
    size_t colon = v.find(':');
    if (colon == std::string::npos || colon == 0) return false;
    for (size_t i = 0; i < colon; ++i) {
        char c = v[i];
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
        if (!ok) return false;
    }
    for (unsigned char c : v) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '>' || c == '"')
            return false;
    }
    return true;
}

std::string escape_literal(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

size_t hash_combine(size_t a, size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!valid_iri_text(value_))
        throw TermError("invalid IRI: '" + value_ + "'");
}

std::string Iri::local_name() const {
    size_t pos = value_.find_last_of("/#");
    if (pos == std::string::npos || pos + 1 >= value_.size()) return value_;
    return value_.substr(pos + 1);
}

BlankNode::BlankNode(std::string label) : label_(std::move(label)) {
    if (label_.empty()) throw TermError("empty blank node label");
    for (char c : label_) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) throw TermError("invalid blank node label: '" + label_ + "'");
    }
}

Literal::Literal(std::string lexical, std::optional<std::string> lang,
                 std::optional<Iri> datatype)
    : lexical_(std::move(lexical)), lang_(std::move(lang)), datatype_(std::move(datatype)) {
    if (lang_ && datatype_)
        throw TermError("literal cannot carry both a language tag and a datatype");
    if (lang_ && lang_->empty())
        throw TermError("empty language tag");
    if (datatype_) {
        if (datatype_->str() == vocab::xsd_string().str()) {
            datatype_.reset();  // plain string, canonical form
        } else if (datatype_->str() == vocab::rdf_lang_string().str()) {
            throw TermError("rdf:langString literal requires a language tag");
        }
    }
}

Iri Literal::effective_datatype() const {
    if (lang_) return vocab::rdf_lang_string();
    if (datatype_) return *datatype_;
    return vocab::xsd_string();
}

Term to_term(const Resource& r) {
    return std::visit([](const auto& v) -> Term { return v; }, r);
}

std::optional<Resource> to_resource(const Term& t) {
    if (const auto* i = std::get_if<Iri>(&t)) return Resource(*i);
    if (const auto* b = std::get_if<BlankNode>(&t)) return Resource(*b);
    return std::nullopt;
}

std::string term_token(const Term& t) {
    struct Visitor {
        std::string operator()(const Iri& i) const { return "<" + i.str() + ">"; }
        std::string operator()(const BlankNode& b) const { return "_:" + b.label(); }
        std::string operator()(const Literal& l) const {
            std::string out = "\"" + escape_literal(l.lexical()) + "\"";
            if (l.lang()) {
                out += "@" + *l.lang();
            } else if (l.datatype()) {
                out += "^^<" + l.datatype()->str() + ">";
            }
            return out;
        }
    };
    return std::visit(Visitor{}, t);
}

std::string term_token(const Resource& r) {
    return term_token(to_term(r));
}

std::string triple_line(const Triple& t) {
    return term_token(t.subject) + " <" + t.predicate.str() + "> " + term_token(t.object) + " .";
}

size_t TermHash::operator()(const Iri& i) const {
    return std::hash<std::string>{}(i.str());
}

size_t TermHash::operator()(const Term& t) const {
    struct Visitor {
        size_t operator()(const Iri& i) const {
            return hash_combine(1, std::hash<std::string>{}(i.str()));
        }
        size_t operator()(const BlankNode& b) const {
            return hash_combine(2, std::hash<std::string>{}(b.label()));
        }
        size_t operator()(const Literal& l) const {
            size_t h = hash_combine(3, std::hash<std::string>{}(l.lexical()));
            if (l.lang()) h = hash_combine(h, std::hash<std::string>{}(*l.lang()));
            if (l.datatype()) h = hash_combine(h, std::hash<std::string>{}(l.datatype()->str()));
            return h;
        }
    };
    return std::visit(Visitor{}, t);
}

size_t TermHash::operator()(const Resource& r) const {
    return (*this)(to_term(r));
}

size_t TripleHash::operator()(const Triple& t) const {
    TermHash th;
    return hash_combine(hash_combine(th(to_term(t.subject)), th(Term(t.predicate))),
                        th(t.object));
}

namespace vocab {

const Iri& rdf_type() {
    static const Iri iri(std::string(kRdfNs) + "type");
    return iri;
}
const Iri& rdf_lang_string() {
    static const Iri iri(std::string(kRdfNs) + "langString");
    return iri;
}
const Iri& rdfs_label() {
    static const Iri iri(std::string(kRdfsNs) + "label");
    return iri;
}
const Iri& xsd_string() {
    static const Iri iri(std::string(kXsdNs) + "string");
    return iri;
}
const Iri& xsd_date_time() {
    static const Iri iri(std::string(kXsdNs) + "dateTime");
    return iri;
}

}  // namespace vocab

}  // namespace chadkg::rdf
