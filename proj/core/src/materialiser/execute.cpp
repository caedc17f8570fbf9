#include <algorithm>

#include "chadkg/materialiser/materialiser.hpp"

namespace chadkg::mat {

namespace {

using mapping::ColumnRef;
using mapping::Constant;
using mapping::FunctionCall;
using mapping::ObjectKind;
using mapping::SimpleSpec;
using mapping::Template;
using mapping::ValueSpec;
using transforms::Produced;

// Percent-encode characters that cannot appear inside an IRI when a cell
// value is substituted into an IRI template.
std::string iri_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        bool unsafe = c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
                      c == '}' || c == '|' || c == '\\' || c == '^' || c == '`';
        if (unsafe) {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

// Result of evaluating a value spec for one row.
struct Outcome {
    std::vector<Produced> values;
    bool none = false;    // nothing produced
    bool silent = false;  // expected flow (conditional mismatch): skip quietly
    std::vector<std::string> item_warnings;  // per-item problems from functions
    std::string detail;                      // message when none and not silent
};

class RowEvaluator {
public:
    RowEvaluator(const Table& table, const transforms::UdfRegistry& registry,
                 transforms::UdfContext& ctx)
        : table_(table), registry_(registry), ctx_(ctx) {}

    void set_row(size_t index) { row_ = index; }

    std::optional<std::string> cell(const std::string& column) const {
        auto idx = table_.column_index(column);
        if (!idx) return std::nullopt;
        return table_.rows[row_][*idx];
    }

    std::optional<std::string> eval_simple(const SimpleSpec& spec, bool iri_context) const {
        if (const auto* c = std::get_if<ColumnRef>(&spec)) {
            auto v = cell(c->name);
            if (v && iri_context) return iri_encode(*v);
            return v;
        }
        if (const auto* t = std::get_if<Template>(&spec)) return eval_template(*t, iri_context);
        return std::get<Constant>(spec).text;
    }

    std::optional<std::string> eval_template(const Template& t, bool iri_context) const {
        std::string out;
        const std::string& text = t.text;
        for (size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == '$') {
                out += '$';
                ++i;
                continue;
            }
            if (text[i] == '$' && i + 1 < text.size() && text[i + 1] == '(') {
                size_t close = text.find(')', i + 2);
                std::string col = text.substr(i + 2, close - i - 2);
                auto v = cell(col);
                if (!v) return std::nullopt;
                out += iri_context ? iri_encode(*v) : *v;
                i = close;
                continue;
            }
            out += text[i];
        }
        return out;
    }

    Outcome eval(const ValueSpec& spec, bool iri_context) const {
        if (const auto* fc = std::get_if<FunctionCall>(&spec)) return eval_function(*fc);
        Outcome outcome;
        SimpleSpec simple = std::visit(
            [](const auto& v) -> SimpleSpec {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, FunctionCall>)
                    throw std::logic_error("unreachable");
                else
                    return SimpleSpec(v);
            },
            spec);
        auto v = eval_simple(simple, iri_context);
        if (!v) {
            outcome.none = true;
            outcome.detail = "value is null";
            return outcome;
        }
        outcome.values.emplace_back(std::move(*v));
        return outcome;
    }

    Outcome eval_function(const FunctionCall& fc) const {
        const transforms::Udf* udf = registry_.find(fc.name);
        if (!udf) throw mapping::MappingError("unknown function: " + fc.name);
        transforms::ParamMap params;
        for (const auto& [name, spec] : fc.params) {
            auto v = eval_simple(spec, false);
            if (!v) {
                Outcome outcome;
                outcome.none = true;
                outcome.detail = "parameter '" + name + "' of " + fc.name + " is null";
                return outcome;
            }
            params.emplace(name, std::move(*v));
        }
        transforms::UdfResult r = udf->call(params, ctx_);
        Outcome outcome;
        outcome.values = std::move(r.values);
        outcome.item_warnings = std::move(r.warnings);
        if (outcome.values.empty()) {
            outcome.none = true;
            outcome.silent = r.expected_empty;
            if (outcome.item_warnings.empty() && !outcome.silent)
                outcome.detail = fc.name + " produced no value";
        }
        return outcome;
    }

private:
    const Table& table_;
    const transforms::UdfRegistry& registry_;
    transforms::UdfContext& ctx_;
    size_t row_ = 0;
};

}  // namespace

ExecuteResult execute_mapping(const mapping::MappingDocument& doc, const Table& table,
                              const transforms::UdfRegistry& registry,
                              transforms::UdfContext& ctx) {
    ExecuteResult result;
    result.report.dataset_name = table.name;
    result.report.rows_in = table.rows.size();

    RowEvaluator eval(table, registry, ctx);

    auto warn = [&](size_t row, const std::string& rule, const std::string& msg) {
        result.report.warnings.push_back({row, rule, msg});
        ++result.report.triples_skipped;
    };
    // item-level warnings from a function (lookup misses) count one skipped
    // triple each; a plain none counts one.
    auto report_outcome = [&](const Outcome& o, size_t row, const std::string& rule,
                              const std::string& what) {
        for (const std::string& w : o.item_warnings) warn(row, rule, what + ": " + w);
        if (o.none && o.item_warnings.empty() && !o.silent)
            warn(row, rule, what + ": " + o.detail);
    };

    for (size_t row = 0; row < table.rows.size(); ++row) {
        eval.set_row(row);
        for (const auto& map : doc.maps) {
            Outcome subject_outcome = eval.eval(map.subject, true);
            if (subject_outcome.none) {
                report_outcome(subject_outcome, row, map.id + "/s", "row skipped for this map");
                continue;
            }
            std::optional<rdf::Iri> subject;
            const Produced& sv = subject_outcome.values.front();
            if (const auto* iri = std::get_if<rdf::Iri>(&sv)) {
                subject = *iri;
            } else if (const auto* text = std::get_if<std::string>(&sv)) {
                try {
                    subject = rdf::Iri(*text);
                } catch (const rdf::TermError& e) {
                    warn(row, map.id + "/s", std::string("row skipped for this map: ") + e.what());
                    continue;
                }
            } else {
                warn(row, map.id + "/s", "row skipped for this map: literal cannot be a subject");
                continue;
            }

            for (const rdf::Iri& cls : map.classes)
                result.graph.insert({*subject, rdf::vocab::rdf_type(), cls});

            for (const auto& rule : map.po) {
                Outcome outcome = eval.eval(rule.object, rule.kind == ObjectKind::iri);
                report_outcome(outcome, row, rule.id, "triple skipped");
                for (const Produced& value : outcome.values) {
                    std::optional<rdf::Term> object;
                    if (const auto* iri = std::get_if<rdf::Iri>(&value)) {
                        object = *iri;
                    } else if (const auto* lit = std::get_if<rdf::Literal>(&value)) {
                        object = *lit;
                    } else {
                        const std::string& text = std::get<std::string>(value);
                        if (rule.kind == ObjectKind::iri) {
                            try {
                                object = rdf::Iri(text);
                            } catch (const rdf::TermError& e) {
                                warn(row, rule.id, std::string("triple skipped: ") + e.what());
                                continue;
                            }
                        } else {
                            std::optional<std::string> tag;
                            if (const auto* fixed = std::get_if<std::string>(&rule.lang)) {
                                tag = *fixed;
                            } else if (const auto* fn = std::get_if<FunctionCall>(&rule.lang)) {
                                // none from a language function means "untagged"
                                Outcome lang = eval.eval_function(*fn);
                                if (!lang.values.empty())
                                    if (const auto* s = std::get_if<std::string>(&lang.values.front()))
                                        tag = *s;
                            }
                            try {
                                if (tag) object = rdf::Literal(text, tag);
                                else object = rdf::Literal(text, std::nullopt, rule.datatype);
                            } catch (const rdf::TermError& e) {
                                warn(row, rule.id, std::string("triple skipped: ") + e.what());
                                continue;
                            }
                        }
                    }
                    result.graph.insert({*subject, rule.predicate, std::move(*object)});
                }
            }
        }
    }
    result.report.triples_emitted = result.graph.size();
    return result;
}

}  // namespace chadkg::mat
