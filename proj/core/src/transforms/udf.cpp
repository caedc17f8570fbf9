#include "chadkg/transforms/udf.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "chadkg/csv.hpp"

namespace chadkg::transforms {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string normalized_key(const std::string& s) { return lower(trim(s)); }

const std::string kAatBase = "http://vocab.getty.edu/aat/";

bool valid_calendar_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max = days[m - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) max = 29;
    return d <= max;
}

}  // namespace

// ------------------------------------------------------------- LookupTable

LookupTable LookupTable::from_csv(std::string_view text, const std::string& origin) {
    auto records = csv::read_records(text);
    if (records.empty())
        throw TransformError(origin + ": lookup table is empty (header row required)");
    LookupTable t;
    t.source_path_ = origin;
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.size() < 2)
            throw TransformError(origin + ": row " + std::to_string(i + 1) +
                                 " needs two columns (key,code)");
        std::string key = normalized_key(rec[0]);
        std::string code = trim(rec[1]);
        if (code.empty() || !std::all_of(code.begin(), code.end(),
                                         [](unsigned char c) { return std::isdigit(c); }))
            throw TransformError(origin + ": code '" + code + "' for key '" + key +
                                 "' is not a digit string");
        if (t.entries_.contains(key))
            throw TransformError(origin + ": duplicate key '" + key + "'");
        t.entries_.emplace(std::move(key), std::move(code));
    }
    return t;
}

LookupTable LookupTable::load(const std::string& path) {
    return from_csv(csv::read_file(path), path);
}

LookupTable LookupTable::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    LookupTable t;
    t.source_path_ = "<inline>";
    for (const auto& [k, v] : pairs) t.entries_[normalized_key(k)] = v;
    return t;
}

std::optional<std::string> LookupTable::find(const std::string& raw_key) const {
    auto it = entries_.find(normalized_key(raw_key));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

UdfContext::UdfContext(std::string base_dir) : base_dir_(std::move(base_dir)) {}

const LookupTable& UdfContext::table(const std::string& path) {
    auto it = cache_.find(path);
    if (it != cache_.end()) return it->second;
    std::string resolved = path;
    if (!path.empty() && path.front() != '/' && !base_dir_.empty())
        resolved = base_dir_ + "/" + path;
    auto [ins, ok] = cache_.emplace(path, LookupTable::load(resolved));
    return ins->second;
}

// --------------------------------------------------------------- functions

std::optional<rdf::Iri> normalize_and_convert_to_iri(const std::string& value,
                                                     const std::string& base) {
    auto slug = slugify(value);
    if (!slug) return std::nullopt;
    return rdf::Iri(base + *slug);
}

std::vector<std::string> multiple_separator_split_explode(
    const std::string& value, const std::vector<std::string>& separators) {
    std::vector<std::string> out;
    std::string current;
    size_t i = 0;
    auto flush = [&]() {
        std::string item = trim(current);
        if (!item.empty()) out.push_back(std::move(item));
        current.clear();
    };
    while (i < value.size()) {
        bool matched = false;
        for (const std::string& sep : separators) {
            if (!sep.empty() && value.compare(i, sep.size(), sep) == 0) {
                flush();
                i += sep.size();
                matched = true;
                break;
            }
        }
        if (!matched) current += value[i++];
    }
    flush();
    return out;
}

std::optional<rdf::Iri> assess_aat_tool_type(const std::string& value,
                                             const LookupTable& table) {
    auto code = table.find(value);
    if (!code) return std::nullopt;
    return rdf::Iri(kAatBase + *code);
}

std::optional<rdf::Literal> date_to_xs_datetime(const std::string& value) {
    static const std::regex re(R"(^(\d{4})-(\d{2})-(\d{2})$)");
    std::smatch m;
    std::string v = trim(value);
    if (!std::regex_match(v, m, re)) return std::nullopt;
    int y = std::stoi(m[1]), mo = std::stoi(m[2]), d = std::stoi(m[3]);
    if (!valid_calendar_date(y, mo, d)) return std::nullopt;
    return rdf::Literal(v + "T00:00:00", std::nullopt, rdf::vocab::xsd_date_time());
}

std::optional<rdf::Literal> split_year_range_to_dates(const std::string& value,
                                                      RangeSide which) {
    static const std::regex range_re(R"(^(\d{4})\s*-\s*(\d{4})$)");
    static const std::regex year_re(R"(^(\d{4})$)");
    std::string v = trim(value);
    std::smatch m;
    std::string y1, y2;
    if (std::regex_match(v, m, range_re)) {
        y1 = m[1];
        y2 = m[2];
        if (std::stoi(y1) > std::stoi(y2)) return std::nullopt;
    } else if (std::regex_match(v, m, year_re)) {
        y1 = y2 = m[1];
    } else {
        return std::nullopt;
    }
    std::string lexical = which == RangeSide::start ? y1 + "-01-01T00:00:00"
                                                    : y2 + "-12-31T23:59:59";
    return rdf::Literal(lexical, std::nullopt, rdf::vocab::xsd_date_time());
}

std::vector<rdf::Iri> convert_to_aat(const std::string& value,
                                     const std::vector<std::string>& separators,
                                     const LookupTable& table) {
    std::vector<rdf::Iri> out;
    for (const std::string& item : multiple_separator_split_explode(value, separators)) {
        if (auto code = table.find(item))
            out.push_back(rdf::Iri(kAatBase + *code));
    }
    return out;
}

std::optional<rdf::Iri> convert_documentary_type_to_aat(const std::string& value,
                                                        const LookupTable& table) {
    auto code = table.find(value);
    if (!code) return std::nullopt;
    return rdf::Iri(kAatBase + *code);
}

std::string extract_title(const std::string& value) {
    size_t at = value.rfind('@');
    if (at == std::string::npos) return trim(value);
    return trim(value.substr(0, at));
}

std::optional<std::string> extract_title_lang(const std::string& value) {
    size_t at = value.rfind('@');
    if (at == std::string::npos) return std::nullopt;
    std::string tag = trim(value.substr(at + 1));
    if (tag.size() < 2 || tag.size() > 3) return std::nullopt;
    for (char c : tag)
        if (c < 'a' || c > 'z') return std::nullopt;
    return tag;
}

std::optional<rdf::Iri> extract_documented_in_iri(const std::string& value) {
    static const std::regex orcid_re(R"(\d{4}-\d{4}-\d{4}-\d{3}[\dX])");
    static const std::regex viaf_re(R"(VIAF\s*:?\s*(\d+))", std::regex::icase);
    static const std::regex ulan_re(R"(ULAN\s*:?\s*(\d+))", std::regex::icase);
    std::smatch m;
    if (std::regex_search(value, m, orcid_re))
        return rdf::Iri("https://orcid.org/" + m.str(0));
    if (std::regex_search(value, m, viaf_re))
        return rdf::Iri("http://viaf.org/viaf/" + m.str(1));
    if (std::regex_search(value, m, ulan_re))
        return rdf::Iri("http://vocab.getty.edu/ulan/" + m.str(1));
    return std::nullopt;
}

std::optional<rdf::Iri> conditional_normalize_and_convert_to_iri(
    const std::string& value, const std::string& relation,
    const std::string& expected, const std::string& base) {
    if (normalized_key(relation) != normalized_key(expected)) return std::nullopt;
    return normalize_and_convert_to_iri(value, base);
}

// ---------------------------------------------------------------- registry

std::vector<std::string> parse_separator_tokens(const std::string& spec) {
    std::vector<std::string> out;
    std::string tok;
    for (char c : spec) {
        if (c == ' ' || c == '\t') {
            if (!tok.empty()) out.push_back(std::move(tok));
            tok.clear();
        } else {
            tok += c;
        }
    }
    if (!tok.empty()) out.push_back(std::move(tok));
    return out;
}

namespace {

template <typename T>
UdfResult one(std::optional<T> v) {
    if (!v) return {};
    UdfResult r;
    r.values.emplace_back(std::move(*v));
    return r;
}

const std::string& arg(const ParamMap& p, const std::string& name) {
    auto it = p.find(name);
    if (it == p.end()) throw TransformError("missing function parameter: " + name);
    return it->second;
}

}  // namespace

const UdfRegistry& UdfRegistry::builtins() {
    static const UdfRegistry reg = [] {
        UdfRegistry r;
        r.add({"normalize_and_convert_to_iri",
               {"value", "base"},
               [](const ParamMap& p, UdfContext&) {
                   return one(normalize_and_convert_to_iri(arg(p, "value"), arg(p, "base")));
               }});
        r.add({"multiple_separator_split_explode",
               {"value", "separators"},
               [](const ParamMap& p, UdfContext&) {
                   UdfResult out;
                   for (auto& s : multiple_separator_split_explode(
                            arg(p, "value"), parse_separator_tokens(arg(p, "separators"))))
                       out.values.emplace_back(std::move(s));
                   return out;
               }});
        r.add({"assess_aat_tool_type",
               {"value", "table"},
               [](const ParamMap& p, UdfContext& ctx) {
                   return one(assess_aat_tool_type(arg(p, "value"), ctx.table(arg(p, "table"))));
               }});
        r.add({"date_to_xs_datetime",
               {"value"},
               [](const ParamMap& p, UdfContext&) {
                   return one(date_to_xs_datetime(arg(p, "value")));
               }});
        r.add({"split_year_range_to_dates",
               {"value", "which"},
               [](const ParamMap& p, UdfContext&) {
                   const std::string& which = arg(p, "which");
                   if (which != "start" && which != "end")
                       throw TransformError("split_year_range_to_dates: 'which' must be start or end");
                   return one(split_year_range_to_dates(
                       arg(p, "value"), which == "start" ? RangeSide::start : RangeSide::end));
               }});
        r.add({"convert_to_aat",
               {"value", "separators", "table"},
               [](const ParamMap& p, UdfContext& ctx) {
                   const LookupTable& table = ctx.table(arg(p, "table"));
                   UdfResult out;
                   for (const std::string& item : multiple_separator_split_explode(
                            arg(p, "value"), parse_separator_tokens(arg(p, "separators")))) {
                       if (auto code = table.find(item))
                           out.values.emplace_back(rdf::Iri(kAatBase + *code));
                       else
                           out.warnings.push_back("no AAT code for '" + item + "'");
                   }
                   return out;
               }});
        r.add({"convert_documentary_type_to_aat",
               {"value", "table"},
               [](const ParamMap& p, UdfContext& ctx) {
                   return one(convert_documentary_type_to_aat(arg(p, "value"),
                                                              ctx.table(arg(p, "table"))));
               }});
        r.add({"extract_title",
               {"value"},
               [](const ParamMap& p, UdfContext&) {
                   UdfResult out;
                   out.values.emplace_back(extract_title(arg(p, "value")));
                   return out;
               }});
        r.add({"extract_title_lang",
               {"value"},
               [](const ParamMap& p, UdfContext&) {
                   return one(extract_title_lang(arg(p, "value")));
               }});
        r.add({"extract_documented_in_iri",
               {"value"},
               [](const ParamMap& p, UdfContext&) {
                   return one(extract_documented_in_iri(arg(p, "value")));
               }});
        r.add({"conditional_normalize_and_convert_to_iri",
               {"value", "relation", "expected", "base"},
               [](const ParamMap& p, UdfContext&) {
                   // a relation mismatch is expected flow, not a data problem
                   if (normalized_key(arg(p, "relation")) != normalized_key(arg(p, "expected"))) {
                       UdfResult out;
                       out.expected_empty = true;
                       return out;
                   }
                   return one(normalize_and_convert_to_iri(arg(p, "value"), arg(p, "base")));
               }});
        return r;
    }();
    return reg;
}

void UdfRegistry::add(Udf udf) {
    entries_[udf.name] = std::move(udf);
}

const Udf* UdfRegistry::find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> UdfRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, udf] : entries_) out.push_back(name);
    return out;
}

}  // namespace chadkg::transforms
