#!/usr/bin/env python3
"""Independent reference materialiser used to derive the golden N-Triples
fixtures. Implements the documented mapping semantics (docs/mapping.md)
from scratch in Python, sharing no code with the C++ pipeline; Unicode
folding comes straight from unicodedata.

Usage:
    python3 scripts/oracle_materialise.py MAPPING CSV [MAPPING CSV ...] -o OUT.nt
"""

import csv
import io
import re
import sys
import unicodedata

import yaml


# ----------------------------------------------------------------- terms

def nt_escape(s):
    out = []
    for ch in s:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


XSD_DATETIME = "http://www.w3.org/2001/XMLSchema#dateTime"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


class Iri:
    def __init__(self, value):
        self.value = value

    def token(self):
        return "<%s>" % self.value


class Literal:
    def __init__(self, lexical, lang=None, datatype=None):
        self.lexical = lexical
        self.lang = lang
        self.datatype = datatype

    def token(self):
        t = '"%s"' % nt_escape(self.lexical)
        if self.lang:
            t += "@" + self.lang
        elif self.datatype:
            t += "^^<%s>" % self.datatype
        return t


# ------------------------------------------------------------- functions

def slugify(text):
    folded = unicodedata.normalize("NFKD", text)
    folded = "".join(c for c in folded if not unicodedata.combining(c))
    folded = folded.lower()
    slug = re.sub(r"[^a-z0-9]+", "-", folded).strip("-")
    return slug or None


def fn_normalize(value, base):
    slug = slugify(value)
    return [Iri(base + slug)] if slug else []


def fn_explode(value, separators):
    items = [value]
    for sep in separators:
        items = [piece for item in items for piece in item.split(sep)]
    return [i.strip() for i in items if i.strip()]


def fn_date_to_datetime(value):
    m = re.match(r"^(\d{4})-(\d{2})-(\d{2})$", value.strip())
    if not m:
        return []
    y, mo, d = int(m.group(1)), int(m.group(2)), int(m.group(3))
    days = [31, 29 if (y % 4 == 0 and y % 100 != 0) or y % 400 == 0 else 28,
            31, 30, 31, 30, 31, 31, 30, 31, 30, 31]
    if not (1 <= mo <= 12 and 1 <= d <= days[mo - 1]):
        return []
    return [Literal(value.strip() + "T00:00:00", datatype=XSD_DATETIME)]


def fn_year_range(value, which):
    v = value.strip()
    m = re.match(r"^(\d{4})\s*-\s*(\d{4})$", v)
    if m:
        y1, y2 = m.group(1), m.group(2)
        if int(y1) > int(y2):
            return []
    elif re.match(r"^\d{4}$", v):
        y1 = y2 = v
    else:
        return []
    if which == "start":
        return [Literal(y1 + "-01-01T00:00:00", datatype=XSD_DATETIME)]
    return [Literal(y2 + "-12-31T23:59:59", datatype=XSD_DATETIME)]


def fn_extract_title(value):
    at = value.rfind("@")
    return [value.strip() if at < 0 else value[:at].strip()]


def fn_extract_title_lang(value):
    at = value.rfind("@")
    if at < 0:
        return []
    tag = value[at + 1:].strip()
    return [tag] if re.fullmatch(r"[a-z]{2,3}", tag) else []


def fn_documented_in(value):
    m = re.search(r"\d{4}-\d{4}-\d{4}-\d{3}[\dX]", value)
    if m:
        return [Iri("https://orcid.org/" + m.group(0))]
    m = re.search(r"VIAF\s*:?\s*(\d+)", value, re.I)
    if m:
        return [Iri("http://viaf.org/viaf/" + m.group(1))]
    m = re.search(r"ULAN\s*:?\s*(\d+)", value, re.I)
    if m:
        return [Iri("http://vocab.getty.edu/ulan/" + m.group(1))]
    return []


class Tables:
    def __init__(self, base_dir):
        self.base_dir = base_dir
        self.cache = {}

    def get(self, path):
        if path not in self.cache:
            full = path if path.startswith("/") else self.base_dir + "/" + path
            table = {}
            with open(full, encoding="utf-8", newline="") as f:
                rows = list(csv.reader(f))
            for row in rows[1:]:
                table[row[0].strip().lower()] = row[1].strip()
            self.cache[path] = table
        return self.cache[path]


AAT = "http://vocab.getty.edu/aat/"


def call_function(name, params, tables):
    """Returns a list of term-ish values; None signals the silent skip."""
    v = params.get("value")
    if name == "normalize_and_convert_to_iri":
        return fn_normalize(v, params["base"])
    if name == "multiple_separator_split_explode":
        return fn_explode(v, params["separators"].split())
    if name == "assess_aat_tool_type":
        code = tables.get(params["table"]).get(v.strip().lower())
        return [Iri(AAT + code)] if code else []
    if name == "date_to_xs_datetime":
        return fn_date_to_datetime(v)
    if name == "split_year_range_to_dates":
        return fn_year_range(v, params["which"])
    if name == "convert_to_aat":
        table = tables.get(params["table"])
        out = []
        for item in fn_explode(v, params["separators"].split()):
            code = table.get(item.strip().lower())
            if code:
                out.append(Iri(AAT + code))
        return out
    if name == "convert_documentary_type_to_aat":
        code = tables.get(params["table"]).get(v.strip().lower())
        return [Iri(AAT + code)] if code else []
    if name == "extract_title":
        return fn_extract_title(v)
    if name == "extract_title_lang":
        return fn_extract_title_lang(v)
    if name == "extract_documented_in_iri":
        return fn_documented_in(v)
    if name == "conditional_normalize_and_convert_to_iri":
        if params["relation"].strip().lower() != params["expected"].strip().lower():
            return None
        return fn_normalize(v, params["base"])
    raise ValueError("unknown function " + name)


# --------------------------------------------------------------- mapping

def iri_encode(s):
    out = []
    for ch in s:
        o = ord(ch)
        if ch in '<>"{}|\\^`' or o <= 0x20:
            out.extend("%%%02X" % b for b in ch.encode("utf-8"))
        else:
            out.append(ch)
    return "".join(out)


PLACEHOLDER = re.compile(r"(?<!\\)\$\(([^)]+)\)")


def expand_curie(text, prefixes):
    m = re.match(r"^([A-Za-z][A-Za-z0-9_-]*):(.*)$", text)
    if m and m.group(1) in prefixes:
        return prefixes[m.group(1)] + m.group(2)
    return text


def eval_template(text, row, iri_context):
    result = []
    pos = 0
    for m in PLACEHOLDER.finditer(text):
        result.append(text[pos:m.start()])
        value = row.get(m.group(1))
        if value is None:
            return None
        result.append(iri_encode(value) if iri_context else value)
        pos = m.end()
    result.append(text[pos:])
    return "".join(result).replace("\\$", "$")


def eval_simple(spec, row, prefixes, iri_context):
    if PLACEHOLDER.search(spec):
        expanded = expand_curie(spec, prefixes) if iri_context else spec
        return eval_template(expanded, row, iri_context)
    return expand_curie(spec, prefixes) if iri_context else spec


def eval_value(spec, row, prefixes, tables, iri_context):
    """Returns a list of values (possibly empty == skip)."""
    if isinstance(spec, dict):  # function block
        params = {}
        for p in spec.get("parameters", []):
            pname, pvalue = (p[0], p[1]) if isinstance(p, list) else (p["parameter"], p["value"])
            pvalue = str(pvalue)
            if PLACEHOLDER.search(pvalue):
                v = eval_template(pvalue, row, False)
            else:
                v = expand_curie(pvalue, prefixes)
            if v is None:
                return []
            params[pname] = v
        out = call_function(spec["function"], params, tables)
        return [] if out is None else out
    v = eval_simple(str(spec), row, prefixes, iri_context)
    return [] if v is None else [v]


def materialise(mapping_path, csv_path, triples):
    with open(mapping_path, encoding="utf-8") as f:
        doc = yaml.safe_load(f)
    prefixes = doc.get("prefixes", {})
    base_dir = mapping_path.rsplit("/", 1)[0] if "/" in mapping_path else "."
    tables = Tables(base_dir)

    with open(csv_path, encoding="utf-8", newline="") as f:
        records = list(csv.reader(f))
    header = [h.strip() for h in records[0]]
    rows = []
    for rec in records[1:]:
        row = {}
        for i, col in enumerate(header):
            cell = rec[i].strip() if i < len(rec) else ""
            row[col] = cell if cell else None
        rows.append(row)

    for row in rows:
        for map_id, m in doc["mappings"].items():
            subject_spec = m.get("s") or m.get("subjects")
            values = eval_value(subject_spec, row, prefixes, tables, True)
            if not values:
                continue
            subject = values[0]
            subject_iri = subject.value if isinstance(subject, Iri) else subject

            classes = []
            po_rules = []
            for po in m.get("po", []):
                if isinstance(po, list) and po[0] in ("a", "rdf:type"):
                    classes.append(expand_curie(po[1], prefixes))
                elif isinstance(po, dict) and str(po.get("predicates")) in ("a", "rdf:type"):
                    classes.append(expand_curie(str(po["objects"]), prefixes))
                else:
                    po_rules.append(po)

            for cls in classes:
                triples.add((subject_iri, RDF_TYPE, Iri(cls).token()))

            for po in po_rules:
                if isinstance(po, list):
                    pred = expand_curie(po[0], prefixes)
                    obj_spec = str(po[1])
                    is_iri = obj_spec.endswith("~iri")
                    if is_iri:
                        obj_spec = obj_spec[:-4]
                    lang = None
                    datatype = None
                    if len(po) == 3:
                        third = str(po[2])
                        if third.endswith("~lang"):
                            lang = third[:-5]
                        else:
                            datatype = expand_curie(third, prefixes)
                    values = eval_value(obj_spec, row, prefixes, tables, is_iri)
                    lang_spec = lang
                else:
                    pred = expand_curie(str(po["predicates"]), prefixes)
                    objs = po["objects"]
                    datatype = None
                    lang_spec = None
                    if isinstance(objs, dict) and "function" in objs:
                        values = eval_value(objs, row, prefixes, tables, False)
                        lang_spec = objs.get("language")
                        if objs.get("datatype"):
                            datatype = expand_curie(str(objs["datatype"]), prefixes)
                        is_iri = False
                    elif isinstance(objs, dict):
                        v = str(objs["value"])
                        is_iri = objs.get("type") == "iri"
                        values = eval_value(v, row, prefixes, tables, is_iri)
                        lang_spec = objs.get("language")
                        if objs.get("datatype"):
                            datatype = expand_curie(str(objs["datatype"]), prefixes)
                    else:
                        obj_spec = str(objs)
                        is_iri = obj_spec.endswith("~iri")
                        if is_iri:
                            obj_spec = obj_spec[:-4]
                        values = eval_value(obj_spec, row, prefixes, tables, is_iri)

                for value in values:
                    if isinstance(value, Iri):
                        token = value.token()
                    elif isinstance(value, Literal):
                        token = value.token()
                    elif is_iri:
                        token = Iri(value).token()
                    else:
                        lang = None
                        if isinstance(lang_spec, dict):
                            lv = eval_value(lang_spec, row, prefixes, tables, False)
                            if lv:
                                lang = lv[0]
                        elif lang_spec:
                            lang = str(lang_spec)
                        token = Literal(value, lang=lang,
                                        datatype=None if lang else datatype).token()
                    triples.add((subject_iri, pred, token))


def main(argv):
    args = argv[1:]
    out_path = None
    pairs = []
    i = 0
    while i < len(args):
        if args[i] == "-o":
            out_path = args[i + 1]
            i += 2
        else:
            pairs.append((args[i], args[i + 1]))
            i += 2
    if not out_path or not pairs:
        print(__doc__)
        return 2

    triples = set()
    for mapping_path, csv_path in pairs:
        materialise(mapping_path, csv_path, triples)

    lines = sorted(("<%s> <%s> %s ." % t).encode("utf-8") for t in triples)
    with io.open(out_path, "wb") as f:
        for line in lines:
            f.write(line + b"\n")
    print("wrote %s (%d triples)" % (out_path, len(lines)))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
