#!/usr/bin/env python3
"""Regenerates core/src/transforms/fold_table.inc from the Unicode database.

The slug folder needs two tables: NFKD decompositions (for codepoints whose
decomposition differs from the codepoint itself) and the set of combining
marks to strip afterwards. Both are taken from Python's unicodedata so the
C++ side stays in lockstep with a well-known reference.

Run from the repository root:  python3 scripts/gen_fold_table.py
"""

import sys
import unicodedata

RANGES = [
    (0x00A0, 0x0530),   # Latin supplements, IPA, Greek, Cyrillic
    (0x1E00, 0x2100),   # Latin extended additional, punctuation
    (0x2100, 0x2200),   # letterlike symbols (K, Angstrom, ...)
    (0xFB00, 0xFB10),   # Latin ligatures
    (0xFF00, 0xFFF0),   # halfwidth/fullwidth forms
]

OUT = "core/src/transforms/fold_table.inc"


def main() -> int:
    decomp = []
    marks = []
    for lo, hi in RANGES:
        for cp in range(lo, hi):
            ch = chr(cp)
            if unicodedata.combining(ch):
                marks.append(cp)
                continue
            nfkd = unicodedata.normalize("NFKD", ch)
            if nfkd != ch:
                decomp.append((cp, [ord(c) for c in nfkd]))

    with open(OUT, "w", encoding="utf-8") as f:
        f.write("// Generated by scripts/gen_fold_table.py (unicodedata %s). Do not edit.\n"
                % unicodedata.unidata_version)
        f.write("static const FoldEntry kFoldTable[] = {\n")
        for cp, seq in decomp:
            padded = (seq + [0, 0, 0, 0])[:4]
            name = unicodedata.name(chr(cp), "?")
            f.write("    {0x%04X, {%s}},  // %s\n"
                    % (cp, ", ".join("0x%04X" % c for c in padded), name))
        f.write("};\n\n")
        f.write("static const char32_t kCombiningMarks[] = {\n")
        for i in range(0, len(marks), 8):
            f.write("    " + ", ".join("0x%04X" % c for c in marks[i:i + 8]) + ",\n")
        f.write("};\n")
    print("wrote %s: %d decompositions, %d combining marks" % (OUT, len(decomp), len(marks)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
