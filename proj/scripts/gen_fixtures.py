#!/usr/bin/env python3
"""Regenerates the BM/PD fixture tables under tests/fixtures/.

The first five BM rows and first five PD rows are hand-authored to cover
the interesting value shapes (language-tagged titles, authority strings,
year ranges, multi-valued cells, lookup misses, nulls, non-keeper
relations, accented names); the rest are formulaic filler rows that give
the 50-object corpus its bulk. Deterministic output, no RNG.

Run from the repository root: python3 scripts/gen_fixtures.py
"""

import csv
import io
import os

FIXTURES = "tests/fixtures"

BM_HEADER = ["id", "titolo", "autore", "autore_autorita", "data_creazione",
             "tipo_documento", "tecnica", "soggetti", "detentore",
             "ruolo_detentore", "licenza"]

PD_HEADER = ["id", "attivita_id", "tipo_attivita", "fase", "responsabile",
             "gruppo", "tecnica_acquisizione", "strumento", "software",
             "input_id", "output_id", "data_inizio", "data_fine"]

CC0 = "https://creativecommons.org/publicdomain/zero/1.0/"
CCBY = "https://creativecommons.org/licenses/by/4.0/"

BM_HAND = [
    ["obj1", "De animalibus insectis libri septem@la", "Aldrovandi, Ulisse",
     "Aldrovandi, Ulisse (VIAF 54343475)", "1602", "printed book",
     "etching; engraving", "entomologia; storia naturale",
     "Biblioteca Universitaria di Bologna", "keeper", CC0],
    ["obj2", "Tavole di animali@it", "Rossi, Maria",
     "Rossi, Maria (ORCID 0000-0002-1825-0097)", "1599", "manuscript",
     "woodcut", "zoologia", "Museo di Palazzo Poggi", "keeper", CCBY],
    ["obj3", "", "Aldrovandi, Ulisse", "", "1522-1605", "printed book",
     "etching", "", "", "", ""],
    ["obj4", "Mappa del mondo nuovo@it", "", "", "1572", "map",
     "hand coloring; woodcut", "cartografia; geografia; esplorazione",
     "Collezione privata Orsini", "owner", CCBY],
    ["obj5", "Catálogo de especímenes@es", "Álvarez–Núñez, José",
     "Álvarez–Núñez, José (ULAN 500115493)", "1610",
     "exhibition catalog", "engraving", "botanica",
     "Biblioteca Universitaria di Bologna", "keeper", CC0],
]

PD_HAND = [
    ["obj1", "obj1-acq", "acquisizione", "rilievo fotogrammetrico",
     "Bianchi, Laura", "", "photogrammetry", "Canon EOS R5", "", "",
     "obj1-raw", "2022-11-14", "2022-11-15"],
    ["obj1", "obj1-proc", "software", "elaborazione mesh", "Bianchi, Laura",
     "Gruppo 3D UniBo", "", "", "Agisoft Metashape", "obj1-raw",
     "obj1-model", "2022-11-16", "2022-11-20"],
    ["obj2", "obj2-acq", "acquisizione", "scansione a luce strutturata",
     "Verdi, Marco", "Gruppo 3D UniBo", "structured light scanning",
     "Artec Eva", "", "", "obj2-raw", "2022-12-01", "2022-12-02"],
    ["obj2", "obj2-proc", "software", "ottimizzazione", "Verdi, Marco", "",
     "", "", "Blender", "obj2-raw", "obj2-model", "2022-12-03", "2022-12-05"],
    ["obj3", "obj3-acq", "acquisizione", "rilievo fotogrammetrico",
     "Bianchi, Laura", "", "photogrammetry", "Canon EOS R5", "", "",
     "obj3-raw", "2023-01-10", ""],
]

AUTHORS = [
    ("Aldrovandi, Ulisse", "Aldrovandi, Ulisse (VIAF 54343475)"),
    ("Rossi, Maria", "Rossi, Maria (ORCID 0000-0002-1825-0097)"),
    ("Fontana, Pietro", "Fontana, Pietro (VIAF 88012370)"),
    ("Scheggi, Anna", "Scheggi, Anna (ULAN 500021234)"),
]
TYPES = ["printed book", "manuscript", "print"]
TECHNIQUES = ["etching", "engraving", "woodcut", "etching; woodcut"]
SUBJECTS = ["storia naturale", "botanica; zoologia", "anatomia",
            "mineralogia; geologia", "astronomia"]
KEEPERS = ["Biblioteca Universitaria di Bologna", "Museo di Palazzo Poggi"]
OPERATORS = ["Bianchi, Laura", "Verdi, Marco", "Neri, Chiara"]
DEVICES = ["Canon EOS R5", "Artec Eva"]
ACQ_TECH = ["photogrammetry", "structured light scanning"]
SOFTWARE = ["Agisoft Metashape", "Blender", "MeshLab"]
PHASES = ["elaborazione mesh", "ottimizzazione", "modellazione"]


def bm_rows():
    rows = list(BM_HAND)
    for n in range(6, 51):
        author, authority = AUTHORS[n % len(AUTHORS)]
        titolo = "Opera numero %d@it" % n if n % 7 else "Opera numero %d" % n
        soggetti = "" if n % 11 == 0 else SUBJECTS[n % len(SUBJECTS)]
        data = "" if n % 13 == 0 else ("%d-%d" % (1550 + n, 1560 + n) if n % 5 == 0
                                       else str(1550 + n))
        rows.append([
            "obj%d" % n, titolo, author, authority, data,
            TYPES[n % len(TYPES)], TECHNIQUES[n % len(TECHNIQUES)], soggetti,
            KEEPERS[n % len(KEEPERS)], "keeper", CC0 if n % 2 else CCBY,
        ])
    return rows


def pd_rows():
    rows = list(PD_HAND)
    for n in range(4, 51):
        op = OPERATORS[n % len(OPERATORS)]
        group = "Gruppo 3D UniBo" if n % 3 else ""
        day = (n % 27) + 1
        rows.append([
            "obj%d" % n, "obj%d-acq" % n, "acquisizione",
            "rilievo fotogrammetrico" if n % 2 else "scansione a luce strutturata",
            op, group, ACQ_TECH[n % 2], DEVICES[n % 2], "", "",
            "obj%d-raw" % n, "2023-02-%02d" % day, "2023-02-%02d" % day,
        ])
        rows.append([
            "obj%d" % n, "obj%d-proc" % n, "software", PHASES[n % 3],
            op, group, "", "", SOFTWARE[n % 3],
            "obj%d-raw" % n, "obj%d-model" % n,
            "2023-03-%02d" % day, "2023-03-%02d" % day,
        ])
    return rows


def write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(buf.getvalue())
    print("wrote %s (%d rows)" % (path, len(rows)))


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    bm = bm_rows()
    pd = pd_rows()
    write_csv(os.path.join(FIXTURES, "bm.csv"), BM_HEADER, bm)
    write_csv(os.path.join(FIXTURES, "pd.csv"), PD_HEADER, pd)
    write_csv(os.path.join(FIXTURES, "bm_1row.csv"), BM_HEADER, bm[:1])
    write_csv(os.path.join(FIXTURES, "bm_5row.csv"), BM_HEADER, bm[:5])
    write_csv(os.path.join(FIXTURES, "pd_5row.csv"), PD_HEADER, pd[:5])


if __name__ == "__main__":
    main()
