"""Build data/lexicon/affect-en.tsv from pattern's English subjectivity lexicon.

The source is en-sentiment.xml as shipped inside the TextBlob wheel (PDDL).
Each word form gets the mean polarity / subjectivity over all of its senses.
Adverbs formed with -ly from a listed adjective inherit the adjective's scores
when Brill's lexicon (same wheel) records the adverb as RB. Words whose mean
intensity differs from 1 become intensifiers instead of entries.

    python3 scripts/build_affect_lexicon.py --out data/lexicon/affect-en.tsv
"""

import argparse
import os
import xml.etree.ElementTree as ET

import textblob

NEGATORS = ["n't", "never", "no", "not"]


def mean(xs):
    return sum(xs) / len(xs)


def fmt(x):
    s = f"{round(x, 6):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    base = os.path.join(os.path.dirname(textblob.__file__), "en")
    root = ET.parse(os.path.join(base, "en-sentiment.xml")).getroot()
    senses = {}
    for w in root.findall("word"):
        senses.setdefault(w.get("form").lower(), []).append(w)

    entries, intensifiers = {}, {}
    for form, ws in senses.items():
        pol = mean([float(w.get("polarity", 0)) for w in ws])
        sub = mean([float(w.get("subjectivity", 0)) for w in ws])
        inten = mean([float(w.get("intensity", 1)) for w in ws])
        if abs(inten - 1.0) > 1e-9:
            intensifiers[form] = inten
        else:
            entries[form] = (pol, sub)

    brill = {}
    with open(os.path.join(base, "en-lexicon.txt"), encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) >= 2:
                brill[parts[0].lower()] = parts[1]

    derived = {}
    for form, scores in entries.items():
        cands = [form + "ly"]
        if form.endswith("y"):
            cands.append(form[:-1] + "ily")
        if form.endswith("le"):
            cands.append(form[:-1] + "y")
        if form.endswith("ic"):
            cands.append(form + "ally")
        for c in cands:
            if brill.get(c) == "RB" and c not in entries and c not in intensifiers and c not in derived:
                derived[c] = scores
    entries.update(derived)
    for n in NEGATORS:
        entries.pop(n, None)

    with open(args.out, "w", encoding="utf-8") as out:
        out.write("# English affect lexicon: word <TAB> polarity [-1,1] <TAB> subjectivity [0,1].\n")
        out.write("# Derived from pattern's en-sentiment.xml 1.3 (Tom De Smedt, Walter Daelemans; PDDL)\n")
        out.write("# as shipped in TextBlob: per-form means over senses, plus -ly adverbs inheriting\n")
        out.write("# their adjective's scores. Rebuild with scripts/build_affect_lexicon.py.\n")
        out.write("[meta]\n")
        out.write("version\tpattern-en-1.3-mean+ly\n")
        out.write("[entries]\n")
        for w in sorted(entries):
            p, s = entries[w]
            out.write(f"{w}\t{fmt(p)}\t{fmt(s)}\n")
        out.write("[intensifiers]\n")
        for w in sorted(intensifiers):
            out.write(f"{w}\t{fmt(intensifiers[w])}\n")
        out.write("[negators]\n")
        for w in NEGATORS:
            out.write(w + "\n")
    print(f"{len(entries)} entries ({len(derived)} derived), {len(intensifiers)} intensifiers")


if __name__ == "__main__":
    main()
