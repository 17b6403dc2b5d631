"""Build a silver-standard PTB-tagged training corpus for the perceptron tagger.

Prose is harvested from docstrings of installed scientific Python packages,
tokenized with the same rules as the C++ tokenizer, and tagged with pattern's
Brill tagger (shipped inside TextBlob). Output: token<TAB>tag lines, blank line
between sentences.

    python3 scripts/build_tagger_corpus.py --out /tmp/silver.tsv
"""

import argparse
import ast
import importlib.util
import os
import random
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))
from tokenize_ref import tokenize  # noqa: E402

from textblob.en import tag as brill_tag  # noqa: E402

PACKAGES = ["scipy", "sklearn", "statsmodels", "networkx", "sympy", "pandas",
            "numpy", "matplotlib", "torch", "transformers", "datasets", "skimage",
            "shapely", "seaborn", "plotly", "sqlalchemy", "nltk", "textblob",
            "pyamg", "cvxpy", "jax", "h5py", "joblib", "requests", "httpx",
            "pydantic", "rich", "click", "jinja2", "IPython"]

SECTION = re.compile(r"^\s*(Parameters|Returns|Yields|Examples?|Notes|See Also|References|Attributes|Raises|Args|Arguments|Warnings?|Methods|Other Parameters)\s*:?\s*$")
CODEY = re.compile(r"[=`<>{}\\|@#$^~]|\(\)|\.\.|::|>>>|https?:|\w\.\w+\(|_\w|\w_")
SENT_SPLIT = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")


def docstrings(path):
    try:
        with open(path, encoding="utf-8") as fh:
            tree = ast.parse(fh.read())
    except (SyntaxError, UnicodeDecodeError, ValueError, OSError):
        return
    for node in ast.walk(tree):
        if isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef, ast.AsyncFunctionDef)):
            doc = ast.get_docstring(node)
            if doc:
                yield doc


def prose_sentences(doc):
    paras, cur = [], []
    for line in doc.splitlines():
        if SECTION.match(line) or re.match(r"^\s*-{3,}\s*$", line):
            break
        if not line.strip():
            if cur:
                paras.append(" ".join(cur))
                cur = []
            continue
        if line.startswith(("    ", "\t")) or line.lstrip().startswith(("-", "*", ">>>", "..")):
            if cur:
                paras.append(" ".join(cur))
                cur = []
            continue
        cur.append(line.strip())
    if cur:
        paras.append(" ".join(cur))
    for p in paras:
        for s in SENT_SPLIT.split(p):
            s = s.strip()
            words = s.split()
            if not (6 <= len(words) <= 45):
                continue
            if CODEY.search(s) or not s[0].isupper() or s[-1] not in ".!?":
                continue
            alpha = sum(c.isalpha() for c in s) / len(s)
            if alpha < 0.75:
                continue
            yield s


def package_files(name):
    spec = importlib.util.find_spec(name)
    if spec is None or not spec.submodule_search_locations:
        return []
    files = []
    for root in spec.submodule_search_locations:
        for dirpath, dirnames, filenames in os.walk(root):
            dirnames[:] = [d for d in dirnames if d not in ("tests", "test", "_vendor", "vendored")]
            files.extend(os.path.join(dirpath, f) for f in filenames if f.endswith(".py"))
    return sorted(files)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--max-sentences", type=int, default=120000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    seen, sents = set(), []
    for pkg in PACKAGES:
        for path in package_files(pkg):
            for doc in docstrings(path):
                for s in prose_sentences(doc):
                    if s not in seen:
                        seen.add(s)
                        sents.append(s)
    random.Random(args.seed).shuffle(sents)
    sents = sents[: args.max_sentences]
    ntok = 0
    with open(args.out, "w", encoding="utf-8") as out:
        for s in sents:
            toks = tokenize(s)
            tagged = brill_tag(" ".join(toks), tokenize=False)
            if len(tagged) != len(toks):
                continue
            for (w, t) in tagged:
                out.write(f"{w}\t{t}\n")
            out.write("\n")
            ntok += len(toks)
    print(f"{len(sents)} sentences, {ntok} tokens", file=sys.stderr)


if __name__ == "__main__":
    main()
