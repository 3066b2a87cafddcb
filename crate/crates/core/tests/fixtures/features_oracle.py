"""Recompute the raw feature table for features_doc.txt from a hand annotation.

Each token is (stem, stopword, proper_noun, numeral). Entities are counted
as runs of non-stopword proper nouns. Writes features_oracle.csv.
"""
import math

S, P, N = "stop", "proper", "num"

# (paragraph, [(stem, *flags)])
SENTENCES = [
    (0, [("lakeview", P), ("technic", P), ("institut", P), ("announc",), ("3", N), ("new",),
         ("research",), ("program",), ("in", S), ("2016", N)]),
    (0, [("the", S), ("program",), ("focu",), ("on", S), ("text",), ("summar",), ("and", S),
         ("machin",), ("learn",)]),
    (0, [("fund", P), ("doubl",)]),
    (1, [("dr", P), ("moreno", P), ("lead",), ("the", S), ("lakeview", P), ("summar",), ("group",)]),
    (1, [("her", S), ("team",), ("publish",), ("45", N), ("paper",), ("and", S), ("12", N),
         ("machin",), ("learn",), ("tool",)]),
    (1, [("the", S), ("research",), ("fund",), ("reach",), ("2.5", N), ("million",), ("in", S),
         ("2017", N)]),
]

THEMATIC_COUNT, TH, MIN_WORDS = 10, 0.2, 3


def content(tokens):
    return [t[0] for t in tokens if S not in t[1:]]


def counts(stems):
    c = {}
    for s in stems:
        c[s] = c.get(s, 0) + 1
    return c


n = len(SENTENCES)
doc_counts = counts([s for _, toks in SENTENCES for s in content(toks)])
thematic = set(sorted(doc_counts, key=lambda s: (-doc_counts[s], s))[:THEMATIC_COUNT])


def position(i):
    if i == 0 or i == n - 1:
        return 1.0
    lo, hi = TH * n, 2 * TH * n
    return math.cos(((i + 1) - lo) * ((1 / hi) - lo))


def tf_isf(toks):
    total = 0
    for stem, tf in counts(content(toks)).items():
        total += tf * (doc_counts[stem] - tf)
    return math.log(1 + total) / len(toks)


def cosine(a, b):
    dot = sum(a[k] * b.get(k, 0) for k in a)
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    return 0.0 if na == 0 or nb == 0 else dot / (na * nb)


paras = [p for p, _ in SENTENCES]
isf = [tf_isf(t) for _, t in SENTENCES]
centroid = max(range(n), key=lambda i: (isf[i], -i))
rows = []
for i, (para, toks) in enumerate(SENTENCES):
    L = len(toks)
    first = i == 0 or paras[i - 1] != para
    last = i == n - 1 or paras[i + 1] != para
    proper = [P in t[1:] and S not in t[1:] for t in toks]
    runs = sum(1 for j, p in enumerate(proper) if p and (j == 0 or not proper[j - 1]))
    rows.append([
        sum(1 for s in content(toks) if s in thematic) / L,
        position(i),
        0 if L < MIN_WORDS else L,
        1 if first or last else 0,
        sum(proper),
        sum(1 for t in toks if N in t[1:]) / L,
        runs,
        isf[i],
        cosine(counts(content(toks)), counts(content(SENTENCES[centroid][1]))),
    ])

with open("features_oracle.csv", "w") as f:
    f.write("thematic,position,length,pos_in_para,proper_nouns,numerals,named_entities,tf_isf,centroid_sim\n")
    for r in rows:
        f.write(",".join(repr(float(v)) for v in r) + "\n")
print("centroid", centroid, "thematic", sorted(thematic))
