#!/usr/bin/env python3
"""Builds the BLEU fixtures under tests/data/bleu and prints sacrebleu scores.

Usage: bleu_oracle.py OUT_DIR
"""
import random
import sys
from pathlib import Path

import sacrebleu
from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a

WORDS = (
    "the a place food was great very good service staff friendly bad "
    "cold hot pizza burger fries coffee menu price cheap expensive we "
    "they it is not really nice love hate best worst ever again "
    "Paris Montréal café crêpe naïve déjà vu Œuvre ÉTÉ straße İstanbul "
    "iPhone McDonald's U.S.A. e-mail 5-star 3.5 1,000 10:30 $12 20% "
    "&amp; &lt;b&gt; &quot;wow&quot; don't can't rock'n'roll "
    "(really) [sic] {x} ... !! ?! -- — « » “ ” 😀 👍🏽"
).split()
PUNCT = [".", "!", "?", ",", ";", ":", "", "", "", "..."]


def sentence(rng):
    n = rng.randint(1, 25)
    out = []
    for _ in range(n):
        w = rng.choice(WORDS)
        r = rng.random()
        if r < 0.15:
            w = w.upper()
        elif r < 0.3:
            w = w.capitalize()
        out.append(w)
        if rng.random() < 0.1:
            out[-1] += rng.choice(PUNCT)
    s = " ".join(out) + rng.choice(PUNCT)
    if rng.random() < 0.1:
        s = "  " + s.replace(" ", "\t", 1) + " "
    return s


def perturb(rng, ref):
    toks = ref.split()
    out = []
    for t in toks:
        r = rng.random()
        if r < 0.15:
            continue
        if r < 0.3:
            out.append(rng.choice(WORDS))
            continue
        if r < 0.38:
            t = t.lower() if rng.random() < 0.5 else t.upper()
        out.append(t)
        if rng.random() < 0.08:
            out.append(rng.choice(WORDS))
    return " ".join(out)


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20211)
    refs = [sentence(rng) for _ in range(100)]
    hyps = [perturb(rng, r) for r in refs]
    hyps[7] = refs[7]
    hyps[13] = ""
    (out / "ref.txt").write_text("".join(r + "\n" for r in refs), encoding="utf-8")
    (out / "hyp.txt").write_text("".join(h + "\n" for h in hyps), encoding="utf-8")
    for lc in (False, True):
        b = sacrebleu.corpus_bleu(hyps, [refs], smooth_method="exp", tokenize="13a", lowercase=lc)
        print(f"lowercase={lc} score={b.score!r} counts={b.counts} totals={b.totals} "
              f"sys_len={b.sys_len} ref_len={b.ref_len}")

    tok = Tokenizer13a()
    rng = random.Random(4242)
    lines = [sentence(rng) for _ in range(500)]
    (out / "tok13a.in").write_text("".join(l + "\n" for l in lines), encoding="utf-8")
    (out / "tok13a.out").write_text("".join(tok(l) + "\n" for l in lines), encoding="utf-8")
    for s in ("A 5-star place.", "it costs $1,000.50!", "&lt;b&gt; e-mail"):
        print(repr(s), "->", repr(tok(s)))


if __name__ == "__main__":
    main()
