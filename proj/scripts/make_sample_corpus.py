#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Generate the synthetic sample corpora under data/.

The corpora are pseudo-language text built from a seeded syllable grammar,
with words drawn from each part-of-speech pool by Zipf rank.
They are stand-ins with realistic orthography (Latin letters plus the
characters each language uses) so the pipeline can be exercised end to end
without redistributing real datasets. Output is fully determined by SEED.

Usage: make_sample_corpus.py [DATA_DIR]
"""

import random
import sys
from collections import Counter
from pathlib import Path

SEED = 20240601
SENTENCES = 1200

LANGS = {
    "zarma": {
        "tag": "dje",
        "onsets": "b d f g h k l m n s t w y z j c r".split() + ["ŋ", "ɲ"],
        "vowels": "a e i o u".split(),
        "codas": ["", "", "", "", "n", "r", "y"],
        "fixed": {
            "subject": ["Ay", "ni", "a", "iri", "araŋ", "i"],
            "function": ["go", "ga", "na", "ka", "se", "ra", "no", "di", "nda", "mo"],
            "verb": ["koy", "kaa", "dira", "kani", "ci", "di", "ne", "hima"],
            "noun": ["Irikoy", "ganda", "fuo", "biri", "Niamey", "sinda", "sind"],
        },
        "seed_sentences": [
            "Sintina gaa Irikoy na beena da ganda taka.",
            "A go koy fuo.",
            "Souba, Ay ga koy Niamey.",
            "A sind biri.",
        ],
    },
    "bambara": {
        "tag": "bm",
        "onsets": "b d f g h j k l m n s t w y c r".split() + ["ɲ", "ŋ"],
        "vowels": ["a", "e", "i", "o", "u", "ɛ", "ɔ"],
        "codas": ["", "", "", "", "n"],
        "fixed": {
            "subject": ["N", "I", "A", "An", "Aw", "U"],
            "function": ["bɛ", "ka", "ye", "ma", "la", "ni", "kɔ", "fɛ", "bɛna", "tɛ"],
            "verb": ["taa", "na", "dun", "min", "kɛ", "fɔ", "sɔrɔ", "bɔ"],
            "noun": ["Bamakɔ", "dugu", "ji", "mɔgɔ", "muso", "cɛ", "denmisɛn"],
        },
        "seed_sentences": [
            "N bɛ taa Bamakɔ sini.",
            "Muso ye ji min.",
        ],
    },
}

FORBIDDEN = "bk db dk gb gk kd kg pd pk td tk tp".split()


def make_word(rng, spec, syllables):
    out = []
    for _ in range(syllables):
        out.append(rng.choice(spec["onsets"]) + rng.choice(spec["vowels"]))
        if rng.random() < 0.25:
            out.append(rng.choice(spec["codas"]))
    word = "".join(out)
    if any(c in word for c in FORBIDDEN):
        return None
    # No vowel written three times in a row.
    for i in range(len(word) - 2):
        if word[i] == word[i + 1] == word[i + 2] and word[i] in spec["vowels"]:
            return None
    return word


def vocabulary(rng, spec, size):
    words = set()
    for pool in spec["fixed"].values():
        words.update(w.lower() for w in pool)
    out = []
    while len(out) < size:
        w = make_word(rng, spec, rng.choice([2, 2, 3, 3, 3, 4]))
        if w and w not in words:
            words.add(w)
            out.append(w)
    return out


def zipf(rng, pool):
    """Draw from `pool` with probability proportional to 1 / rank."""
    return rng.choices(pool, weights=[1.0 / (r + 1) for r in range(len(pool))])[0]


def sentence(rng, spec, nouns, verbs, adverbs):
    fixed = spec["fixed"]
    parts = [zipf(rng, fixed["subject"])]
    if rng.random() < 0.6:
        parts.append(zipf(rng, fixed["function"]))
    parts.append(zipf(rng, fixed["verb"] + verbs))
    for _ in range(rng.randint(1, 4)):
        if rng.random() < 0.3:
            parts.append(zipf(rng, fixed["function"]))
        parts.append(zipf(rng, fixed["noun"] + nouns))
    if rng.random() < 0.5:
        parts.append(zipf(rng, adverbs))
    text = " ".join(parts)
    text = text[0].upper() + text[1:]
    if rng.random() < 0.15 and len(parts) > 3:
        i = rng.randint(1, len(parts) - 2)
        text = " ".join(parts[:i]) + ", " + " ".join(parts[i:])
        text = text[0].upper() + text[1:]
    return text + rng.choice([".", ".", ".", "?", "!"])


def generate(name, spec, data_dir):
    rng = random.Random(f"{SEED}:{name}")
    vocab = vocabulary(rng, spec, 900)
    nouns, verbs, adverbs = vocab[:600], vocab[600:820], vocab[820:]
    seen = set()
    lines = []
    for s in spec["seed_sentences"]:
        seen.add(s)
        lines.append(s)
    while len(lines) < SENTENCES:
        s = sentence(rng, spec, nouns, verbs, adverbs)
        if s not in seen:
            seen.add(s)
            lines.append(s)

    out = data_dir / name
    out.mkdir(parents=True, exist_ok=True)
    (out / "corpus.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    counts = Counter()
    for line in lines:
        for tok in line.replace(",", " ").replace(".", " ").replace("?", " ").replace("!", " ").split():
            counts[tok] += 1
    with open(out / "wordlist.tsv", "w", encoding="utf-8") as f:
        f.write(f"# synthetic {name}-like vocabulary generated by scripts/make_sample_corpus.py\n")
        for w in sorted(counts):
            f.write(f"{w}\t{counts[w]}\n")

    # Unseen text for the zero-shot protocol: fresh sentences over the same vocabulary.
    held = []
    while len(held) < 200:
        s = sentence(rng, spec, nouns, verbs, adverbs)
        if s not in seen:
            seen.add(s)
            held.append(s)
    (out / "heldout.txt").write_text("\n".join(held) + "\n", encoding="utf-8")


def main():
    data_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    for name, spec in LANGS.items():
        generate(name, spec, data_dir)


if __name__ == "__main__":
    main()
