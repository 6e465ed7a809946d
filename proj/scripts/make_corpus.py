#!/usr/bin/env python3
"""Deterministic fragment-assembly generator for the bundled screening library.

Emits a raw SMILES library on stdout.  The strings are assembled from
curated ring systems, linkers, and terminal groups with adjacency rules that
avoid the structural-alert motifs counted by the scoring stack (no N-N, O-O,
S-S, halogen-on-sp3-carbon, Michael acceptors, and so on).  The `mevo subset
build` filter is still the authority: it parses, canonicalizes, deduplicates,
and applies the molecular-weight / logP / alert gates to freeze the corpus.

Ring-closure digits are allocated per nesting depth, so fragments can nest
without digit collisions.
"""
import argparse
import random

# (template, heavy atom count, slot atom, weight); {r}/{q} are ring digits,
# {x} is the substituent slot.
RING_LINKS = [
    ("c{r}ccc{x}cc{r}", 6, "c", 5),      # para-phenylene
    ("c{r}cc{x}ccc{r}", 6, "c", 3),      # meta-phenylene
    ("c{r}c{x}cccc{r}", 6, "c", 1),      # ortho-phenylene
    ("c{r}cc(F)c{x}cc{r}", 7, "c", 2),
    ("c{r}cc(Cl)c{x}cc{r}", 7, "c", 1),
    ("c{r}cc(C)c{x}cc{r}", 7, "c", 2),
    ("c{r}cc(OC)c{x}cc{r}", 8, "c", 2),
    ("c{r}ccc{x}nc{r}", 6, "c", 3),      # pyridine
    ("c{r}ncc{x}cn{r}", 6, "c", 1),      # pyrimidine
    ("c{r}ccc{x}o{r}", 5, "c", 1),       # furan
    ("c{r}ccc{x}s{r}", 5, "c", 1),       # thiophene
    ("c{r}ncc{x}s{r}", 5, "c", 1),       # thiazole
    ("c{r}cc{x}cn{r}C", 6, "c", 1),      # N-methylpyrrole
    ("C{r}CCC{x}CC{r}", 6, "C", 2),      # cyclohexane
    ("C{r}CC{x}CC{r}", 5, "C", 1),       # cyclopentane
    ("N{r}CCC{x}CC{r}", 6, "N", 2),      # piperidin-1-yl, slot at C4
    ("C{r}CN{x}CC{r}", 5, "C", 1),       # pyrrolidine, slot at N
    ("N{r}CCN{x}CC{r}", 6, "N", 3),      # piperazine
    ("C{r}CN{x}CCO{r}", 6, "C", 1),      # morpholine, slot at N
]

# (template with child appended at the end, heavy atoms, first atom,
#  end-slot atom, weight)
LINKERS = [
    ("C", 1, "C", "C", 4),
    ("CC", 2, "C", "C", 2),
    ("C(C)", 2, "C", "C", 1),
    ("O", 1, "O", "O", 3),
    ("OC", 2, "O", "C", 2),
    ("CO", 2, "C", "O", 2),
    ("CN", 2, "C", "N", 1),
    ("N", 1, "N", "N", 2),
    ("N(C)", 2, "N", "N", 1),
    ("C(=O)N", 3, "C", "N", 3),          # amide
    ("NC(=O)", 3, "N", "K", 3),          # reversed amide; child on carbonyl C
    ("OC(=O)", 3, "O", "K", 1),          # ester
    ("C(=O)O", 3, "C", "O", 1),
    ("C(=O)", 2, "C", "K", 2),           # ketone
    ("S(=O)(=O)", 3, "S", "K", 1),       # sulfone
    ("S(=O)(=O)N", 4, "S", "N", 1),      # sulfonamide
    ("CNC(=O)", 4, "C", "K", 2),
    ("CC(=O)N", 4, "C", "N", 1),
]

# (string, heavy atoms, first atom, weight)
TERMINALS = [
    ("C", 1, "C", 4),
    ("CC", 2, "C", 3),
    ("CCC", 3, "C", 1),
    ("C(C)C", 3, "C", 2),
    ("C(C)(C)C", 4, "C", 1),
    ("O", 1, "O", 3),
    ("OC", 2, "O", 3),
    ("OCC", 3, "O", 1),
    ("N", 1, "N", 2),
    ("NC", 2, "N", 1),
    ("N(C)C", 3, "N", 2),
    ("F", 1, "F", 3),
    ("Cl", 1, "X", 2),
    ("Br", 1, "X", 1),
    ("C(F)(F)F", 4, "C", 2),
    ("OC(F)(F)F", 5, "O", 1),
    ("C#N", 2, "C", 2),
    ("S(=O)(=O)C", 4, "S", 1),
    ("SC", 2, "S", 1),
    ("c{r}ccccc{r}", 6, "c", 3),
    ("c{r}ccc(F)cc{r}", 7, "c", 2),
    ("c{r}ccc(C)cc{r}", 7, "c", 2),
    ("c{r}ccc(OC)cc{r}", 8, "c", 2),
    ("c{r}ccncc{r}", 6, "c", 2),
    ("c{r}cccs{r}", 5, "c", 1),
    ("c{r}ccco{r}", 5, "c", 1),
    ("N{r}CCOCC{r}", 6, "N", 2),
    ("N{r}CCCC{r}", 5, "N", 1),
    ("N{r}CCCCC{r}", 6, "N", 1),
    ("N{r}CCN(C)CC{r}", 7, "N", 2),
    ("c{r}cn(C)c{q}ccccc{q}{r}", 10, "c", 1),   # N-methylindol-3-yl
    ("c{r}ccc{q}ccccc{q}c{r}", 10, "c", 1),     # naphthalen-2-yl
]

# Which first atoms a slot of a given kind accepts.  'X' marks aromatic
# halogen terminals, 'K' a carbonyl-carbon slot.
SLOT_ACCEPTS = {
    "c": set("cCNOSFX"),
    "C": set("cCNOSF"),
    "N": set("cC"),
    "O": set("cC"),
    "K": set("cC"),
}


def weighted(rng, rows):
    total = sum(r[-1] for r in rows)
    pick = rng.uniform(0, total)
    acc = 0.0
    for row in rows:
        acc += row[-1]
        if pick <= acc:
            return row
    return rows[-1]


def instantiate(template, depth):
    return template.replace("{r}", str(2 * depth + 1)).replace(
        "{q}", str(2 * depth + 2))


def pick_terminal(rng, slot, depth):
    for _ in range(50):
        text, heavy, first, _ = weighted(rng, TERMINALS)
        if first in SLOT_ACCEPTS[slot]:
            return instantiate(text, depth), heavy
    return "C", 1


def pick_ring(rng, slot, depth, child):
    """Returns (text, heavy) or None when no compatible ring exists."""
    for _ in range(50):
        template, heavy, first, _ = weighted(rng, RING_LINKS)
        if first not in SLOT_ACCEPTS[slot]:
            continue
        text = instantiate(template, depth)
        child_text, child_heavy = child(first_slot_of(template), depth)
        return text.replace("{x}", "(" + child_text + ")" if child_text else ""), \
            heavy + child_heavy
    return None


def first_slot_of(template):
    # The slot atom is the character right before "{x}".
    at = template.index("{x}")
    return template[at - 1].translate(str.maketrans("no", "NO"))


def pick_linker(rng, slot):
    for _ in range(50):
        text, heavy, first, end, _ = weighted(rng, LINKERS)
        if first in SLOT_ACCEPTS[slot]:
            return text, heavy, end
    return "C", 1, "C"


def generate_one(rng):
    def tail(slot, depth):
        """Fill a slot at the given ring depth; returns (text, heavy)."""
        roll = rng.random()
        if depth >= 2:
            if slot == "c" and roll < 0.3:
                return "", 0
            return pick_terminal(rng, slot, depth + 1)
        if roll < 0.55:
            linker, lh, end = pick_linker(rng, slot)
            if rng.random() < 0.6 and depth < 2:
                ring = pick_ring(rng, end, depth + 1, tail)
                if ring is not None:
                    return linker + ring[0], lh + ring[1]
            term, th = pick_terminal(rng, end, depth + 1)
            return linker + term, lh + th
        if roll < 0.8 and depth < 2:
            ring = pick_ring(rng, slot, depth + 1, tail)
            if ring is not None:
                return ring[0], ring[1]
        if slot == "c" and roll > 0.95:
            return "", 0
        return pick_terminal(rng, slot, depth + 1)

    ring = pick_ring(rng, "c", 0, tail)
    if ring is None:
        return None, 0
    return ring


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=60000,
                        help="unique raw strings to emit")
    parser.add_argument("--seed", type=int, default=20260814)
    parser.add_argument("--min-heavy", type=int, default=17)
    parser.add_argument("--max-heavy", type=int, default=26)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    seen = set()
    emitted = 0
    attempts = 0
    while emitted < args.count and attempts < args.count * 60:
        attempts += 1
        text, heavy = generate_one(rng)
        if text is None or not (args.min_heavy <= heavy <= args.max_heavy):
            continue
        if text in seen:
            continue
        seen.add(text)
        print(text)
        emitted += 1


if __name__ == "__main__":
    main()
