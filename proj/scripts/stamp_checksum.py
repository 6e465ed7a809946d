#!/usr/bin/env python3
"""Insert or refresh the `# checksum:` header of a data table.

The checksum is FNV-1a (64 bit) over every non-comment line with a newline
folded in after each line, matching mevo::table_checksum.
"""
import sys


def checksum(lines):
    h = 1469598103934665603
    prime = 1099511628211
    mask = (1 << 64) - 1
    for line in lines:
        for b in line.encode():
            h = ((h ^ b) * prime) & mask
        h = ((h ^ ord("\n")) * prime) & mask
    return h


def stamp(path):
    with open(path) as f:
        raw = f.read().splitlines()
    kept = [l for l in raw if not l.startswith("# checksum:")]
    data = [l for l in kept if l and not l.startswith("#")]
    digest = f"# checksum: {checksum(data):016x}"
    # Place the checksum after any leading comment block.
    head = 0
    while head < len(kept) and kept[head].startswith("#"):
        head += 1
    out = kept[:head] + [digest] + kept[head:]
    with open(path, "w") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    for p in sys.argv[1:]:
        stamp(p)
