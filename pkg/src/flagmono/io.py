"""Text/JSON formats for matroids and flag vectors."""

from __future__ import annotations

import csv
import io
import json

from .matroid import from_bases


def matroid_to_text(M):
    lines = [f"n={M.n} r={M.rank}"]
    lines += [" ".join(map(str, b)) for b in M.sorted_bases()]
    return "\n".join(lines) + "\n"


def matroid_from_text(text):
    lines = text.splitlines()
    header = dict(field.split("=") for field in lines[0].split())
    n, r = int(header["n"]), int(header["r"])
    if r == 0:
        bases = [()]
    else:
        bases = [tuple(int(x) for x in line.split()) for line in lines[1:] if line.strip()]
    M = from_bases(n, bases)
    if M.rank != r:
        raise ValueError(f"header says r={r} but bases have size {M.rank}")
    return M


def matroid_to_dict(M):
    return {"n": M.n, "bases": [list(b) for b in M.sorted_bases()]}


def matroid_from_dict(data):
    return from_bases(data["n"], [tuple(b) for b in data["bases"]])


def matroid_to_json(M):
    return json.dumps(matroid_to_dict(M))


def parse_matroid(text):
    if text.lstrip().startswith("{"):
        return matroid_from_dict(json.loads(text))
    return matroid_from_text(text)


def load_matroid(path):
    with open(path) as fh:
        return parse_matroid(fh.read())


def write_catalog(cat, path):
    """One JSON record per line: name, provenance, n, bases."""
    with open(path, "w") as fh:
        for e in cat:
            fh.write(json.dumps({"name": e.name, "provenance": e.provenance, **matroid_to_dict(e.matroid)}))
            fh.write("\n")


def read_catalog(path):
    from .catalog import Catalog, CatalogEntry

    entries = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                rec = json.loads(line)
                entries.append(CatalogEntry(rec["name"], matroid_from_dict(rec), rec.get("provenance", "file")))
    return Catalog(entries)


def _ordered(vec):
    return sorted(vec.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def flag_vector_to_list(vec):
    return [{"S": sorted(S), "value": v} for S, v in _ordered(vec)]


def flag_vector_from_list(items):
    return {frozenset(item["S"]): item["value"] for item in items}


def rank_set_bits(S):
    return sum(1 << (i - 1) for i in S)


def flag_vector_to_csv(vec, name="value"):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["S", name])
    for S, v in _ordered(vec):
        writer.writerow([rank_set_bits(S), v])
    return out.getvalue()


def rows_to_csv(rows):
    out = io.StringIO()
    if rows:
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return out.getvalue()
