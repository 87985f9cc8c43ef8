"""Matrix and vector file I/O.

Two formats, chosen by file suffix:

- ``.csv``: one row per line, comma-separated decimals ('.' radix).  For
  vectors, one value per line.
- anything else ("plain"): a header line with the dimension N, then the
  values whitespace-delimited, row by row.

Values are written with 17 significant digits so a round-trip through text
recovers the double exactly.
"""

import numpy as np

from .linalg import as_square, as_vector

__all__ = ["read_matrix", "write_matrix", "read_vector", "write_vector", "format_float"]


def format_float(x):
    return "%.17g" % x


def _is_csv(path):
    return str(path).lower().endswith(".csv")


def write_matrix(path, a):
    m = as_square(a)
    lines = []
    if not _is_csv(path):
        lines.append("%d" % m.shape[0])
        sep = " "
    else:
        sep = ","
    for row in m:
        lines.append(sep.join(format_float(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path):
    with open(path) as fh:
        raw = fh.read()
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("%s: empty matrix file" % path)
    if _is_csv(path):
        rows = [[float(tok) for tok in ln.split(",")] for ln in lines]
    else:
        try:
            n = int(lines[0])
        except ValueError:
            raise ValueError("%s: plain format requires an integer N header" % path)
        tokens = " ".join(lines[1:]).split()
        if len(tokens) != n * n:
            raise ValueError(
                "%s: expected %d values after the header, got %d" % (path, n * n, len(tokens))
            )
        rows = [[float(tokens[i * n + j]) for j in range(n)] for i in range(n)]
    return as_square(np.array(rows, dtype=np.float64))


def write_vector(path, y):
    v = as_vector(y)
    lines = []
    if not _is_csv(path):
        lines.append("%d" % v.shape[0])
    lines.extend(format_float(x) for x in v)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_vector(path):
    with open(path) as fh:
        raw = fh.read()
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("%s: empty vector file" % path)
    if _is_csv(path):
        values = [float(ln) for ln in lines]
    else:
        try:
            n = int(lines[0])
        except ValueError:
            raise ValueError("%s: plain format requires an integer N header" % path)
        tokens = " ".join(lines[1:]).split()
        if len(tokens) != n:
            raise ValueError("%s: expected %d values after the header, got %d" % (path, n, len(tokens)))
        values = [float(tok) for tok in tokens]
    return as_vector(np.array(values, dtype=np.float64))
