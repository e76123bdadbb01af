"""Sparse Gaussian elimination over F_p.

Vectors are dicts ``{column: residue}``; columns are any hashable, totally
ordered labels.  Pivots are chosen at the smallest column label, so callers
control canonical forms through the column labelling.
"""

from __future__ import annotations

from .field import inv_mod


def _axpy(target: dict, source: dict, factor: int, p: int):
    for col, v in source.items():
        nv = (target.get(col, 0) - factor * v) % p
        if nv:
            target[col] = nv
        else:
            target.pop(col, None)


def echelon(vectors, p: int):
    """Reduced row echelon form.  Returns ``{pivot column: row}`` with unit pivots."""
    rows: dict = {}
    for vec in vectors:
        v = {c: x % p for c, x in vec.items() if x % p}
        for piv, row in rows.items():
            if piv in v:
                _axpy(v, row, v[piv], p)
        if not v:
            continue
        piv = min(v)
        inv = inv_mod(v[piv], p)
        v = {c: x * inv % p for c, x in v.items()}
        for other_piv, row in rows.items():
            if piv in row:
                _axpy(row, v, row[piv], p)
        rows[piv] = v
    return dict(sorted(rows.items()))


def rank(vectors, p: int) -> int:
    return len(echelon(vectors, p))


def kernel(vectors, p: int) -> list[list[int]]:
    """Basis of ``{a : sum a_i v_i = 0}``, reduced so that the basis is canonical.

    Each basis vector is a dense coefficient list indexed like ``vectors``.
    Reduction prefers pivots at small indices, i.e. the earliest inputs.
    """
    n = len(vectors)
    # tag columns: image columns first (0, col), then identity part (1, i)
    aug = []
    for i, vec in enumerate(vectors):
        row = {(0, c): x for c, x in vec.items()}
        row[(1, i)] = 1
        aug.append(row)
    ech = echelon(aug, p)
    relations = [row for piv, row in ech.items() if piv[0] == 1]
    out = []
    for row in relations:
        dense = [0] * n
        for (tag, i), x in row.items():
            dense[i] = x
        out.append(dense)
    # canonical form of the kernel itself
    canon = echelon([{i: x for i, x in enumerate(v) if x} for v in out], p)
    res = []
    for row in canon.values():
        dense = [0] * n
        for i, x in row.items():
            dense[i] = x
        res.append(dense)
    return res


def in_span(vector: dict, basis: dict, p: int) -> bool:
    """Whether ``vector`` reduces to zero against an echelon ``basis``."""
    v = {c: x % p for c, x in vector.items() if x % p}
    for piv, row in basis.items():
        if piv in v:
            _axpy(v, row, v[piv], p)
    return not v
