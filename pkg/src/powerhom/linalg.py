"""Sparse exact linear algebra over a field.

Vectors are dicts {key: coeff} with totally ordered keys; the pivot of a
vector is its largest key.  EchelonSpace keeps a growing row space in
echelon form for span, membership and quotient-coordinate queries.
"""

from __future__ import annotations


def vec_add_scaled(v, w, c):
    """v + c*w on sparse dicts (returns a new dict)."""
    out = dict(v)
    for k, a in w.items():
        s = out.get(k)
        s = c * a if s is None else s + c * a
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def vec_scale(v, c):
    return {k: c * a for k, a in v.items()}


class EchelonSpace:
    """Row space in echelon form; optionally tracks tag vectors alongside."""

    def __init__(self, track=False):
        self.rows = {}  # pivot -> vector
        self.tags = {} if track else None

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v, tag=None):
        """Reduce v against the space; returns (residual, residual_tag)."""
        v = dict(v)
        while v:
            p = max(v)
            row = self.rows.get(p)
            if row is None:
                break
            c = -v[p] / row[p]
            v = vec_add_scaled(v, row, c)
            if tag is not None:
                tag = vec_add_scaled(tag, self.tags[p], c)
        return v, tag

    def add(self, v, tag=None):
        """Insert v if independent; returns True when the dimension grew."""
        if self.tags is not None and tag is None:
            tag = {}
        r, rt = self.reduce(v, tag)
        if not r:
            return False
        p = max(r)
        self.rows[p] = r
        if self.tags is not None:
            self.tags[p] = rt
        return True

    def contains(self, v):
        r, _ = self.reduce(v)
        return not r

    def coordinates(self, v):
        """Express v over the tag space; None if v is not in the span.

        Only meaningful when rows were added with tag vectors forming a
        basis labelling (e.g. unit tags).
        """
        r, t = self.reduce(dict(v), {})
        if r:
            return None
        return {k: -c for k, c in t.items()}


def kernel_of_columns(columns, one):
    """Kernel of the linear map with the given sparse columns.

    columns: list of dict vectors (the images of the unit basis).  Returns a
    list of dict vectors {column_index: coeff} spanning the kernel, in
    deterministic order.  `one` is the field's multiplicative identity.
    """
    space = EchelonSpace(track=True)
    kernel = []
    for j, col in enumerate(columns):
        tag = {j: one}
        r, rt = space.reduce(dict(col), tag)
        if not r:
            kernel.append(rt)
        else:
            p = max(r)
            space.rows[p] = r
            space.tags[p] = rt
    return kernel


def rank_of_columns(columns):
    space = EchelonSpace()
    for col in columns:
        space.add(dict(col))
    return space.dim
