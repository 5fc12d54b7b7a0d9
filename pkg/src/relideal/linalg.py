"""Exact linear algebra over a field: echelon bases with tags and solving."""

from typing import Dict, List, Optional, Sequence, Tuple

from .exactring import Ring


class SingularSystem(ValueError):
    pass


def _combine(tag: Dict, other: Dict, scale, ring: Ring) -> Dict:
    # tag - scale * other
    out = dict(tag)
    for k, v in other.items():
        s = out.get(k, ring.zero) - scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class EchelonBasis:
    """
    Rows in echelon form, pivot = first nonzero entry, each row normalised to 1
    at its pivot and carrying the combination (tag) of inputs that produced it.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self.rows: List[Tuple[int, List, Dict]] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Sequence, tag: Dict) -> Tuple[List, Dict]:
        vec = list(vec)
        for pivot, row, row_tag in self.rows:
            c = vec[pivot]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
                tag = _combine(tag, row_tag, c, self.ring)
        return vec, tag

    def insert(self, vec: Sequence, tag: Dict) -> Optional[int]:
        """Reduce and keep the row if independent; return its pivot or None."""
        vec, tag = self.reduce(vec, tag)
        pivot = next((k for k, a in enumerate(vec) if a), None)
        if pivot is None:
            return None
        inv = self.ring.inverse(vec[pivot])
        vec = [a * inv for a in vec]
        tag = {k: v * inv for k, v in tag.items()}
        self.rows.append((pivot, vec, tag))
        return pivot


def solve(matrix: Sequence[Sequence], rhs: Sequence, ring: Ring) -> List:
    """Solve A x = b for square nonsingular A by Gauss-Jordan elimination."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularSystem(f"matrix is singular at column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ring.inverse(aug[col][col])
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def inverse(matrix: Sequence[Sequence], ring: Ring) -> List[List]:
    n = len(matrix)
    aug = [list(row) + [ring.one if i == j else ring.zero for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularSystem(f"matrix is singular at column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = ring.inverse(aug[col][col])
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
