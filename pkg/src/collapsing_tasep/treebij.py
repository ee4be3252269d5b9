"""Binary trees with marked child slots and their two sequence encodings.

A tree is a :class:`Tree` node whose ``left``/``right`` attributes are either
``None`` (no child on that side) or another node.  A leaf child is a present
but empty sub-tree, which is different from an absent one.

``f_encode`` and ``g_encode`` send a tree to binary sequences of length equal
to its edge count; the pair ``(f, g)`` is a bijection onto pairs ``(A, B)``
with ``A`` dominating ``B``, and :func:`decode` inverts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .seqcomb import check_sequence, dominates

TREE_ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class Tree:
    left: Optional["Tree"] = None
    right: Optional["Tree"] = None

    @property
    def edges(self) -> int:
        return sum(1 + c.edges for c in (self.left, self.right) if c is not None)

    def __str__(self) -> str:
        return to_text(self)


LEAF = Tree()


def f_encode(t: Tree) -> str:
    if t.left is None and t.right is None:
        return ""
    if t.right is None:
        return f_encode(t.left) + "0"
    if t.left is None:
        return "1" + f_encode(t.right)
    return f_encode(t.left) + "01" + f_encode(t.right)


def g_encode(t: Tree) -> str:
    if t.left is None and t.right is None:
        return ""
    if t.right is None:
        return "0" + g_encode(t.left)
    if t.left is None:
        return "1" + g_encode(t.right)
    return "0" + g_encode(t.left) + "1" + g_encode(t.right)


def decode(a: str, b: str) -> Tree:
    """The unique tree ``t`` with ``f_encode(t) == a`` and ``g_encode(t) == b``.

    Raises ``ValueError`` unless ``a`` dominates ``b``.
    """
    check_sequence(a)
    check_sequence(b)
    if not dominates(a, b):
        raise ValueError(f"{a!r} does not dominate {b!r}")
    return _decode(a, b)


def _decode(a: str, b: str) -> Tree:
    n = len(a)
    if n == 0:
        return LEAF
    # first i with a(i) < b(i+1); a(i) counts ones in a[:i]
    ones_a = 0
    ones_b = 1 if b[0] == "1" else 0
    split = None
    for i in range(n):
        if ones_a < ones_b:
            split = i
            break
        ones_a += a[i] == "1"
        if i + 1 < n:
            ones_b += b[i + 1] == "1"
    if split is None:
        # a = x0, b = 0x'
        return Tree(left=_decode(a[:-1], b[1:]))
    if split == 0:
        # a = 1y, b = 1y'
        return Tree(right=_decode(a[1:], b[1:]))
    k = split - 1
    assert a[k : k + 2] == "01" and b[0] == "0" and b[k + 1] == "1"
    return Tree(left=_decode(a[:k], b[1 : k + 1]), right=_decode(a[k + 2 :], b[k + 2 :]))


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Tree, ...]:
    if n == 0:
        return (LEAF,)
    out = [Tree(left=t) for t in _trees(n - 1)]
    out += [Tree(right=t) for t in _trees(n - 1)]
    for i in range(n - 1):
        out += [Tree(l, r) for l in _trees(i) for r in _trees(n - 2 - i)]
    return tuple(out)


def enumerate_trees(n_edges: int) -> Iterator[Tree]:
    """Every tree with exactly ``n_edges`` edges, each once."""
    if not 0 <= n_edges <= TREE_ENUMERATION_LIMIT:
        raise ValueError(f"n_edges must lie in 0..{TREE_ENUMERATION_LIMIT}")
    return iter(_trees(n_edges))


# text form:  TREE := "()" | "(" ["L" TREE] ["R" TREE] ")"


def to_text(t: Tree) -> str:
    parts = ["("]
    if t.left is not None:
        parts.append("L" + to_text(t.left))
    if t.right is not None:
        parts.append("R" + to_text(t.right))
    parts.append(")")
    return "".join(parts)


def from_text(text: str) -> Tree:
    s = "".join(text.split())
    tree, pos = _parse(s, 0)
    if pos != len(s):
        raise ValueError(f"trailing input at offset {pos} in {text!r}")
    return tree


def _parse(s: str, pos: int) -> tuple[Tree, int]:
    if not s.startswith("(", pos):
        raise ValueError(f"expected '(' at offset {pos} in {s!r}")
    pos += 1
    left = right = None
    if s.startswith("L", pos):
        left, pos = _parse(s, pos + 1)
    if s.startswith("R", pos):
        right, pos = _parse(s, pos + 1)
    if not s.startswith(")", pos):
        raise ValueError(f"expected ')' at offset {pos} in {s!r}")
    return Tree(left, right), pos + 1
