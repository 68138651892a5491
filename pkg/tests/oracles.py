"""Independent reference implementations used to cross-check the library.

Nothing here goes through the directed-container operations: the oracles
work on plain Python lists and tuples.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Dict, List, Sequence, Tuple


def suffixes(items: Sequence[Any]) -> List[List[Any]]:
    """Every non-empty suffix, longest first."""
    return [list(items[i:]) for i in range(len(items))]


def rotations(items: Sequence[Any]) -> List[List[Any]]:
    """Every left rotation, starting with the list itself."""
    return [list(items[i:]) + list(items[:i]) for i in range(len(items))]


def flatten_index(lengths: Sequence[int]) -> List[Tuple[int, int]]:
    """For each position of the concatenation, its (outer, inner) origin."""
    return [(i, j) for i, n in enumerate(lengths) for j in range(n)]


# free product of two semigroups, as reduced alternating words


Word = Tuple[Tuple[int, Any], ...]


def alternating_words(alphabets: Sequence[Sequence[Any]], max_len: int) -> List[Word]:
    """Non-empty words whose letters alternate between the two alphabets."""
    out: List[Word] = []
    for n in range(1, max_len + 1):
        for start in (0, 1):
            sides = [(start + k) % 2 for k in range(n)]
            for letters in itertools.product(*(alphabets[s] for s in sides)):
                out.append(tuple(zip(sides, letters)))
    return out


def free_product_mul(ops: Sequence[Callable[[Any, Any], Any]], w1: Word, w2: Word) -> Word:
    """Concatenate, multiplying the two letters at the seam when they share a side."""
    if w1[-1][0] == w2[0][0]:
        side = w1[-1][0]
        merged = (side, ops[side](w1[-1][1], w2[0][1]))
        return w1[:-1] + (merged,) + w2[1:]
    return w1 + w2


# cofree shapes, unfolded without the library's equality


def unfold(tree: Any, depth: int, breadth: int, children: Callable[[Any, int], Any]) -> Any:
    """Root labels down to ``depth``, keeping at most ``breadth`` children per node."""
    if depth == 0:
        return "..."
    label = tree.fst
    kids = [children(tree, i) for i in range(breadth)]
    return (label, tuple(unfold(k, depth - 1, breadth, children) for k in kids))


def suffix_lengths(items: Sequence[Any]) -> List[int]:
    """Shape (length minus one) of every suffix."""
    return [len(s) - 1 for s in suffixes(items)]


def cyclic_table(n: int) -> Dict[Tuple[int, int], int]:
    """Position addition on an ``n``-cycle."""
    return {(p, q): (p + q) % n for p in range(n) for q in range(n)}
