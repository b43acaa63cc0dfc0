"""Hand-built test fixtures.

`six_class_table` is a rigged likelihood table over external labels
{1,2,3,5,6,7} (6 classes, 15 pair rows) whose per-row decided /
undecided patterns were chosen by hand.  Every own-class cell is
perfect (all scores 100%) and every undecided cell keeps at least 8.2%
on its minority side, so the decided/undecided pattern is stable for
any theta in [0, 0.05].

Known properties (derived by hand from the cell values below):

  row        sides (i-side | j-side)      undecided    P  B
  svm_{1,2}  {1} | {2,3,5,6,7}            {}           0  1
  svm_{1,3}  {1} | {3}                    {2,5,6,7}    4  1
  svm_{1,5}  {1} | {2,5}                  {3,6,7}      3  1
  svm_{1,6}  {1,3} | {6}                  {2,5,7}      3  1
  svm_{1,7}  {1} | {6,7}                  {2,3,5}      3  1
  svm_{2,3}  {2,5} | {3}                  {1,6,7}      3  1
  svm_{2,5}  {1,2,3} | {5,6}              {7}          1  2
  svm_{2,6}  {2} | {6,7}                  {1,3,5}      3  1
  svm_{2,7}  {2} | {5,6,7}                {1,3}        2  1
  svm_{3,5}  {3} | {5,6,7}                {1,2}        2  1
  svm_{3,6}  {3} | {1,2,6,7}              {5}          1  1
  svm_{3,7}  {3} | {6,7}                  {1,2,5}      3  1
  svm_{5,6}  {1,2,3,5} | {6,7}            {}           0  2
  svm_{5,7}  {1,2,3,5} | {6,7}            {}           0  2
  svm_{6,7}  {6} | {7}                    {1,2,3,5}    4  1

Undecided cells total 32, so 58 of the 90 cells are fully decided.
The balanced tree built from this table at theta=0 is

  svm_{5,6} -> left  svm_{1,2} -> left leaf 1
                              -> right svm_{2,3} -> left svm_{2,5} (leaves 2,5)
                                                 -> right leaf 3
            -> right svm_{6,7} (leaves 6, 7)
"""

from __future__ import annotations

import numpy as np

from dcsvm import AllPredictionsTable, Inner, Leaf

SIX_LABELS = (1, 2, 3, 5, 6, 7)

# the tree the balanced strategy must build from the table at theta=0
SIX_EXPECTED_TREE = Inner(
    (5, 6),
    Inner(
        (1, 2),
        Leaf(1),
        Inner((2, 3), Inner((2, 5), Leaf(2), Leaf(5)), Leaf(3)),
    ),
    Inner((6, 7), Leaf(6), Leaf(7)),
)

# toward_i per row, columns ordered 1,2,3,5,6,7
_SIX_TI = {
    (1, 2): [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    (1, 3): [1.0, 0.5, 0.0, 0.3, 0.6, 0.45],
    (1, 5): [1.0, 0.0, 0.5, 0.0, 0.35, 0.25],
    (1, 6): [1.0, 0.918, 1.0, 0.6, 0.0, 0.3],
    (1, 7): [1.0, 0.7, 0.55, 0.4, 0.0, 0.0],
    (2, 3): [0.5, 1.0, 0.0, 1.0, 0.3, 0.65],
    (2, 5): [1.0, 1.0, 1.0, 0.0, 0.0, 0.5],
    (2, 6): [0.6, 1.0, 0.45, 0.2, 0.0, 0.0],
    (2, 7): [0.75, 1.0, 0.5, 0.0, 0.0, 0.0],
    (3, 5): [0.5, 0.35, 1.0, 0.0, 0.0, 0.0],
    (3, 6): [0.0, 0.0, 1.0, 0.5, 0.0, 0.0],
    (3, 7): [0.4, 0.3, 1.0, 0.5, 0.0, 0.0],
    (5, 6): [1.0, 1.0, 1.0, 1.0, 0.0, 0.0],
    (5, 7): [1.0, 1.0, 1.0, 1.0, 0.0, 0.0],
    (6, 7): [0.5, 0.45, 0.55, 0.5, 1.0, 0.0],
}

# (P, B) at theta = 0 for every row, in row order
SIX_PB_AT_0 = {
    (1, 2): (0, 1),
    (1, 3): (4, 1),
    (1, 5): (3, 1),
    (1, 6): (3, 1),
    (1, 7): (3, 1),
    (2, 3): (3, 1),
    (2, 5): (1, 2),
    (2, 6): (3, 1),
    (2, 7): (2, 1),
    (3, 5): (2, 1),
    (3, 6): (1, 1),
    (3, 7): (3, 1),
    (5, 6): (0, 2),
    (5, 7): (0, 2),
    (6, 7): (4, 1),
}

# (P, B) at theta = 0 after restricting to classes {1,2,3,5}
SIX_PB_LEFT_BRANCH = {
    (1, 2): (0, 1),
    (1, 3): (2, 1),
    (1, 5): (1, 1),
    (2, 3): (1, 1),
    (2, 5): (0, 1),
    (3, 5): (2, 1),
}


def six_class_table() -> AllPredictionsTable:
    rows = tuple(sorted(_SIX_TI))
    ti = np.array([_SIX_TI[pair] for pair in rows])
    return AllPredictionsTable(SIX_LABELS, rows, ti)


def random_table(rng: np.random.Generator, k: int, labels=None) -> AllPredictionsTable:
    """A valid but arbitrary table over k classes."""
    if labels is None:
        start = int(rng.integers(0, 5))
        labels = tuple(range(start, start + k))
    from itertools import combinations

    rows = tuple(combinations(labels, 2))
    ti = rng.random((len(rows), k))
    return AllPredictionsTable(labels, rows, ti)


def halving_table(k: int) -> AllPredictionsTable:
    """Table whose every row splits the classes into halves by position.

    Classes sit at integer positions 0..k-1; row (i, j) sends class l
    toward whichever of i, j is nearer (ties toward i).  Every cell is
    fully decided, so at theta=0 the balanced strategy always finds a
    half/half split and the tree stays logarithmic.
    """
    from itertools import combinations

    labels = tuple(range(k))
    rows = tuple(combinations(labels, 2))
    ti = np.zeros((len(rows), k))
    for r, (i, j) in enumerate(rows):
        for c, l in enumerate(labels):
            ti[r, c] = 1.0 if abs(l - i) <= abs(l - j) else 0.0
    return AllPredictionsTable(labels, rows, ti)
