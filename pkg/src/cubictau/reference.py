"""Published totals for generic levels 1-21.

Columns: level, tau-functions, truncated spines, topological conjugacy
classes. The separately published tree counts are not included.
"""

from typing import Dict, Tuple

TABLE: Tuple[Tuple[int, int, int, int], ...] = (
    (1, 1, 1, 1),
    (2, 2, 2, 2),
    (3, 4, 4, 4),
    (4, 8, 8, 8),
    (5, 16, 18, 19),
    (6, 33, 42, 46),
    (7, 69, 105, 118),
    (8, 144, 270, 318),
    (9, 303, 718, 881),
    (10, 641, 1939, 2480),
    (11, 1361, 5312, 7084),
    (12, 2895, 14719, 20374),
    (13, 6174, 41161, 59061),
    (14, 13188, 115856, 172016),
    (15, 28229, 328098, 503018),
    (16, 60515, 933719, 1475478),
    (17, 129940, 2668241, 4338715),
    (18, 279415, 7652212, 12785056),
    (19, 601742, 22013683, 37739184),
    (20, 1297671, 63497798, 111562926),
    (21, 2802318, 183589726, 330215133),
)

MAX_LEVEL = len(TABLE)

# classes(N) / classes(N-1) for N = 17..21, three decimals
RATIOS: Dict[int, str] = {17: "2.941", 18: "2.947", 19: "2.952", 20: "2.956", 21: "2.960"}

COLUMNS = ("level", "tau_count", "spine_count", "class_count")


def rows(max_level: int = MAX_LEVEL):
    return TABLE[:max_level]
