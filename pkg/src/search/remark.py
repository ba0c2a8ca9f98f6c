"""The structured six-point search in Z_11^2"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .. import __version__
from ..group.params import make_group
from ..multiset.multiset import Multiset
from ..sumset.engine import sumset_card

logger = logging.getLogger(__name__)

P = 11
SLOPES = (1, 2, 3, 4)
EXTENSION_SLOPE = 5
TARGET_CARD = 32
THRESHOLD = 33


@dataclass
class RemarkReport:
    """Outcome of the six-point search and its seven-point extensions"""

    cases_scanned: int = 0
    cases_at_target: List[Tuple[int, ...]] = field(default_factory=list)
    min_other_card: int = 0
    extensions_scanned: int = 0
    min_extension_card: int = 0
    unit_set_card: int = 0

    @property
    def sixteen_cases(self) -> int:
        return len(self.cases_at_target)

    @property
    def target_cases_are_units(self) -> bool:
        """Every case at the target has i, j, k, l in {1, -1}"""
        return all(set(case) <= {1, P - 1} for case in self.cases_at_target)

    @property
    def holds(self) -> bool:
        return (
            self.sixteen_cases == 16
            and self.target_cases_are_units
            and self.min_other_card > THRESHOLD
            and self.extensions_scanned == 16 * (P - 1)
            and self.min_extension_card > THRESHOLD
            and self.unit_set_card == TARGET_CARD
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "artifact_version": __version__,
            "config": {"command": "remark-p11", "p": P, "m": 2, "slopes": list(SLOPES),
                       "extension_slope": EXTENSION_SLOPE},
            "cases_scanned": self.cases_scanned,
            "sixteen_cases": self.sixteen_cases,
            "cases_at_32": [list(case) for case in self.cases_at_target],
            "target_cases_are_units": self.target_cases_are_units,
            "min_other_card": self.min_other_card,
            "extensions_scanned": self.extensions_scanned,
            "min_extension_card": self.min_extension_card,
            "unit_set_card": self.unit_set_card,
            "holds": self.holds,
        }


def remark_multiset(G, scalars, slopes=SLOPES) -> Multiset:
    """{(1,0), (0,1)} together with the points (c, s*c) for each scalar c and slope s"""
    points = [(1, 0), (0, 1)] + [(c, s * c) for c, s in zip(scalars, slopes)]
    return Multiset.from_coords(G, ((pt, 1) for pt in points))


def verify_p11_remark() -> RemarkReport:
    """
    Sumset sizes of {(1,0),(0,1),(i,i),(j,2j),(k,3k),(l,4l)} for 1 <= i,j,k,l <= 10

    Exactly sixteen choices, those with every scalar equal to +-1, give 32
    elements and every other choice gives more than 33. Each of the sixteen
    stays above 33 once any point (c, 5c) is added.
    """
    G = make_group(P, 2)
    report = RemarkReport()
    others: List[int] = []
    for scalars in itertools.product(range(1, P), repeat=len(SLOPES)):
        card = sumset_card(remark_multiset(G, scalars))
        report.cases_scanned += 1
        if card == TARGET_CARD:
            report.cases_at_target.append(scalars)
        else:
            others.append(card)
    report.min_other_card = min(others)

    extension_cards = []
    for scalars in report.cases_at_target:
        base = remark_multiset(G, scalars)
        for c in range(1, P):
            extended = base.with_added(G.element(c, EXTENSION_SLOPE * c))
            extension_cards.append(sumset_card(extended))
    report.extensions_scanned = len(extension_cards)
    report.min_extension_card = min(extension_cards) if extension_cards else 0
    report.unit_set_card = sumset_card(remark_multiset(G, (1, 1, 1, 1)))

    logger.info(
        f"Six-point search: {report.sixteen_cases} cases at {TARGET_CARD}, "
        f"others >= {report.min_other_card}, extensions >= {report.min_extension_card}"
    )
    return report
