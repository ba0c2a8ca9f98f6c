"""Lower-bound certificates"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Tuple


class Rule(str, Enum):
    """Which lower-bound argument produced a certificate"""

    CD = "CD"
    SWEEP = "Sweep"
    LINE_BOUND = "LineBound"
    PAIR_REPLACEMENT = "PairReplacement"
    KNESER_UNION = "KneserUnion"
    CONJECTURE_FLOOR = "ConjectureFloor"
    PAIR_SUMS = "PairSums"
    CAUCHY_DAVENPORT_PAIR = "CauchyDavenportPair"
    KNESER_PAIR = "KneserPair"


# best_bound tie-break order
RULE_ORDER: Dict[Rule, int] = {
    Rule.CD: 0,
    Rule.SWEEP: 1,
    Rule.LINE_BOUND: 2,
    Rule.PAIR_REPLACEMENT: 3,
}


@dataclass(frozen=True)
class BoundCertificate:
    """
    A claimed lower bound on #Sigma(A) and the parameters that justify it

    Every rule except ConjectureFloor is a theorem: its value never exceeds
    the exact sumset size when the rule's preconditions hold.
    """

    rule: Rule
    value: int
    params: Dict[str, Any] = field(default_factory=dict)
    # Ordering key among certificates of equal value and rule.
    key: Tuple[int, ...] = field(default=(), compare=False, repr=False)

    @property
    def sound(self) -> bool:
        return self.rule is not Rule.CONJECTURE_FLOOR

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": self.rule.value, "params": dict(self.params), "value": int(self.value)}

    def __str__(self) -> str:
        details = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.rule.value}: #ΣA >= {self.value}" + (f" ({details})" if details else "")
