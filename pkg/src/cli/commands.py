"""Subcommand dispatch and report emission"""

import csv
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, TextIO

from .. import __version__
from ..bounds.certificate import BoundCertificate
from ..bounds.floor import conjecture_floor, thresholds
from ..bounds.lemmas import cd_bound, pair_sum_bound
from ..bounds.optimizer import best_bound, candidate_certificates
from ..errors import (
    CorruptCheckpointError,
    FeasibilityError,
    InputError,
    NotOnOneLineError,
    ZeroInMultisetError,
)
from ..multiset.constructions import (
    construct_B,
    construct_B_prime,
    construct_extremal_2d,
    construct_floor_witness,
)
from ..multiset.multiset import Multiset
from ..multiset.validity import is_valid
from ..search.remark import verify_p11_remark
from ..search.report import SearchReport, Verdict
from ..search.verify import verify_conjecture, verify_peng
from ..sumset.engine import sumset
from ..utils.settings import get_settings
from .config import CliConfig
from .parser import parse_multiset_literal

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERRUPTED = 130

# Member lists are printed only for groups up to this order.
_MEMBER_LIST_ORDER = 1024


@dataclass
class Outcome:
    """What a subcommand produced"""

    payload: Dict[str, Any]
    lines: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    code: int = EXIT_OK


def _header(config: CliConfig) -> Dict[str, Any]:
    return {"artifact_version": __version__, "config": config.echo()}


def _floor_or_none(A: Multiset) -> Optional[int]:
    G = A.group
    if G.p == 2 or not 0 <= A.total <= G.m * G.p - 1:
        return None
    return conjecture_floor(G.p, G.m, A.total)


def _cmd_sumset(config: CliConfig) -> Outcome:
    A = parse_multiset_literal(config.literal)
    S = sumset(A)
    payload = {
        **_header(config),
        "multiset": A.to_literal(),
        "total": A.total,
        "support": A.support,
        "sumset_card": S.card,
        "sumset_bits": S.to_hex(),
    }
    lines = [f"A = {A.to_literal()}", f"|A| = {A.total}, #A = {A.support}", f"#Sigma(A) = {S.card}"]
    if A.group.order <= _MEMBER_LIST_ORDER:
        members = [A.group.format_index(i) for i in S.indices()]
        payload["members"] = members
        lines.append("Sigma(A) = {" + " ".join(members) + "}")
    rows = [{"key": k, "value": payload[k]} for k in ("multiset", "total", "support", "sumset_card")]
    return Outcome(payload, lines, rows)


def _cmd_validate(config: CliConfig) -> Outcome:
    A = parse_multiset_literal(config.literal)
    report = is_valid(A)
    payload = {**_header(config), "multiset": A.to_literal(), **report.to_dict()}
    lines = [f"A = {A.to_literal()}", f"valid: {report.valid}"]
    lines += [f"  rank {v.rank}: {v.count} >= {v.limit} in {v.subgroup}" for v in report.violations]
    if report.zero_present:
        lines.append("  contains 0")
    rows = [{"key": "valid", "value": report.valid}, {"key": "clauses", "value": " ".join(report.clauses)}]
    return Outcome(payload, lines, rows, EXIT_OK if report.valid else EXIT_FOUND)


def _general_certificates(A: Multiset) -> List[BoundCertificate]:
    found = [pair_sum_bound(A)]
    try:
        found.append(cd_bound(A))
    except (NotOnOneLineError, ZeroInMultisetError):
        pass
    return found


def _cmd_bound(config: CliConfig) -> Outcome:
    A = parse_multiset_literal(config.literal)
    if A.group.m == 2:
        best = best_bound(A)
        everything = candidate_certificates(A) + [pair_sum_bound(A)]
    else:
        everything = _general_certificates(A)
        best = max(everything, key=lambda c: c.value)
    exact = sumset(A).card
    payload = {
        **_header(config),
        "multiset": A.to_literal(),
        "best": best.to_dict(),
        "exact_card": exact,
        "conjecture_floor": _floor_or_none(A),
    }
    lines = [f"A = {A.to_literal()}", f"best: {best}", f"exact #Sigma(A) = {exact}"]
    if config.all_certificates:
        payload["certificates"] = [c.to_dict() for c in everything]
        lines += [f"  {c}" for c in everything]
    rows = [{"key": "best", "value": best.value}, {"key": "exact_card", "value": exact}]
    return Outcome(payload, lines, rows)


def _cmd_construct(config: CliConfig) -> Outcome:
    name = config.construction
    if name == "extremal":
        if config.k is None:
            raise InputError("construct extremal needs --k")
        A = construct_extremal_2d(config.p, config.k)
    elif name == "B":
        A = construct_B(config.p, config.m)
    elif name == "B_prime":
        A = construct_B_prime(config.p, config.m)
    else:
        if config.n is None:
            raise InputError("construct floor needs --n")
        A = construct_floor_witness(config.p, config.m, config.n)
    card = sumset(A).card
    floor = _floor_or_none(A)
    payload = {
        **_header(config),
        "construction": name,
        "multiset": A.to_literal(),
        "total": A.total,
        "sumset_card": card,
        "conjecture_floor": floor,
        "valid": is_valid(A).valid,
    }
    lines = [f"{name}: {A.to_literal()}", f"|A| = {A.total}, #Sigma(A) = {card}, floor = {floor}"]
    rows = [{"key": k, "value": payload[k]} for k in ("multiset", "total", "sumset_card", "conjecture_floor")]
    return Outcome(payload, lines, rows)


def _search_outcome(config: CliConfig, report: SearchReport, extra: Optional[Dict[str, Any]] = None) -> Outcome:
    report.config = {**report.config, "seed": config.seed, "allow_large": config.allow_large}
    payload = report.to_dict()
    if extra:
        payload.update(extra)
    lines = [f"Z_{report.p}^{report.m}"]
    rows = []
    for rec in report.records:
        lines.append(
            f"  n={rec.n}: floor {rec.floor}, min #Sigma {rec.min_card}, "
            f"{rec.orbits_scanned} orbits, {rec.verdict.value}"
        )
        for tag in rec.witnesses:
            lines.append(f"    witness {Multiset.from_elements(report.group, tag).to_literal()}")
        rows.append({"n": rec.n, "floor": rec.floor, "min_card": rec.min_card, "verdict": rec.verdict.value})
    code = EXIT_FOUND if report.verdict is Verdict.COUNTEREXAMPLE else EXIT_OK
    return Outcome(payload, lines, rows, code)


def _settings(config: CliConfig):
    return get_settings().override(max_witnesses=config.witnesses)


def _cmd_verify(config: CliConfig) -> Outcome:
    report = verify_conjecture(
        config.p,
        config.m,
        config.n_values,
        shards=config.shards,
        shard_id=config.shard_id,
        workers=config.workers,
        allow_large=config.allow_large,
        checkpoint_path=config.checkpoint,
        resume=config.resume,
        settings=_settings(config),
    )
    return _search_outcome(config, report)


def _cmd_peng(config: CliConfig) -> Outcome:
    report = verify_peng(
        config.p,
        settings=_settings(config),
        shards=config.shards,
        shard_id=config.shard_id,
        workers=config.workers,
        allow_large=config.allow_large,
        checkpoint_path=config.checkpoint,
        resume=config.resume,
    )
    holds = report.records[0].min_card == config.p ** 2
    outcome = _search_outcome(config, report, {"peng_holds": holds})
    outcome.lines.append(f"full sumset for every valid multiset of size {2 * config.p - 1}: {holds}")
    if not holds and report.records[0].min_card is not None:
        outcome.code = EXIT_FOUND
    return outcome


def _cmd_remark(config: CliConfig) -> Outcome:
    report = verify_p11_remark()
    payload = {**report.to_dict(), "config": {**report.to_dict()["config"], **config.echo()}}
    lines = [
        f"six-point sets scanned: {report.cases_scanned}",
        f"sets with #Sigma = 32: {report.sixteen_cases} (all scalars +-1: {report.target_cases_are_units})",
        f"smallest other #Sigma: {report.min_other_card}",
        f"seven-point extensions: {report.extensions_scanned}, smallest #Sigma {report.min_extension_card}",
        f"holds: {report.holds}",
    ]
    rows = [{"key": "sixteen_cases", "value": report.sixteen_cases}, {"key": "holds", "value": report.holds}]
    return Outcome(payload, lines, rows, EXIT_OK if report.holds else EXIT_FOUND)


def _cmd_thresholds(config: CliConfig) -> Outcome:
    report = thresholds(config.p, config.k)
    payload = {**_header(config), **report.to_dict()}
    lines = [f"{k}: {v}" for k, v in report.to_dict().items()]
    rows = [{"key": k, "value": v} for k, v in report.to_dict().items()]
    return Outcome(payload, lines, rows)


HANDLERS: Dict[str, Callable[[CliConfig], Outcome]] = {
    "sumset": _cmd_sumset,
    "validate": _cmd_validate,
    "bound": _cmd_bound,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "peng": _cmd_peng,
    "remark-p11": _cmd_remark,
    "thresholds": _cmd_thresholds,
}


def emit(outcome: Outcome, fmt: str, stream: TextIO):
    """Write an outcome as human text, JSON or CSV"""
    if fmt == "json":
        stream.write(json.dumps(outcome.payload, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        if outcome.rows:
            writer = csv.DictWriter(stream, fieldnames=list(outcome.rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(outcome.rows)
    else:
        for line in outcome.lines:
            stream.write(line + "\n")


def run(config: CliConfig, stream: Optional[TextIO] = None, errors: Optional[TextIO] = None) -> int:
    """
    Dispatch one invocation and emit its report

    Returns:
        Exit code: 0 success, 1 counterexample or invalid input multiset,
        2 input error, 3 budget refused, 130 interrupted
    """
    stream = stream or sys.stdout
    errors = errors or sys.stderr
    try:
        outcome = HANDLERS[config.command](config)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return EXIT_INTERRUPTED
    except FeasibilityError as e:
        logger.error(f"{config.command}: {e}")
        errors.write(f"error: {e}\n")
        return EXIT_BUDGET
    except (InputError, CorruptCheckpointError, ValueError) as e:
        logger.error(f"{config.command}: {e}")
        errors.write(f"error: {e}\n")
        return EXIT_INPUT
    except Exception as e:
        logger.exception(f"{config.command} failed: {e}")
        raise
    emit(outcome, config.format, stream)
    return outcome.code
