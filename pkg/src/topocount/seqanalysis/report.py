"""Per-modulus MC-finiteness evidence for a sequence prefix.

Every verdict describes the observed prefix only.  A finite prefix can
neither establish nor refute MC-finiteness, so the labels mean:

* ``consistent-with-MC-finite``: an eventual period is covered at least
  three times;
* ``inconsistent-on-prefix``: the full modular search ran and no
  recurrence of order <= max_order fits from any allowed offset;
* ``inconclusive``: anything else (too short, or a recurrence fits but no
  period is confirmed yet).
"""
from __future__ import annotations

from .integer import NoRecurrence, find_integer_recurrence
from .modular import find_modular_recurrence, reduce_mod
from .period import detect_eventual_period

CONSISTENT = "consistent-with-MC-finite"
INCONSISTENT = "inconsistent-on-prefix"
INCONCLUSIVE = "inconclusive"
VERDICTS = (CONSISTENT, INCONSISTENT, INCONCLUSIVE)


def _modulus_entry(values, m: int, max_order: int, extend: int) -> dict:
    res = reduce_mod(values, m)
    period = detect_eventual_period(res, m)
    entry = {"modulus": m, "period": period.to_json() if period else None}
    searched = len(res) >= 2 * max_order + 4
    rec = find_modular_recurrence(res, m, max_order) if searched else None
    entry["recurrence"] = rec.to_json() if rec else None
    if not searched:
        entry["recurrence_status"] = "prefix-too-short"
    else:
        entry["recurrence_status"] = "found" if rec else "none-found"
    if rec is not None and extend > 0:
        # continuation of the fitted recurrence, not a computed value
        entry["conjectural_next"] = rec.replay(res, len(res) + extend)[len(res):]
    if period is not None:
        entry["verdict"] = CONSISTENT
    elif searched and rec is None:
        entry["verdict"] = INCONSISTENT
    else:
        entry["verdict"] = INCONCLUSIVE
    return entry


def mc_report(record, moduli, max_order: int = 8, extend: int = 0) -> dict:
    """Periods, modular recurrences and verdicts per modulus, plus the rational search.

    ``record`` is a SequenceRecord or anything with ``values`` and ``offset``.
    With ``extend``, each found recurrence is run ``extend`` steps past the
    prefix and the residues are listed under ``conjectural_next``.
    """
    values = [int(v) for v in record.values]
    if not values:
        raise ValueError("record has no values")
    report = {
        "label": getattr(record, "label", ""),
        "offset": getattr(record, "offset", 0),
        "terms": len(values),
        "max_order": max_order,
        "moduli": [_modulus_entry(values, m, max_order, extend) for m in moduli],
    }
    if len(values) >= 2 * max_order + 2:
        found = find_integer_recurrence(values, max_order)
        if isinstance(found, NoRecurrence):
            report["integer"] = {"status": "none-found", **found.to_json()}
        else:
            report["integer"] = {"status": "found", **found.to_json()}
    else:
        report["integer"] = {"status": "prefix-too-short"}
    return report
