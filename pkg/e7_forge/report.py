"""Check records and verification reports."""

import json
import logging
import math
import os
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

K_SKIP = [0, 0, 1]
K_FAIL = [0, 1, 0]
K_PASS = [1, 0, 0]


def get_tab_str(tab_str, level):
    return tab_str * level


def add_lists(totals, totals_tmp):
    return [a + b for a, b in zip(totals, totals_tmp)]


@dataclass
class CheckRecord:
    """One verified identity.

    Attributes:
        name (str): What was checked.
        residual (float): Worst deviation found.
        tolerance (float): Largest acceptable residual.
        detail (str): Short statement of the identity or the worst offender.
        skipped (bool): The check was not run.
    """

    name: str
    residual: float
    tolerance: float
    detail: str = ""
    skipped: bool = False

    @property
    def passed(self):
        if self.skipped:
            return True
        return not math.isnan(self.residual) and self.residual <= self.tolerance

    @property
    def status(self):
        if self.skipped:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    @property
    def tally(self):
        if self.skipped:
            return K_SKIP
        return K_PASS if self.passed else K_FAIL

    def to_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    """Records of one verification suite plus build metadata.

    The report passes exactly when every record passes.
    """

    suite: str
    records: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, record: CheckRecord):
        self.records.append(record)
        logger.log(logging.INFO if record.passed else logging.WARNING,
                   "[%s]:%s residual=%.3e tol=%.1e", record.status, record.name,
                   record.residual, record.tolerance)
        return record

    def check(self, name, residual, tolerance, detail=""):
        return self.add(CheckRecord(name, float(residual), float(tolerance), detail))

    def expect(self, name, condition, detail=""):
        """Record a boolean condition as residual 0 (true) or 1 (false)."""
        return self.check(name, 0.0 if condition else 1.0, 0.5, detail)

    def skip(self, name, detail=""):
        return self.add(CheckRecord(name, 0.0, 0.0, detail, skipped=True))

    def extend(self, records):
        for record in records:
            self.add(record)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def totals(self):
        totals = [0, 0, 0]
        for record in self.records:
            totals = add_lists(totals, record.tally)
        return totals

    def worst(self):
        """The failing record furthest over its tolerance, or None."""
        failing = [r for r in self.records if not r.passed]
        if not failing:
            return None

        def excess(r):
            if math.isnan(r.residual):
                return math.inf
            return r.residual / r.tolerance if r.tolerance > 0 else math.inf
        return max(failing, key=excess)

    def to_dict(self):
        totals = self.totals()
        worst = self.worst()
        return {
            "suite": self.suite,
            "passed": self.passed,
            "counts": {"pass": totals[0], "fail": totals[1], "skip": totals[2]},
            "worst": worst.to_dict() if worst else None,
            "metadata": self.metadata,
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=str)

    def write(self, path):
        """Write the JSON report atomically through a temporary file."""
        text = self.to_json() + "\n"
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)

    def get_as_string(self, tab_str="  ", level=0):
        out_tab_str = get_tab_str(tab_str, level)
        out_tab_str2 = get_tab_str(tab_str, level + 1)
        out_string = "%sSuite: %s\n" % (out_tab_str, self.suite)
        for record in self.records:
            out_string += "%s[%s]:%s residual=%.3e tol=%.1e\n" % (
                out_tab_str2, record.status, record.name, record.residual, record.tolerance)
        totals = self.totals()
        out_string += "%s[PASS] Count = %3.1d\n" % (out_tab_str, totals[0])
        out_string += "%s[FAIL] Count = %3.1d\n" % (out_tab_str, totals[1])
        out_string += "%s[SKIP] Count = %3.1d\n" % (out_tab_str, totals[2])
        return out_string


def merge_reports(suite, reports, metadata=None):
    """Concatenate several reports under one suite name."""
    merged = VerificationReport(suite, metadata=dict(metadata or {}))
    for report in reports:
        for record in report.records:
            merged.records.append(CheckRecord(f"{report.suite}: {record.name}", record.residual,
                                              record.tolerance, record.detail, record.skipped))
    return merged
