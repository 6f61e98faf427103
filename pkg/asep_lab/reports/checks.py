"""
Structured outcome of an identity check.

Every ``check_*`` operation returns a :class:`CheckReport`: the ordered list
of relations it tested, each with PASS/FAIL and, for failures, the first
offending matrix entry and its residual.
"""
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationOutcome:
    name: str
    passed: bool
    row: int | None = None
    col: int | None = None
    residual: str = ''
    detail: str = ''

    def line(self):
        text = f"RELATION {self.name} {'PASS' if self.passed else 'FAIL'}"
        if not self.passed and self.row is not None:
            text += f' {self.row} {self.col} {self.residual}'
        elif not self.passed and self.residual:
            text += f' {self.residual}'
        if self.detail:
            text += f'  # {self.detail}'
        return text


@dataclass
class CheckReport:
    title: str
    outcomes: list = field(default_factory=list)

    @property
    def passed(self):
        return all(outcome.passed for outcome in self.outcomes)

    @property
    def first_failure(self):
        return next((outcome for outcome in self.outcomes if not outcome.passed), None)

    def record(self, name, passed, row=None, col=None, residual='', detail=''):
        outcome = RelationOutcome(name, bool(passed), row, col, str(residual) if residual != '' else '', detail)
        if not outcome.passed:
            logger.warning('%s: %s failed at %s,%s residual %s', self.title, name, row, col, residual)
        self.outcomes.append(outcome)
        return outcome

    def record_zero(self, name, op, detail=''):
        """Record that the sparse operator ``op`` vanishes identically."""
        entry = op.first_nonzero()
        if entry is None:
            return self.record(name, True, detail=detail)
        row, col, value = entry
        return self.record(name, False, row + 1, col + 1, value, detail)

    def record_equal(self, name, left, right, detail=''):
        return self.record_zero(name, left - right, detail)

    def record_all_zero(self, name, residuals, detail=''):
        """
        ``residuals`` yields ``(label, op)`` pairs; the relation fails at the
        first operator that does not vanish, and its label is kept as detail.
        """
        for label, op in residuals:
            entry = op.first_nonzero()
            if entry is not None:
                row, col, value = entry
                return self.record(name, False, row + 1, col + 1, value, label)
        return self.record(name, True, detail=detail)

    def record_close(self, name, residual, tolerance, detail=''):
        """Float check: ``residual`` is a max-abs deviation."""
        passed = residual <= tolerance
        return self.record(name, passed, residual='' if passed else f'{residual:.3e}', detail=detail)

    def extend(self, other):
        self.outcomes.extend(other.outcomes)
        return self

    def __getitem__(self, name):
        for outcome in self.outcomes:
            if outcome.name == name:
                return outcome
        raise KeyError(name)

    def lines(self):
        return [outcome.line() for outcome in self.outcomes]

    def __str__(self):
        return '\n'.join(self.lines())
