"""Pass/fail reports produced by the axiom checkers."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None
    required: bool = True


@dataclass
class Report:
    subject: str = ""
    checks: list = field(default_factory=list)

    def add(self, name, passed, witness=None, required=True):
        self.checks.append(Check(name, bool(passed), witness, required))
        return passed

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.required))
        return self

    @property
    def passed(self):
        """True when every required check passed; optional checks are informational."""
        return all(c.passed for c in self.checks if c.required)

    def __bool__(self):
        return self.passed

    def failures(self):
        return [c for c in self.checks if c.required and not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self):
        for c in self.checks:
            status = "pass" if c.passed else ("FAIL" if c.required else "no")
            if not c.required:
                status += " (optional)"
            extra = "" if c.witness is None else f"  ({c.witness})"
            yield f"{status}  {c.name}{extra}"

    def __str__(self):
        head = f"{self.subject}: {'pass' if self.passed else 'FAIL'}"
        return "\n".join([head, *("  " + line for line in self.lines())])
