import json
from dataclasses import dataclass, field


@dataclass
class Violation:
    kind: str
    level: int | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": self.kind, "level": self.level, **self.detail}


@dataclass
class Verdict:
    """Outcome of a check. Truthy when no violation was found."""

    violations: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, kind, level=None, **detail):
        self.violations.append(Violation(kind, level, detail))

    def extend(self, other, prefix=None):
        for v in other.violations:
            kind = f"{prefix}:{v.kind}" if prefix else v.kind
            self.violations.append(Violation(kind, v.level, dict(v.detail)))

    def kinds(self):
        return sorted({v.kind for v in self.violations})

    def first(self, kind=None):
        for v in self.violations:
            if kind is None or v.kind == kind:
                return v
        return None

    def witness_json(self):
        payload = {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}
        if self.info:
            payload["info"] = self.info
        return json.dumps(payload, sort_keys=True, default=str)

    def __repr__(self):
        if self.ok:
            return "Verdict(ok)"
        return f"Verdict({len(self.violations)} violations: {', '.join(self.kinds())})"
