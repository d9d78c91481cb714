"""Search bounds shared by every bounded computation."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace

from .errors import CommandError


@dataclass(frozen=True)
class Bounds:
    probes: int = 16  # enumerator prefix probed on procedural categories
    depth: int = 4  # saturation stage cap
    iso_budget: int = 10**6  # candidate assignments per search
    sample: int = 6  # objects drawn from when sampling diagrams

    def to_json(self):
        return asdict(self)

    def with_(self, **kw):
        return replace(self, **kw)

    @classmethod
    def parse(cls, text):
        """``"probes=16,depth=4"`` -> Bounds."""
        names = {f.name for f in fields(cls)}
        kw = {}
        for part in filter(None, (p.strip() for p in (text or "").split(","))):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in names:
                raise CommandError(f"unknown bound {key!r}")
            try:
                kw[key] = int(val)
            except ValueError:
                raise CommandError(f"bound {key!r} needs an integer, got {val!r}") from None
        return cls(**kw)


DEFAULT_BOUNDS = Bounds()
