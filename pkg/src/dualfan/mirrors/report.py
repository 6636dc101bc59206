"""Common result type for the mirror pipelines."""

from ..fans import DualFanReport, Fan
from ..symbols import Potential
from ..toric_lg import BaseChangeReport


def _named_tuple(pairs, label):
    out = tuple((str(name), value) for name, value in pairs)
    seen = set()
    for name, _ in out:
        if name in seen:
            raise ValueError(f"duplicate {label} name: {name}")
        seen.add(name)
    return out


class MirrorReport:
    """A constructed mirror pair together with everything verified about it.

    `checks` holds named booleans, `counts` named integers, `potentials`
    named `Potential` values, `notes` free-form caveats.  The two base
    change reports compare each potential family against the fan on the
    opposite side; either may be absent when a pipeline has nothing to
    compare.
    """

    __slots__ = ("sigma_x", "sigma_x_prime", "duality", "to_gamma",
                 "to_gamma_prime", "checks", "counts", "potentials", "notes")

    def __init__(self, sigma_x, sigma_x_prime, duality, to_gamma=None,
                 to_gamma_prime=None, checks=(), counts=(), potentials=(),
                 notes=()):
        if not isinstance(sigma_x, Fan) or not isinstance(sigma_x_prime, Fan):
            raise TypeError("sigma_x and sigma_x_prime must be fans")
        if not isinstance(duality, DualFanReport):
            raise TypeError("duality must be a DualFanReport")
        for rep in (to_gamma, to_gamma_prime):
            if rep is not None and not isinstance(rep, BaseChangeReport):
                raise TypeError("base change entries must be BaseChangeReport")
        checks = _named_tuple(((n, bool(v)) for n, v in checks), "check")
        counts = _named_tuple(((n, int(v)) for n, v in counts), "count")
        potentials = _named_tuple(potentials, "potential")
        for _, pot in potentials:
            if not isinstance(pot, Potential):
                raise TypeError("potential entries must be Potential values")
        object.__setattr__(self, "sigma_x", sigma_x)
        object.__setattr__(self, "sigma_x_prime", sigma_x_prime)
        object.__setattr__(self, "duality", duality)
        object.__setattr__(self, "to_gamma", to_gamma)
        object.__setattr__(self, "to_gamma_prime", to_gamma_prime)
        object.__setattr__(self, "checks", checks)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "potentials", potentials)
        object.__setattr__(self, "notes", tuple(str(n) for n in notes))

    def __setattr__(self, name, value):
        raise AttributeError("MirrorReport is immutable")

    @property
    def passed(self):
        """True when the fans are dual and every named check succeeded."""
        return self.duality.verdict and all(v for _, v in self.checks)

    def check(self, name):
        for n, v in self.checks:
            if n == name:
                return v
        raise KeyError(name)

    def count(self, name):
        for n, v in self.counts:
            if n == name:
                return v
        raise KeyError(name)

    def potential(self, name):
        for n, v in self.potentials:
            if n == name:
                return v
        raise KeyError(name)

    def __repr__(self):
        verdict = "passed" if self.passed else "failed"
        return (f"MirrorReport({verdict}, {len(self.checks)} checks, "
                f"{len(self.counts)} counts)")
