"""Declarative generator specs such as ``isotropic:d=3,F=0.8``.

Recognized families and their parameters (defaults in brackets):

==============  ==================================================
isotropic       d, F
werner2x2       p
maxent          m, n [= m]                 (pure state)
product         m, n, seed                 (random local mixed states)
random          m, n, rank [= m*n], seed
horodecki_bes   a
==============  ==================================================

Any family accepts ``count`` [1]; item ``i`` of a batch uses ``seed + i``.
"""

from dataclasses import dataclass, field

from . import states
from .errors import ParameterOutOfRange, ParseError, UnknownFamily

_INT_KEYS = {"d", "m", "n", "rank", "seed", "count"}

FAMILIES = {
    "isotropic": ({"d", "F"}, set()),
    "werner2x2": ({"p"}, set()),
    "maxent": ({"m"}, {"n"}),
    "product": ({"m", "n"}, {"seed"}),
    "random": ({"m", "n"}, {"rank", "seed"}),
    "horodecki_bes": ({"a"}, set()),
}


@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    count: int = 1

    def label(self, index=0):
        parts = [f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}"
                 for k, v in sorted(self.params.items())]
        if self.kind in ("product", "random"):
            parts.append(f"seed={self.seed + index}")
        return f"{self.kind}:{','.join(parts)}"

    def build(self, index=0):
        """Generate item ``index`` of this spec."""
        p = self.params
        seed = self.seed + index
        if self.kind == "isotropic":
            return states.make_isotropic(p["d"], p["F"])
        if self.kind == "werner2x2":
            return states.make_werner_2x2(p["p"])
        if self.kind == "maxent":
            return states.make_maximally_entangled(p["m"], p.get("n", p["m"]))
        if self.kind == "product":
            return states.random_product_state((p["m"], p["n"]), seed)
        if self.kind == "random":
            rank = p.get("rank", p["m"] * p["n"])
            return states.random_density_matrix((p["m"], p["n"]), rank, seed)
        if self.kind == "horodecki_bes":
            return states.make_horodecki_3x3_bes(p["a"])
        raise UnknownFamily(self.kind)

    def expand(self):
        for i in range(self.count):
            yield self.label(i), self.build(i)


def _number(key, text):
    try:
        if key in _INT_KEYS:
            return int(text)
        return float(text)
    except ValueError:
        kind = "an integer" if key in _INT_KEYS else "a number"
        raise ParseError(f"parameter {key!r} must be {kind}, got {text!r}") from None


def parse_state_spec(text, default_seed=0):
    """Parse ``FAMILY:key=value,...`` into a :class:`StateSpec`."""
    family, _, rest = text.strip().partition(":")
    family = family.strip().lower().replace("-", "_")
    if family not in FAMILIES:
        raise UnknownFamily(
            f"unknown state family {family!r}; expected one of {', '.join(sorted(FAMILIES))}"
        )
    required, optional = FAMILIES[family]
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq or not key:
            raise ParseError(f"expected key=value in generator spec, got {item!r}")
        if key in params:
            raise ParseError(f"duplicate parameter {key!r}")
        params[key] = _number(key, value.strip())
    seed = params.pop("seed", default_seed)
    count = params.pop("count", 1)
    if count < 1:
        raise ParameterOutOfRange(f"count must be >= 1, got {count}")
    unknown = set(params) - required - optional - {"seed"}
    if unknown:
        raise ParseError(f"unknown parameter(s) for {family}: {', '.join(sorted(unknown))}")
    missing = required - set(params)
    if missing:
        raise ParseError(f"missing parameter(s) for {family}: {', '.join(sorted(missing))}")
    spec = StateSpec(family, params, int(seed), int(count))
    spec.build(0)  # validates parameter ranges eagerly
    return spec
