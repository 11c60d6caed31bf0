"""JSON state files.

Layout::

    {"version": 1, "kind": "density" | "pure", "m": 2, "n": 2,
     "data": [[re, im], ...]}

``data`` is row-major under the ``i * n + k`` convention: ``(mn)^2`` pairs
for a density matrix, ``mn`` pairs for a pure state. Floats are written as
the shortest decimal that round-trips to the same binary64 value.
"""

import json

import numpy as np

from .errors import ParseError
from .states import BipartiteDims, DensityMatrix, PureState

FORMAT_VERSION = 1
KINDS = ("density", "pure")


def encode(state):
    """Serialize a :class:`DensityMatrix` or :class:`PureState` to text."""
    if isinstance(state, DensityMatrix):
        kind, values = "density", state.matrix.reshape(-1)
    elif isinstance(state, PureState):
        kind, values = "pure", state.amplitudes
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    doc = {
        "version": FORMAT_VERSION,
        "kind": kind,
        "m": state.dims.dim_a,
        "n": state.dims.dim_b,
        "data": [[float(z.real), float(z.imag)] for z in values],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def write(path, state):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(encode(state))


def _require_int(doc, key):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ParseError(f"field {key!r} must be a positive integer, got {v!r}")
    return v


def decode(text, pure=None):
    """Parse a state file.

    Parameters
    ----------
    text : str
    pure : bool, optional
        Expected kind when the document has no ``kind`` field. If both are
        present they must agree.

    Returns
    -------
    DensityMatrix or PureState
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}")
    kind = doc.get("kind")
    if kind is None:
        kind = "pure" if pure else "density"
    elif kind not in KINDS:
        raise ParseError(f"field 'kind' must be one of {KINDS}, got {kind!r}")
    elif pure is not None and (kind == "pure") != bool(pure):
        raise ParseError(f"file declares kind {kind!r} but --pure={bool(pure)}")
    m, n = _require_int(doc, "m"), _require_int(doc, "n")
    data = doc.get("data")
    expected = m * n if kind == "pure" else (m * n) ** 2
    if not isinstance(data, list) or len(data) != expected:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise ParseError(f"field 'data' must hold {expected} [re, im] pairs for m={m}, n={n}; got {got}")
    values = np.empty(expected, dtype=complex)
    for idx, pair in enumerate(data):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise ParseError(f"data[{idx}] must be a [re, im] pair of numbers, got {pair!r}")
        values[idx] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(values)):
        raise ParseError("data contains non-finite numbers")
    dims = BipartiteDims(m, n)
    if kind == "pure":
        return PureState(dims, values)
    return DensityMatrix(dims, values.reshape(m * n, m * n))


def read(path, pure=None):
    with open(path, encoding="utf-8") as fh:
        return decode(fh.read(), pure=pure)


def as_density(state):
    return state.density_matrix() if isinstance(state, PureState) else state
