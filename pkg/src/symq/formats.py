"""Text formats: state files and sweep CSV rows.

State file layout::

    N <integer>
    kind pure|pair
    <re> <im>                 # N+1 lines for kind pure, M from +S down to -S
    s <s1> <s2> <s3>          # kind pair
    t <t11> <t12> <t13> <t22> <t23> <t33>

Numbers are written with 17 significant digits so that write(read(text))
reproduces canonical text exactly.
"""

from __future__ import annotations

import math

import numpy as np

from .collective import PureSymmetricState
from .reduction import NonPhysicalStateError, PairState

CSV_HEADER = (
    "param,I1,I2,I3,I4,I5,I6,I4mI3sq,xi2,maxfluct,"
    "flag_ss,flag_long,flag_window,flag_zero_i1"
)

_UPPER = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


class StateFileError(ValueError):
    """Malformed state file."""


def fmt(value: float) -> str:
    v = float(value)
    if math.isnan(v):
        return "nan"
    return format(v, ".17g")


def write_state(n_qubits: int, state: PureSymmetricState | PairState) -> str:
    lines = [f"N {n_qubits}"]
    if isinstance(state, PureSymmetricState):
        lines.append("kind pure")
        lines += [f"{fmt(a.real)} {fmt(a.imag)}" for a in state.amplitudes]
    elif isinstance(state, PairState):
        lines.append("kind pair")
        lines.append("s " + " ".join(fmt(v) for v in state.s))
        lines.append("t " + " ".join(fmt(state.t[i, j]) for i, j in _UPPER))
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    return "\n".join(lines) + "\n"


def _floats(tokens: list[str], where: str) -> list[float]:
    try:
        return [float(tok) for tok in tokens]
    except ValueError as exc:
        raise StateFileError(f"{where}: {exc}") from None


def read_state(text: str) -> tuple[int, PureSymmetricState | PairState]:
    """Parse a state file.

    Raises StateFileError for syntax problems and NonPhysicalStateError when
    the content parses but violates a state invariant.
    """
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise StateFileError("expected 'N <integer>' and 'kind pure|pair' header lines")
    if len(lines[0]) != 2 or lines[0][0] != "N":
        raise StateFileError("line 1 must be 'N <integer>'")
    try:
        n = int(lines[0][1])
    except ValueError:
        raise StateFileError(f"line 1: N is not an integer: {lines[0][1]!r}") from None
    if n < 1:
        raise StateFileError("N must be positive")
    if len(lines[1]) != 2 or lines[1][0] != "kind":
        raise StateFileError("line 2 must be 'kind pure' or 'kind pair'")
    kind, body = lines[1][1], lines[2:]

    if kind == "pure":
        if len(body) != n + 1:
            raise StateFileError(f"kind pure needs {n + 1} amplitude lines, found {len(body)}")
        amps = []
        for k, row in enumerate(body):
            if len(row) != 2:
                raise StateFileError(f"amplitude line {k + 1} must hold 're im'")
            re, im = _floats(row, f"amplitude line {k + 1}")
            amps.append(complex(re, im))
        try:
            return n, PureSymmetricState(n, np.array(amps))
        except ValueError as exc:
            raise NonPhysicalStateError(str(exc)) from None

    if kind == "pair":
        if len(body) != 2 or body[0][0] != "s" or body[1][0] != "t":
            raise StateFileError("kind pair needs an 's' line followed by a 't' line")
        if len(body[0]) != 4 or len(body[1]) != 7:
            raise StateFileError("'s' takes 3 numbers and 't' takes 6 (upper triangle)")
        s = _floats(body[0][1:], "s line")
        upper = _floats(body[1][1:], "t line")
        t = np.zeros((3, 3))
        for (i, j), v in zip(_UPPER, upper):
            t[i, j] = t[j, i] = v
        return n, PairState(s, t)

    raise StateFileError(f"unknown kind {kind!r}")


def csv_row(param: float, values: list[float], flags: tuple[int, ...]) -> str:
    return ",".join([fmt(param), *(fmt(v) for v in values), *(str(int(f)) for f in flags)])
