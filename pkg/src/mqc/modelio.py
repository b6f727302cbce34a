"""Plain-text readers and writers for models and sample populations.

Model files
-----------
Line-oriented.  ``#`` starts a comment (whole line or trailing); blank lines
are ignored.  The first payload line is a header, ``ising N`` or ``qubo N``
with N the number of variables.  After it, in any order::

    offset X        # constant energy offset (at most once)
    v I A           # linear coefficient A on variable I
    c I J B         # coupler B on the pair (I, J), requires I < J

Each variable and each pair may appear at most once.  Parse errors report
the offending 1-based line number.

Sample files
------------
One sample per line, whitespace-separated values: -1/+1 for spin samples,
0/1 for binary samples.  Every line must have exactly the model's variable
count.
"""

from __future__ import annotations

import os

import numpy as np

from .model import IsingModel, QuboModel

__all__ = [
    "ModelFormatError",
    "SampleFormatError",
    "parse_model",
    "load_model",
    "serialize_model",
    "save_model",
    "parse_samples",
    "load_samples",
    "serialize_samples",
    "save_samples",
]


class ModelFormatError(ValueError):
    """Malformed model text; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SampleFormatError(ValueError):
    """Malformed samples text; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _payload_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_index(token: str, n: int, lineno: int, what: str) -> int:
    try:
        i = int(token)
    except ValueError:
        raise ModelFormatError(lineno, f"{what} index {token!r} is not an integer") from None
    if not 0 <= i < n:
        raise ModelFormatError(lineno, f"{what} index {i} out of range [0, {n})")
    return i


def _parse_float(token: str, lineno: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ModelFormatError(lineno, f"{what} {token!r} is not a number") from None
    if not np.isfinite(value):
        raise ModelFormatError(lineno, f"{what} must be finite, got {token!r}")
    return value


def parse_model(text: str) -> IsingModel | QuboModel:
    """Parse model text into an :class:`IsingModel` or :class:`QuboModel`."""
    lines = _payload_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ModelFormatError(1, "empty model: missing 'ising N' or 'qubo N' header") from None

    fields = header.split()
    kind = fields[0].lower()
    if kind not in ("ising", "qubo") or len(fields) != 2:
        raise ModelFormatError(lineno, f"expected header 'ising N' or 'qubo N', got {header!r}")
    try:
        n = int(fields[1])
    except ValueError:
        raise ModelFormatError(lineno, f"variable count {fields[1]!r} is not an integer") from None
    if n <= 0:
        raise ModelFormatError(lineno, f"variable count must be positive, got {n}")

    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    offset = 0.0
    saw_offset = False

    for lineno, line in lines:
        fields = line.split()
        tag = fields[0]
        if tag == "v":
            if len(fields) != 3:
                raise ModelFormatError(lineno, f"expected 'v I A', got {line!r}")
            i = _parse_index(fields[1], n, lineno, "variable")
            if i in linear:
                raise ModelFormatError(lineno, f"duplicate linear term for variable {i}")
            linear[i] = _parse_float(fields[2], lineno, "linear coefficient")
        elif tag == "c":
            if len(fields) != 4:
                raise ModelFormatError(lineno, f"expected 'c I J B', got {line!r}")
            i = _parse_index(fields[1], n, lineno, "coupler")
            j = _parse_index(fields[2], n, lineno, "coupler")
            if i >= j:
                raise ModelFormatError(lineno, f"coupler requires I < J, got ({i}, {j})")
            if (i, j) in quadratic:
                raise ModelFormatError(lineno, f"duplicate coupler for pair ({i}, {j})")
            quadratic[(i, j)] = _parse_float(fields[3], lineno, "coupler value")
        elif tag == "offset":
            if len(fields) != 2:
                raise ModelFormatError(lineno, f"expected 'offset X', got {line!r}")
            if saw_offset:
                raise ModelFormatError(lineno, "duplicate offset line")
            offset = _parse_float(fields[1], lineno, "offset")
            saw_offset = True
        else:
            raise ModelFormatError(lineno, f"unknown directive {tag!r}")

    if kind == "ising":
        return IsingModel(n, linear, quadratic, offset)
    return QuboModel(n, linear, quadratic, offset)


def serialize_model(model: IsingModel | QuboModel) -> str:
    """Render a model as text; parses back to an identical model."""
    if isinstance(model, IsingModel):
        kind, n = "ising", model.num_qubits
    elif isinstance(model, QuboModel):
        kind, n = "qubo", model.num_vars
    else:
        raise TypeError(f"expected IsingModel or QuboModel, got {type(model).__name__}")

    out = [f"{kind} {n}"]
    if model.offset != 0.0:
        out.append(f"offset {model.offset!r}")
    for i in sorted(model.linear):
        out.append(f"v {i} {model.linear[i]!r}")
    for i, j in sorted(model.quadratic):
        out.append(f"c {i} {j} {model.quadratic[i, j]!r}")
    return "\n".join(out) + "\n"


def load_model(path: str | os.PathLike) -> IsingModel | QuboModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def save_model(model: IsingModel | QuboModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_model(model))


def parse_samples(text: str, num_vars: int, alphabet: str = "spin") -> np.ndarray:
    """Parse sample lines into an int8 matrix of shape (num_samples, num_vars).

    ``alphabet`` is ``"spin"`` (values -1/+1) or ``"binary"`` (values 0/1).
    """
    if alphabet == "spin":
        allowed = (-1, 1)
    elif alphabet == "binary":
        allowed = (0, 1)
    else:
        raise ValueError(f"alphabet must be 'spin' or 'binary', got {alphabet!r}")

    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != num_vars:
            raise SampleFormatError(
                lineno, f"expected {num_vars} values, got {len(fields)}"
            )
        row = np.empty(num_vars, dtype=np.int8)
        for k, token in enumerate(fields):
            try:
                value = int(token)
            except ValueError:
                raise SampleFormatError(lineno, f"value {token!r} is not an integer") from None
            if value not in allowed:
                raise SampleFormatError(
                    lineno,
                    f"value {value} not in {{{allowed[0]}, {allowed[1]}}}",
                )
            row[k] = value
        rows.append(row)

    if not rows:
        return np.empty((0, num_vars), dtype=np.int8)
    return np.vstack(rows)


def serialize_samples(samples: np.ndarray) -> str:
    samples = np.atleast_2d(np.asarray(samples))
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in samples)


def load_samples(path: str | os.PathLike, num_vars: int, alphabet: str = "spin") -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_samples(fh.read(), num_vars, alphabet)


def save_samples(samples: np.ndarray, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_samples(samples))
