"""E7MAT v1: a line-oriented text format for generator sets.

::

    #E7MAT v1
    construction=tits rep=56 count=133 dim=56 scalar=exact
    @ index=1 label=Y_1
    0 0 0/1,0/1,0/1,0/1;0/1,0/1,0/1,1/6
    ...

    @ index=2 label=Y_2
    ...

Entries are 0-based "row col scalar" in row-major order. Exact scalars use
:meth:`ExactScalar.to_text`, floats are "re,im" with 17 significant digits.
"""

import logging
import os

from .errors import FormatError
from .generators import GeneratorSet
from .scalars import ExactScalar
from .sparse import SparseMatrix

logger = logging.getLogger(__name__)

HEADER = "#E7MAT v1"
META_KEYS = ("construction", "rep", "count", "dim", "scalar")


def format_scalar(value, exact):
    if exact:
        return value.to_text()
    z = complex(value)
    return f"{z.real:.17g},{z.imag:.17g}"


def parse_scalar(text, exact, line_no=None):
    try:
        if exact:
            return ExactScalar.parse(text)
        re_txt, im_txt = text.split(",")
        return complex(float(re_txt), float(im_txt))
    except ValueError as exc:
        raise FormatError(f"line {line_no}: bad scalar {text!r}") from exc


def format_e7mat(g: GeneratorSet, construction=None):
    """Render ``g`` as E7MAT text."""
    exact = g.exact
    lines = [HEADER,
             f"construction={construction or g.construction} rep={g.rep_dim} count={len(g)} "
             f"dim={g.rep_dim} scalar={'exact' if exact else 'float'}"]
    for k, (label, m) in enumerate(zip(g.labels, g.mats)):
        if k:
            lines.append("")
        if any(ch.isspace() for ch in label):
            raise FormatError(f"label {label!r} contains whitespace")
        lines.append(f"@ index={k + 1} label={label}")
        for (r, c) in sorted(m.entries):
            lines.append(f"{r} {c} {format_scalar(m.entries[(r, c)], exact)}")
    return "\n".join(lines) + "\n"


def write_e7mat(g: GeneratorSet, path, construction=None):
    """Write atomically: the file appears complete or not at all."""
    text = format_e7mat(g, construction)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    os.replace(tmp, path)
    logger.info("wrote %d matrices to %s", len(g), path)


def _parse_fields(line, line_no):
    fields = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise FormatError(f"line {line_no}: expected key=value, got {token!r}")
        fields[key] = value
    return fields


def parse_e7mat(text) -> GeneratorSet:
    """Inverse of :func:`format_e7mat`.

    Raises:
        FormatError: On a missing header, bad metadata, a bad entry line or a
            count mismatch.
    """
    lines = text.split("\n")
    if not lines or lines[0].strip() != HEADER:
        raise FormatError(f"line 1: expected {HEADER!r}")
    if len(lines) < 2:
        raise FormatError("line 2: missing metadata")
    meta = _parse_fields(lines[1], 2)
    missing = [k for k in META_KEYS if k not in meta]
    if missing:
        raise FormatError(f"line 2: missing metadata {', '.join(missing)}")
    try:
        count, dim = int(meta["count"]), int(meta["dim"])
        rep = int(meta["rep"])
    except ValueError as exc:
        raise FormatError(f"line 2: non-integer size in {lines[1]!r}") from exc
    if meta["scalar"] not in ("exact", "float"):
        raise FormatError(f"line 2: scalar must be exact or float, got {meta['scalar']!r}")
    exact = meta["scalar"] == "exact"

    mats, labels = [], []
    entries = None
    for line_no, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        if line.startswith("@"):
            if entries is not None:
                mats.append(SparseMatrix((dim, dim), entries, exact=exact))
            fields = _parse_fields(line[1:], line_no)
            if fields.get("index") != str(len(mats) + 1) or "label" not in fields:
                raise FormatError(f"line {line_no}: expected '@ index={len(mats) + 1} label=<name>'")
            labels.append(fields["label"])
            entries = {}
            continue
        if entries is None:
            raise FormatError(f"line {line_no}: entry before the first '@' line")
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"line {line_no}: expected 'row col scalar', got {line!r}")
        try:
            r, c = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {line_no}: bad index in {line!r}") from exc
        if not (0 <= r < dim and 0 <= c < dim):
            raise FormatError(f"line {line_no}: entry ({r}, {c}) outside {dim}x{dim}")
        entries[(r, c)] = parse_scalar(parts[2], exact, line_no)
    if entries is not None:
        mats.append(SparseMatrix((dim, dim), entries, exact=exact))
    if len(mats) != count:
        raise FormatError(f"metadata announces {count} matrices, found {len(mats)}")
    return GeneratorSet(meta["construction"], rep, mats, labels, metadata={"scalar": meta["scalar"]})


def read_e7mat(path) -> GeneratorSet:
    with open(path, "r", encoding="utf-8") as f:
        return parse_e7mat(f.read())
