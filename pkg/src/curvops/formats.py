"""Plain-text input formats for models and charts.

Both formats are UTF-8, line oriented, with ``[section]`` headers and ``#``
comments.  Indices are 1-based.

Model file::

    [model]
    name = EX4            # optional
    [gram]
    0 1                   # one row per line, rationals
    1 0
    [curvature]
    1 2 2 1 = -1          # i j k l = value; symmetric images are implied

Chart file::

    [chart]
    name = EX9
    [coords]
    x1 x2 x3 x4
    [metric]
    3 1 = 1               # i j = expression; give each unordered pair once
    4 4 = -x1*x2
    [orientation]
    1
    [point]
    0, 0, 0, 0
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import curvmodel as cm
from .exactla import GramForm, DegenerateFormError
from .exprparse import parse_expr
from .geometry import Chart

MODEL_SECTIONS = ("model", "gram", "curvature")
CHART_SECTIONS = ("chart", "coords", "metric", "orientation", "point")


class InputFormatError(ValueError):
    """Malformed input; ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


@dataclass
class _Section:
    name: str
    line: int
    body: list = field(default_factory=list)  # (lineno, text)


def _sections(text: str, source: str) -> dict[str, _Section]:
    out: dict[str, _Section] = {}
    cur = None
    for n, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("[") and s.endswith("]"):
            name = s[1:-1].strip().lower()
            if name in out:
                raise InputFormatError(f"duplicate section [{name}]", n, source)
            cur = out[name] = _Section(name, n)
            continue
        if cur is None:
            raise InputFormatError("content before the first section header", n, source)
        cur.body.append((n, s))
    return out


def _frac(tok: str, n: int, source: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputFormatError(f"not a rational number: {tok!r}", n, source) from None


def _keyvals(sec: _Section | None, source: str) -> dict:
    out = {}
    for n, s in (sec.body if sec else []):
        if "=" not in s:
            raise InputFormatError("expected key = value", n, source)
        k, v = (p.strip() for p in s.split("=", 1))
        out[k] = v
    return out


def detect_kind(text: str) -> str:
    secs = _sections(text, "<input>")
    if "coords" in secs or "metric" in secs:
        return "chart"
    if "gram" in secs:
        return "model"
    raise InputFormatError("cannot tell model from chart: need [gram] or [coords]")


# ---------------------------------------------------------------------------
# models

def parse_model(text: str, source: str = "<input>") -> tuple[cm.Model, dict]:
    secs = _sections(text, source)
    for s in secs:
        if s not in MODEL_SECTIONS:
            raise InputFormatError(f"unknown section [{s}]", secs[s].line, source)
    meta = _keyvals(secs.get("model"), source)
    if "gram" not in secs or not secs["gram"].body:
        raise InputFormatError("missing or empty [gram] section", None, source)
    rows = []
    for n, s in secs["gram"].body:
        rows.append([_frac(t, n, source) for t in s.replace(",", " ").split()])
    m = len(rows)
    for (n, _), r in zip(secs["gram"].body, rows):
        if len(r) != m:
            raise InputFormatError(f"gram row has {len(r)} entries, expected {m}", n, source)
    G = np.array(rows, dtype=object)
    for i in range(m):
        for j in range(i + 1, m):
            if G[i, j] != G[j, i]:
                n = secs["gram"].body[i][0]
                raise InputFormatError(f"gram matrix is not symmetric at ({i + 1},{j + 1})", n, source)
    try:
        gram = GramForm(G)
    except DegenerateFormError as e:
        raise InputFormatError(str(e), secs["gram"].line, source) from None

    entries = []
    for n, s in (secs["curvature"].body if "curvature" in secs else []):
        if "=" not in s:
            raise InputFormatError("expected 'i j k l = value'", n, source)
        lhs, rhs = s.split("=", 1)
        idx = lhs.replace(",", " ").split()
        if len(idx) != 4 or not all(t.isdigit() for t in idx):
            raise InputFormatError("expected four 1-based indices", n, source)
        ix = tuple(int(t) - 1 for t in idx)
        if any(not 0 <= i < m for i in ix):
            raise InputFormatError(f"index out of range 1..{m}", n, source)
        entries.append((n, ix, _frac(rhs.strip(), n, source)))
    try:
        model = cm.Model.from_entries(gram, [(ix, v) for _, ix, v in entries])
    except cm.CurvatureSymmetryError as e:
        line = _blame(entries, e)
        raise InputFormatError(f"curvature violates {e.identity}: {e}", line, source) from None
    return model, meta


def _blame(entries, err) -> int | None:
    idx = getattr(err, "index", None)
    if idx is None:
        return None
    for n, ix, _ in entries:
        i, j, k, l = ix
        if tuple(idx) in {(i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                          (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i)}:
            return n
    return entries[-1][0] if entries else None


def dump_model(model: cm.Model, name: str = "") -> str:
    out = []
    if name:
        out += ["[model]", f"name = {name}"]
    out.append("[gram]")
    for row in model.G:
        out.append(" ".join(str(Fraction(v)) for v in row))
    out.append("[curvature]")
    for (i, j, k, l), v in model.nonzero_entries():
        out.append(f"{i + 1} {j + 1} {k + 1} {l + 1} = {Fraction(v)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# charts

def parse_chart(text: str, source: str = "<input>") -> Chart:
    secs = _sections(text, source)
    for s in secs:
        if s not in CHART_SECTIONS:
            raise InputFormatError(f"unknown section [{s}]", secs[s].line, source)
    meta = _keyvals(secs.get("chart"), source)
    if "coords" not in secs or not secs["coords"].body:
        raise InputFormatError("missing or empty [coords] section", None, source)
    names = [t for _, s in secs["coords"].body for t in s.replace(",", " ").split()]
    if len(set(names)) != len(names):
        raise InputFormatError("duplicate coordinate name", secs["coords"].line, source)
    m = len(names)
    entries: dict = {}
    lines: dict = {}
    for n, s in (secs["metric"].body if "metric" in secs else []):
        if "=" not in s:
            raise InputFormatError("expected 'i j = expression'", n, source)
        lhs, rhs = s.split("=", 1)
        idx = lhs.split()
        if len(idx) != 2 or not all(t.isdigit() for t in idx):
            raise InputFormatError("expected two 1-based indices", n, source)
        i, j = (int(t) - 1 for t in idx)
        if not (0 <= i < m and 0 <= j < m):
            raise InputFormatError(f"index out of range 1..{m}", n, source)
        try:
            e = parse_expr(rhs.strip(), names)
        except ValueError as exc:
            raise InputFormatError(f"bad expression: {exc}", n, source) from None
        key = (max(i, j), min(i, j))
        if key in entries:
            if entries[key] != e:
                raise InputFormatError(
                    f"asymmetric metric entry: ({i + 1},{j + 1}) disagrees with line {lines[key]}", n, source)
            continue
        entries[key] = e
        lines[key] = n
    orientation = 1
    if "orientation" in secs and secs["orientation"].body:
        n, s = secs["orientation"].body[0]
        if s not in ("1", "+1", "-1"):
            raise InputFormatError("orientation must be 1 or -1", n, source)
        orientation = int(s)
    point = None
    if "point" in secs and secs["point"].body:
        n, s = secs["point"].body[0]
        point = tuple(_frac(t, n, source) for t in s.replace(",", " ").split())
        if len(point) != m:
            raise InputFormatError(f"point has {len(point)} coordinates, expected {m}", n, source)
    try:
        return Chart.from_entries(names, entries, orientation=orientation, base_point=point,
                                  name=meta.get("name", ""), domain_note=meta.get("domain", ""))
    except ValueError as exc:
        raise InputFormatError(str(exc), None, source) from None


def dump_chart(chart: Chart) -> str:
    out = ["[chart]"]
    if chart.name:
        out.append(f"name = {chart.name}")
    if chart.domain_note:
        out.append(f"domain = {chart.domain_note}")
    out += ["[coords]", " ".join(chart.names), "[metric]"]
    for i in range(chart.dim):
        for j in range(i + 1):
            if chart.g[i, j]:
                out.append(f"{i + 1} {j + 1} = {chart.g[i, j].render()}")
    out += ["[orientation]", str(chart.orientation)]
    if chart.base_point is not None:
        out += ["[point]", ", ".join(str(Fraction(v)) for v in chart.base_point)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------

def load_input(path) -> cm.Model | Chart:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read file: {exc.strerror}", None, str(p)) from None
    except UnicodeDecodeError:
        raise InputFormatError("file is not valid UTF-8", None, str(p)) from None
    return loads(text, str(p))


def loads(text: str, source: str = "<input>") -> cm.Model | Chart:
    secs = _sections(text, source)
    if "coords" in secs or "metric" in secs:
        return parse_chart(text, source)
    if "gram" in secs:
        return parse_model(text, source)[0]
    raise InputFormatError("need a [gram] (model) or [coords] (chart) section", None, source)


def data_path(name: str) -> Path:
    return Path(__file__).parent / "data" / name
