"""Newform input data: validated Fourier coefficients plus invariants.

Coefficients come from three places: the weight-12 level-1 cusp form is
expanded on the fly from its eta power product, a small corpus of eta
products and quadratic twists ships as package data, and anything else is
ingested from user-supplied JSON or CSV files.
"""

from __future__ import annotations

import csv
import importlib.resources
import io
import json
from dataclasses import dataclass, replace
from functools import lru_cache

from .errors import AmbiguousSign, ParseError, ValidationError

_DELIGNE_SLACK = 1.0 + 1e-9  # float inputs only; integer inputs are checked exactly


def divisor_count(n: int) -> int:
    assert n >= 1
    count = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            count *= e + 1
        d += 1
    if n > 1:
        count *= 2
    return count


@dataclass(frozen=True)
class NewformData:
    """Level, even weight >= 4, optional functional-equation sign, and

    coefficients a_1..a_M (a_1 = 1, Deligne bound enforced on ingest).
    """

    label: str
    level: int
    weight: int
    sign: int | None
    coeffs: tuple

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 1:
            raise ValidationError(f"level must be a positive integer, got {self.level!r}")
        if not isinstance(self.weight, int) or self.weight < 4 or self.weight % 2 != 0:
            raise ValidationError(f"weight must be an even integer >= 4, got {self.weight!r}")
        if self.sign not in (1, -1, None):
            raise ValidationError(f"sign must be +1, -1 or None, got {self.sign!r}")
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValidationError("need at least a_1")
        if coeffs[0] != 1:
            raise ValidationError(f"a_1 must equal 1, got {coeffs[0]!r}")
        half = self.weight - 1
        for i, a in enumerate(coeffs):
            n = i + 1
            if isinstance(a, bool) or not isinstance(a, (int, float)):
                raise ValidationError(f"a_{n} has unsupported type {type(a).__name__}")
            d = divisor_count(n)
            if isinstance(a, int):
                if a * a > d * d * n**half:
                    raise ValidationError(f"a_{n}={a} violates the coefficient growth bound")
            else:
                if abs(a) > _DELIGNE_SLACK * d * float(n) ** (half / 2.0):
                    raise ValidationError(f"a_{n}={a} violates the coefficient growth bound")
        object.__setattr__(self, "coeffs", coeffs)

    def a(self, n: int):
        """1-indexed coefficient a_n."""
        return self.coeffs[n - 1]

    def with_sign(self, sign: int) -> "NewformData":
        return replace(self, sign=sign)

    def to_json_text(self) -> str:
        return json.dumps(
            {
                "label": self.label,
                "level": self.level,
                "weight": self.weight,
                "sign": self.sign,
                "an": list(self.coeffs),
            },
            sort_keys=True,
        )

    def to_csv_text(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "an"])
        for i, a in enumerate(self.coeffs):
            writer.writerow([i + 1, a])
        return out.getvalue()


@lru_cache(maxsize=4)
def _eta24(count: int) -> tuple:
    # prod_{n>=1} (1-q^n) via the pentagonal number series, then the 24th
    # power by repeated squaring of the truncated series. Exact integers.
    eta = [0] * count
    eta[0] = 1
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        e2 = j * (3 * j + 1) // 2
        if e1 >= count and e2 >= count:
            break
        sign = -1 if j % 2 == 1 else 1
        if e1 < count:
            eta[e1] += sign
        if e2 < count:
            eta[e2] += sign
        j += 1

    def mul(a, b):
        out = [0] * count
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for k in range(min(len(b), count - i)):
                if b[k]:
                    out[i + k] += ai * b[k]
        return out

    p2 = mul(eta, eta)
    p4 = mul(p2, p2)
    p8 = mul(p4, p4)
    p16 = mul(p8, p8)
    return tuple(mul(p16, p8))


def delta_coefficients(count: int) -> tuple:
    """Exact a_1..a_count of the discriminant cusp form (weight 12, level 1)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    body = _eta24(count)
    return tuple(body[:count])  # shift by one power of q: a_n = body[n-1]


def delta_newform(count: int = 64) -> NewformData:
    return NewformData("1.12.a.a", 1, 12, 1, delta_coefficients(count))


def _from_dict(obj) -> NewformData:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    required = {"label", "level", "weight", "sign", "an"}
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"missing keys: {sorted(missing)}")
    label = obj["label"]
    if not isinstance(label, str):
        raise ParseError("label must be a string")
    an = obj["an"]
    if not isinstance(an, list):
        raise ParseError("an must be a list")
    sign = obj["sign"]
    if sign is not None and sign not in (1, -1):
        raise ParseError(f"sign must be 1, -1 or null, got {sign!r}")
    try:
        return NewformData(label, obj["level"], obj["weight"], sign, tuple(an))
    except ValidationError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def _parse_number(text: str):
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise ParseError(f"not a number: {text!r}") from None


def load_newform(source, fmt: str = "json", label: str = "",
                 level: int | None = None, weight: int | None = None,
                 sign: int | None = None) -> NewformData:
    """Parse a newform from JSON (full schema) or CSV (n,an rows).

    `source` may be bytes, text, or a file object. The CSV format carries
    coefficients only, so level and weight must be passed alongside.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    if not isinstance(source, str):
        raise ParseError(f"unsupported source type {type(source).__name__}")

    if fmt == "json":
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return _from_dict(obj)
    if fmt == "csv":
        if level is None or weight is None:
            raise ParseError("CSV input needs explicit level and weight")
        reader = csv.reader(io.StringIO(source))
        rows = [row for row in reader if row]
        if not rows or [c.strip() for c in rows[0]] != ["n", "an"]:
            raise ParseError("CSV must start with header 'n,an'")
        coeffs = []
        for idx, row in enumerate(rows[1:], start=1):
            if len(row) != 2:
                raise ParseError(f"row {idx}: expected 2 fields, got {len(row)}")
            n = _parse_number(row[0].strip())
            if n != idx:
                raise ParseError(f"row {idx}: indices must be consecutive from 1, got {row[0]!r}")
            coeffs.append(_parse_number(row[1].strip()))
        return NewformData(label or "csv-input", level, weight, sign, tuple(coeffs))
    raise ParseError(f"unknown format {fmt!r}")


def detect_sign(data: NewformData, target_err: float | None = None,
                tol: float = 1e-6) -> int:
    """Infer the functional-equation sign from truncated-series consistency.

    With the correct sign, the completed values computed at two different
    integral split points agree; with the wrong one they differ at the size
    of the misattributed tail. The same-split residual is useless here (it
    vanishes identically for either sign), so two splits are compared.
    """
    from .lvalues import all_critical_values

    k = data.weight
    residuals = {}
    for eps in (1, -1):
        candidate = data.with_sign(eps)
        va = all_critical_values(candidate, target_err, split=1.0)
        vb = all_critical_values(candidate, target_err, split=1.25)
        scale = max(max(abs(v) for v in va.values), max(abs(v) for v in vb.values))
        if scale == 0.0:
            residuals[eps] = float("inf")
            continue
        worst = 0.0
        for j in range(k - 1):
            lhs = va.values[j]
            rhs = eps * vb.values[k - 2 - j]
            worst = max(worst, abs(lhs - rhs) / scale)
        residuals[eps] = worst
    passing = [eps for eps in (1, -1) if residuals[eps] < tol]
    if len(passing) != 1:
        raise AmbiguousSign(
            f"sign detection inconclusive: residuals +1 -> {residuals[1]:.3e}, "
            f"-1 -> {residuals[-1]:.3e}"
        )
    detected = passing[0]
    if data.sign is not None and data.sign != detected:
        raise ValidationError(
            f"declared sign {data.sign:+d} contradicts detected {detected:+d}"
        )
    return detected


def _data_root():
    return importlib.resources.files("zetaperiod") / "data"


def bundled_labels() -> tuple:
    """Labels of the newform fixtures shipped with the package."""
    names = [entry.name for entry in _data_root().iterdir()]
    return tuple(sorted(n[:-5] for n in names if n.endswith(".json")))


def load_bundled(label: str) -> NewformData:
    try:
        text = (_data_root() / f"{label}.json").read_text()
    except (FileNotFoundError, OSError):
        known = ", ".join(bundled_labels())
        raise ValidationError(f"no bundled newform {label!r} (have: {known})") from None
    return load_newform(text)


def corpus() -> tuple:
    """Every bundled newform plus the generated weight-12 level-1 form,

    ordered by (weight, level).
    """
    forms = [delta_newform()] + [load_bundled(lbl) for lbl in bundled_labels()]
    return tuple(sorted(forms, key=lambda f: (f.weight, f.level, f.label)))
