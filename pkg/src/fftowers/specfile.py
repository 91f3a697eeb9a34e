"""Sectioned ``key = value`` spec files describing a field and named towers.

::

    format = 1

    [field]
    p = 2
    modulus = t^3+t+1

    [tower L]
    H = x^2*y^2 + x*y + x^2 + 1

    [tower H]
    a = T^2+T
    b = (T^2+T+1)/T

    [catalog]
    file = more_towers.spec

Comments start with ``#``.  A tower gives either ``a`` and ``b`` (one
variable each) or ``H`` in the variables ``old``/``new`` (default x, y).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .bivariate import BivariatePolynomial
from .errors import ParseError, TowerError
from .gf import FiniteField, format_zp_poly, make_field
from .parse import expression_variable, parse_bivariate, parse_rational, parse_zp_polynomial
from .tower import TowerDef

FORMAT_VERSION = 1
_SECTION = re.compile(r"\[\s*([A-Za-z]+)(?:\s+([A-Za-z_][A-Za-z0-9_\-]*))?\s*\]$")
_KEY = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*")


class SpecSyntaxError(ParseError):
    pass


@dataclass
class SpecFile:
    field: FiniteField
    towers: dict[str, TowerDef]
    catalog: list[str] = dc_field(default_factory=list)
    path: Path | None = None

    def tower(self, name: str | None = None) -> TowerDef:
        if name is None:
            if len(self.towers) != 1:
                raise TowerError(f"spec defines {len(self.towers)} towers; name one of {sorted(self.towers)}")
            return next(iter(self.towers.values()))
        try:
            return self.towers[name]
        except KeyError:
            raise TowerError(f"no tower named {name!r}; have {sorted(self.towers)}") from None

    def format(self) -> str:
        F = self.field
        lines = [f"format = {FORMAT_VERSION}", "", "[field]", f"p = {F.p}",
                 f"modulus = {format_zp_poly(F.modulus)}"]
        if F.symbol != "g":
            lines.append(f"symbol = {F.symbol}")
        for name, t in self.towers.items():
            lines += ["", f"[tower {name}]"]
            if t.has_ab:
                lines.append(f"a = {t.a.format(t.new_var)}")
                lines.append(f"b = {t.b.format(t.old_var)}")
            else:
                lines.append(f"H = {t.H.format(t.old_var, t.new_var)}")
                lines.append(f"old = {t.old_var}")
                lines.append(f"new = {t.new_var}")
        if self.catalog:
            lines += ["", "[catalog]"] + [f"file = {c}" for c in self.catalog]
        return "\n".join(lines) + "\n"

    def structure(self) -> tuple:
        """Comparable summary used for round-trip checks."""
        return (
            self.field,
            tuple((n, t.a, t.b, t.H) for n, t in self.towers.items()),
            tuple(self.catalog),
        )


@dataclass
class _Entry:
    value: str
    line: int
    column: int  # 1-based column where the value starts


def _split(text: str):
    """Yield (kind, payload, line, column) records."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        indent = len(body) - len(stripped)
        if stripped.startswith("["):
            m = _SECTION.match(stripped)
            if not m:
                raise SpecSyntaxError("malformed section header", line=lineno, column=indent + 1)
            yield "section", (m.group(1), m.group(2)), lineno, indent + 1
            continue
        m = _KEY.match(stripped)
        if not m:
            raise SpecSyntaxError("expected 'key = value'", line=lineno, column=indent + 1)
        value = stripped[m.end():]
        if not value:
            raise SpecSyntaxError(f"empty value for {m.group(1)!r}", line=lineno, column=indent + m.end() + 1)
        yield "key", (m.group(1), _Entry(value, lineno, indent + m.end() + 1)), lineno, indent + 1


def _located(entry: _Entry, fn, *args):
    """Run a parser on an entry, translating positions to line/column."""
    try:
        return fn(entry.value, *args)
    except SpecSyntaxError:
        raise
    except ParseError as exc:
        col = entry.column + (exc.position or 0)
        msg = str(exc).rsplit(" (", 1)[0]
        raise SpecSyntaxError(msg, line=entry.line, column=col) from exc


def _read_sections(text: str):
    header: dict[str, _Entry] = {}
    sections: list[tuple[str, str | None, int, dict[str, _Entry]]] = []
    for kind, payload, line, col in _split(text):
        if kind == "section":
            kind_name, name = payload
            if kind_name not in ("field", "tower", "catalog"):
                raise SpecSyntaxError(f"unknown section [{kind_name}]", line=line, column=col)
            if kind_name == "tower" and not name:
                raise SpecSyntaxError("tower sections need a name: [tower NAME]", line=line, column=col)
            if kind_name != "tower" and name:
                raise SpecSyntaxError(f"[{kind_name}] takes no name", line=line, column=col)
            sections.append((kind_name, name, line, {}))
            continue
        key, entry = payload
        target = sections[-1][3] if sections else header
        if key in target and not (sections and sections[-1][0] == "catalog"):
            raise SpecSyntaxError(f"duplicate key {key!r}", line=line, column=col)
        if sections and sections[-1][0] == "catalog":
            target.setdefault("_files", [])
            target["_files"].append(entry)  # type: ignore[union-attr]
            if key != "file":
                raise SpecSyntaxError("catalog entries are 'file = PATH'", line=line, column=col)
            continue
        target[key] = entry
    return header, sections


def _check_keys(keys: dict, allowed: set[str], line: int):
    for k, e in keys.items():
        if k not in allowed:
            raise SpecSyntaxError(f"unknown key {k!r}", line=e.line, column=e.column)


def _build_field(keys: dict[str, _Entry], line: int) -> FiniteField:
    _check_keys(keys, {"p", "modulus", "symbol"}, line)
    if "p" not in keys:
        raise SpecSyntaxError("[field] needs p", line=line, column=1)
    p_entry = keys["p"]
    if not p_entry.value.isdigit():
        raise SpecSyntaxError("p must be a positive integer", line=p_entry.line, column=p_entry.column)
    p = int(p_entry.value)
    symbol = keys["symbol"].value if "symbol" in keys else "g"
    if "modulus" in keys:
        modulus = _located(keys["modulus"], parse_zp_polynomial, p)
    else:
        modulus = [0, 1]
    return make_field(p, tuple(modulus), symbol)


def _build_tower(name: str, keys: dict[str, _Entry], F: FiniteField, line: int) -> TowerDef:
    _check_keys(keys, {"a", "b", "H", "old", "new"}, line)
    if "H" in keys:
        if "a" in keys or "b" in keys:
            raise SpecSyntaxError("give either a and b, or H", line=line, column=1)
        old = keys["old"].value if "old" in keys else "x"
        new = keys["new"].value if "new" in keys else "y"
        H: BivariatePolynomial = _located(keys["H"], parse_bivariate, F, old, new)
        if H.deg_t < 1:
            e = keys["H"]
            raise SpecSyntaxError(f"H must involve {new!r}", line=e.line, column=e.column)
        return TowerDef.from_bivariate(H, name, old, new)
    for k in ("a", "b"):
        if k not in keys:
            raise SpecSyntaxError(f"[tower {name}] needs {k}", line=line, column=1)
    a = _located(keys["a"], parse_rational, F)
    b = _located(keys["b"], parse_rational, F)
    for k, r in (("a", a), ("b", b)):
        if r.is_constant():
            e = keys[k]
            raise SpecSyntaxError(f"{k} must be nonconstant", line=e.line, column=e.column)
    new = _located(keys["a"], expression_variable, F) or "T"
    old = _located(keys["b"], expression_variable, F) or "T"
    return TowerDef(F, a, b, label=name, old_var=old, new_var=new)


def parse_spec_text(text: str, path: Path | None = None, field: FiniteField | None = None) -> SpecFile:
    """Parse spec text; ``field`` supplies the field for catalog files without one."""
    header, sections = _read_sections(text)
    fmt = header.get("format")
    if fmt is None:
        raise SpecSyntaxError("missing 'format = 1' header", line=1, column=1)
    if fmt.value != str(FORMAT_VERSION):
        raise SpecSyntaxError(f"unsupported format {fmt.value!r}", line=fmt.line, column=fmt.column)
    _check_keys(header, {"format"}, 1)
    fields = [s for s in sections if s[0] == "field"]
    if len(fields) > 1:
        raise SpecSyntaxError("more than one [field] section", line=fields[1][2], column=1)
    if fields:
        F = _build_field(fields[0][3], fields[0][2])
        if field is not None and F != field:
            raise SpecSyntaxError("catalog field differs from the spec's field", line=fields[0][2], column=1)
    elif field is not None:
        F = field
    else:
        raise SpecSyntaxError("missing [field] section", line=1, column=1)
    towers: dict[str, TowerDef] = {}
    catalog: list[str] = []
    for kind, name, line, keys in sections:
        if kind == "tower":
            if name in towers:
                raise SpecSyntaxError(f"duplicate tower {name!r}", line=line, column=1)
            towers[name] = _build_tower(name, keys, F, line)
        elif kind == "catalog":
            catalog.extend(e.value for e in keys.get("_files", []))
    if not towers and field is None:
        raise SpecSyntaxError("no [tower NAME] section", line=1, column=1)
    return SpecFile(F, towers, catalog, path)


def parse_spec(path: str | Path) -> SpecFile:
    path = Path(path)
    return parse_spec_text(path.read_text(), path)


def load_catalog(spec: SpecFile, extra: str | Path | None = None) -> list[TowerDef]:
    """Towers from the spec's [catalog] files (relative to the spec) and an optional extra file."""
    paths = []
    base = spec.path.parent if spec.path else Path.cwd()
    paths += [base / c for c in spec.catalog]
    if extra is not None:
        paths.append(Path(extra))
    out: list[TowerDef] = []
    for p in paths:
        cat = parse_spec_text(Path(p).read_text(), Path(p), field=spec.field)
        out.extend(cat.towers.values())
    return out
