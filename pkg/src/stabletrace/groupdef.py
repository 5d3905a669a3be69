"""Parser and emitter for the plain-text group-definition format (.grp).

Line-oriented `key = value` entries grouped into sections.  Integer vectors
are space-separated tokens in parentheses, rationals are written p/q, and
`#` starts a comment.  See docs/groupdef.md for the grammar.  Shipped files
are in canonical form: parse followed by emit is byte-identical.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .rootdata import BasedRootDatum, DatumError, LeviDescriptor

ENV_DATA_DIR = "STABLE_TRACE_DATA"

_SECTIONS = ("lattice", "roots", "profile")

_PROFILE_KEY_ORDER = (
    "tamagawa",
    "k",
    "d",
    "omega_r",
    "weyl_order",
    "component_index",
    "pseudo_sign",
    "iota",
    "chi_k",
    "chi_case",
    "chi_prefactor",
    "chi_cosets",
    "chi_torsion",
)

_LEVI_KEY_ORDER = ("imaginary", "real", "dim_a", "n_levi", "tamagawa", "k", "d", "chi_k")


class GroupDefError(ValueError):
    """Parse or validation failure, addressed to a source line."""

    def __init__(self, source: str, line: int, message: str, column: int | None = None):
        self.source = source
        self.line = line
        self.column = column
        where = f"{source}:{line}" if column is None else f"{source}:{line}:{column}"
        super().__init__(f"{where}: {message}")


@dataclass
class GroupDefFile:
    """Parsed form of one .grp file."""

    name: str
    rank: int
    relations: list[tuple[int, ...]] = field(default_factory=list)
    kernels: list[tuple[int, ...]] = field(default_factory=list)
    central: tuple[int, ...] | None = None
    inner_rows: list[tuple[Fraction, ...]] | None = None  # None means identity
    roots: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    simple: tuple[int, ...] = ()
    profile: dict = field(default_factory=dict)
    chi_factors: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    citations: list[tuple[str, str]] = field(default_factory=list)
    levis: dict[str, dict] = field(default_factory=dict)
    source: str = "<string>"

    def to_datum(self) -> BasedRootDatum:
        pos = [r for r, _ in self.roots]
        neg = [tuple(-c for c in r) for r, _ in self.roots]
        cpos = [c for _, c in self.roots]
        cneg = [tuple(-x for x in c) for _, c in self.roots]
        return BasedRootDatum(
            self.name,
            self.rank,
            self.relations,
            self.kernels,
            pos + neg,
            cpos + cneg,
            self.simple,
            self.inner_rows,
            self.central,
        )

    def levi_descriptors(self) -> dict[str, LeviDescriptor]:
        out = {}
        for name, data in self.levis.items():
            out[name] = LeviDescriptor(
                name,
                tuple(data["imaginary"]),
                tuple(data["real"]),
                int(data["dim_a"]),
            )
        return out


# -- parsing -------------------------------------------------------------


def _parse_vector(text: str, source: str, line: int) -> tuple[tuple[int, ...], str]:
    """Read one parenthesized integer vector from the front of text."""
    text = text.lstrip()
    if not text.startswith("("):
        raise GroupDefError(source, line, f"expected '(' to open a vector, got {text[:10]!r}")
    close = text.find(")")
    if close < 0:
        raise GroupDefError(source, line, "unterminated vector: missing ')'")
    body = text[1:close].split()
    values = []
    for tok in body:
        try:
            values.append(int(tok))
        except ValueError:
            raise GroupDefError(source, line, f"non-integer vector entry {tok!r}") from None
    return tuple(values), text[close + 1 :].strip()


def _parse_rat(tok: str, source: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise GroupDefError(source, line, f"malformed rational {tok!r}") from None


def _parse_int(tok: str, source: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GroupDefError(source, line, f"malformed integer {tok!r}") from None


def parse_groupdef(text: str, source: str = "<string>") -> GroupDefFile:
    """Parse and fully validate a group definition."""
    gdf = GroupDefFile(name="", rank=0, source=source)
    section: str | None = None
    levi_name: str | None = None
    seen_rank = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise GroupDefError(source, lineno, "unterminated section header")
            header = stripped[1:-1].strip()
            if header.startswith("levi "):
                levi_name = header[5:].strip()
                if not levi_name:
                    raise GroupDefError(source, lineno, "levi section requires a name")
                if levi_name in gdf.levis:
                    raise GroupDefError(source, lineno, f"duplicate levi section {levi_name!r}")
                gdf.levis[levi_name] = {}
                section = "levi"
            elif header in _SECTIONS:
                section = header
                levi_name = None
            else:
                raise GroupDefError(source, lineno, f"unknown section [{header}]")
            continue
        if "=" not in stripped:
            raise GroupDefError(source, lineno, "expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()

        if section is None:
            if key == "name":
                gdf.name = value
            elif key == "rank":
                gdf.rank = _parse_int(value, source, lineno)
                seen_rank = True
            else:
                raise GroupDefError(source, lineno, f"unexpected key {key!r} before any section")
            continue

        if not seen_rank:
            raise GroupDefError(source, lineno, "rank must be declared before sections")

        if section == "lattice":
            if key in ("relation", "kernel", "central"):
                vec, rest = _parse_vector(value, source, lineno)
                if rest:
                    raise GroupDefError(source, lineno, f"trailing content {rest!r}")
                if len(vec) != gdf.rank:
                    raise GroupDefError(
                        source, lineno, f"vector arity {len(vec)} does not match rank {gdf.rank}"
                    )
                if key == "relation":
                    gdf.relations.append(vec)
                elif key == "kernel":
                    gdf.kernels.append(vec)
                else:
                    gdf.central = vec
            elif key == "inner":
                if value != "identity":
                    raise GroupDefError(source, lineno, "inner must be 'identity' or inner_row lines")
                gdf.inner_rows = None
            elif key == "inner_row":
                vec, rest = _parse_vector(value, source, lineno)
                if rest:
                    raise GroupDefError(source, lineno, f"trailing content {rest!r}")
                if gdf.inner_rows is None:
                    gdf.inner_rows = []
                gdf.inner_rows.append(tuple(Fraction(c) for c in vec))
            else:
                raise GroupDefError(source, lineno, f"unknown lattice key {key!r}")
        elif section == "roots":
            if key == "root":
                root, rest = _parse_vector(value, source, lineno)
                coroot, rest = _parse_vector(rest, source, lineno)
                if rest:
                    raise GroupDefError(source, lineno, f"trailing content {rest!r}")
                for v in (root, coroot):
                    if len(v) != gdf.rank:
                        raise GroupDefError(
                            source, lineno, f"vector arity {len(v)} does not match rank {gdf.rank}"
                        )
                gdf.roots.append((root, coroot))
            elif key == "simple":
                vec, rest = _parse_vector(value, source, lineno)
                if rest:
                    raise GroupDefError(source, lineno, f"trailing content {rest!r}")
                gdf.simple = vec
            else:
                raise GroupDefError(source, lineno, f"unknown roots key {key!r}")
        elif section == "profile":
            if key == "chi_factor":
                vec, rest = _parse_vector(value, source, lineno)
                if not rest:
                    raise GroupDefError(source, lineno, "chi_factor needs exponents and a Weyl order")
                gdf.chi_factors.append((vec, _parse_int(rest, source, lineno)))
            elif key == "cite":
                target, sep, note = value.partition(":")
                if not sep:
                    raise GroupDefError(source, lineno, "cite must look like 'cite = key: text'")
                gdf.citations.append((target.strip(), note.strip()))
            elif key in ("chi_case",):
                gdf.profile[key] = value
            elif key in ("k", "d", "omega_r", "weyl_order", "component_index",
                         "pseudo_sign", "chi_cosets", "chi_torsion"):
                gdf.profile[key] = _parse_int(value, source, lineno)
            elif key in ("tamagawa", "iota", "chi_k", "chi_prefactor"):
                gdf.profile[key] = _parse_rat(value, source, lineno)
            else:
                raise GroupDefError(source, lineno, f"unknown profile key {key!r}")
        elif section == "levi":
            data = gdf.levis[levi_name]
            if key in ("imaginary", "real"):
                vec, rest = _parse_vector(value, source, lineno)
                if rest:
                    raise GroupDefError(source, lineno, f"trailing content {rest!r}")
                data[key] = vec
            elif key in ("dim_a", "n_levi", "k", "d"):
                data[key] = _parse_int(value, source, lineno)
            elif key in ("tamagawa", "chi_k"):
                data[key] = _parse_rat(value, source, lineno)
            else:
                raise GroupDefError(source, lineno, f"unknown levi key {key!r}")

    if not gdf.name:
        raise GroupDefError(source, 1, "missing group name")
    if not seen_rank:
        raise GroupDefError(source, 1, "missing rank")

    _validate(gdf)
    return gdf


def _validate(gdf: GroupDefFile) -> None:
    try:
        datum = gdf.to_datum()
    except DatumError as exc:
        raise GroupDefError(gdf.source, 1, f"datum invariant violated: {exc}") from exc
    n_pos = len(gdf.roots)
    for name, data in gdf.levis.items():
        for key in _LEVI_KEY_ORDER:
            if key not in data:
                raise GroupDefError(gdf.source, 1, f"levi {name!r} is missing key {key!r}")
        for key in ("imaginary", "real"):
            for idx in data[key]:
                if not (0 <= idx < n_pos):
                    raise GroupDefError(
                        gdf.source, 1,
                        f"levi {name!r} {key} index {idx} out of range 0..{n_pos - 1}",
                    )
    if "weyl_order" in gdf.profile:
        order = len(datum.weyl_group)
        if order != gdf.profile["weyl_order"]:
            raise GroupDefError(
                gdf.source, 1,
                f"declared weyl_order {gdf.profile['weyl_order']} but closure has {order}",
            )
    if "d" in gdf.profile and "omega_r" in gdf.profile and "weyl_order" in gdf.profile:
        if gdf.profile["d"] * gdf.profile["omega_r"] != gdf.profile["weyl_order"]:
            raise GroupDefError(
                gdf.source, 1,
                "profile violates d * omega_r = |Weyl group|",
            )


# -- emission ------------------------------------------------------------


def _fmt_vec(vec) -> str:
    return "(" + " ".join(str(int(c)) for c in vec) + ")"


def emit_groupdef(gdf: GroupDefFile) -> str:
    """Canonical serialization; inverse of parse_groupdef on canonical files."""
    out = []
    out.append(f"name = {gdf.name}")
    out.append(f"rank = {gdf.rank}")
    out.append("")
    out.append("[lattice]")
    for vec in gdf.relations:
        out.append(f"relation = {_fmt_vec(vec)}")
    for vec in gdf.kernels:
        out.append(f"kernel = {_fmt_vec(vec)}")
    if gdf.central is not None:
        out.append(f"central = {_fmt_vec(gdf.central)}")
    if gdf.inner_rows is None:
        out.append("inner = identity")
    else:
        for row in gdf.inner_rows:
            out.append(f"inner_row = {_fmt_vec(row)}")
    out.append("")
    out.append("[roots]")
    for root, coroot in gdf.roots:
        out.append(f"root = {_fmt_vec(root)} {_fmt_vec(coroot)}")
    out.append(f"simple = {_fmt_vec(gdf.simple)}")
    if gdf.profile or gdf.chi_factors or gdf.citations:
        out.append("")
        out.append("[profile]")
        for key in _PROFILE_KEY_ORDER:
            if key in gdf.profile:
                out.append(f"{key} = {gdf.profile[key]}")
        for vec, omega in gdf.chi_factors:
            out.append(f"chi_factor = {_fmt_vec(vec)} {omega}")
        for target, note in gdf.citations:
            out.append(f"cite = {target}: {note}")
    for name, data in gdf.levis.items():
        out.append("")
        out.append(f"[levi {name}]")
        for key in _LEVI_KEY_ORDER:
            value = data[key]
            if key in ("imaginary", "real"):
                out.append(f"{key} = {_fmt_vec(value)}")
            else:
                out.append(f"{key} = {value}")
    return "\n".join(out) + "\n"


# -- shipped data --------------------------------------------------------


def data_dirs() -> list[Path]:
    dirs = []
    env = os.environ.get(ENV_DATA_DIR)
    if env:
        dirs.append(Path(env))
    dirs.append(Path(str(resources.files("stabletrace").joinpath("data"))))
    return dirs


def list_groups() -> list[str]:
    names = []
    for d in data_dirs():
        if d.is_dir():
            for p in sorted(d.glob("*.grp")):
                if p.stem not in names:
                    names.append(p.stem)
    return names


def group_path(name: str) -> Path:
    for d in data_dirs():
        p = d / f"{name}.grp"
        if p.is_file():
            return p
    raise KeyError(f"no group definition named {name!r} (searched {[str(d) for d in data_dirs()]})")


@lru_cache(maxsize=None)
def _load_cached(path_str: str) -> GroupDefFile:
    path = Path(path_str)
    return parse_groupdef(path.read_text(), source=path_str)


def load_group(name: str) -> GroupDefFile:
    """Parsed definition for a shipped or user-supplied group; treat as read-only."""
    return _load_cached(str(group_path(name)))
