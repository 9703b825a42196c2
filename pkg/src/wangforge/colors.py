"""Structured edge colors with an injective canonical text form.

A color is one of four kinds::

    atom:B            free text (percent-quoted where needed)
    seq:0.1.1         a finite sequence of naturals, optionally marked (seq^U:0.1)
    idx:c.1.3         a tag followed by integer indices
    tint:2:(atom:B)   a color tagged with a disjoint-union component path

Equality and hashing go through the canonical string, so two colors are
equal exactly when they serialize identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from urllib.parse import quote, unquote

from .errors import ColorParseError

__all__ = ["Color", "atom", "seq", "seq_ext", "idx", "tint"]

# Atoms run to the end of the string, so only '%' and non-printables need escaping.
_ATOM_SAFE = "".join(chr(c) for c in range(0x21, 0x7F) if chr(c) != "%")
# Tags and marks sit between delimiters and must not contain any of them.
_TAG_SAFE = "".join(
    chr(c) for c in range(0x21, 0x7F) if chr(c) not in "%.:()^"
)

KINDS = ("atom", "seq", "idx", "tint")


@dataclass(frozen=True, eq=False, slots=True)
class Color:
    kind: str
    text: str = ""
    nums: tuple[int, ...] = ()
    inner: Color | None = None
    _key: str = field(default="", repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ColorParseError(f"unknown color kind {self.kind!r}")
        if self.kind == "seq" and any(n < 0 for n in self.nums):
            raise ColorParseError("sequence entries must be naturals")
        if self.kind == "tint":
            if self.inner is None or self.inner.kind == "tint":
                raise ColorParseError("tint must wrap exactly one untinted color")
            if not self.nums or any(n < 1 for n in self.nums):
                raise ColorParseError("tint components are numbered from 1")
        object.__setattr__(self, "_key", _encode(self))

    def __eq__(self, other):
        return isinstance(other, Color) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __str__(self):
        return self._key

    def __repr__(self):
        return f"Color({self._key!r})"

    @property
    def canonical(self) -> str:
        return self._key

    @property
    def mark(self) -> str | None:
        """Direction/quadrant mark of a sequence color, if any."""
        if self.kind == "seq" and self.text:
            return self.text
        return None

    def label(self) -> str:
        """Short human-readable label used by renderers."""
        if self.kind == "atom":
            return self.text
        if self.kind == "seq":
            body = "".join(map(str, self.nums)) if self.nums else "λ"
            return f"{body}^{self.text}" if self.text else body
        if self.kind == "idx":
            return self.text + "_" + ",".join(map(str, self.nums))
        path = ".".join(map(str, self.nums))
        return f"{path}:{self.inner.label()}"

    @classmethod
    def parse(cls, text: str) -> Color:
        return _decode(text)


def atom(text) -> Color:
    return Color("atom", str(text))


def seq(nums=(), mark: str | None = None) -> Color:
    return Color("seq", mark or "", tuple(int(n) for n in nums))


def seq_ext(base: Color | tuple, n: int, mark: str | None = None) -> Color:
    """The sequence σ⌢n; normalizes to a plain sequence color."""
    if isinstance(base, Color):
        if base.kind != "seq":
            raise ColorParseError("can only extend a sequence color")
        mark = base.text if mark is None else mark
        base = base.nums
    return seq(tuple(base) + (n,), mark)


def idx(tag: str, *nums: int) -> Color:
    return Color("idx", tag, tuple(int(n) for n in nums))


def tint(component: int, color: Color) -> Color:
    """Tag ``color`` with a disjoint-union component; nested tints flatten to a path."""
    if color.kind == "tint":
        return Color("tint", nums=(component,) + color.nums, inner=color.inner)
    return Color("tint", nums=(component,), inner=color)


def _encode(c: Color) -> str:
    if c.kind == "atom":
        return "atom:" + quote(c.text, safe=_ATOM_SAFE)
    if c.kind == "seq":
        head = "seq^" + quote(c.text, safe=_TAG_SAFE) if c.text else "seq"
        return head + ":" + ".".join(map(str, c.nums))
    if c.kind == "idx":
        return "idx:" + quote(c.text, safe=_TAG_SAFE) + "".join(f".{n}" for n in c.nums)
    return "tint:" + ".".join(map(str, c.nums)) + ":(" + c.inner._key + ")"


def _ints(parts, what):
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ColorParseError(f"bad {what} indices in color") from None


def _decode(text: str) -> Color:
    head, sep, body = text.partition(":")
    if not sep:
        raise ColorParseError(f"color {text!r} has no kind prefix")
    if head == "atom":
        out = atom(unquote(body))
    elif head == "seq" or head.startswith("seq^"):
        mark = unquote(head[4:]) if head != "seq" else None
        if mark == "":
            raise ColorParseError("empty sequence mark")
        out = seq(_ints(body.split("."), "sequence") if body else (), mark)
    elif head == "idx":
        tag, *rest = body.split(".")
        out = idx(unquote(tag), *_ints(rest, "index"))
    elif head == "tint":
        path, sep, inner = body.partition(":")
        if not sep or not (inner.startswith("(") and inner.endswith(")")):
            raise ColorParseError(f"malformed tint color {text!r}")
        nums = _ints(path.split("."), "tint")
        out = Color("tint", nums=nums, inner=_decode(inner[1:-1]))
    else:
        raise ColorParseError(f"unknown color kind in {text!r}")
    if out._key != text:
        raise ColorParseError(f"{text!r} is not in canonical form (expected {out._key!r})")
    return out
