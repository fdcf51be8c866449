"""Group families, K-types and L-types.

K-types and L-types are plain integer tuples: ``(p,)`` for the real family,
``(p, q)`` otherwise; the octonionic L-type is ``(q,)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InvalidTypeError


class Kind(str, Enum):
    REAL = "R"
    COMPLEX = "C"
    QUATERNION = "H"
    OCTONION = "F4"


_ALIASES = {
    "r": Kind.REAL, "real": Kind.REAL,
    "c": Kind.COMPLEX, "complex": Kind.COMPLEX,
    "h": Kind.QUATERNION, "q": Kind.QUATERNION, "quaternion": Kind.QUATERNION,
    "f4": Kind.OCTONION, "o": Kind.OCTONION, "octonion": Kind.OCTONION,
}

_MIN_RANK = {Kind.REAL: 2, Kind.COMPLEX: 1, Kind.QUATERNION: 1}


@dataclass(frozen=True)
class GroupFamily:
    """``SO_0(n,1;F)`` for F real, complex or quaternionic, or ``F_4(-20)``.

    Complex ``n = 1`` is accepted so that ``SU(1,1)`` can serve as the
    subgroup of ``SU(2,1)``.
    """

    kind: Kind
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.OCTONION:
            if self.n is not None:
                raise ValueError("the octonionic family takes no rank parameter")
            return
        if self.n is None or int(self.n) != self.n or self.n < _MIN_RANK[self.kind]:
            raise ValueError(f"family {self.kind.value} needs n >= {_MIN_RANK[self.kind]}, "
                             f"got {self.n}")

    @classmethod
    def parse(cls, name: str, n: int | None = None) -> "GroupFamily":
        try:
            kind = _ALIASES[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown family {name!r}") from None
        return cls(kind, None if kind is Kind.OCTONION else n)

    @property
    def real_dim(self) -> int:
        """dim_R of the division algebra."""
        return {Kind.REAL: 1, Kind.COMPLEX: 2, Kind.QUATERNION: 4, Kind.OCTONION: 8}[self.kind]

    @property
    def sphere_dim(self) -> int:
        """Real dimension of the ambient space of ``S = K/M``."""
        return 16 if self.kind is Kind.OCTONION else self.real_dim * self.n

    @property
    def has_subgroup(self) -> bool:
        if self.kind is Kind.OCTONION:
            return True
        if self.kind is Kind.REAL:
            return self.n >= 3
        return self.n >= 2

    def subgroup(self) -> "GroupFamily":
        """The family of ``H``: rank drops by one; ``Spin(8,1)`` is real, n = 8."""
        if not self.has_subgroup:
            raise ValueError(f"{self} has no subgroup with a nonempty equator")
        if self.kind is Kind.OCTONION:
            return GroupFamily(Kind.REAL, 8)
        return GroupFamily(self.kind, self.n - 1)

    def trivial(self) -> tuple[int, ...]:
        return (0,) if self.kind is Kind.REAL else (0, 0)

    def __str__(self):
        if self.kind is Kind.OCTONION:
            return "F4"
        return f"{self.kind.value}{self.n}"


def check_ktype(family: GroupFamily, tau) -> tuple[int, ...]:
    """Validate ``tau`` for ``family`` and return it as a tuple of ints."""
    tau = tuple(tau)
    if any(int(x) != x for x in tau):
        raise InvalidTypeError(f"indices must be integers, got {tau}")
    tau = tuple(int(x) for x in tau)
    kind = family.kind
    if kind is Kind.REAL:
        if len(tau) != 1:
            raise InvalidTypeError(f"real K-types are (p,), got {tau}")
        if tau[0] < 0:
            raise InvalidTypeError(f"p >= 0 violated: p = {tau[0]}")
        return tau
    if len(tau) != 2:
        raise InvalidTypeError(f"{kind.value} K-types are (p, q), got {tau}")
    p, q = tau
    if kind is Kind.COMPLEX:
        if p < 0 or q < 0:
            raise InvalidTypeError(f"p, q >= 0 violated: {tau}")
        if family.n == 1 and p and q:
            raise InvalidTypeError(f"n = 1 admits only (p, 0) or (0, q), got {tau}")
        return tau
    if not p >= q >= 0:
        raise InvalidTypeError(f"p >= q >= 0 violated: {tau}")
    if (p - q) % 2:
        raise InvalidTypeError(f"p - q even violated: {tau}")
    if kind is Kind.QUATERNION and family.n == 1 and p != q:
        raise InvalidTypeError(f"Sp(1) x Sp(1) types need p = q, got {tau}")
    return tau


def check_ltype(family: GroupFamily, sigma) -> tuple[int, ...]:
    """Validate an L-type of the subgroup of ``family``."""
    if family.kind is Kind.OCTONION:
        sigma = tuple(sigma)
        if len(sigma) != 1 or int(sigma[0]) != sigma[0] or sigma[0] < 0:
            raise InvalidTypeError(f"octonionic L-types are (q,) with q >= 0, got {sigma}")
        return (int(sigma[0]),)
    return check_ktype(family.subgroup(), sigma)


def leading_index(tau) -> int:
    return tau[0]
