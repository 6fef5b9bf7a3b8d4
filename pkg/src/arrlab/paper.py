"""The explicit arrangements: the 11-line complex arrangements over Q(g) with
their 13-line augmentations, and the 10-line real arrangements over Q(a) with
their 14-line double augmentations."""
from __future__ import annotations

from .field import QA, QG, FieldElement
from .geometry import Arrangement, ProjLine

__all__ = ["PAPER_NAMES", "BUNDLED_FILES", "build_paper_arrangement", "gue_lines", "accm_lines", "GUE_SIGMA", "ACCM_SIGMAS"]

# exponent k in a = g^k
GUE_EXPONENTS = {"M+": 1, "M-": 9, "N+": 3, "N-": 7}

GUE_SIGMA = "(1 3 2 4)(5 6)(7 9 10 8)"
ACCM_SIGMAS = ("(1 2 3 4 5)", "(2 4 5 3)")

GUE_LABELS = tuple(f"L_{i}" for i in range(1, 14))
ACCM_LABELS = tuple(f"M_{i}" for i in range(1, 6)) + tuple(f"L_{i}" for i in range(1, 6)) + tuple(
    f"D_{i}" for i in range(1, 5)
)
# 0-based positions inside the ACCM arrangements
ACCM_INDEX = {label: i for i, label in enumerate(ACCM_LABELS)}


def gue_lines(a: FieldElement) -> list[ProjLine]:
    f = a.field
    one, zero = f.one, f.zero
    b = a * (a - 1)
    rows = [
        (zero, zero, one),  # z
        (one, one, -one),  # x + y - z
        (one, zero, zero),  # x
        (zero, one, zero),  # y
        (one, zero, -one),  # x - z
        (zero, one, -one),  # y - z
        (-(a**3), zero, one),  # -a^3 x + z
        (zero, one, -a),  # y - a z
        (a - 1, -one, one),  # (a-1) x - y + z
        (-b, one, b),  # -a(a-1) x + y + a(a-1) z
        (-b, one, -a),  # -a(a-1) x + y - a z
    ]
    return [ProjLine(r) for r in rows]


GUE_AUGMENTATION = ((1, -1, 2), (1, -1, -2))  # x - y + 2z, x - y - 2z


def accm_lines(a: FieldElement) -> list[ProjLine]:
    f = a.field
    one, zero = f.one, f.zero
    rows = [
        (zero, zero, one),  # M1: z
        (one, zero, zero),  # M2: x
        (one, zero, -one),  # M3: x - z
        (one, zero, a + 1),  # M4: x + (a+1) z
        (one, zero, -(a + 2)),  # M5: x - (a+2) z
        (one, -one, zero),  # L1: x - y
        (a, -one, -a),  # L2: a x - y - a z
        (a, -one, one),  # L3: a x - y + z
        (zero, one, -one),  # L4: y - z
        (zero, one, zero),  # L5: y
    ]
    return [ProjLine(r) for r in rows]


ACCM_AUGMENTATION = ((1, 1, 1), (1, 1, 2), (1, 3, -5), (1, -3, -5))  # D1..D4


def _gue(name: str, augmented: bool) -> Arrangement:
    a = QG.gen ** GUE_EXPONENTS[name]
    lines = gue_lines(a)
    if augmented:
        lines += [ProjLine.of(QG, *c) for c in GUE_AUGMENTATION]
    return Arrangement(QG, tuple(lines), GUE_LABELS[: len(lines)])


def _accm(name: str, augmented: bool) -> Arrangement:
    a = QA.gen if name == "M" else QA.gen.galois(2)
    lines = accm_lines(a)
    if augmented:
        lines += [ProjLine.of(QA, *c) for c in ACCM_AUGMENTATION]
    return Arrangement(QA, tuple(lines), ACCM_LABELS[: len(lines)])


PAPER_NAMES = (
    "M+", "M-", "N+", "N-",
    "Frak-M+", "Frak-M-", "Frak-N+", "Frak-N-",
    "ACCM-M", "ACCM-N", "ACCM-M-aug", "ACCM-N-aug",
)  # fmt: skip

BUNDLED_FILES = {
    "M+": "m_plus.arr",
    "M-": "m_minus.arr",
    "N+": "n_plus.arr",
    "N-": "n_minus.arr",
    "Frak-M+": "frak_m_plus.arr",
    "Frak-M-": "frak_m_minus.arr",
    "Frak-N+": "frak_n_plus.arr",
    "Frak-N-": "frak_n_minus.arr",
    "ACCM-M": "accm_m.arr",
    "ACCM-N": "accm_n.arr",
    "ACCM-M-aug": "accm_m_aug.arr",
    "ACCM-N-aug": "accm_n_aug.arr",
}


def build_paper_arrangement(name: str) -> Arrangement:
    """Exact arrangement for one of :data:`PAPER_NAMES`.

    ``Frak-X`` is X plus the two lines x-y+2z, x-y-2z; ``ACCM-X-aug`` is X
    plus D1..D4.
    """
    if name in GUE_EXPONENTS:
        return _gue(name, False)
    if name.startswith("Frak-") and name[5:] in GUE_EXPONENTS:
        return _gue(name[5:], True)
    if name in ("ACCM-M", "ACCM-N"):
        return _accm(name[-1], False)
    if name in ("ACCM-M-aug", "ACCM-N-aug"):
        return _accm(name[5], True)
    raise KeyError(f"unknown paper arrangement {name!r}; expected one of {', '.join(PAPER_NAMES)}")
