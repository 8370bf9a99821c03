"""Closed-form maximal success probabilities for real-coefficient states.

Every expression has the shape ``P = 4**(1-n) * (sum_k sqrt(A_k**2 + B_k**2))**2``
where ``A_k`` is a signed sum of the even-weight amplitudes and ``B_k`` a signed
sum of the odd-weight ones. A :class:`SignTable` holds those signs.

Two sources of tables exist and are deliberately kept apart:

* :func:`transcribed_table` holds the published three- and five-qubit
  expressions literally, including a suspected misprint in the last
  five-qubit radical.
* :func:`generate_table` builds the same family from a sign rule for any n.

:func:`verify_transcription` compares them and lists every divergence.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionMismatch, Unsupported
from .statevec import weight
from .validation import check_real

# Published three-qubit expression, one (A, B) pair per radical, in print order.
_EXPR_3 = (
    ("a0 - a6 - a5 - a3", "a4 + a2 + a1 - a7"),  # radical 1
    ("a0 - a6 + a5 + a3", "a4 + a2 - a1 + a7"),  # radical 2
    ("a0 + a6 - a5 + a3", "a4 - a2 + a1 + a7"),  # radical 3
    ("a0 + a6 + a5 - a3", "a4 - a2 - a1 - a7"),  # radical 4
)

# Published five-qubit expression, copied term by term. Radical 16 is kept
# as printed: its A part carries a25 and a21 where a9 and a5 are expected.
_EXPR_5 = (
    # radical 1
    ("a0 - a24 - a20 - a12 - a18 - a10 - a6 + a30 - a17 - a9 - a5 + a29 - a3 + a27 + a23 + a15",
     "a16 + a8 + a4 - a28 + a2 - a26 - a22 - a14 + a1 - a25 - a21 - a13 - a19 - a11 - a7 + a31"),
    # radical 2
    ("a0 - a24 - a20 - a12 - a18 - a10 - a6 + a30 + a17 + a9 + a5 - a29 + a3 - a27 - a23 - a15",
     "a16 + a8 + a4 - a28 + a2 - a26 - a22 - a14 - a1 + a25 + a21 + a13 + a19 + a11 + a7 - a31"),
    # radical 3
    ("a0 - a24 - a20 - a12 + a18 + a10 + a6 - a30 - a17 - a9 - a5 + a29 + a3 - a27 - a23 - a15",
     "a16 + a8 + a4 - a28 - a2 + a26 + a22 + a14 + a1 - a25 - a21 - a13 + a19 + a11 + a7 - a31"),
    # radical 4
    ("a0 - a24 - a20 - a12 + a18 + a10 + a6 - a30 + a17 + a9 + a5 - a29 - a3 + a27 + a23 + a15",
     "a16 + a8 + a4 - a28 - a2 + a26 + a22 + a14 - a1 + a25 + a21 + a13 - a19 - a11 - a7 + a31"),
    # radical 5
    ("a0 - a24 + a20 + a12 - a18 - a10 + a6 - a30 - a17 - a9 + a5 - a29 - a3 + a27 - a23 - a15",
     "a16 + a8 - a4 + a28 + a2 - a26 + a22 + a14 + a1 - a25 + a21 + a13 - a19 - a11 + a7 - a31"),
    # radical 6
    ("a0 - a24 + a20 + a12 - a18 - a10 + a6 - a30 + a17 + a9 - a5 + a29 + a3 - a27 + a23 + a15",
     "a16 + a8 - a4 + a28 + a2 - a26 + a22 + a14 - a1 + a25 - a21 - a13 + a19 + a11 - a7 + a31"),
    # radical 7
    ("a0 - a24 + a20 + a12 + a18 + a10 - a6 + a30 - a17 - a9 + a5 - a29 + a3 - a27 + a23 + a15",
     "a16 + a8 - a4 + a28 - a2 + a26 - a22 - a14 + a1 - a25 + a21 + a13 + a19 + a11 - a7 + a31"),
    # radical 8
    ("a0 - a24 + a20 + a12 + a18 + a10 - a6 + a30 + a17 + a9 - a5 + a29 - a3 + a27 - a23 - a15",
     "a16 + a8 - a4 + a28 - a2 + a26 - a22 - a14 - a1 + a25 - a21 - a13 - a19 - a11 + a7 - a31"),
    # radical 9
    ("a0 + a24 - a20 + a12 - a18 + a10 - a6 - a30 - a17 + a9 - a5 - a29 - a3 - a27 + a23 - a15",
     "a16 - a8 + a4 + a28 + a2 + a26 - a22 + a14 + a1 + a25 - a21 + a13 - a19 + a11 - a7 - a31"),
    # radical 10
    ("a0 + a24 - a20 + a12 - a18 + a10 - a6 - a30 + a17 - a9 + a5 + a29 + a3 + a27 - a23 + a15",
     "a16 - a8 + a4 + a28 + a2 + a26 - a22 + a14 - a1 - a25 + a21 - a13 + a19 - a11 + a7 + a31"),
    # radical 11
    ("a0 + a24 - a20 + a12 + a18 - a10 + a6 + a30 - a17 + a9 - a5 - a29 + a3 + a27 - a23 + a15",
     "a16 - a8 + a4 + a28 - a2 - a26 + a22 - a14 + a1 + a25 - a21 + a13 + a19 - a11 + a7 + a31"),
    # radical 12
    ("a0 + a24 - a20 + a12 + a18 - a10 + a6 + a30 + a17 - a9 + a5 + a29 - a3 - a27 + a23 - a15",
     "a16 - a8 + a4 + a28 - a2 - a26 + a22 - a14 - a1 - a25 + a21 - a13 - a19 + a11 - a7 - a31"),
    # radical 13
    ("a0 + a24 + a20 - a12 - a18 + a10 + a6 + a30 - a17 + a9 + a5 + a29 - a3 - a27 - a23 + a15",
     "a16 - a8 - a4 - a28 + a2 + a26 + a22 - a14 + a1 + a25 + a21 - a13 - a19 + a11 + a7 + a31"),
    # radical 14
    ("a0 + a24 + a20 - a12 - a18 + a10 + a6 + a30 + a17 - a9 - a5 - a29 + a3 + a27 + a23 - a15",
     "a16 - a8 - a4 - a28 + a2 + a26 + a22 - a14 - a1 - a25 - a21 + a13 + a19 - a11 - a7 - a31"),
    # radical 15
    ("a0 + a24 + a20 - a12 + a18 - a10 - a6 - a30 - a17 + a9 + a5 + a29 + a3 + a27 + a23 - a15",
     "a16 - a8 - a4 - a28 - a2 - a26 - a22 + a14 + a1 + a25 + a21 - a13 + a19 - a11 - a7 - a31"),
    # radical 16, as printed
    ("a0 + a24 + a20 - a12 + a18 - a10 - a6 - a30 + a17 - a25 - a21 - a29 - a3 - a27 - a23 + a15",
     "a16 - a8 - a4 - a28 - a2 - a26 - a22 + a14 - a1 - a25 - a21 + a13 - a19 + a11 + a7 + a31"),
)

_TRANSCRIBED = {3: _EXPR_3, 5: _EXPR_5}
_TERM = re.compile(r"([+-]?)\s*a(\d+)")

GENERATE_MAX_QUBITS = 10
# closed forms trusted without --conjectural: the printed ones plus n=2,
# where the generated table reduces to the two-qubit determinant formula
ESTABLISHED = frozenset({2, 3, 5})


def parse_signed_sum(expr):
    """``"a0 - a6 + a5"`` -> ``((0, 1), (6, -1), (5, 1))``."""
    terms = tuple((int(i), -1 if s == "-" else 1) for s, i in _TERM.findall(expr))
    if not terms:
        raise ValueError(f"no terms in {expr!r}")
    return terms


@dataclass(frozen=True)
class SignRow:
    """One radical: signed even-part ``a`` and odd-part ``b`` as (index, sign) pairs."""

    a: tuple
    b: tuple

    def signs(self, block):
        return dict(self.a if block == "A" else self.b)


@dataclass(frozen=True)
class SignTable:
    n: int
    rows: tuple
    prefactor: float
    source: str = "generated"
    conjectural: bool = False

    def matrices(self):
        """Dense ``(rows, 2**n)`` sign matrices for the A and B parts."""
        dim = 2**self.n
        sa = np.zeros((len(self.rows), dim))
        sb = np.zeros((len(self.rows), dim))
        for k, row in enumerate(self.rows):
            for i, s in row.a:
                sa[k, i] += s
            for i, s in row.b:
                sb[k, i] += s
        return sa, sb


def transcribed_table(n):
    """The published closed form for ``n`` in {3, 5}, sign for sign."""
    if n not in _TRANSCRIBED:
        raise Unsupported(f"no published closed form for n={n}; only n=3 and n=5 exist")
    rows = tuple(SignRow(parse_signed_sum(a), parse_signed_sum(b)) for a, b in _TRANSCRIBED[n])
    return SignTable(n, rows, 4.0 ** (1 - n), source="transcribed")


def generate_table(n):
    """Build the sign table for ``n`` qubits from the parity/sign rule.

    Rows are indexed by ``s`` in {+1,-1}^n with ``s_1 = +1``, enumerated as a
    binary counter on ``(s_2, ..., s_n)`` (``+`` before ``-``, ``s_n``
    fastest). For basis index ``x`` of Hamming weight ``w`` and character
    ``chi = prod_j s_j**x_j``, the A sign is ``(-1)**(w/2) * chi`` for even
    ``w`` and the B sign is ``(-1)**((w-1)/2) * chi`` for odd ``w``.
    """
    if not 2 <= n <= GENERATE_MAX_QUBITS:
        raise Unsupported(f"generate_table supports 2 <= n <= {GENERATE_MAX_QUBITS}, got n={n}")
    x = np.arange(2**n)
    w = np.bitwise_count(x).astype(np.int64)
    even, odd = x[w % 2 == 0], x[w % 2 == 1]
    base_a = 1 - 2 * ((w[even] // 2) % 2)
    base_b = 1 - 2 * (((w[odd] - 1) // 2) % 2)
    rows = []
    # with qubit 0 as the most significant bit, row counter r has a 1 exactly
    # where s_j = -1, so chi(x) = (-1)**popcount(x & r)
    for r in range(2 ** (n - 1)):
        chi_a = 1 - 2 * (np.bitwise_count(even & r).astype(np.int64) % 2)
        chi_b = 1 - 2 * (np.bitwise_count(odd & r).astype(np.int64) % 2)
        rows.append(SignRow(
            tuple(zip(even.tolist(), (base_a * chi_a).tolist())),
            tuple(zip(odd.tolist(), (base_b * chi_b).tolist())),
        ))
    return SignTable(n, tuple(rows), 4.0 ** (1 - n), source="generated", conjectural=n not in ESTABLISHED)


def table_for(n, *, conjectural=False):
    """Table used for computations: printed for n in {3, 5}, generated otherwise.

    Raises Unsupported for n outside {2, 3, 5} unless ``conjectural`` is set.
    """
    if n in _TRANSCRIBED:
        return transcribed_table(n)
    if n in ESTABLISHED or conjectural:
        return generate_table(n)
    raise Unsupported(
        f"no established closed form for n={n}; the generated table is a conjectural "
        f"extension (pass conjectural=True / --conjectural to use it)"
    )


def pmax_closed(state, table):
    """Evaluate ``prefactor * (sum_k sqrt(A_k^2 + B_k^2))^2`` on a real state."""
    if state.n != table.n:
        raise DimensionMismatch(f"{state.n}-qubit state with an n={table.n} table")
    amps = check_real(state.amplitudes)
    sa, sb = table.matrices()
    radicals = np.hypot(sa @ amps, sb @ amps)
    return float(table.prefactor * np.sum(radicals) ** 2)


# --- transcription check ---------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    row: int
    index: int
    transcribed: int
    generated: int
    block: str = "A"
    expected_index: int | None = None

    def to_dict(self):
        d = {"row": self.row, "index": self.index, "transcribed": self.transcribed,
             "generated": self.generated, "block": self.block}
        if self.expected_index is not None:
            d["expected_index"] = self.expected_index
        return d


@dataclass
class TranscriptionReport:
    n: int
    mismatches: list = field(default_factory=list)
    verdict: str = "exact"

    def to_dict(self):
        return {"n": self.n, "verdict": self.verdict,
                "mismatches": [m.to_dict() for m in self.mismatches]}

    def to_json(self):
        return json.dumps(self.to_dict())


def _parity_ok(index, block):
    return weight(index) % 2 == (0 if block == "A" else 1)


def _block_flip(trans, gen):
    """Global sign (+1/-1) aligning ``trans`` with ``gen`` on shared indices, or None."""
    shared = [i for i in trans if i in gen]
    if not shared:
        return 1
    for flip in (1, -1):
        if all(trans[i] == flip * gen[i] for i in shared):
            return flip
    return None


def _match(trow, grow):
    """Per-block flips if ``trow`` agrees with ``grow`` on its parity-consistent entries."""
    flips = {}
    for block in ("A", "B"):
        trans = {i: s for i, s in trow.signs(block).items() if _parity_ok(i, block)}
        flip = _block_flip(trans, grow.signs(block))
        if flip is None:
            return None
        flips[block] = flip
    return flips


def _row_mismatches(k, trow, grow, flips):
    """Mismatches of a transcribed row against a generated row under given flips."""
    out, typo_only = [], True
    for block in ("A", "B"):
        trans_pairs = trow.a if block == "A" else trow.b
        gen = grow.signs(block)
        flip = flips.get(block, 1) if flips else 1
        present = {i for i, _ in trans_pairs}
        missing = [i for i in gen if i not in present]
        for pos, (i, s) in enumerate(trans_pairs):
            if _parity_ok(i, block):
                if i in gen and s != flip * gen[i]:
                    out.append(Mismatch(k, i, s, flip * gen[i], block))
                    typo_only = False
                continue
            # wrong-parity index: pair it with a missing index one bit away
            near = [m for m in missing if weight(m ^ i) == 1]
            if near:
                target = near[0]
                missing.remove(target)
                out.append(Mismatch(k, i, s, flip * gen[target], block, expected_index=target))
            else:
                out.append(Mismatch(k, i, s, 0, block))
                typo_only = False
        for m in missing:
            out.append(Mismatch(k, m, 0, flip * gen[m], block))
            typo_only = False
    return out, typo_only


def verify_transcription(n):
    """Compare the printed table with the generated one, modulo row order and block signs.

    Returns a :class:`TranscriptionReport` whose verdict is ``exact`` when
    nothing differs, ``suspected-typos`` when the only differences are
    wrong-parity indices standing in for a missing index one bit flip away,
    and ``structural-mismatch`` otherwise.
    """
    return compare_tables(transcribed_table(n), generate_table(n))


def compare_tables(trans, gen):
    report = TranscriptionReport(trans.n)
    structural = (trans.n != gen.n or len(trans.rows) != len(gen.rows)
                  or not np.isclose(trans.prefactor, gen.prefactor))
    free = list(range(len(gen.rows)))
    for k, trow in enumerate(trans.rows):
        if not free:
            structural = True
            break
        # prefer the generated row at the same position, then any unused one
        candidates = sorted(free, key=lambda r: (r != k, r))
        hit = next(((r, f) for r in candidates if (f := _match(trow, gen.rows[r])) is not None), None)
        if hit is None:
            structural = True
            r = candidates[0]
            grow = gen.rows[r]
            flips = {b: _block_flip(trow.signs(b), grow.signs(b)) or 1 for b in ("A", "B")}
        else:
            r, flips = hit
            grow = gen.rows[r]
        free.remove(r)
        rows, typo_only = _row_mismatches(k, trow, grow, flips)
        report.mismatches.extend(rows)
        structural = structural or not typo_only
    if structural:
        report.verdict = "structural-mismatch"
    elif report.mismatches:
        report.verdict = "suspected-typos"
    return report


__all__ = [
    "SignRow", "SignTable", "Mismatch", "TranscriptionReport", "parse_signed_sum",
    "transcribed_table", "generate_table", "table_for", "pmax_closed",
    "verify_transcription", "compare_tables", "ESTABLISHED",
]
