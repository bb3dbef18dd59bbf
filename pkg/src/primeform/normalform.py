"""End-to-end normal forms, screening of candidate matrices, and rendering."""

import csv
import io
import json
from dataclasses import dataclass, field

from .classdata import enumerate_classes, is_prime, normalize_class, validate_class
from .errors import InvariantError, ValidationError
from .intersection import presentation_intersection
from .intmatrix import IntMatrix, is_symplectic, matrix_order, standard_J
from .presentation import adapted_action_matrix, build_presentation, t0_presentation
from .reduction import tighten
from .words import format_word, letters_to_strings


@dataclass
class NormalFormResult:
    cls: object            # validated input class
    normalized: object     # class with smallest entry 1
    power: int
    M_CAN: IntMatrix
    Q: tuple
    V: IntMatrix           # final basis in presentation coordinates (columns)
    basis: list            # each final basis element as a word
    J: IntMatrix           # the form M_CAN preserves
    order: int
    trace: int
    symplectic: bool
    presentation: object = None
    steps: list = field(default_factory=list)

    @property
    def t(self):
        return self.cls.t

    def to_dict(self, with_steps=False):
        d = {
            "p": self.cls.p,
            "n": sorted(self.cls.n),
            "g0": self.cls.g0,
            "genus": self.cls.g,
            "t": self.cls.t,
            "power": self.power,
            "matrix": self.M_CAN.to_json(),
            "trace": self.trace,
            "order": self.order,
            "symplectic": self.symplectic,
            "relation": letters_to_strings(self.Q),
            "basis": self.basis,
        }
        if with_steps:
            d["steps"] = self.steps
        return d


def _layout(cls):
    """``(pg0, q)`` such that the normal form preserves ``standard_J(pg0, q)``."""
    if cls.t == 0:
        return cls.p * (cls.g0 - 1) + 1, 0
    return cls.p * cls.g0, cls.q


def normal_form(p, n, g0):
    """Normal form of the class ``(p, n, g0)``; every certificate is checked."""
    cls = validate_class(p, n, g0)
    norm, power = normalize_class(cls)
    stage = "presentation"
    try:
        if norm.t == 0:
            pres, M = t0_presentation(norm)
            M0, J_pres = M, standard_J(*_layout(norm))
            N_can, V, Q = M, IntMatrix.identity(M.nrows), pres.relation
            basis = [str(g) for g in pres.generators]
            steps = []
        else:
            pres = build_presentation(norm)
            M0 = adapted_action_matrix(pres, norm)
            J_pres = presentation_intersection(norm)
            k = 2 * norm.p * norm.g0
            ab = pres.generators[:k]
            stage = "reduction"
            red = tighten(pres.qhat, M0.submatrix(range(k, M0.nrows), range(k, M0.ncols)),
                          pres.lrhat, list(pres.y_generators))
            N_can = IntMatrix.block_diag(M0.submatrix(range(k), range(k)), red.M_CAN)
            V = IntMatrix.block_diag(IntMatrix.identity(k), red.V)
            Q = red.Q
            basis = [str(g) for g in ab]
            firsts = [format_word(m) for m, _ in red.pairs]
            seconds = [format_word(nw) for _, nw in red.pairs]
            basis += firsts + seconds
            steps = red.steps
        stage = "certification"
        J = standard_J(*_layout(norm))
        M_CAN = N_can ** power
        _certify(norm, M0, J_pres, N_can, M_CAN, V, J)
    except InvariantError as exc:
        exc.details.setdefault("stage", stage)
        exc.details.setdefault("class", str(cls))
        raise
    order = matrix_order(M_CAN, norm.p)
    return NormalFormResult(cls, norm, power, M_CAN, Q, V, basis, J, order, M_CAN.trace(),
                            True, pres, steps)


def _certify(cls, M0, J_pres, N_can, M_CAN, V, J):
    problems = []
    if V.T @ J_pres @ V != J:
        problems.append("basis transport does not carry the intersection form to the standard one")
    if N_can @ V.T != V.T @ M0:
        problems.append("reduced matrix is not the transported action")
    if M_CAN.is_identity() or not (M_CAN ** cls.p).is_identity():
        problems.append("matrix does not have order p")
    if not is_symplectic(M_CAN, J):
        problems.append("matrix is not symplectic")
    if M_CAN.trace() != 2 - cls.t:
        problems.append(f"trace {M_CAN.trace()} != 2 - t")
    if problems:
        raise InvariantError("; ".join(problems), M_CAN=M_CAN.to_json(), V=V.to_json())


def layout_permutation(pg0, q):
    """Indices taking the (A | B | M | N) layout to the (A M | B N) layout."""
    return (list(range(pg0)) + list(range(2 * pg0, 2 * pg0 + q))
            + list(range(pg0, 2 * pg0)) + list(range(2 * pg0 + q, 2 * pg0 + 2 * q)))


# ---------------------------------------------------------------------------
# candidate screening


VERDICTS = ("impossible", "necessary-conditions-met", "matches-normal-form-invariants")


@dataclass
class CandidateVerdict:
    order: int
    trace: int
    t: int
    tuples: list
    verdict: str
    charpoly_matches: list = field(default_factory=list)
    equal_to: list = field(default_factory=list)

    def to_dict(self):
        return {
            "order": self.order,
            "trace": self.trace,
            "t": self.t,
            "tuples": [{"n": list(c.n), "g0": c.g0} for c in self.tuples],
            "verdict": self.verdict,
            "charpoly_matches": [{"n": list(c.n), "g0": c.g0} for c in self.charpoly_matches],
            "equal_to": [{"n": list(c.n), "g0": c.g0} for c in self.equal_to],
        }


def candidate_check(M, J=None):
    """Screen an integral symplectic matrix against the normal forms.

    The verdict is ``impossible`` when the trace is out of range or no class
    of the right shape exists, ``matches-normal-form-invariants`` when ``M``
    is literally one of the normal forms (in the layout of ``J``), and
    ``necessary-conditions-met`` otherwise.
    """
    if M.nrows != M.ncols or M.nrows % 2:
        raise ValidationError("candidate must be a square matrix of even size")
    g = M.nrows // 2
    if J is None:
        J = standard_J(g, 0)
    if J.shape != M.shape:
        raise ValidationError(f"J is {J.shape}, M is {M.shape}")
    if not is_symplectic(M, J):
        raise ValidationError("matrix is not symplectic for the given form")
    order = matrix_order(M, 4 * g * g)
    if order is None:
        raise ValidationError(f"no finite order up to {4 * g * g}")
    if not is_prime(order):
        raise ValidationError(f"order {order} is not prime")
    T = M.trace()
    t = 2 - T
    if T < -2 * g or T > 2:
        return CandidateVerdict(order, T, t, [], "impossible")
    tuples = [c for c in enumerate_classes(g, order) if c.t == t] if g >= 2 else []
    if not tuples:
        return CandidateVerdict(order, T, t, [], "impossible")
    cp = M.charpoly()
    matches, equal = [], []
    for c in tuples:
        res = normal_form(c.p, c.n, c.g0)
        nf = res.M_CAN
        if nf.charpoly() == cp:
            matches.append(c)
        pg0, q = _layout(c)
        candidates = [(res.J, nf)]
        perm = layout_permutation(pg0, q)
        candidates.append((res.J.permuted(perm), nf.permuted(perm)))
        if any(Jc == J and Mc == M for Jc, Mc in candidates):
            equal.append(c)
    verdict = "matches-normal-form-invariants" if equal else "necessary-conditions-met"
    return CandidateVerdict(order, T, t, tuples, verdict, matches, equal)


# ---------------------------------------------------------------------------
# rendering


_CSV_FIELDS = ["p", "n", "g0", "genus", "t", "power", "trace", "order", "symplectic", "matrix"]


def render(result, fmt="json", with_steps=False):
    """Serialize a result (or a list of results) deterministically, as bytes."""
    many = isinstance(result, (list, tuple))
    items = list(result) if many else [result]
    if fmt == "json":
        data = [r.to_dict(with_steps) for r in items]
        return (json.dumps(data if many else data[0], indent=2) + "\n").encode()
    if fmt == "text":
        blocks = []
        for r in items:
            head = (f"p={r.cls.p} n=({','.join(map(str, sorted(r.cls.n)))}) g0={r.cls.g0} "
                    f"genus={r.cls.g} t={r.cls.t} power={r.power} trace={r.trace} "
                    f"order={r.order} symplectic={str(r.symplectic).lower()}")
            lines = [head, r.M_CAN.to_text(), "relation: " + format_word(r.Q)]
            blocks.append("\n".join(lines))
        return ("\n\n".join(blocks) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_CSV_FIELDS)
        for r in items:
            d = r.to_dict()
            w.writerow([d["p"], " ".join(map(str, d["n"])), d["g0"], d["genus"], d["t"], d["power"],
                        d["trace"], d["order"], str(d["symplectic"]).lower(),
                        json.dumps(r.M_CAN.tolist(), separators=(",", ":"))])
        return buf.getvalue().encode()
    raise ValidationError(f"unknown format {fmt!r}")


def parse_rendered(data):
    """Inverse of the json renderer, enough for round-trip checks."""
    d = json.loads(data)
    d["matrix"] = IntMatrix.from_json(d["matrix"])
    return d
