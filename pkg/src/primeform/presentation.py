"""Adapted presentation of the cover's fundamental group.

The orbifold group has generators ``a_i, b_i`` (``i <= g0``) and ``x_1..x_t``
with ``x_j^p = 1`` and ``prod [a_i, b_i] * x_1 ... x_t = 1``; the cover is
the kernel of ``x_j -> n_j`` (mod p), ``a_i, b_i -> 0``.  We rewrite the
relators over the transversal ``1, x_1, ..., x_1^{p-1}`` (this needs
``n_1 = 1``, which normalization guarantees), then eliminate generators
until one relation is left.

Naming of the rewritten generators, with ``h`` = conjugation by ``x_1``:

* ``A:i:v`` is ``h^v(a_i)`` and ``B:i:v`` is ``h^v(b_i)``;
* ``Y:r:v`` is ``h^v`` of the Schreier generator that ``x_r`` contributes
  when the long relator is read from the trivial coset, i.e. of
  ``x_1^{c_r} x_r x_1^{-c_r - n_r}`` with ``c_r = n_1 + ... + n_{r-1}``.

The x_1 letters rewrite to trivial generators, except ``x_1^p`` which is
killed by its own relator, so they are dropped.
"""

from dataclasses import dataclass, field

from .classdata import mod_inverse
from .errors import InvariantError, ValidationError
from .intersection import interleave_matrix, offsets
from .intmatrix import IntMatrix
from .words import (Generator, commutator, cyclically_equal, format_word, free_reduce,
                    generators_of, h_shift, inverse, is_freely_reduced,
                    letters_to_strings, parse_word, power_word)


@dataclass(frozen=True)
class Presentation:
    cls: object
    generators: tuple
    relation: tuple
    qhat: tuple
    lrhat: tuple
    conjugators: dict = field(default_factory=dict, compare=False)
    raw_relation: tuple = ()

    @property
    def y_generators(self):
        return tuple(g for g in self.generators if g.kind == "Y")

    @property
    def ab_generators(self):
        return tuple(g for g in self.generators if g.kind != "Y")

    def to_json(self):
        return {
            "generators": [str(g) for g in self.generators],
            "relation": letters_to_strings(self.relation),
            "qhat": letters_to_strings(self.qhat),
            "lrhat": letters_to_strings(self.lrhat),
            "conjugators": {str(g): letters_to_strings(w) for g, w in self.conjugators.items() if w},
        }

    def to_text(self):
        lines = [f"class: {self.cls}",
                 "generators: " + " ".join(map(str, self.generators)),
                 "relation: " + format_word(self.relation),
                 "qhat: " + format_word(self.qhat),
                 "lrhat: " + format_word(self.lrhat)]
        return "\n".join(lines)


def presentation_from_json(cls, data):
    gens = tuple(parse_word(data["generators"])[i][0] for i in range(len(data["generators"])))
    return Presentation(cls, gens, parse_word(data["relation"]), parse_word(data["qhat"]),
                        parse_word(data["lrhat"]))


# ---------------------------------------------------------------------------
# rewriting


def rewrite(gamma_word, cls, start=0):
    """Rewrite a kernel word of the orbifold group into cover generators.

    ``gamma_word`` is a sequence of ``((kind, index), sign)`` with kind one
    of ``"a"``, ``"b"``, ``"x"``.  Returns ``(word, end_coset)``.
    """
    p, n = cls.p, cls.n
    c = offsets(cls)
    q = start % p
    out = []
    for (kind, idx), sign in gamma_word:
        if kind in ("a", "b"):
            out.append((Generator(kind.upper(), idx, q), sign))
            continue
        step = n[idx - 1]
        if sign < 0:
            q = (q - step) % p
        if idx != 1:
            out.append((Generator("Y", idx, (q - c[idx - 1]) % p), sign))
        if sign > 0:
            q = (q + step) % p
    return tuple(out), q


def _gamma_long_relator(cls):
    w = []
    for i in range(1, cls.g0 + 1):
        w += [(("a", i), 1), (("b", i), 1), (("a", i), -1), (("b", i), -1)]
    w += [(("x", j), 1) for j in range(1, cls.t + 1)]
    return w


def raw_relators(cls):
    """``(long, {r: rho_r})``: the long relator from coset 0 and each ``x_r^p``.

    ``rho_r`` is read from coset ``c_r`` so that it is a word in the
    ``Y:r:*`` generators alone.
    """
    c = offsets(cls)
    long, end = rewrite(_gamma_long_relator(cls), cls, 0)
    if end != 0:
        raise InvariantError("long relator does not close up", cls=str(cls))
    rho = {}
    for r in range(2, cls.t + 1):
        w, end = rewrite([(("x", r), 1)] * cls.p, cls, c[r - 1])
        if end != c[r - 1]:
            raise InvariantError("x_r^p does not close up", cls=str(cls), r=r)
        rho[r] = w
    return long, rho


def solve_for(word, gen):
    """Given a relator containing ``gen`` exactly once, return ``gen`` as a word."""
    hits = [i for i, (g, _) in enumerate(word) if g == gen]
    if len(hits) != 1:
        raise InvariantError(f"{gen} occurs {len(hits)} times in relator")
    i = hits[0]
    sol = inverse(word[:i]) + inverse(word[i + 1:])
    # word = L g^e R  =>  g^e = L^-1 R^-1
    return sol if word[i][1] > 0 else inverse(sol)


def top_power_word(cls, r):
    """``h^{p-1}(Y_r)`` as a word in ``Y:r:0 .. Y:r:p-2``."""
    _, rho = raw_relators(cls)
    return solve_for(rho[r], Generator("Y", r, cls.p - 1))


def _substitute_top(word, cls, tops):
    p = cls.p
    out = []
    for g, s in word:
        if g.kind == "Y" and g.power == p - 1:
            sub = tops[g.index]
            out.extend(sub if s > 0 else inverse(sub))
        else:
            out.append((g, s))
    return tuple(out)


def _generator_list(cls):
    p = cls.p
    A = [Generator("A", i, v) for i in range(1, cls.g0 + 1) for v in range(p)]
    B = [Generator("B", i, v) for i in range(1, cls.g0 + 1) for v in range(p)]
    Y = [Generator("Y", r, v) for r in range(3, cls.t + 1) for v in range(p - 1)]
    return tuple(A + B + Y)


def build_presentation(cls):
    """One-relator presentation on the adapted generators of a normalized class."""
    if cls.t == 0:
        return t0_presentation(cls)[0]
    if cls.n[0] != 1:
        raise ValidationError("build_presentation needs a normalized class (n_1 = 1)")
    p, t = cls.p, cls.t
    long, rho = raw_relators(cls)

    # eliminate every h^v(Y_2) with the h-translates of the long relator
    y2 = solve_for(long, Generator("Y", 2, 0))
    zp = inverse(y2)  # the word Y_3 ... Y_t * prod [A_i, B_i]

    # what is left of x_2^p, inverted and rotated so that the top power is last
    inv_rho2 = inverse(rho[2])
    k = next(i for i, (g, _) in enumerate(inv_rho2) if g.power == p - 1)
    inv_rho2 = inv_rho2[k + 1:] + inv_rho2[:k + 1]
    powers = [g.power for g, _ in inv_rho2]

    # each top power h^{p-1}(Y_r), r >= 3, is eliminated with x_r^p
    tops = {r: solve_for(rho[r], Generator("Y", r, p - 1)) for r in range(3, t + 1)}

    y_parts, ab_parts = [], []
    for v in powers:
        factor = h_shift(zp, v, p)
        ys = tuple(x for x in factor if x[0].kind == "Y")
        abs_ = tuple(x for x in factor if x[0].kind != "Y")
        if factor != ys + abs_:
            raise InvariantError("unexpected factor shape", factor=format_word(factor))
        y_parts.append(_substitute_top(ys, cls, tops))
        ab_parts.append(abs_)
    raw = tuple(x for y, c in zip(y_parts, ab_parts) for x in y + c)
    if not is_freely_reduced(raw, cyclic=True):
        raise InvariantError("eliminated relation is not cyclically reduced", relation=format_word(raw))

    # slide the commutator blocks to the front, conjugating their generators
    conj, qhat, lrhat, prefix = {}, [], [], ()
    for ys, c in zip(y_parts, ab_parts):
        prefix = prefix + ys
        lrhat.extend(ys)
        qhat.extend(c)
        for g in generators_of(c):
            conj[g] = prefix
    qhat, lrhat = tuple(qhat), tuple(lrhat)
    pres = Presentation(cls, _generator_list(cls), qhat + lrhat, qhat, lrhat, conj, raw)
    certify_presentation(pres)
    return pres


def undo_conjugation(pres):
    """Substitute conjugated A/B generators back; should give the raw relation."""
    out = []
    for g, s in pres.relation:
        z = pres.conjugators.get(g, ())
        out.extend(z + ((g, s),) + inverse(z))
    return free_reduce(tuple(out))


def t0_presentation(cls):
    """Presentation and action matrix for a free action (``t = 0``).

    Here the cover is the kernel of ``a_1 -> 1``.  Rewriting over the
    transversal of powers of ``a_1`` gives ``alpha = a_1^p`` (kept as
    ``A:1:0``) and ``h^v(b_1)`` (``B:1:v``); the translates of the relator
    eliminate ``B:1:1 .. B:1:p-1`` one at a time, leaving
    ``[alpha, beta] * prod_v h^v(P)`` with ``P = prod_{j>=2} [A_j, B_j]``.
    """
    if cls.t != 0:
        raise ValidationError("t0_presentation needs t = 0")
    p, g0 = cls.p, cls.g0
    alpha, beta = Generator("A", 1, 0), Generator("B", 1, 0)
    P = tuple(x for j in range(2, g0 + 1)
              for x in commutator((Generator("A", j, 0), 1), (Generator("B", j, 0), 1)))
    relation = commutator((alpha, 1), (beta, 1)) + power_word(P, range(p), p)
    A = [Generator("A", j, v) for j in range(2, g0 + 1) for v in range(p)] + [alpha]
    B = [Generator("B", j, v) for j in range(2, g0 + 1) for v in range(p)] + [beta]
    pres = Presentation(cls, tuple(A + B), relation, relation, (), {}, relation)
    certify_presentation(pres)
    M = adapted_action_matrix(pres, cls)
    return pres, M


# ---------------------------------------------------------------------------
# homology and the action


def abelianize(word, basis):
    index = {g: i for i, g in enumerate(basis)}
    vec = [0] * len(basis)
    for g, s in word:
        try:
            vec[index[g]] += s
        except KeyError:
            raise ValidationError(f"letter {g} is not in the basis") from None
    return vec


def h_image(gen, cls, _tops=None):
    """``h`` applied to a live generator, as a word in live generators.

    Conjugated A/B generators are mapped as if unconjugated; the
    conjugators do not change homology classes.
    """
    p = cls.p
    if cls.t == 0:
        if gen.index == 1 and gen.kind == "A":
            return ((gen, 1),)
        if gen.index == 1 and gen.kind == "B":
            # h(beta) = P^-1 beta
            P = tuple(x for j in range(2, cls.g0 + 1)
                      for x in commutator((Generator("A", j, 0), 1), (Generator("B", j, 0), 1)))
            return inverse(P) + ((gen, 1),)
        return ((gen.shifted(1, p), 1),)
    if gen.kind in ("A", "B"):
        return ((gen.shifted(1, p), 1),)
    if gen.power < p - 2:
        return ((gen.shifted(1, p), 1),)
    if _tops is not None:
        return _tops[gen.index]
    return top_power_word(cls, gen.index)


def adapted_action_matrix(pres, cls=None):
    """Matrix of ``h`` on the presentation basis, one row per generator image."""
    cls = cls or pres.cls
    basis = pres.generators
    tops = None
    if cls.t > 2:
        _, rho = raw_relators(cls)
        tops = {r: solve_for(rho[r], Generator("Y", r, cls.p - 1)) for r in range(3, cls.t + 1)}
    rows = [abelianize(h_image(g, cls, tops), basis) for g in basis]
    return IntMatrix(rows, len(basis))


# ---------------------------------------------------------------------------
# certification


def linked_generators(word):
    """Generators whose two occurrences interleave with those of some other generator."""
    if not word:
        return set()
    C = interleave_matrix(word)
    basis = generators_of(word)
    return {g for g, row in zip(basis, C.rows) if any(row)}


def certify_presentation(pres):
    cls = pres.cls
    rel = pres.relation
    problems = []
    if len(pres.generators) != 2 * cls.g:
        problems.append(f"{len(pres.generators)} generators, expected {2 * cls.g}")
    if rel != pres.qhat + pres.lrhat:
        problems.append("relation is not qhat * lrhat")
    if len(rel) != 4 * cls.g:
        problems.append(f"relation length {len(rel)}, expected {4 * cls.g}")
    seen = {}
    for g, s in rel:
        seen[g, s] = seen.get((g, s), 0) + 1
    for g in pres.generators:
        if seen.get((g, 1)) != 1 or seen.get((g, -1)) != 1:
            problems.append(f"{g} does not occur once with each sign")
            break
    if set(g for g, _ in rel) - set(pres.generators):
        problems.append("relation uses unknown generators")
    if any(abelianize(rel, pres.generators)):
        problems.append("relation has nonzero abelianization")
    if pres.lrhat and linked_generators(pres.lrhat) != set(g for g, _ in pres.lrhat):
        problems.append("lrhat has an unlinked edge")
    if pres.conjugators and not cyclically_equal(undo_conjugation(pres), pres.raw_relation):
        problems.append("conjugator log does not reproduce the eliminated relation")
    if problems:
        raise InvariantError("presentation failed certification: " + "; ".join(problems),
                             cls=str(cls), relation=format_word(rel))
    return True


def expected_top_powers(cls, r):
    """Exponent sequence of ``x_r^p`` after rewriting: ``k * n_r`` for ``k < p``."""
    return [k * cls.n[r - 1] % cls.p for k in range(cls.p)]


def rotation_split_index(cls, r):
    """Position of ``h^{p-1}(Y_r)`` in ``x_r^p``; equals ``p - s_r``."""
    return (cls.p - mod_inverse(cls.n[r - 1], cls.p)) % cls.p
