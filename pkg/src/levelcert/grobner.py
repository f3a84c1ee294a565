"""Groebner bases for submodules of free modules over polynomial rings.

Everything runs in POT-grevlex order. `buchberger` returns a reduced,
monic, canonically sorted basis together with two change-of-basis
records: each basis element expressed in the input generators, and each
input expressed in the basis. Syzygies come from Schreyer's construction
applied to the finished basis, so pair-selection shortcuts during the
build cannot lose relations.

The pair budget bounds the number of S-pairs processed; exceeding it
raises BudgetExceeded rather than returning a partial answer.
"""

from __future__ import annotations

from .poly import Poly, PolyVec, mono_div, mono_lcm, mono_mul, mono_deg, pot_key


class BudgetExceeded(RuntimeError):
    def __init__(self, pairs_done: int):
        super().__init__(f"Groebner pair budget exceeded after {pairs_done} S-pairs")
        self.pairs_done = pairs_done


def normal_form(v: PolyVec, basis, track: bool = False):
    """Divide v by a list of monic PolyVecs.

    Returns the remainder, or (remainder, quotients) with track=True where
    quotients[k] is the Poly coefficient on basis[k] and
    v = sum(basis[k] * quotients[k]) + remainder.
    """
    field, nvars = v.field, v.nvars
    leads = [g.lead() for g in basis]
    work = v
    rem = PolyVec.zero(field, nvars)
    quots = [Poly.zero(field, nvars) for _ in basis] if track else None
    while not work.is_zero():
        t, c = work.lead()
        hit = None
        for k, ((gc, gm), _) in enumerate(leads):
            if gc == t[0]:
                q = mono_div(t[1], gm)
                if q is not None:
                    hit = (k, q)
                    break
        if hit is None:
            piece = PolyVec(field, nvars, {t: c})
            rem = rem + piece
            work = work - piece
        else:
            k, q = hit
            work = work - basis[k].mul_mono(q, c)
            if track:
                quots[k] = quots[k] + Poly(field, nvars, {q: c})
    if track:
        return rem, quots
    return rem


class GroebnerBasis:
    """Reduced Groebner basis with change-of-basis bookkeeping.

    basis[t] = sum_i U[t](component i) * inputs[i]
    inputs[i] = sum_t V[i](component t) * basis[t]
    """

    def __init__(self, field, nvars, inputs, basis, U, V, pairs_done):
        self.field = field
        self.nvars = nvars
        self.inputs = inputs
        self.basis = basis
        self.U = U
        self.V = V
        self.pairs_done = pairs_done

    def __len__(self):
        return len(self.basis)

    def normal_form(self, v: PolyVec) -> PolyVec:
        return normal_form(v, self.basis)

    def contains(self, v: PolyVec) -> bool:
        return self.normal_form(v).is_zero()

    def express(self, v: PolyVec):
        """Quotient polys over the basis if v is in the module, else None."""
        rem, quots = normal_form(v, self.basis, track=True)
        if not rem.is_zero():
            return None
        return quots

    def express_in_inputs(self, v: PolyVec):
        """v as a PolyVec over input indices, or None if not a member."""
        quots = self.express(v)
        if quots is None:
            return None
        out = PolyVec.zero(self.field, self.nvars)
        for t, q in enumerate(quots):
            if not q.is_zero():
                out = out + self.U[t].mul_poly(q)
        return out


def _pair_candidates(basis, i, j):
    (ci, mi), _ = basis[i].lead()
    (cj, mj), _ = basis[j].lead()
    if ci != cj:
        return None
    lcm = mono_lcm(mi, mj)
    return (mono_deg(lcm), i, j, lcm, mono_div(lcm, mi), mono_div(lcm, mj))


def buchberger(gens, budget: int = 50000) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by gens.

    Pairs are processed lowest lcm-degree first (ties by index). The
    coprimality shortcut is applied only when every generator lives in a
    single component, where it is valid.
    """
    assert gens, "need at least one generator (possibly zero)"
    field, nvars = gens[0].field, gens[0].nvars
    inputs = list(gens)
    rank1 = all(g.max_component() <= 0 for g in inputs)

    basis: list[PolyVec] = []
    U: list[PolyVec] = []
    for i, g in enumerate(inputs):
        if g.is_zero():
            continue
        _, lc = g.lead()
        inv = field.inv(lc)
        basis.append(g.scale(inv))
        U.append(PolyVec.unit(field, nvars, i).scale(inv))

    pending = []
    for j in range(len(basis)):
        for i in range(j):
            cand = _pair_candidates(basis, i, j)
            if cand is not None:
                pending.append(cand)

    pairs_done = 0
    while pending:
        pending.sort()
        deg, i, j, lcm, qi, qj = pending.pop(0)
        (ci, mi), _ = basis[i].lead()
        (cj, mj), _ = basis[j].lead()
        if rank1 and mono_mul(mi, mj) == lcm:
            continue  # coprime leads, S-pair reduces to zero
        pairs_done += 1
        if pairs_done > budget:
            raise BudgetExceeded(pairs_done)
        s = basis[i].mul_mono(qi) - basis[j].mul_mono(qj)
        rem, quots = normal_form(s, basis, track=True)
        if rem.is_zero():
            continue
        _, lc = rem.lead()
        inv = field.inv(lc)
        u = U[i].mul_mono(qi) - U[j].mul_mono(qj)
        for k, q in enumerate(quots):
            if not q.is_zero():
                u = u - U[k].mul_poly(q)
        basis.append(rem.scale(inv))
        U.append(u.scale(inv))
        new = len(basis) - 1
        for k in range(new):
            cand = _pair_candidates(basis, k, new)
            if cand is not None:
                pending.append(cand)

    # minimalize: drop elements whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(basis):
        (ci, mi), _ = g.lead()
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            (cj, mj), _ = h.lead()
            if ci == cj and mono_div(mi, mj) is not None:
                # on equal leads keep the earlier element
                if (mi != mj) or (j < i):
                    redundant = True
                    break
        if not redundant:
            keep.append(i)
    basis = [basis[i] for i in keep]
    U = [U[i] for i in keep]

    # tail-reduce each element against the others
    for i in range(len(basis)):
        others = basis[:i] + basis[i + 1:]
        rem, quots = normal_form(basis[i], others, track=True)
        u = U[i]
        uo = U[:i] + U[i + 1:]
        for k, q in enumerate(quots):
            if not q.is_zero():
                u = u - uo[k].mul_poly(q)
        basis[i] = rem
        U[i] = u

    order = sorted(range(len(basis)), key=lambda t: pot_key(basis[t].lead()[0]))
    basis = [basis[t] for t in order]
    U = [U[t] for t in order]

    V = []
    for f in inputs:
        quots = None
        rem, quots = normal_form(f, basis, track=True)
        assert rem.is_zero(), "input failed to reduce to zero against its own basis"
        vec = PolyVec.zero(field, nvars)
        for t, q in enumerate(quots):
            for m, c in q.terms.items():
                vec = vec + PolyVec(field, nvars, {(t, m): c})
        V.append(vec)

    return GroebnerBasis(field, nvars, inputs, basis, U, V, pairs_done)


def schreyer_syzygies(gb: GroebnerBasis):
    """Generators of the syzygy module of gb.basis, as PolyVecs over basis indices.

    Every same-component pair of the finished basis contributes
    m_i e_i - m_j e_j - sum quots, using the recorded division to zero.
    """
    field, nvars = gb.field, gb.nvars
    out = []
    n = len(gb.basis)
    for j in range(n):
        for i in range(j):
            cand = _pair_candidates(gb.basis, i, j)
            if cand is None:
                continue
            _, _, _, lcm, qi, qj = cand
            s = gb.basis[i].mul_mono(qi) - gb.basis[j].mul_mono(qj)
            rem, quots = normal_form(s, gb.basis, track=True)
            assert rem.is_zero(), "S-pair of a Groebner basis must reduce to zero"
            syz = (PolyVec(field, nvars, {(i, qi): field.one})
                   - PolyVec(field, nvars, {(j, qj): field.one}))
            for k, q in enumerate(quots):
                if not q.is_zero():
                    syz = syz - PolyVec.unit(field, nvars, k).mul_poly(q)
            if not syz.is_zero():
                out.append(syz)
    return out


def syzygies(gens, budget: int = 50000, gb: GroebnerBasis | None = None):
    """Generators of {c : sum c_i gens[i] = 0}, as PolyVecs over input indices.

    Schreyer syzygies of the reduced basis are pushed through the
    basis-to-input expressions; the identities input = (input expressed in
    basis expressed in inputs) supply the rest.
    """
    if gb is None:
        gb = buchberger(gens, budget=budget)
    field, nvars = gb.field, gb.nvars
    out = []
    for syz in schreyer_syzygies(gb):
        vec = PolyVec.zero(field, nvars)
        for t in range(len(gb.basis)):
            q = syz.component(t)
            if not q.is_zero():
                vec = vec + gb.U[t].mul_poly(q)
        if not vec.is_zero():
            out.append(vec)
    for i in range(len(gb.inputs)):
        vec = PolyVec.unit(field, nvars, i)
        for t in range(len(gb.basis)):
            q = gb.V[i].component(t)
            if not q.is_zero():
                vec = vec - gb.U[t].mul_poly(q)
        if not vec.is_zero():
            out.append(vec)
    return out
