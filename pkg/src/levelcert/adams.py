"""Homology-cover towers over a bounded complex.

One projective step picks a degreewise free cover F of the homology of a
complex m, realizes it as a chain map phi: F -> m by lifting generators to
cycle representatives, and sets the next layer to the desuspended cone of
phi. Iterating gives a tower m = L0, L1, L2, ... whose connecting maps
induce zero on homology, and whose covers splice into a degreewise exact
sequence of free modules augmented onto H(m). The injective-side tower on
an artinian base is the vector-space dual of the projective tower on the
dual complex.
"""

from dataclasses import dataclass, field

from .modules import find_isomorphism, free_hom, artin_free, graded_free
from .complexes import (ChainMap, Complex, Triangle, cone, identity_chain_map,
                        module_stalk)
from .resolutions import _elem_degree


class AdamsError(ValueError):
    pass


def homology_stalks(x: Complex) -> Complex:
    """H(x) as a complex with zero differentials."""
    hd = x.hdata()
    mods = {}
    for i in x.support():
        h = hd.homology(i)
        if not h.is_zero_module():
            mods[i] = h
    return Complex(x.ring, mods, {}, check=False)


def _homology_gens(H, strategy: str):
    if strategy == "minimal":
        return list(H.min_gens())
    if strategy == "full":
        if H.mode == "artin":
            return [H.basis_elem(t) for t in range(H.dim)]
        return [H.gen_elem(j) for j in range(H.ngens)]
    raise AdamsError(f"unknown generator strategy {strategy!r}")


@dataclass
class AdamsStep:
    """One cover step F -> m with its cone and connecting map.

    phi induces a surjection on homology in every degree by construction,
    so H(delta) = 0 and the cone rotates to the degreewise short exact
    sequences 0 -> H(omega) -> F -> H(m) -> 0 on homology.
    """

    m: Complex
    F: Complex
    phi: ChainMap
    cover: dict          # degree -> module hom F_i -> H_i(m)
    hgens: dict          # degree -> generators of H_i(m) used for the cover
    cone_data: object
    omega: Complex       # next layer, shift(-1) of the cone
    delta: ChainMap      # m -> cone(phi) = shift(omega)
    triangle: Triangle


def adams_step_proj(m: Complex, gens: str = "minimal") -> AdamsStep:
    """Free homology cover of m and the resulting layer triangle."""
    ring = m.ring
    hd = m.hdata()
    fmods, comps, cover, hgens = {}, {}, {}, {}
    for i in m.support():
        H = hd.homology(i)
        if H.is_zero_module():
            continue
        hg = _homology_gens(H, gens)
        _, zeta = hd.cycles(i)
        pi = hd.homology_proj(i)
        reps = []
        for hgen in hg:
            zc = pi.solve_preimage(hgen)
            assert zc is not None
            reps.append(zeta.apply(zc))
        if ring.kind == "artin":
            Fi = artin_free(ring, len(hg))
        else:
            Fi = graded_free(ring, [_elem_degree(H, e) for e in hg])
        fmods[i] = Fi
        comps[i] = free_hom(Fi, m.module(i), reps)
        cover[i] = free_hom(Fi, H, hg)
        hgens[i] = hg
    F = Complex(ring, fmods, {}, check=False)
    # the commuting check verifies that every generator image is a cycle
    phi = ChainMap(F, m, comps, check=True)
    cd = cone(phi)
    omega = cd.complex.shift(-1)
    delta = cd.inclusion()
    tri = Triangle(phi, cd.complex, identity_chain_map(cd.complex),
                   check=True)
    return AdamsStep(m, F, phi, cover, hgens, cd, omega, delta, tri)


@dataclass
class AdamsTower:
    """Layers L0 = m, L1, ..., Ln with covers F^s -> L_s.

    For side "inj" the steps live on the dual complex; psi_maps then
    holds the dualized cover maps m -> E^0, theta layers, and so on.
    """

    m: Complex
    side: str
    gens: str
    steps: list = field(default_factory=list)

    def layer(self, s: int) -> Complex:
        if s == 0:
            return self.steps[0].m if self.steps else self.m
        return self.steps[s - 1].omega

    def __len__(self):
        return len(self.steps)

    def ghost_composite(self, n: int) -> ChainMap:
        """m -> shift(L_n, n), the composite of n connecting maps.

        Each factor induces zero on homology, so a nonzero homotopy
        class of the composite forces at least n + 1 free-cover layers.
        """
        if self.side != "proj":
            raise AdamsError("ghost composites live on the projective side")
        if not 1 <= n <= len(self.steps):
            raise AdamsError("tower too short for the requested composite")
        gamma = self.steps[0].delta
        for s in range(1, n):
            gamma = self.steps[s].delta.shift(s).compose(gamma)
        return gamma

    def coghost_composite(self, n: int) -> ChainMap:
        """shift(Theta_n, n)-dual -> m on the injective side."""
        if self.side != "inj":
            raise AdamsError("coghost composites live on the injective side")
        if not 1 <= n <= len(self.steps):
            raise AdamsError("tower too short for the requested composite")
        gamma = self.steps[0].delta
        for s in range(1, n):
            gamma = self.steps[s].delta.shift(s).compose(gamma)
        return gamma.dual()

    def summary(self) -> dict:
        out = {"side": self.side, "generators": self.gens,
               "layers": len(self.steps), "steps": []}
        for s, st in enumerate(self.steps):
            ranks = {str(i): st.F.module(i).free_rank for i in st.F.support()}
            out["steps"].append({
                "layer": s,
                "cover_ranks": ranks,
                "next_layer_support": [int(i) for i in st.omega.support()],
            })
        return out


def adams_tower(m: Complex, n: int, side: str = "proj",
                gens: str = "minimal") -> AdamsTower:
    """Run n cover steps starting from m (or from its dual for "inj")."""
    if side == "inj":
        if m.ring.kind != "artin":
            raise AdamsError("injective-side towers need an artinian base")
        base = m.dual()
    elif side == "proj":
        base = m
    else:
        raise AdamsError(f"unknown tower side {side!r}")
    tower = AdamsTower(m, side, gens)
    cur = base
    for _ in range(n):
        if all(cur.hdata().homology(i).is_zero_module()
               for i in cur.support()):
            break
        step = adams_step_proj(cur, gens=gens)
        tower.steps.append(step)
        cur = step.omega
    return tower


def _h_into_cover(tower: AdamsTower, s: int, i: int):
    """H_i(L_s) -> F^{s-1}_i, the connecting inclusion, for s >= 1.

    A class of L_s = shift(cone(phi), -1) is represented by a cycle
    (f, m') with zero F-differential component; sending it to f is well
    defined because boundaries have zero F-component, and it is injective
    because phi is surjective on homology.
    """
    step = tower.steps[s - 1]
    omega = step.omega
    hd = omega.hdata()
    H = hd.homology(i)
    if H.is_zero_module():
        return None, H
    _, zeta = hd.cycles(i)
    pi = hd.homology_proj(i)
    pra = step.cone_data.pr_a[i + 1]
    incl = pra.compose(zeta).factor_through(pi)
    assert incl is not None
    return incl, H


def splice_complex(tower: AdamsTower, i: int, n: int = None) -> Complex:
    """The degree-i splice 0 -> H_i(L_n) -> F^{n-1}_i -> ... -> H_i(m).

    Returned as a complex in degrees 0..n+1 whose exactness (including
    at both ends) is the splice property.
    """
    steps = tower.steps
    if n is None:
        n = len(steps)
    if not 1 <= n <= len(steps):
        raise AdamsError("tower too short for the requested splice")
    ring = steps[0].m.ring
    mods, diffs = {}, {}
    hd0 = steps[0].m.hdata()
    mods[0] = hd0.homology(i)
    for s in range(n):
        st = steps[s]
        if i in st.cover:
            mods[s + 1] = st.F.module(i)
        else:
            mods[s + 1] = None
    incls = {}
    for s in range(1, n + 1):
        incls[s], hs = _h_into_cover(tower, s, i)
        if s == n:
            mods[n + 1] = hs
    for s in range(n + 1):
        src, tgt = mods[s + 1], mods[s]
        if src is None or tgt is None or src.is_zero_module() \
                or tgt.is_zero_module():
            continue
        if s == 0:
            diffs[1] = steps[0].cover[i]
        elif s == n:
            diffs[n + 1] = incls[n]
        else:
            diffs[s + 1] = incls[s].compose(steps[s].cover[i])
    clean = {d: m for d, m in mods.items() if m is not None}
    return Complex(ring, clean, diffs, check=True)


def verify_splice(tower: AdamsTower, n: int = None) -> dict:
    """Exactness of every degreewise splice through layer n."""
    steps = tower.steps
    if n is None:
        n = len(steps)
    degs = set()
    for st in steps[:n]:
        degs |= set(st.F.support())
    base = steps[0].m if steps else tower.m
    hd = base.hdata()
    degs |= {i for i in base.support()
             if not hd.homology(i).is_zero_module()}
    per = {}
    for i in sorted(degs):
        per[int(i)] = splice_complex(tower, i, n).is_exact()
    return {"ok": all(per.values()), "per_degree": per,
            "layers": n, "side": tower.side}


@dataclass
class InjStep:
    """Dual presentation of a cover step: m -> E with E degreewise dual-free."""

    m: Complex
    E: Complex
    psi: ChainMap
    theta: Complex
    dual_step: AdamsStep


def adams_step_inj(m: Complex) -> InjStep:
    """Envelope step m -> E, the dual of a free cover of the dual."""
    if m.ring.kind != "artin":
        raise AdamsError("injective-side steps need an artinian base")
    st = adams_step_proj(m.dual())
    E = st.F.dual()
    psi = st.phi.dual()
    theta = st.omega.dual()
    if not all(psi.induced_on_homology(i).is_injective()
               for i in m.support()):
        raise AdamsError("envelope step failed to embed homology")
    return InjStep(m, E, psi, theta, st)
