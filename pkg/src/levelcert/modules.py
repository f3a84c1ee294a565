"""Finitely generated modules and their homs, in two backends.

ArtinModule: a finite-dimensional vector space with one commuting action
matrix per ring variable, satisfying the ring relations. Elements are
column vectors.

GradedModule: a finitely presented graded module over a polynomial ring,
stored as generator twists plus homogeneous relation vectors. Elements
are PolyVecs over the generators; equality is normal-form equality
modulo the relation Groebner basis.

Both hom types expose the same vocabulary (kernel, image, cokernel,
lift_through, factor_through, solve_preimage, ...), so the complex and
resolution layers stay backend-agnostic. HomSpace gives exact k-linear
coordinates on Hom(M, N) in which a hom is zero iff its coordinate
vector is zero; all homotopy-theoretic linear algebra runs through it.
"""

from __future__ import annotations

from .linalg import (Mat, block_diag, extend_to_basis, hstack, subspace_basis,
                     vstack)
from .poly import Poly, PolyVec, mono_mul, monomials_of_degree
from .grobner import buchberger, syzygies
from .rings import ArtinRing, GradedPolyRing


class ModuleError(ValueError):
    pass


def mat_vec(m: Mat) -> Mat:
    """Column-major vectorization as a single column."""
    entries = []
    for j in range(m.ncols):
        for i in range(m.nrows):
            entries.append([m.entry(i, j)])
    if not entries:
        return Mat.zeros(m.field, 0, 1)
    return Mat.from_rows(m.field, entries)


def mat_unvec(field, nrows: int, ncols: int, col: Mat) -> Mat:
    rows = [[col.entry(j * nrows + i, 0) for j in range(ncols)] for i in range(nrows)]
    if not rows:
        return Mat.zeros(field, nrows, ncols)
    return Mat.from_rows(field, rows)


# ---------------------------------------------------------------- Artin side


class ArtinModule:
    mode = "artin"

    def __init__(self, ring: ArtinRing, dim: int, actions, check: bool = True,
                 label: str | None = None):
        self.ring = ring
        self.dim = dim
        self.actions = list(actions)
        self.label = label
        self._mono_act = {}
        self._min_gens = None
        if len(self.actions) != ring.nvars:
            raise ModuleError("one action matrix per ring variable required")
        for a in self.actions:
            if a.shape != (dim, dim):
                raise ModuleError("action matrix shape mismatch")
        if check:
            self._verify()

    def _verify(self):
        for i in range(len(self.actions)):
            for j in range(i):
                if not (self.actions[i] @ self.actions[j]
                        == self.actions[j] @ self.actions[i]):
                    raise ModuleError("actions do not commute")
        for b in self.ring.gb.basis:
            r = b.component(0)
            if not self.poly_action(r).is_zero():
                raise ModuleError("ring relation not satisfied by actions")

    @property
    def field(self):
        return self.ring.field

    def mono_action(self, mono) -> Mat:
        mono = tuple(mono)
        if mono not in self._mono_act:
            out = Mat.identity(self.field, self.dim)
            for v, e in enumerate(mono):
                for _ in range(e):
                    out = self.actions[v] @ out
            self._mono_act[mono] = out
        return self._mono_act[mono]

    def poly_action(self, p: Poly) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for m, c in p.terms.items():
            out = out + self.mono_action(m).scale(c)
        return out

    # elements are dim x 1 Mats
    def zero_elem(self) -> Mat:
        return Mat.zeros(self.field, self.dim, 1)

    def basis_elem(self, i: int) -> Mat:
        rows = [[self.field.zero] for _ in range(self.dim)]
        rows[i][0] = self.field.one
        return Mat.from_rows(self.field, rows)

    def elem_eq(self, a: Mat, b: Mat) -> bool:
        return a == b

    def is_zero_elem(self, a: Mat) -> bool:
        return a.is_zero()

    def is_zero_module(self) -> bool:
        return self.dim == 0

    def radical_span(self) -> Mat:
        """Matrix whose column space is m*M."""
        if not self.actions:
            return Mat.zeros(self.field, self.dim, 0)
        return hstack(self.actions)

    def min_gens(self):
        """Columns forming a minimal generating set (standard-vector lifts)."""
        if self._min_gens is None:
            span = self.radical_span().column_space_basis()
            idx = extend_to_basis(self.field, span)
            self._min_gens = [self.basis_elem(i) for i in idx]
        return self._min_gens

    def mu(self) -> int:
        return len(self.min_gens())

    def socle_dim(self) -> int:
        if not self.actions:
            return self.dim
        return self.dim - vstack(self.actions).rank()

    def is_free(self) -> bool:
        if self.dim == 0:
            return True
        return self.mu() * self.ring.dim == self.dim

    def dual(self) -> "ArtinModule":
        """Matlis dual Hom_k(M, k) with (x.f)(m) = f(x.m)."""
        return ArtinModule(self.ring, self.dim,
                           [a.transpose() for a in self.actions], check=False,
                           label=None if self.label is None else self.label + "^v")

    def identity_hom(self) -> "ArtinHom":
        return ArtinHom(self, self, Mat.identity(self.field, self.dim), check=False)

    def invariants(self):
        return (self.dim, self.mu(), self.socle_dim(),
                tuple(a.rank() for a in self.actions))

    def __eq__(self, other):
        return (isinstance(other, ArtinModule) and other.ring == self.ring
                and other.actions == self.actions)

    def __hash__(self):
        return hash(("artmod", self.dim))

    def __repr__(self):
        return self.label or f"ArtinModule(dim={self.dim})"


def artin_free(ring: ArtinRing, n: int) -> ArtinModule:
    acts = [block_diag(ring.field, [ring.var_matrix(v)] * n)
            for v in range(ring.nvars)]
    out = ArtinModule(ring, n * ring.dim, acts, check=False, label=f"free^{n}")
    out.free_rank = n
    return out


def artin_residue_field(ring: ArtinRing) -> ArtinModule:
    return ArtinModule(ring, 1, [Mat.zeros(ring.field, 1, 1)] * ring.nvars,
                       check=False, label="k")


class ArtinHom:
    def __init__(self, source: ArtinModule, target: ArtinModule, matrix: Mat,
                 check: bool = True):
        self.source = source
        self.target = target
        self.matrix = matrix
        if matrix.shape != (target.dim, source.dim):
            raise ModuleError("hom matrix shape mismatch")
        if check:
            for xs, xt in zip(source.actions, target.actions):
                if not (xt @ matrix == matrix @ xs):
                    raise ModuleError("hom does not intertwine the actions")

    def apply(self, elem: Mat) -> Mat:
        return self.matrix @ elem

    def compose(self, other: "ArtinHom") -> "ArtinHom":
        assert other.target is self.source or other.target == self.source
        return ArtinHom(other.source, self.target, self.matrix @ other.matrix,
                        check=False)

    def __add__(self, other):
        return ArtinHom(self.source, self.target, self.matrix + other.matrix,
                        check=False)

    def __sub__(self, other):
        return ArtinHom(self.source, self.target, self.matrix - other.matrix,
                        check=False)

    def __neg__(self):
        return ArtinHom(self.source, self.target, -self.matrix, check=False)

    def scale(self, c):
        return ArtinHom(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other):
        return (isinstance(other, ArtinHom) and other.matrix == self.matrix
                and other.source == self.source and other.target == self.target)

    def __hash__(self):
        return hash(("arthom", self.matrix))

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def kernel(self):
        """(K, incl: K -> source)."""
        kb = self.matrix.kernel_basis()
        return self._sub_on_columns(self.source, kb)

    @staticmethod
    def _sub_on_columns(ambient: ArtinModule, cols: Mat):
        acts = []
        for x in ambient.actions:
            y = cols.solve(x @ cols)
            assert y is not None, "columns do not span a submodule"
            acts.append(y)
        sub = ArtinModule(ambient.ring, cols.ncols, acts, check=False)
        incl = ArtinHom(sub, ambient, cols, check=False)
        return sub, incl

    def image(self):
        """(I, incl: I -> target, epi: source -> I) with incl . epi == self."""
        ib = self.matrix.column_space_basis()
        img, incl = self._sub_on_columns(self.target, ib)
        epi_mat = ib.solve(self.matrix)
        epi = ArtinHom(self.source, img, epi_mat, check=False)
        return img, incl, epi

    def cokernel(self):
        """(C, proj: target -> C)."""
        f = self.matrix.field
        ib = self.matrix.column_space_basis()
        idx = extend_to_basis(f, ib)
        sect = hstack([self.target.basis_elem(i) for i in idx]) if idx \
            else Mat.zeros(f, self.target.dim, 0)
        full = hstack([ib, sect])
        inv = full.inverse()
        assert inv is not None
        cdim = len(idx)
        proj_rows = [[inv.entry(ib.ncols + r, j) for j in range(self.target.dim)]
                     for r in range(cdim)]
        proj_mat = (Mat.from_rows(f, proj_rows) if cdim
                    else Mat.zeros(f, 0, self.target.dim))
        acts = [proj_mat @ x @ sect for x in self.target.actions]
        cok = ArtinModule(self.target.ring, cdim, acts, check=False)
        proj = ArtinHom(self.target, cok, proj_mat, check=True)
        return cok, proj

    def lift_through(self, mono: "ArtinHom"):
        """h with mono . h == self, or None. mono must be injective."""
        h = mono.matrix.solve(self.matrix)
        if h is None:
            return None
        out = ArtinHom(self.source, mono.source, h, check=False)
        assert mono.compose(out) == self
        return out

    def factor_through(self, epi: "ArtinHom"):
        """h with h . epi == self, or None. epi must be surjective."""
        sect = epi.matrix.solve(Mat.identity(self.matrix.field, epi.target.dim))
        if sect is None:
            return None
        h = ArtinHom(epi.target, self.target, self.matrix @ sect, check=False)
        if not (h.compose(epi) == self):
            return None
        return h

    def solve_preimage(self, elem: Mat):
        return self.matrix.solve(elem)

    def dual(self) -> "ArtinHom":
        return ArtinHom(self.target.dual(), self.source.dual(),
                        self.matrix.transpose(), check=False)

    def __repr__(self):
        return f"ArtinHom({self.source.dim}->{self.target.dim})"


# --------------------------------------------------------------- graded side


class GradedModule:
    mode = "graded"

    def __init__(self, ring: GradedPolyRing, gen_twists, rels, check: bool = True,
                 label: str | None = None):
        self.ring = ring
        self.gen_twists = list(gen_twists)
        self.rels = []
        for r in rels or []:
            if r.is_zero():
                continue
            if check and r.homogeneous_degree(self.gen_twists) is None:
                raise ModuleError("relation is not homogeneous for the twists")
            self.rels.append(r)
        self.label = label
        self._gb = None
        self._min_idx = None

    @property
    def field(self):
        return self.ring.field

    @property
    def ngens(self):
        return len(self.gen_twists)

    def rel_gb(self):
        if self._gb is None and self.rels:
            self._gb = buchberger(self.rels)
        return self._gb

    def nf(self, v: PolyVec) -> PolyVec:
        gb = self.rel_gb()
        return gb.normal_form(v) if gb else v

    def zero_elem(self) -> PolyVec:
        return PolyVec.zero(self.field, self.ring.nvars)

    def gen_elem(self, j: int) -> PolyVec:
        return PolyVec.unit(self.field, self.ring.nvars, j)

    def elem_eq(self, a: PolyVec, b: PolyVec) -> bool:
        return self.nf(a - b).is_zero()

    def is_zero_elem(self, a: PolyVec) -> bool:
        return self.nf(a).is_zero()

    def is_zero_module(self) -> bool:
        return all(self.is_zero_elem(self.gen_elem(j)) for j in range(self.ngens))

    def hilbert(self, d: int) -> int:
        """dim_k of the degree-d piece."""
        amb = sum(self.ring.dim_of_degree(d - t) for t in self.gen_twists)
        if amb == 0:
            return 0
        row_index = {}
        for j, t in enumerate(self.gen_twists):
            for m in self.ring.monomials(d - t) if d - t >= 0 else []:
                row_index[(j, m)] = len(row_index)
        cols = []
        for r in self.rels:
            rd = r.homogeneous_degree(self.gen_twists)
            if rd is None or d - rd < 0:
                continue
            for m in self.ring.monomials(d - rd):
                prod = r.mul_mono(m)
                col = [self.field.zero] * len(row_index)
                for t, c in prod.terms.items():
                    col[row_index[t]] = c
                cols.append(col)
        if not cols:
            return amb
        mat = Mat.from_rows(self.field,
                            [[cols[j][i] for j in range(len(cols))]
                             for i in range(len(row_index))])
        return amb - mat.rank()

    def min_gens_indices(self):
        """Generator indices forming a minimal generating set.

        In each twist degree d, the constant parts of degree-d relations
        span the redundancy; standard vectors completing that span name
        the surviving generators.
        """
        if self._min_idx is not None:
            return self._min_idx
        out = []
        degrees = sorted(set(self.gen_twists))
        for d in degrees:
            slots = [j for j, t in enumerate(self.gen_twists) if t == d]
            pos = {j: i for i, j in enumerate(slots)}
            cols = []
            for r in self.rels:
                if r.homogeneous_degree(self.gen_twists) != d:
                    continue
                col = [self.field.zero] * len(slots)
                hit = False
                for (j, m), c in r.terms.items():
                    if sum(m) == 0:
                        col[pos[j]] = c
                        hit = True
                if hit:
                    cols.append(col)
            if cols:
                w = Mat.from_rows(self.field,
                                  [[cols[t][i] for t in range(len(cols))]
                                   for i in range(len(slots))])
                chosen = extend_to_basis(self.field, w.column_space_basis())
            else:
                chosen = list(range(len(slots)))
            out.extend(slots[i] for i in chosen)
        self._min_idx = sorted(out)
        return self._min_idx

    def min_gens(self):
        return [self.gen_elem(j) for j in self.min_gens_indices()]

    def mu(self) -> int:
        return len(self.min_gens_indices())

    def relations_of(self, gens):
        """Generators of {c : sum c_j gens[j] == 0 in self}, as PolyVecs."""
        if not gens:
            return []
        sys = list(gens) + self.rels
        out = []
        for s in syzygies(sys):
            first = PolyVec(self.field, self.ring.nvars,
                            {(j, m): c for (j, m), c in s.terms.items()
                             if j < len(gens)})
            if not first.is_zero():
                out.append(first)
        return out

    def is_free(self) -> bool:
        idx = self.min_gens_indices()
        if len(idx) == self.ngens and not self.rels:
            return True
        rels = self.relations_of([self.gen_elem(j) for j in idx])
        return all(r.is_zero() for r in rels)

    def identity_hom(self) -> "GradedHom":
        return GradedHom(self, self, [self.gen_elem(j) for j in range(self.ngens)],
                         check=False)

    def invariants(self, window: int = 6):
        idx = self.min_gens_indices()
        twists = sorted(self.gen_twists[j] for j in idx)
        if not twists:
            return ((), ())
        lo = twists[0]
        hil = tuple(self.hilbert(d) for d in range(lo, lo + window))
        return (tuple(twists), hil)

    def __eq__(self, other):
        if not (isinstance(other, GradedModule) and other.ring == self.ring
                and other.gen_twists == self.gen_twists):
            return False
        ga, gb_ = self.rel_gb(), other.rel_gb()
        ba = ga.basis if ga else []
        bb = gb_.basis if gb_ else []
        return ba == bb

    def __hash__(self):
        return hash(("grmod", tuple(self.gen_twists)))

    def __repr__(self):
        return self.label or f"GradedModule(gens={self.ngens})"


def graded_free(ring: GradedPolyRing, twists) -> GradedModule:
    out = GradedModule(ring, list(twists), [], check=False,
                       label=f"free{tuple(twists)}")
    out.free_rank = len(out.gen_twists)
    return out


def graded_residue_field(ring: GradedPolyRing) -> GradedModule:
    rels = []
    for v in range(ring.nvars):
        e = [0] * ring.nvars
        e[v] = 1
        rels.append(PolyVec(ring.field, ring.nvars, {(0, tuple(e)): ring.field.one}))
    return GradedModule(ring, [0], rels, check=False, label="k")


def graded_submodule(ambient: GradedModule, gens, drop_zeros: bool = True):
    """(K, incl) for the submodule generated by gens (elements of ambient)."""
    if drop_zeros:
        gens = [g for g in gens if not ambient.is_zero_elem(g)]
    if not gens:
        K = GradedModule(ambient.ring, [], [], check=False)
        return K, GradedHom(K, ambient, [], check=False)
    twists = []
    for g in gens:
        d = g.homogeneous_degree(ambient.gen_twists)
        if d is None:
            raise ModuleError("submodule generator is not homogeneous")
        twists.append(d)
    rels = ambient.relations_of(gens)
    K = GradedModule(ambient.ring, twists, rels, check=False)
    incl = GradedHom(K, ambient, list(gens), check=False)
    return K, incl


class GradedHom:
    def __init__(self, source: GradedModule, target: GradedModule, cols,
                 check: bool = True):
        self.source = source
        self.target = target
        self.cols = list(cols)
        if len(self.cols) != source.ngens:
            raise ModuleError("one column per source generator required")
        if check:
            for j, c in enumerate(self.cols):
                if c.is_zero():
                    continue
                d = c.homogeneous_degree(target.gen_twists)
                if d != source.gen_twists[j]:
                    raise ModuleError("hom column has wrong degree")
            for r in source.rels:
                if not self.target.is_zero_elem(self._apply_raw(r)):
                    raise ModuleError("hom does not kill a source relation")

    def _apply_raw(self, elem: PolyVec) -> PolyVec:
        out = PolyVec.zero(self.target.field, self.target.ring.nvars)
        for (j, m), c in elem.terms.items():
            out = out + self.cols[j].mul_mono(m, c)
        return out

    def apply(self, elem: PolyVec) -> PolyVec:
        return self.target.nf(self._apply_raw(elem))

    def compose(self, other: "GradedHom") -> "GradedHom":
        cols = [self._apply_raw(c) for c in other.cols]
        return GradedHom(other.source, self.target, cols, check=False)

    def __add__(self, other):
        return GradedHom(self.source, self.target,
                         [a + b for a, b in zip(self.cols, other.cols)], check=False)

    def __sub__(self, other):
        return GradedHom(self.source, self.target,
                         [a - b for a, b in zip(self.cols, other.cols)], check=False)

    def __neg__(self):
        return GradedHom(self.source, self.target, [-c for c in self.cols],
                         check=False)

    def scale(self, c):
        return GradedHom(self.source, self.target,
                         [col.scale(c) for col in self.cols], check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_elem(c) for c in self.cols)

    def __eq__(self, other):
        return (isinstance(other, GradedHom) and other.source == self.source
                and other.target == self.target
                and all(self.target.elem_eq(a, b)
                        for a, b in zip(self.cols, other.cols)))

    def __hash__(self):
        return hash(("grhom", len(self.cols)))

    def _big_gb(self):
        """Groebner basis of [columns | target relations] with tracking."""
        sys = self.cols + self.target.rels
        if not sys:
            return None
        return buchberger(sys)

    def kernel(self):
        """(K, incl: K -> source)."""
        return graded_submodule(self.source, self._kernel_gens_in_source())

    def image(self):
        """(I, incl: I -> target, epi: source -> I).

        The image keeps the source generators; its relations are exactly
        the vectors the composite sends into the target relations.
        """
        img = GradedModule(self.target.ring, list(self.source.gen_twists),
                           self._kernel_gens_in_source(), check=False)
        incl = GradedHom(img, self.target, self.cols, check=False)
        epi = GradedHom(self.source, img,
                        [img.gen_elem(j) for j in range(self.source.ngens)],
                        check=False)
        return img, incl, epi

    def _kernel_gens_in_source(self):
        sys = self.cols + self.target.rels
        if not sys:
            return []
        out = []
        for s in syzygies(sys):
            first = PolyVec(self.source.field, self.source.ring.nvars,
                            {(j, m): c for (j, m), c in s.terms.items()
                             if j < len(self.cols)})
            if not first.is_zero():
                out.append(first)
        return out

    def cokernel(self):
        """(C, proj: target -> C)."""
        C = GradedModule(self.target.ring, list(self.target.gen_twists),
                         self.target.rels + [c for c in self.cols if not c.is_zero()],
                         check=False)
        proj = GradedHom(self.target, C,
                         [C.gen_elem(i) for i in range(self.target.ngens)],
                         check=False)
        return C, proj

    def is_injective(self) -> bool:
        K, _ = self.kernel()
        return K.is_zero_module()

    def is_surjective(self) -> bool:
        C, _ = self.cokernel()
        return C.is_zero_module()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def solve_preimage(self, elem: PolyVec):
        """Element of source mapping to elem, or None."""
        gb = self._big_gb()
        if gb is None:
            return None if not self.target.is_zero_elem(elem) else \
                PolyVec.zero(self.source.field, self.source.ring.nvars)
        expr = gb.express_in_inputs(elem)
        if expr is None:
            return None
        return PolyVec(self.source.field, self.source.ring.nvars,
                       {(j, m): c for (j, m), c in expr.terms.items()
                        if j < len(self.cols)})

    def lift_through(self, mono: "GradedHom"):
        """h with mono . h == self, or None."""
        cols = []
        for c in self.cols:
            pre = mono.solve_preimage(c)
            if pre is None:
                return None
            cols.append(pre)
        out = GradedHom(self.source, mono.source, cols, check=False)
        if not (mono.compose(out) == self):
            return None
        return out

    def factor_through(self, epi: "GradedHom"):
        """h with h . epi == self, or None."""
        cols = []
        for i in range(epi.target.ngens):
            pre = epi.solve_preimage(epi.target.gen_elem(i))
            if pre is None:
                return None
            cols.append(self._apply_raw(pre))
        out = GradedHom(epi.target, self.target, cols, check=False)
        if not (out.compose(epi) == self):
            return None
        return out

    def __repr__(self):
        return f"GradedHom({self.source.ngens}->{self.target.ngens})"


# ----------------------------------------------------- mode-generic wrappers


def residue_field_module(ring):
    if ring.kind == "artin":
        return artin_residue_field(ring)
    return graded_residue_field(ring)


def free_module(ring, rank_or_twists):
    if ring.kind == "artin":
        return artin_free(ring, rank_or_twists)
    return graded_free(ring, rank_or_twists)


def zero_module(ring):
    if ring.kind == "artin":
        return ArtinModule(ring, 0, [Mat.zeros(ring.field, 0, 0)] * ring.nvars,
                           check=False)
    return GradedModule(ring, [], [], check=False)


def zero_hom(M, N):
    if M.mode == "artin":
        return ArtinHom(M, N, Mat.zeros(M.field, N.dim, M.dim), check=False)
    return GradedHom(M, N, [N.zero_elem() for _ in range(M.ngens)], check=False)


def free_cover(M):
    """(F, phi) with F free and phi a surjection onto M from minimal generators."""
    if M.mode == "artin":
        gens = M.min_gens()
        F = artin_free(M.ring, len(gens))
        if gens:
            cols = []
            for g in gens:
                for m in M.ring.basis_monos:
                    cols.append(M.mono_action(m) @ g)
            mat = hstack(cols)
        else:
            mat = Mat.zeros(M.field, M.dim, 0)
        phi = ArtinHom(F, M, mat, check=True)
        assert phi.is_surjective()
        return F, phi
    idx = M.min_gens_indices()
    F = graded_free(M.ring, [M.gen_twists[j] for j in idx])
    phi = GradedHom(F, M, [M.gen_elem(j) for j in idx], check=False)
    return F, phi


def direct_sum(mods):
    """(S, incls, projs) for a finite list of modules over one ring."""
    assert mods
    if mods[0].mode == "artin":
        ring = mods[0].ring
        field = ring.field
        dims = [m.dim for m in mods]
        total = sum(dims)
        acts = []
        for v in range(ring.nvars):
            acts.append(block_diag(field, [m.actions[v] for m in mods]))
        S = ArtinModule(ring, total, acts, check=False)
        incls, projs = [], []
        off = 0
        for m in mods:
            if m.dim == 0 or total == 0:
                imat = Mat.zeros(field, total, m.dim)
                pmat = Mat.zeros(field, m.dim, total)
            else:
                imat = Mat.from_rows(field, [
                    [field.one if r == off + c else field.zero
                     for c in range(m.dim)] for r in range(total)])
                pmat = Mat.from_rows(field, [
                    [field.one if c == off + r else field.zero
                     for c in range(total)] for r in range(m.dim)])
            incls.append(ArtinHom(m, S, imat, check=False))
            projs.append(ArtinHom(S, m, pmat, check=False))
            off += m.dim
        return S, incls, projs
    ring = mods[0].ring
    field = ring.field
    twists = []
    rels = []
    offs = []
    off = 0
    for m in mods:
        offs.append(off)
        twists.extend(m.gen_twists)
        for r in m.rels:
            rels.append(PolyVec(field, ring.nvars,
                                {(j + off, mm): c for (j, mm), c in r.terms.items()}))
        off += m.ngens
    S = GradedModule(ring, twists, rels, check=False)
    incls, projs = [], []
    for t, m in enumerate(mods):
        incls.append(GradedHom(m, S,
                               [S.gen_elem(offs[t] + j) for j in range(m.ngens)],
                               check=False))
        pcols = [m.zero_elem()] * S.ngens
        for j in range(m.ngens):
            pcols[offs[t] + j] = m.gen_elem(j)
        projs.append(GradedHom(S, m, pcols, check=False))
    return S, incls, projs


def free_gen(F, j):
    """j-th module generator of a free module, as an element."""
    if F.mode == "artin":
        return F.basis_elem(j * F.ring.dim)
    return F.gen_elem(j)


def free_hom(F, N, images):
    """Hom out of a free module sending generator j to images[j]."""
    if F.mode == "artin":
        n = F.free_rank
        assert len(images) == n
        if n == 0 or N.dim == 0:
            return ArtinHom(F, N, Mat.zeros(F.field, N.dim, F.dim), check=False)
        cols = []
        for g in images:
            for m in F.ring.basis_monos:
                cols.append(N.mono_action(m) @ g)
        # equivariant by construction
        return ArtinHom(F, N, hstack(cols), check=False)
    return GradedHom(F, N, list(images), check=True)


def hom_entry_polys(h):
    """Polynomial entry matrix of a hom between free modules.

    Rows index target generators, columns source generators; entries are
    reduced modulo the ring relations in the artin case.
    """
    if h.source.mode == "artin":
        ring = h.source.ring
        d = ring.dim
        m, n = h.target.free_rank, h.source.free_rank
        out = []
        for i in range(m):
            row = []
            for j in range(n):
                ent = h.matrix.col_entries(j * d)[i * d:(i + 1) * d]
                row.append(ring.poly_of_coeffs(ent))
            out.append(row)
        return out
    ring = h.source.ring
    m, n = h.target.free_rank, h.source.free_rank
    out = [[Poly.zero(ring.field, ring.nvars) for _ in range(n)]
           for _ in range(m)]
    for j in range(n):
        for (i, mono), c in h.cols[j].terms.items():
            out[i][j] = out[i][j] + Poly(ring.field, ring.nvars, {mono: c})
    return out


def free_hom_from_polys(F, G, entries):
    """Hom between frees from a polynomial entry matrix (rows G, columns F)."""
    m, n = G.free_rank, F.free_rank
    assert len(entries) == m and all(len(r) == n for r in entries)
    if F.mode == "artin":
        ring = F.ring
        images = []
        for j in range(n):
            flat = []
            for i in range(m):
                flat.extend(ring.nf_coeffs(entries[i][j]))
            images.append(Mat.column(F.field, flat) if flat
                          else Mat.zeros(F.field, 0, 1))
        return free_hom(F, G, images)
    ring = F.ring
    cols = []
    for j in range(n):
        cols.append(PolyVec(ring.field, ring.nvars,
                            {(i, mono): c
                             for i in range(m)
                             for mono, c in entries[i][j].terms.items()}))
    return GradedHom(F, G, cols, check=True)


# ------------------------------------------------------------- hom spaces


class ArtinHomSpace:
    """Exact k-basis of Hom_A(M, N); coordinates are faithful."""

    def __init__(self, M: ArtinModule, N: ArtinModule):
        self.M, self.N = M, N
        f = M.field
        nm, nn = M.dim, N.dim
        if M.ring.nvars == 0 or nm == 0 or nn == 0:
            sys = Mat.zeros(f, 0, nm * nn)
        else:
            blocks = []
            im = Mat.identity(f, nm)
            inn = Mat.identity(f, nn)
            for xm, xn in zip(M.actions, N.actions):
                blocks.append(im.kron(xn) - xm.transpose().kron(inn))
            sys = vstack(blocks)
        self.basis_mat = sys.kernel_basis()  # (nm*nn) x dim

    @property
    def dim(self) -> int:
        return self.basis_mat.ncols

    def basis_hom(self, i: int) -> ArtinHom:
        col = self.basis_mat.take_columns([i])
        return ArtinHom(self.M, self.N,
                        mat_unvec(self.M.field, self.N.dim, self.M.dim, col),
                        check=False)

    def coords(self, h: ArtinHom) -> Mat:
        v = mat_vec(h.matrix)
        c = self.basis_mat.solve(v)
        if c is None:
            raise ModuleError("matrix is not a module hom")
        return c

    def from_coords(self, c: Mat) -> ArtinHom:
        col = self.basis_mat @ c
        return ArtinHom(self.M, self.N,
                        mat_unvec(self.M.field, self.N.dim, self.M.dim, col),
                        check=False)


class GradedHomSpace:
    """k-basis of degree-0 Hom_R(M, N), coordinates modulo maps into relations.

    Coordinates are faithful: coords(f) == coords(g) iff f == g as homs.
    """

    def __init__(self, M: GradedModule, N: GradedModule):
        self.M, self.N = M, N
        ring, f = M.ring, M.field
        self.entry_index = []  # (j source gen, i target gen, mono)
        for j, tj in enumerate(M.gen_twists):
            for i, ti in enumerate(N.gen_twists):
                d = tj - ti
                if d < 0:
                    continue
                for m in ring.monomials(d):
                    self.entry_index.append((j, i, m))
        self.pos = {e: t for t, e in enumerate(self.entry_index)}
        na = len(self.entry_index)

        rows = []  # each row: (list over na A-vars, list over local q-vars)
        for r in M.rels:
            dr = r.homogeneous_degree(M.gen_twists)
            # coordinates of degree-dr elements of the target's free cover
            coord = {}
            for i, ti in enumerate(N.gen_twists):
                if dr - ti < 0:
                    continue
                for m in ring.monomials(dr - ti):
                    coord[(i, m)] = len(coord)
            qvars = []  # (s index, mono)
            for s_idx, s in enumerate(N.rels):
                ds = s.homogeneous_degree(N.gen_twists)
                if ds is None or dr - ds < 0:
                    continue
                for m in ring.monomials(dr - ds):
                    qvars.append((s_idx, m))
            nrows = len(coord)
            block_a = [[f.zero] * na for _ in range(nrows)]
            block_q = [[f.zero] * len(qvars) for _ in range(nrows)]
            for (j, m), c in r.terms.items():
                for (jj, ii, mu) in self.entry_index:
                    if jj != j:
                        continue
                    key = (ii, mono_mul(mu, m))
                    block_a[coord[key]][self.pos[(jj, ii, mu)]] = \
                        f.add(block_a[coord[key]][self.pos[(jj, ii, mu)]],
                              c)
            for qi, (s_idx, m) in enumerate(qvars):
                prod = N.rels[s_idx].mul_mono(m)
                for key, c in prod.terms.items():
                    block_q[coord[key]][qi] = f.sub(block_q[coord[key]][qi], c)
            rows.append((block_a, block_q))

        # assemble global sparse block system: A-vars first, then q-vars per relation
        nq = sum(len(bq[0]) if bq else 0 for _, bq in rows)
        total_rows = sum(len(ba) for ba, _ in rows)
        if total_rows == 0:
            kern = Mat.identity(f, na) if na else Mat.zeros(f, 0, 0)
        else:
            data = []
            qoff = 0
            for ba, bq in rows:
                w = len(bq[0]) if bq else 0
                for ra, rq in zip(ba, bq or [[]] * len(ba)):
                    row = list(ra) + [f.zero] * nq
                    for t, c in enumerate(rq):
                        row[na + qoff + t] = c
                    data.append(row)
                qoff += w
            sys = Mat.from_rows(f, data)
            kern = sys.kernel_basis()
            if na:
                kern = Mat.from_rows(f, [kern.row_list(i) for i in range(na)]) \
                    if kern.ncols else Mat.zeros(f, na, 0)
            else:
                kern = Mat.zeros(f, 0, 0)

        # trivial homs: columns lying in the relation submodule of N
        triv_cols = []
        for j, tj in enumerate(M.gen_twists):
            for s in N.rels:
                ds = s.homogeneous_degree(N.gen_twists)
                if ds is None or tj - ds < 0:
                    continue
                for m in ring.monomials(tj - ds):
                    vecd = [f.zero] * na
                    prod = s.mul_mono(m)
                    ok = True
                    for (i, mm), c in prod.terms.items():
                        key = (j, i, mm)
                        if key not in self.pos:
                            ok = False
                            break
                        vecd[self.pos[key]] = c
                    if ok and any(not f.is_zero(x) for x in vecd):
                        triv_cols.append(vecd)
        if na == 0:
            self.triv = Mat.zeros(f, 0, 0)
            self.full = Mat.zeros(f, 0, 0)
        else:
            self.triv = (Mat.from_rows(
                f, [[tc[i] for tc in triv_cols] for i in range(na)])
                if triv_cols else Mat.zeros(f, na, 0)).column_space_basis()
            span_cols = hstack([self.triv, kern]) if kern.ncols or self.triv.ncols \
                else Mat.zeros(f, na, 0)
            self.full = span_cols
        # quotient basis: pivot columns of [triv | kernel] beyond the triv block
        keep = [c for c in (self.full.rref()[1] if self.full.ncols else ())
                if c >= self.triv.ncols]
        self.quot = self.full.take_columns(keep) if keep \
            else Mat.zeros(f, na, 0)
        self._solve_block = hstack([self.triv, self.quot]) if na else None

    @property
    def dim(self) -> int:
        return self.quot.ncols

    def _vectorize(self, h: GradedHom) -> Mat:
        f = self.M.field
        na = len(self.entry_index)
        v = [f.zero] * na
        for j, c in enumerate(h.cols):
            for (i, m), coeff in c.terms.items():
                key = (j, i, m)
                if key not in self.pos:
                    raise ModuleError("hom is not homogeneous of degree zero")
                v[self.pos[key]] = f.add(v[self.pos[key]], coeff)
        if na == 0:
            return Mat.zeros(f, 0, 1)
        return Mat.from_rows(f, [[x] for x in v])

    def _hom_from_entry_vec(self, col: Mat) -> GradedHom:
        f = self.M.field
        cols = [PolyVec.zero(f, self.M.ring.nvars) for _ in range(self.M.ngens)]
        for t, (j, i, m) in enumerate(self.entry_index):
            c = col.entry(t, 0)
            if not f.is_zero(c):
                cols[j] = cols[j] + PolyVec(f, self.M.ring.nvars, {(i, m): c})
        return GradedHom(self.M, self.N, cols, check=False)

    def basis_hom(self, i: int) -> GradedHom:
        return self._hom_from_entry_vec(self.quot.take_columns([i]))

    def coords(self, h: GradedHom) -> Mat:
        f = self.M.field
        if len(self.entry_index) == 0:
            return Mat.zeros(f, 0, 1)
        v = self._vectorize(h)
        sol = self._solve_block.solve(v) if self._solve_block.ncols else None
        if sol is None:
            if v.is_zero():
                return Mat.zeros(f, self.dim, 1)
            raise ModuleError("hom outside the computed hom space")
        rows = [[sol.entry(self.triv.ncols + i, 0)] for i in range(self.dim)]
        return Mat.from_rows(f, rows) if rows else Mat.zeros(f, 0, 1)

    def from_coords(self, c: Mat) -> GradedHom:
        if self.dim == 0:
            return zero_hom(self.M, self.N)
        return self._hom_from_entry_vec(self.quot @ c)


def hom_space(M, N):
    if M.mode == "artin":
        return ArtinHomSpace(M, N)
    return GradedHomSpace(M, N)


# ------------------------------------------------------------ isomorphism


def _random_field_elem(field, rng):
    if field.is_prime_field:
        return rng.randrange(field.p)
    from fractions import Fraction
    return Fraction(rng.randint(-3, 3))


def find_isomorphism(M, N, rng=None, samples: int = 48,
                     exhaustive_limit: int = 4096):
    """('iso', hom) | ('not_iso', reason) | ('inconclusive', None)."""
    import itertools
    import random as _random
    rng = rng or _random.Random(0)
    if M.mode == "artin":
        if M.dim != N.dim:
            return ("not_iso", "dimension mismatch")
        if M.dim == 0:
            return ("iso", zero_hom(M, N))
        if M.invariants() != N.invariants():
            return ("not_iso", "invariant mismatch")
    else:
        if M.invariants() != N.invariants():
            return ("not_iso", "twist or Hilbert function mismatch")
        if M.is_zero_module():
            return ("iso", zero_hom(M, N))
    H = hom_space(M, N)
    if H.dim == 0:
        return ("not_iso", "no nonzero homs")
    field = M.field
    if field.is_prime_field and field.p ** H.dim <= exhaustive_limit:
        for combo in itertools.product(range(field.p), repeat=H.dim):
            if all(c == 0 for c in combo):
                continue
            cand = H.from_coords(Mat.from_rows(field, [[c] for c in combo]))
            if cand.is_iso():
                return ("iso", cand)
        return ("not_iso", "exhaustive search found no isomorphism")
    for _ in range(samples):
        combo = [_random_field_elem(field, rng) for _ in range(H.dim)]
        if all(field.is_zero(c) for c in combo):
            continue
        cand = H.from_coords(Mat.from_rows(field, [[c] for c in combo]))
        if cand.is_iso():
            return ("iso", cand)
    return ("inconclusive", None)
