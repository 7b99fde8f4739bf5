"""Cocycles, coboundaries and cohomology of a graded piece, with certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .coboundary import DeltaMatrix, delta_matrix, delta_symbolic
from .cochains import Cochain, CochainBasis, CochainError, cochain_to_dict, enumerate_basis
from .exact import Rational, as_rational, format_rational, qdiv
from .linalg import (
    ExactMatrix,
    Membership,
    image_basis,
    image_membership,
    in_row_space,
    kernel_basis,
    primitive,
    rank,
    rref,
)
from .reference import REPRESENTATIVE_NORMALIZATION, reference_dim


class NotClosedError(CochainError):
    """Raised when a cochain that must be a cocycle has nonzero coboundary."""

    def __init__(self, cochain: Cochain, delta: Cochain):
        super().__init__(f"cochain is not a cocycle: delta = {delta}")
        self.cochain = cochain
        self.delta = delta


def as_exact(d: DeltaMatrix) -> ExactMatrix:
    return ExactMatrix(len(d.codomain), len(d.domain), d.entries)


def coboundary_matrix(arity: int, lam, relative: bool) -> ExactMatrix:
    """delta from arity-1 into arity; an n x 0 matrix when arity is 0."""
    if arity == 0:
        n = len(enumerate_basis(0, lam, relative))
        return ExactMatrix(n, 0, tuple(() for _ in range(n)))
    return as_exact(delta_matrix(arity - 1, lam, relative))


def cocycle_matrix(arity: int, lam, relative: bool) -> ExactMatrix:
    """delta from arity into arity+1, whose kernel is the cocycle space."""
    return as_exact(delta_matrix(arity, lam, relative))


@dataclass(frozen=True)
class Certificate:
    """Evidence that ``representative`` is a cocycle but not a coboundary.

    ``witness`` is an integer covector on the cochain basis that annihilates
    every coboundary yet pairs to ``pairing`` != 0 with the representative.
    Witnesses produced by :func:`cohomology` are dual: they pair to zero
    with every other representative of the same report.
    """

    representative: Cochain
    closed: bool
    witness: Optional[tuple[int, ...]]
    pairing: Rational

    def verify(self, image: Optional[ExactMatrix] = None) -> bool:
        rep = self.representative
        if not delta_symbolic(rep).is_zero() or self.witness is None:
            return False
        if image is None:
            image = coboundary_matrix(rep.arity, rep.lam, rep.relative)
        basis = enumerate_basis(rep.arity, rep.lam, rep.relative)
        vec = rep.to_vector(basis)
        annihilates = all(v == 0 for v in image.left_apply(self.witness))
        pairing = as_rational(sum(a * b for a, b in zip(self.witness, vec)))
        return annihilates and pairing != 0 and pairing == self.pairing

    def to_dict(self) -> dict:
        return {
            "representative": cochain_to_dict(self.representative),
            "closed": self.closed,
            "witness": list(self.witness) if self.witness is not None else None,
            "pairing": format_rational(self.pairing),
        }


@dataclass(frozen=True)
class Decomposition:
    """cocycle == delta(primitive) + sum coeffs[i] * representatives[i]."""

    cocycle: Cochain
    primitive: Optional[Cochain]
    coeffs: tuple[Rational, ...]

    def to_dict(self) -> dict:
        return {
            "cocycle": cochain_to_dict(self.cocycle),
            "primitive": cochain_to_dict(self.primitive) if self.primitive is not None else None,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }


@dataclass(frozen=True)
class CohomologyReport:
    arity: int
    lam: int
    relative: bool
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int
    representatives: tuple[Cochain, ...]
    certificates: tuple[Certificate, ...]
    reference_dim: Optional[int] = None
    decompositions: tuple[Decomposition, ...] = ()

    @property
    def divergent_from_reference(self) -> bool:
        return self.reference_dim is not None and self.reference_dim != self.dim_cohomology

    def verify(self) -> bool:
        """Re-check every claim from scratch.

        Lower bound: each representative is closed and its dual witness kills
        the coboundaries, pairs nonzero with it and zero with the others.
        Upper bound: the listed cocycles are independent, as many as
        dim ker delta, and each one splits as a coboundary plus a combination
        of representatives.
        """
        basis = enumerate_basis(self.arity, self.lam, self.relative)
        image = coboundary_matrix(self.arity, self.lam, self.relative)
        closed = cocycle_matrix(self.arity, self.lam, self.relative)
        reps = self.representatives
        if len(reps) != self.dim_cohomology or len(self.certificates) != len(reps):
            return False
        vecs = [r.to_vector(basis) for r in reps]
        for i, cert in enumerate(self.certificates):
            if cert.representative != reps[i] or not cert.verify(image):
                return False
            for j, v in enumerate(vecs):
                if j != i and sum(a * b for a, b in zip(cert.witness, v)) != 0:
                    return False
        kernel_dim = closed.cols - rank(closed)
        if kernel_dim != self.dim_cocycles or len(self.decompositions) != kernel_dim:
            return False
        zs = [d.cocycle.to_vector(basis) for d in self.decompositions]
        if zs and rank(ExactMatrix.from_rows(zs, len(basis))) != kernel_dim:
            return False
        if rank(image) != self.dim_coboundaries:
            return False
        for d in self.decompositions:
            if not delta_symbolic(d.cocycle).is_zero() or len(d.coeffs) != len(reps):
                return False
            rest = d.cocycle
            for c, r in zip(d.coeffs, reps):
                rest = rest - r.scaled(c)
            if d.primitive is None:
                if not rest.is_zero():
                    return False
            elif delta_symbolic(d.primitive) != rest:
                return False
        return True

    def to_dict(self, certificates: bool = False) -> dict:
        out = {
            "arity": self.arity,
            "lambda": self.lam,
            "relative": self.relative,
            "dim_cochains": self.dim_cochains,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_cohomology": self.dim_cohomology,
            "representatives": [cochain_to_dict(r) for r in self.representatives],
            "divergent_from_reference": self.divergent_from_reference,
        }
        if self.reference_dim is not None:
            out["reference_dim"] = self.reference_dim
        if certificates:
            out["certificates"] = [c.to_dict() for c in self.certificates]
            out["decompositions"] = [d.to_dict() for d in self.decompositions]
        return out


def _reduce_against(vec: Sequence[Rational], image_rows, pivots) -> list[Rational]:
    # clear every image pivot coordinate; the remainder lies in the fixed complement
    v = list(vec)
    for row, p in zip(image_rows, pivots):
        f = v[p]
        if f:
            v = [as_rational(a - f * b) for a, b in zip(v, row)]
    return v


def _normalize(vec: list[Rational], basis: CochainBasis) -> list[Rational]:
    target = REPRESENTATIVE_NORMALIZATION.get((basis.arity, basis.lam, basis.relative))
    if target is not None:
        t, want = target
        if t in basis:
            have = vec[basis.index(t)]
            if have:
                return [qdiv(v * want, have) for v in vec]
    lead = next(v for v in vec if v)
    return [qdiv(v, lead) for v in vec]


def cohomology(arity: int, lam, relative: bool = False) -> CohomologyReport:
    """Dimensions, representatives and certificates for H^arity at weight lam."""
    if not 0 <= arity <= 3:
        raise CochainError(f"cohomology is computed for arity 0..3, got {arity}")
    basis = enumerate_basis(arity, lam, relative)
    if not basis.tuples:
        return CohomologyReport(
            arity, lam, relative, 0, 0, 0, 0, (), (), reference_dim(arity, lam, relative)
        )
    closed_m = cocycle_matrix(arity, lam, relative)
    image_m = coboundary_matrix(arity, lam, relative)
    cocycles = kernel_basis(closed_m)
    image_rows, image_pivots = image_basis(image_m) if image_m.cols else ([], [])

    reduced = [_reduce_against(z, image_rows, image_pivots) for z in cocycles]
    reps_rows, _ = rref(reduced, len(basis)) if reduced else ([], [])
    representatives = [basis.from_vector(_normalize(row, basis)) for row in reps_rows]
    certificates = _dual_certificates(representatives, basis, image_m)
    decompositions = tuple(
        _decompose(basis.from_vector(z), representatives, certificates, basis, image_m)
        for z in cocycles
    )
    return CohomologyReport(
        arity=arity,
        lam=basis.lam,
        relative=basis.relative,
        dim_cochains=len(basis),
        dim_cocycles=len(cocycles),
        dim_coboundaries=len(image_pivots),
        dim_cohomology=len(representatives),
        representatives=tuple(representatives),
        certificates=certificates,
        reference_dim=reference_dim(arity, lam, relative),
        decompositions=decompositions,
    )


def _annihilator(image_m: ExactMatrix, n: int) -> list[list[Rational]]:
    # covectors vanishing on every coboundary
    if not image_m.cols:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return kernel_basis(image_m.transpose())


def _dual_certificates(reps, basis: CochainBasis, image_m: ExactMatrix) -> tuple[Certificate, ...]:
    if not reps:
        return ()
    ys = _annihilator(image_m, len(basis))
    vecs = [r.to_vector(basis) for r in reps]
    # pairing[i][a] = y_a . R_i; solve pairing u = e_i for the dual covector sum u_a y_a
    pairing = ExactMatrix.from_rows(
        [[as_rational(sum(p * q for p, q in zip(y, v))) for y in ys] for v in vecs], len(ys)
    )
    out = []
    for i, rep in enumerate(reps):
        sol = image_membership(pairing, [int(j == i) for j in range(len(reps))])
        if not sol.member:
            raise AssertionError("representatives are dependent modulo coboundaries")
        w = [as_rational(sum(u * y[c] for u, y in zip(sol.solution, ys))) for c in range(len(basis))]
        w = tuple(primitive(w))
        value = as_rational(sum(a * b for a, b in zip(w, vecs[i])))
        out.append(Certificate(rep, delta_symbolic(rep).is_zero(), w, value))
    return tuple(out)


def _decompose(z: Cochain, reps, certs, basis: CochainBasis, image_m: ExactMatrix) -> Decomposition:
    zv = z.to_vector(basis)
    coeffs = tuple(
        qdiv(sum(a * b for a, b in zip(c.witness, zv)), c.pairing) for c in certs
    )
    rest = z
    for c, r in zip(coeffs, reps):
        rest = rest - r.scaled(c)
    if not image_m.cols:
        if not rest.is_zero():
            raise AssertionError("cocycle not spanned by representatives")
        return Decomposition(z, None, coeffs)
    sol = image_membership(image_m, rest.to_vector(basis))
    if not sol.member:
        raise AssertionError("cocycle not spanned by representatives and coboundaries")
    prev = enumerate_basis(z.arity - 1, z.lam, z.relative)
    return Decomposition(z, prev.from_vector(sol.solution), coeffs)


@dataclass(frozen=True)
class MembershipCheck:
    """Whether a cochain is a coboundary, with the evidence either way.

    ``primitive`` satisfies delta(primitive) == cochain when it is one;
    otherwise ``certificate`` holds a separating covector.
    """

    cochain: Cochain
    is_cocycle: bool
    is_coboundary: bool
    primitive: Optional[Cochain] = None
    certificate: Optional[Certificate] = None

    def verify(self) -> bool:
        if self.is_cocycle != delta_symbolic(self.cochain).is_zero():
            return False
        if self.is_coboundary:
            if self.cochain.arity == 0:
                return self.cochain.is_zero()
            return self.primitive is not None and delta_symbolic(self.primitive) == self.cochain
        if self.certificate is None or self.certificate.witness is None:
            return False
        image = coboundary_matrix(self.cochain.arity, self.cochain.lam, self.cochain.relative)
        basis = enumerate_basis(self.cochain.arity, self.cochain.lam, self.cochain.relative)
        vec = self.cochain.to_vector(basis)
        w = self.certificate.witness
        pairing = as_rational(sum(a * b for a, b in zip(w, vec)))
        return all(v == 0 for v in image.left_apply(w)) and pairing == self.certificate.pairing != 0

    def to_dict(self) -> dict:
        out = {
            "is_cocycle": self.is_cocycle,
            "is_coboundary": self.is_coboundary,
        }
        if self.primitive is not None:
            out["certificate"] = cochain_to_dict(self.primitive)
        if self.certificate is not None:
            out["witness"] = list(self.certificate.witness)
            out["pairing"] = format_rational(self.certificate.pairing)
        out["verified"] = self.verify()
        return out


def coboundary_membership(c: Cochain) -> MembershipCheck:
    """Decide exactly whether ``c`` lies in the image of delta."""
    if c.arity > 4:
        raise CochainError(f"membership is decided for arity <= 4, got {c.arity}")
    closed = c.arity > 3 or delta_symbolic(c).is_zero()
    if c.is_zero():
        zero = Cochain.zero(c.arity - 1, c.lam, c.relative) if c.arity else None
        return MembershipCheck(c, closed, True, zero)
    basis = enumerate_basis(c.arity, c.lam, c.relative)
    vec = c.to_vector(basis)
    image_m = coboundary_matrix(c.arity, c.lam, c.relative)
    if image_m.cols:
        result = image_membership(image_m, vec)
    else:
        # no coboundaries at all: a coordinate covector on the support separates
        j = next(i for i, v in enumerate(vec) if v)
        result = Membership(None, tuple(int(i == j) for i in range(len(vec))), 0)
    if result.member:
        prev = enumerate_basis(c.arity - 1, c.lam, c.relative)
        return MembershipCheck(c, closed, True, prev.from_vector(result.solution))
    pairing = as_rational(sum(a * b for a, b in zip(result.witness, vec)))
    return MembershipCheck(c, closed, False, None, Certificate(c, closed, result.witness, pairing))


@dataclass(frozen=True)
class Reduction:
    """``original - representative == delta(primitive)``, checked exactly."""

    original: Cochain
    representative: Cochain
    primitive: Cochain

    def verify(self) -> bool:
        return delta_symbolic(self.primitive) == self.original - self.representative

    def to_dict(self) -> dict:
        return {
            "input": cochain_to_dict(self.original),
            "representative": cochain_to_dict(self.representative),
            "certificate": cochain_to_dict(self.primitive),
            "verified": self.verify(),
        }


def reduce_mod_coboundaries(c: Cochain) -> Reduction:
    """Project a cocycle onto the fixed complement of the coboundary space."""
    if not 1 <= c.arity <= 3:
        raise CochainError(f"reduction is supported for arity 1..3, got {c.arity}")
    d = delta_symbolic(c)
    if not d.is_zero():
        raise NotClosedError(c, d)
    basis = enumerate_basis(c.arity, c.lam, c.relative)
    prev = enumerate_basis(c.arity - 1, c.lam, c.relative)
    vec = c.to_vector(basis)
    image_m = coboundary_matrix(c.arity, c.lam, c.relative)
    if image_m.cols:
        rows, pivots = image_basis(image_m)
    else:
        rows, pivots = [], []
    rep_vec = _reduce_against(vec, rows, pivots)
    diff = [as_rational(a - b) for a, b in zip(vec, rep_vec)]
    if image_m.cols:
        sol = image_membership(image_m, diff)
        if not sol.member:
            raise AssertionError("reduction left the coboundary space")
        primitive = prev.from_vector(sol.solution)
    else:
        primitive = Cochain.zero(c.arity - 1, c.lam, c.relative)
    red = Reduction(c, basis.from_vector(rep_vec), primitive)
    if not red.verify():
        raise AssertionError("reduction certificate failed to verify")
    return red


def relation_in_rowspace(arity: int, lam, relative: bool, relation: Sequence) -> bool:
    """True iff the linear relation on arity-cochain coordinates follows from delta = 0."""
    m = cocycle_matrix(arity, lam, relative)
    if len(relation) != m.cols:
        raise ValueError(f"relation has length {len(relation)}, basis has {m.cols} tuples")
    return in_row_space(m, [as_rational(v) for v in relation])


def relation_vector(arity: int, lam, relative: bool, coeffs: dict) -> list[Rational]:
    """Coordinates of a relation given as {order tuple: coefficient}."""
    basis = enumerate_basis(arity, lam, relative)
    vec: list[Rational] = [0] * len(basis)
    for t, v in coeffs.items():
        vec[basis.index(tuple(t))] = as_rational(v)
    return vec
