"""Bracket powers, tight-closure certificates, membership verdicts and hulls.

Membership in ``I^[q] + J`` is decided by normal forms.  The normal form of
``z^q`` is never computed from ``z^q`` itself: with ``h`` the normal form of
``z^(q/p)`` modulo ``I^[q/p] + J`` we have ``z^q = h^p`` modulo
``(I^[q/p] + J)^[p]``, which lies inside ``I^[q] + J``.  So each step is a
termwise Frobenius followed by one reduction, and the intermediate
polynomials stay inside the (small) standard-monomial support.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .errors import (CertificateKilled, MapError, PreconditionError,
                     SingularEverywhere, ZeroCertificate)
from .groebner import AmbientIdeal, GroebnerBasis, degree_slice_basis
from .newton import in_monomial_closure, monomial_power_exponents
from .poly import Polynomial
from .rings import (RingIdeal, RingPresentation, _as_poly,
                    is_parameter_system, jacobian_test_candidates)

log = logging.getLogger(__name__)

IN_PROVED = "IN_PROVED"
LIKELY_IN = "LIKELY_IN"
OUT_EVIDENCE = "OUT_EVIDENCE"
UNDETERMINED = "UNDETERMINED"
STATUSES = (IN_PROVED, LIKELY_IN, OUT_EVIDENCE, UNDETERMINED)


@dataclass
class ClosureConfig:
    e_max: int = 5
    k_power: int | None = None  # None: p
    stabilization_window: int = 2
    cert_degree: int | None = None  # None: max degree of the Jacobian candidates
    test_element: Polynomial | None = None  # user-asserted test element
    witness: "PlusWitness | None" = None
    attach_certificate: bool = True  # search a certificate even when a proof route applies

    def power_for(self, p: int) -> int:
        return p if self.k_power is None else self.k_power


# ---------------------------------------------------------------------------
# bracket powers

class BracketTower:
    """Groebner bases of ``I^[p^e] + J`` for one ideal, in an adapted order."""

    def __init__(self, R: RingPresentation, gens: Sequence[Polynomial]):
        self.R = R
        self.p = R.p
        self.base = tuple(gens)
        self.order = R.adapted_order(self.base)
        self.amb = R.ambient.with_order(self.order)
        self._gbs: dict[int, GroebnerBasis] = {}
        self._powers: dict = {}

    def ideal(self, e: int) -> AmbientIdeal:
        gens = [g.to_ring(self.amb).frobenius(e) for g in self.base]
        return AmbientIdeal(self.amb, gens + [r.to_ring(self.amb) for r in self.R.relations])

    def gb(self, e: int) -> GroebnerBasis:
        hit = self._gbs.get(e)
        if hit is None:
            hit = self.ideal(e).gb
            self._gbs[e] = hit
        return hit

    def nf(self, f: Polynomial, e: int) -> Polynomial:
        return Polynomial(self.amb, self.gb(e).reduce_terms(f.terms))

    def power_nf(self, z: Polynomial, e: int) -> Polynomial:
        """Normal form of ``z^(p^e)`` modulo ``I^[p^e] + J``."""
        key = (frozenset(z.terms.items()), e)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        z = z.to_ring(self.amb)
        if e == 0:
            out = self.nf(z, 0)
        else:
            prev = self.power_nf(z, e - 1)
            out = self.nf(prev.frobenius(1), e)
        self._powers[key] = out
        return out

    def row(self, c: Polynomial, z: Polynomial, e: int) -> bool:
        """Whether ``c * z^(p^e)`` lies in ``I^[p^e] + J``."""
        h = self.power_nf(z, e)
        return not self.nf(c.to_ring(self.amb) * h, e)


def _drop_redundant(R: RingPresentation, gens: Sequence[Polynomial]) -> tuple:
    # bracket powers do not depend on the generating set
    gens = [g for g in gens if not R.is_zero(g)]
    i = len(gens) - 1
    while i >= 0 and len(gens) > 1:
        rest = gens[:i] + gens[i + 1:]
        if R.J.with_generators(rest).contains(gens[i]):
            gens = rest
        i -= 1
    return tuple(gens)


def tower(R: RingPresentation, I: RingIdeal | Sequence[Polynomial]) -> BracketTower:
    gens = I.generators if isinstance(I, RingIdeal) else tuple(_as_poly(R, g) for g in I)
    cache = R.__dict__.setdefault("_towers", {})
    key = frozenset(frozenset(g.terms.items()) for g in gens)
    hit = cache.get(key)
    if hit is None:
        slim = _drop_redundant(R, gens)
        skey = frozenset(frozenset(g.terms.items()) for g in slim)
        hit = cache.get(skey)
        if hit is None:
            hit = cache[skey] = BracketTower(R, slim)
        cache[key] = hit
    return hit


@dataclass
class BracketPower:
    ideal: RingIdeal
    e: int
    q: int
    generators: tuple

    def lift(self) -> AmbientIdeal:
        R = self.ideal.ring
        return AmbientIdeal(R.ambient, self.generators + R.relations)

    def as_ideal(self) -> RingIdeal:
        return RingIdeal(self.ideal.ring, self.generators)

    def contains(self, f) -> bool:
        return tower(self.ideal.ring, self.generators).gb(0).contains(
            _as_poly(self.ideal.ring, f).to_ring(tower(self.ideal.ring, self.generators).amb))


def bracket_power(I: RingIdeal, e: int) -> BracketPower:
    if e < 0:
        raise ValueError("e must be non-negative")
    q = I.ring.p ** e
    return BracketPower(I, e, q, tuple(g.frobenius(e) for g in I.generators))


# ---------------------------------------------------------------------------
# certificates

@dataclass
class CertificateTable:
    ring: RingPresentation
    ideal: RingIdeal
    z: Polynomial
    c: Polynomial
    rows: dict

    @property
    def all_true(self) -> bool:
        return all(self.rows.values())

    def to_dict(self):
        return {"certificate": str(self.c), "element": str(self.z),
                "rows": [{"e": e, "q": self.ring.p ** e, "member": ok} for e, ok in self.rows.items()]}


def tc_certificate_check(R: RingPresentation, I: RingIdeal, z, c, e_range) -> CertificateTable:
    z = _as_poly(R, z)
    c = _as_poly(R, c)
    if R.is_zero(c):
        raise ZeroCertificate(f"certificate {c} is zero in {R}")
    e_range = list(e_range)
    if not e_range:
        raise ValueError("empty e-range")
    tw = tower(R, I)
    rows = {e: tw.row(c, z, e) for e in e_range}
    return CertificateTable(R, I, z, c, rows)


def persistence_pushforward(table: CertificateTable, h) -> CertificateTable:
    """Recheck a certificate table in ``R/(h)``; true rows must stay true."""
    R = table.ring
    h = _as_poly(R, h)
    S = R.quotient([h]) if h else R
    if S.is_zero(table.c):
        raise CertificateKilled(f"certificate {table.c} maps to zero in {S}")
    I = RingIdeal(S, table.ideal.generators)
    out = tc_certificate_check(S, I, table.z, table.c, list(table.rows))
    for e, ok in table.rows.items():
        if ok and not out.rows[e]:
            raise AssertionError(f"row {e} turned false after pushforward")
    return out


# ---------------------------------------------------------------------------
# verdicts

@dataclass
class ClosureVerdict:
    status: str
    proof_route: str
    certificate: Polynomial | None = None
    e_range: tuple = ()
    chain: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    mode: str = "heuristic"

    @property
    def is_in(self) -> bool:
        return self.status in (IN_PROVED, LIKELY_IN)

    def to_dict(self):
        return {
            "status": self.status,
            "route": self.proof_route,
            "mode": self.mode,
            "certificate": None if self.certificate is None else str(self.certificate),
            "e_range": list(self.e_range),
            "chain": self.chain,
            "evidence": _jsonable(self.evidence),
            "notes": list(self.notes),
        }


def _jsonable(obj):
    if isinstance(obj, Polynomial):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _candidates(R: RingPresentation) -> list[Polynomial]:
    cache = R.__dict__.setdefault("_cand_cache", [])
    if not cache:
        cache.append([c.rep for c in jacobian_test_candidates(R, require_domain=False)])
    return cache[0]


def _assumption_notes(R: RingPresentation) -> list[str]:
    notes = []
    if not R.is_polynomial_ring and not R.asserted_domain:
        notes.append("domain not asserted; verdict assumes R is a domain")
    elif R.asserted_domain:
        notes.append("domain asserted by input, not verified")
    return notes


def colon_chain(R: RingPresentation, I: RingIdeal, z: Polynomial, e_max: int,
                max_degree: int, start: int = 0) -> list[dict]:
    """Degree slices of ``D_E = ∩_{start<=e<=E} (I^[q] + J : z^q)`` up to ``max_degree``.

    Returns one entry per ``E`` with the slice dimensions and canonical bases.
    Slices are subspaces of ``R_n`` in the standard-monomial basis of ``J``.
    """
    tw = tower(R, I)
    amb = R.ambient
    slices = {}
    for n in range(0, max_degree + 1):
        basis = degree_slice_basis(R.J, n, R.gb)
        # columns ordered by descending ring order: the largest monomial pivots first
        vecs = [[1 if j == i else 0 for j in range(len(basis))] for i in range(len(basis))]
        slices[n] = (basis, vecs)
    chain = []
    for e in range(start, e_max + 1):
        h = tw.power_nf(z, e)
        for n, (basis, vecs) in slices.items():
            if not vecs:
                continue
            images = []
            for v in vecs:
                c = amb.poly({m: a for m, a in zip(basis, v) if a}).to_ring(tw.amb)
                images.append(tw.nf(c * h, e).terms)
            ker = linalg.kernel(images, R.p)
            new = []
            for comb in ker:
                acc = [0] * len(basis)
                for coeff, v in zip(comb, vecs):
                    if coeff:
                        acc = [(a + coeff * b) % R.p for a, b in zip(acc, v)]
                new.append(acc)
            ech = linalg.echelon([{i: a for i, a in enumerate(v) if a} for v in new], R.p)
            vecs = []
            for row in ech.values():
                dense = [0] * len(basis)
                for i, a in row.items():
                    dense[i] = a
                vecs.append(dense)
            slices[n] = (basis, vecs)
        chain.append({
            "e": e,
            "dims": {n: len(vecs) for n, (_, vecs) in slices.items()},
            "bases": {n: [amb.poly({m: a for m, a in zip(basis, v) if a}) for v in vecs]
                      for n, (basis, vecs) in slices.items()},
        })
        if all(not vecs for _, vecs in slices.values()):
            # the chain is zero from here on
            for e2 in range(e + 1, e_max + 1):
                chain.append({"e": e2, "dims": {n: 0 for n in slices}, "bases": {n: [] for n in slices}})
            break
    return chain


def _is_monomial_ideal(I: RingIdeal) -> bool:
    return bool(I.generators) and all(g.is_monomial() for g in I.generators)


def _degree_route(R: RingPresentation, I: RingIdeal, z: Polynomial) -> bool:
    gens = I.generators
    if len(gens) != R.dim or not z.is_homogeneous():
        return False
    if not all(g.is_homogeneous() for g in gens):
        return False
    if not is_parameter_system(R, gens):
        return False
    return z.degree() >= sum(g.degree() for g in gens)


def _briancon_skoda_route(I: RingIdeal, z: Polynomial) -> bool:
    if not _is_monomial_ideal(I):
        return False
    exps = [next(iter(g.terms)) for g in I.generators]
    from .groebner import minimalize_monomials
    exps = minimalize_monomials(exps)
    mu = len(exps)
    return in_monomial_closure(z, monomial_power_exponents(exps, mu))


def tc_membership(R: RingPresentation, I: RingIdeal, z, config: ClosureConfig | None = None) -> ClosureVerdict:
    """Decide ``z in I*`` as far as finitely many Frobenius powers allow."""
    config = config or ClosureConfig()
    z = _as_poly(R, z)
    notes = _assumption_notes(R)
    zr = R.normal_form(z)
    if not zr:
        return ClosureVerdict(IN_PROVED, "member", notes=notes + ["z = 0"], mode="proof")
    if I.is_unit():
        return ClosureVerdict(IN_PROVED, "member", notes=notes + ["I = (1)"], mode="proof")
    # (a) plain membership
    if I.contains(z):
        return ClosureVerdict(IN_PROVED, "member", notes=notes, mode="proof")
    # (b) sufficient criteria
    if config.witness is not None and config.witness.check(R, I, z):
        return ClosureVerdict(IN_PROVED, "plus-closure", notes=notes, mode="proof",
                              evidence={"witness": config.witness.describe()})
    proved = None
    if _briancon_skoda_route(I, z):
        proved = ClosureVerdict(IN_PROVED, "briancon-skoda", notes=notes, mode="proof",
                                evidence={"mu": len(I.generators)})
    elif _degree_route(R, I, z):
        proved = ClosureVerdict(IN_PROVED, "degree-bound", notes=notes, mode="proof",
                                evidence={"degree": z.degree(),
                                          "parameter_degree_sum": sum(g.degree() for g in I.generators)})
    # (c) colon-chain search
    try:
        cands = _candidates(R)
    except SingularEverywhere:
        cands = []
        notes.append("no Jacobian test-element candidate survives mod p")
    if config.test_element is not None:
        cands = [_as_poly(R, config.test_element)]
    if proved is not None and not config.attach_certificate:
        return proved
    e_max = config.e_max
    window = config.stabilization_window
    max_deg = config.cert_degree
    if max_deg is None:
        max_deg = max([c.degree() for c in cands] + [1])
    chain = colon_chain(R, I, z, e_max, max_deg)
    chain_summary = [{"e": c["e"], "dims": {str(k): v for k, v in c["dims"].items()}} for c in chain]
    notes.append("chain D_E intersects all e <= E (not a tail)")
    notes.append(f"chain truncated at degree {max_deg}")
    last = chain[-1]
    trailing = chain[-(window + 1):] if len(chain) > window else chain
    stable = len(chain) > window and all(c["dims"] == last["dims"] for c in trailing)
    nonzero = any(last["dims"].values())
    e_range = (0, e_max)
    cert = None
    if nonzero:
        for n in sorted(last["bases"]):
            if last["bases"][n]:
                cert = last["bases"][n][0]
                break
    if proved is not None:
        # the proof stands alone; the chain only contributes a supplementary certificate
        if cert is not None:
            proved.certificate = cert
            proved.e_range = e_range
        proved.chain = chain_summary
        return proved
    if stable and nonzero:
        verdict = ClosureVerdict(LIKELY_IN, "certificate-stabilization", certificate=cert,
                                 e_range=e_range, chain=chain_summary, notes=notes)
        if config.test_element is not None:
            tw = tower(R, I)
            rows = {e: tw.row(cands[0], z, e) for e in range(e_max + 1)}
            verdict.evidence["test_element_rows"] = {str(e): ok for e, ok in rows.items()}
        return verdict
    # (d) refutation evidence
    tw = tower(R, I)
    if config.test_element is not None:
        c = cands[0]
        for e in range(e_max + 1):
            if not tw.row(c, z, e):
                return ClosureVerdict(OUT_EVIDENCE, "test-candidate-failure", e_range=e_range,
                                      chain=chain_summary, notes=notes, mode="asserted-test-element",
                                      evidence={"failures": [{"candidate": c, "power": 1, "e": e}]})
        return ClosureVerdict(UNDETERMINED, "none", e_range=e_range, chain=chain_summary,
                              notes=notes + ["asserted test element passes every tested row"])
    if cands:
        K = config.power_for(R.p)
        failures = []
        for c in cands:
            ck = c ** K
            hit = None
            for e in range(e_max + 1):
                if not tw.row(ck, z, e):
                    hit = e
                    break
            if hit is None:
                failures = None
                break
            failures.append({"candidate": c, "power": K, "e": hit})
        if failures is not None:
            notes.append("candidates are test elements only up to an unknown power")
            return ClosureVerdict(OUT_EVIDENCE, "test-candidate-failure", e_range=e_range,
                                  chain=chain_summary, notes=notes, evidence={"failures": failures})
    return ClosureVerdict(UNDETERMINED, "none", e_range=e_range, chain=chain_summary, notes=notes)


def replay_verdict(R: RingPresentation, I: RingIdeal, z, verdict: ClosureVerdict,
                   config: ClosureConfig | None = None) -> bool:
    """Re-verify the witness carried by a verdict."""
    z = _as_poly(R, z)
    route = verdict.proof_route
    if verdict.status == IN_PROVED:
        if route == "member":
            return not R.normal_form(z) or I.is_unit() or I.contains(z)
        if route == "briancon-skoda":
            return _briancon_skoda_route(I, z)
        if route == "degree-bound":
            return _degree_route(R, I, z)
        if route == "plus-closure":
            return config is not None and config.witness is not None and config.witness.check(R, I, z)
        return False
    if verdict.status == LIKELY_IN:
        lo, hi = verdict.e_range
        return tc_certificate_check(R, I, z, verdict.certificate, range(lo, hi + 1)).all_true
    if verdict.status == OUT_EVIDENCE:
        tw = tower(R, I)
        for f in verdict.evidence["failures"]:
            if tw.row(f["candidate"] ** f["power"], z, f["e"]):
                return False
        return True
    return True


# ---------------------------------------------------------------------------
# hulls

@dataclass
class HullEntry:
    generator: Polynomial
    verdict: ClosureVerdict
    added: bool

    def to_dict(self):
        return {"generator": str(self.generator), "added": self.added, "verdict": self.verdict.to_dict()}


@dataclass
class HullResult:
    input: RingIdeal
    degree_bound: int
    entries: list
    fixed_point: bool
    sweeps: int
    rejected: list = field(default_factory=list)

    @property
    def generators(self) -> list[Polynomial]:
        return [e.generator for e in self.entries]

    @property
    def added(self) -> list[Polynomial]:
        return [e.generator for e in self.entries if e.added]

    def ideal(self) -> RingIdeal:
        return RingIdeal(self.input.ring, self.generators)

    def to_dict(self):
        return {
            "input": [str(g) for g in self.input.generators],
            "degree_bound": self.degree_bound,
            "fixed_point": self.fixed_point,
            "sweeps": self.sweeps,
            "generators": [e.to_dict() for e in self.entries],
            "rejected": [{"element": str(z), "verdict": v.to_dict()} for z, v in self.rejected],
        }


def tc_hull(R: RingPresentation, I: RingIdeal, degree_bound: int,
            config: ClosureConfig | None = None, max_sweeps: int = 50) -> HullResult:
    config = config or ClosureConfig()
    if not I.is_homogeneous():
        raise PreconditionError("hull needs a homogeneous ideal")
    if I.generators and degree_bound < max(g.degree() for g in I.generators):
        raise PreconditionError("degree bound below the generator degrees")
    member = ClosureVerdict(IN_PROVED, "member", mode="proof", notes=["input generator"])
    entries = [HullEntry(g, member, False) for g in I.generators]
    current = I
    sweeps = 0
    fixed = False
    rejected: dict = {}
    while sweeps < max_sweeps:
        sweeps += 1
        grew = False
        for n in range(1, degree_bound + 1):
            for m in degree_slice_basis(current.lift(), n):
                z = R.ambient.monomial(m)
                if current.contains(z):
                    continue
                v = tc_membership(R, current, z, config)
                if v.is_in:
                    entries.append(HullEntry(z, v, True))
                    current = current.with_generators([z])
                    grew = True
                    rejected.pop(m, None)
                else:
                    rejected[m] = (z, v)
        if not grew:
            fixed = True
            break
    return HullResult(I, degree_bound, entries, fixed, sweeps, list(rejected.values()))


# ---------------------------------------------------------------------------
# plus closure

@dataclass
class PlusWitness:
    """A finite extension ``S`` with a ring map ``R -> S`` and an expression ``z = sum a_i y_i``."""

    target: RingPresentation
    images: tuple  # one polynomial in S per variable of R
    coefficients: tuple  # one polynomial in S per generator of I

    def map(self, R: RingPresentation, f: Polynomial) -> Polynomial:
        return f.substitute([_as_poly(self.target, g) for g in self.images])

    def check(self, R: RingPresentation, I: RingIdeal, z) -> bool:
        return plus_closure_witness_check(R, I, z, self.target, self.images, self.coefficients)

    def describe(self):
        return {"images": [str(_as_poly(self.target, g)) for g in self.images],
                "coefficients": [str(_as_poly(self.target, a)) for a in self.coefficients]}


def plus_closure_witness_check(R: RingPresentation, I: RingIdeal, z, S: RingPresentation,
                               images: Sequence, coefficients: Sequence) -> bool:
    imgs = [_as_poly(S, g) for g in images]
    if len(imgs) != R.nvars:
        raise MapError(f"need {R.nvars} images, got {len(imgs)}")
    for rel in R.relations:
        if not S.is_zero(rel.substitute(imgs)):
            raise MapError(f"relation {rel} does not map to zero")
    coeffs = [_as_poly(S, a) for a in coefficients]
    if len(coeffs) != len(I.generators):
        raise MapError("need one coefficient per generator of I")
    lhs = _as_poly(R, z).substitute(imgs)
    rhs = S.ambient.zero()
    for a, y in zip(coeffs, I.generators):
        rhs = rhs + a * y.substitute(imgs)
    return S.is_zero(lhs - rhs)
