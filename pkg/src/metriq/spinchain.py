"""Spin chains, pseudo-spin sites and lattice fermions with diagonal metrics.

Basis conventions: chain site 0 is the most significant tensor factor and
spin-up (eigenvalue +1/2 of ``S^z``) precedes spin-down at every site; for
fermions the empty state precedes the occupied one.  All metrics built here
(``prod_i exp(-2 gamma_i S_i^z)`` and the fermionic ``prod_i exp(-2 gamma_i
n_i)``) are diagonal in these bases, which keeps every similarity identity
exact in floating point.

Chains cap out at 12 sites (dense dimension 4096).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .linops import MetricSpec

__all__ = [
    "MAX_SITES",
    "SpinChainSpec",
    "FermionQuadraticSpec",
    "PseudoSpinSite",
    "spin_matrices",
    "site_spin_ops",
    "pseudo_spin_ops",
    "build_zeta_metric",
    "build_xxz_asymmetric",
    "build_xxz_symmetric",
    "hermitian_counterpart",
    "chain_unitary",
    "gradient_ws",
    "build_haldane_shastry",
    "fermion_ops",
    "fermion_metric",
    "build_fermion_quadratic",
    "suq2_limit",
    "spin_orbit_check",
]

MAX_SITES = 12


def spin_matrices(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-j matrices ``(Sx, Sy, Sz)`` in the standard descending-m basis."""
    if int(2 * j) != 2 * j or j < 0.5:
        raise ValueError("j must be a positive half-integer")
    dim = int(2 * j + 1)
    m = j - np.arange(dim)
    amp = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    sp = np.zeros((dim, dim), dtype=complex)
    sp[np.arange(dim - 1), np.arange(1, dim)] = amp
    sm = sp.conj().T
    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    sz = np.diag(m.astype(complex))
    return sx, sy, sz


def _embed_site(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a local operator; site 0 is the most significant factor."""
    left = np.eye(2**site)
    right = np.eye(2 ** (n_sites - 1 - site))
    return np.kron(left, np.kron(op, right))


def _check_chain(n_sites: int, site: int | None = None) -> None:
    if not 1 <= n_sites <= MAX_SITES:
        raise ValueError(f"n_sites must be in [1, {MAX_SITES}]")
    if site is not None and not 0 <= site < n_sites:
        raise ValueError(f"site {site} outside [0, {n_sites})")


def site_spin_ops(n_sites: int, site: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-1/2 operators ``(Sx, Sy, Sz)`` of one chain site."""
    _check_chain(n_sites, site)
    sx, sy, sz = spin_matrices(0.5)
    return (
        _embed_site(sx, site, n_sites),
        _embed_site(sy, site, n_sites),
        _embed_site(sz, site, n_sites),
    )


def _sz_table(n_sites: int) -> np.ndarray:
    """(dim, n_sites) array of S^z eigenvalues; up (+1/2) has bit 0."""
    idx = np.arange(2**n_sites)
    bits = (idx[:, None] >> (n_sites - 1 - np.arange(n_sites))) & 1
    return 0.5 - bits.astype(float)


@dataclass(frozen=True)
class PseudoSpinSite:
    """A single spin-j site with complex rotation ``beta = delta + 1j chi``."""

    j: float
    beta: complex

    def __post_init__(self):
        if int(2 * self.j) != 2 * self.j or self.j < 0.5:
            raise ValueError("j must be a positive half-integer")
        b = complex(self.beta)
        if not (np.isfinite(b.real) and np.isfinite(b.imag)):
            raise ValueError("beta must be finite")


def pseudo_spin_ops(site: PseudoSpinSite) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Complex-rotated spin triple ``(TX, TY, TZ)``.

    ``TX = cosh(beta) Sx + 1j sinh(beta) Sy``, ``TY = -1j sinh(beta) Sx +
    cosh(beta) Sy``, ``TZ = Sz``.  Equivalently ``T^+- = exp(+-beta) S^+-``,
    so the triple keeps the su(2) algebra and the total-spin Casimir while
    being hermitian with respect to ``exp(-2 Re(beta) Sz)``.
    """
    sx, sy, sz = spin_matrices(site.j)
    c, s = np.cosh(site.beta), np.sinh(site.beta)
    return c * sx + 1j * s * sy, -1j * s * sx + c * sy, sz.copy()


@dataclass(frozen=True)
class SpinChainSpec:
    """Open XXZ-type chain with per-site deformations.

    ``Gamma`` scales the in-plane exchange, ``Delta`` the Ising part;
    ``fields_a/b/c`` are per-site field components and ``ws`` the complex
    per-site deformations ``gamma_i + 1j xi_i``.  Bond terms run over the
    ``n_sites - 1`` nearest-neighbor pairs, field terms over all sites.
    """

    n_sites: int
    gamma_exchange: float = 1.0
    delta: float = 0.0
    fields_a: tuple[float, ...] = ()
    fields_b: tuple[float, ...] = ()
    fields_c: tuple[float, ...] = ()
    ws: tuple[complex, ...] = ()

    def __post_init__(self):
        _check_chain(self.n_sites)

        def norm_fields(name: str, vals) -> tuple[float, ...]:
            if vals is None or len(vals) == 0:
                return (0.0,) * self.n_sites
            out = tuple(float(v) for v in vals)
            if len(out) != self.n_sites:
                raise ValueError(
                    f"{name} must have {self.n_sites} entries, got {len(out)}"
                )
            if not all(np.isfinite(v) for v in out):
                raise ValueError(f"{name} contains non-finite entries")
            return out

        object.__setattr__(self, "fields_a", norm_fields("fields_a", self.fields_a))
        object.__setattr__(self, "fields_b", norm_fields("fields_b", self.fields_b))
        object.__setattr__(self, "fields_c", norm_fields("fields_c", self.fields_c))
        if self.ws is None or len(self.ws) == 0:
            ws = (0j,) * self.n_sites
        else:
            ws = tuple(complex(w) for w in self.ws)
            if len(ws) != self.n_sites:
                raise ValueError(f"ws must have {self.n_sites} entries, got {len(ws)}")
        if not all(np.isfinite(w.real) and np.isfinite(w.imag) for w in ws):
            raise ValueError("ws contains non-finite entries")
        if not (np.isfinite(self.gamma_exchange) and np.isfinite(self.delta)):
            raise ValueError("couplings must be finite")
        object.__setattr__(self, "ws", ws)

    @property
    def gammas(self) -> tuple[float, ...]:
        return tuple(w.real for w in self.ws)

    @property
    def xis(self) -> tuple[float, ...]:
        return tuple(w.imag for w in self.ws)

    @property
    def dim(self) -> int:
        return 2**self.n_sites


def gradient_ws(n_sites: int, gamma: float, phi: float, xi: float = 0.0) -> tuple[complex, ...]:
    """Deformations ``gamma_k = gamma - k * phi`` with a common phase ``xi``.

    A linear gradient gives every bond the same hopping asymmetry
    ``exp(+-phi)``, the lattice analogue of a uniform drift.
    """
    _check_chain(n_sites)
    return tuple(complex(gamma - k * phi, xi) for k in range(n_sites))


def build_zeta_metric(spec: SpinChainSpec) -> np.ndarray:
    """Diagonal chain metric ``prod_i exp(-2 gamma_i S_i^z)``."""
    table = _sz_table(spec.n_sites)
    weights = np.exp(-2.0 * table @ np.asarray(spec.gammas))
    return np.diag(weights.astype(complex))


def _site_pm(n_sites: int, site: int) -> tuple[np.ndarray, np.ndarray]:
    sx, sy, _ = spin_matrices(0.5)
    sp = sx + 1j * sy
    return _embed_site(sp, site, n_sites), _embed_site(sp.conj().T, site, n_sites)


def _chain_hamiltonian(spec: SpinChainSpec, deformed: bool) -> np.ndarray:
    """Shared XXZ assembly; ``deformed`` toggles the w-dependent weights."""
    n = spec.n_sites
    dim = spec.dim
    h = np.zeros((dim, dim), dtype=complex)
    ws = np.asarray(spec.ws) if deformed else np.zeros(n, dtype=complex)

    sz_ops = []
    sp_ops = []
    sm_ops = []
    for i in range(n):
        _, _, sz = site_spin_ops(n, i)
        sp, sm = _site_pm(n, i)
        sz_ops.append(sz)
        sp_ops.append(sp)
        sm_ops.append(sm)

    for i in range(n - 1):
        h += spec.gamma_exchange * (
            np.exp(ws[i] - ws[i + 1]) * sp_ops[i] @ sm_ops[i + 1]
            + np.exp(-(ws[i] - ws[i + 1])) * sm_ops[i] @ sp_ops[i + 1]
        )
        h += spec.delta * sz_ops[i] @ sz_ops[i + 1]

    for i in range(n):
        a, b, c = spec.fields_a[i], spec.fields_b[i], spec.fields_c[i]
        if a == 0.0 and b == 0.0 and c == 0.0:
            continue
        cw, sw = np.cosh(ws[i]), np.sinh(ws[i])
        sx = 0.5 * (sp_ops[i] + sm_ops[i])
        sy = -0.5j * (sp_ops[i] - sm_ops[i])
        h += (a * cw - 1j * b * sw) * sx + (b * cw + 1j * a * sw) * sy + c * sz_ops[i]
    return h


def build_xxz_asymmetric(spec: SpinChainSpec) -> np.ndarray:
    """Deformed open XXZ chain with per-site ``w_i``.

    In-plane exchange written with ladder operators carries the weights
    ``exp(+-(w_i - w_{i+1}))``; the transverse fields mix as
    ``(A_i cosh w_i - 1j B_i sinh w_i) S_i^x + (B_i cosh w_i + 1j A_i sinh
    w_i) S_i^y``.  Pseudo-hermitian with respect to
    :func:`build_zeta_metric` and isospectral to
    :func:`hermitian_counterpart` at any size.
    """
    return _chain_hamiltonian(spec, deformed=True)


def build_xxz_symmetric(spec: SpinChainSpec) -> np.ndarray:
    """Uniform-deformation special case: all ``w_i`` equal.

    Bond weights cancel, leaving the undeformed exchange, while the field
    mixing survives.  Raises unless every ``w_i`` matches.
    """
    ws = spec.ws
    if any(w != ws[0] for w in ws):
        raise ValueError("the symmetric chain requires all ws equal")
    return _chain_hamiltonian(spec, deformed=True)


def hermitian_counterpart(spec: SpinChainSpec) -> np.ndarray:
    """The equivalent hermitian chain: same couplings, undeformed fields."""
    return _chain_hamiltonian(spec, deformed=False)


def chain_unitary(spec: SpinChainSpec) -> np.ndarray:
    """Diagonal phase unitary ``prod_i exp(-1j xi_i S_i^z)``.

    Together with the metric root it maps the deformed chain onto the
    hermitian counterpart: ``(U zeta^{1/2}) H (U zeta^{1/2})^{-1} = h``.
    """
    table = _sz_table(spec.n_sites)
    phases = np.exp(-1j * table @ np.asarray(spec.xis))
    return np.diag(phases)


def build_haldane_shastry(
    n_sites: int, metric: MetricSpec, sign: int = 1
) -> np.ndarray:
    """Inverse-chord-distance exchange ring of deformed spin triples.

    ``H = sign * sum_{i<j} T_i . T_j / (2 sin^2(pi (i - j) / N))`` where the
    per-site triples carry ``T^+- = exp(+-w_i) S^+-``.  With all ``w_i``
    equal to zero this is the standard model; any deformation leaves the
    spectrum untouched.
    """
    _check_chain(n_sites)
    if n_sites < 2:
        raise ValueError("the exchange ring needs at least two sites")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if metric.n != n_sites:
        raise ValueError(f"metric has {metric.n} sites but the chain has {n_sites}")
    ws = metric.ws
    dim = 2**n_sites
    h = np.zeros((dim, dim), dtype=complex)
    sz_ops = [site_spin_ops(n_sites, i)[2] for i in range(n_sites)]
    pm_ops = [_site_pm(n_sites, i) for i in range(n_sites)]
    for i in range(n_sites):
        for j in range(i + 1, n_sites):
            chord = 2.0 * np.sin(np.pi * (i - j) / n_sites) ** 2
            spi, smi = pm_ops[i]
            spj, smj = pm_ops[j]
            tij = (
                0.5 * np.exp(ws[i] - ws[j]) * spi @ smj
                + 0.5 * np.exp(-(ws[i] - ws[j])) * smi @ spj
                + sz_ops[i] @ sz_ops[j]
            )
            h += sign * tij / chord
    return h


# ---------------------------------------------------------------------------
# Lattice fermions


def fermion_ops(n_sites: int, site: int) -> tuple[np.ndarray, np.ndarray]:
    """Jordan-Wigner fermion pair ``(c, c^dag)`` with ``{c_i, c_j^dag} = delta_ij``.

    Single-site convention: the empty state comes first, so ``c = [[0, 1],
    [0, 0]]``; the string of ``diag(1, -1)`` factors on earlier sites
    enforces anticommutation across sites.
    """
    _check_chain(n_sites, site)
    lower = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    zmat = np.diag([1.0, -1.0]).astype(complex)
    op = np.eye(1, dtype=complex)
    for k in range(n_sites):
        if k < site:
            op = np.kron(op, zmat)
        elif k == site:
            op = np.kron(op, lower)
        else:
            op = np.kron(op, np.eye(2, dtype=complex))
    return op, op.conj().T


@dataclass(frozen=True)
class FermionQuadraticSpec:
    """Quadratic fermion form: symmetric hopping ``a``, antisymmetric pairing ``b``."""

    hopping: np.ndarray
    pairing: np.ndarray
    metric: MetricSpec

    def __init__(self, hopping, pairing, metric: MetricSpec):
        n = metric.n
        _check_chain(n)
        hop = np.asarray(hopping, dtype=float)
        pair = np.asarray(pairing, dtype=float)
        if hop.shape != (n, n):
            raise ValueError(f"hopping must be {n}x{n}, got {hop.shape}")
        if pair.shape != (n, n):
            raise ValueError(f"pairing must be {n}x{n}, got {pair.shape}")
        if not (np.all(np.isfinite(hop)) and np.all(np.isfinite(pair))):
            raise ValueError("coefficients must be finite")
        bad = np.abs(hop - hop.T)
        if np.any(bad > 0):
            i, j = np.unravel_index(np.argmax(bad), hop.shape)
            raise ValueError(f"hopping must be symmetric: entry [{i}][{j}]")
        bad = np.abs(pair + pair.T)
        if np.any(bad > 0):
            i, j = np.unravel_index(np.argmax(bad), pair.shape)
            raise ValueError(
                f"pairing must be antisymmetric: entry [{i}][{j}] (diagonal included)"
            )
        object.__setattr__(self, "hopping", hop)
        object.__setattr__(self, "pairing", pair)
        object.__setattr__(self, "metric", metric)

    @property
    def n_sites(self) -> int:
        return self.metric.n


def fermion_metric(spec: FermionQuadraticSpec) -> np.ndarray:
    """Diagonal fermion metric ``prod_i exp(-2 gamma_i n_i)``."""
    n = spec.n_sites
    idx = np.arange(2**n)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))) & 1
    weights = np.exp(-2.0 * bits @ np.asarray(spec.metric.gammas))
    return np.diag(weights.astype(complex))


def build_fermion_quadratic(
    spec: FermionQuadraticSpec, deformed: bool = True
) -> np.ndarray:
    """Dense quadratic fermion Hamiltonian.

    ``H = sum_ij A_ij e^{w_i - w_j} c_i^dag c_j + (1/2) sum_ij B_ij
    (e^{w_i + w_j} c_i^dag c_j^dag + e^{-(w_i + w_j)} c_j c_i)``; the second
    pairing term is the weighted adjoint of the first, which keeps the
    ``w = 0`` limit hermitian.  With ``deformed=False`` the weights are
    dropped, giving the hermitian counterpart; the two are isospectral.
    """
    n = spec.n_sites
    ws = np.asarray(spec.metric.ws) if deformed else np.zeros(n, dtype=complex)
    ops = [fermion_ops(n, i) for i in range(n)]
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        ci, cid = ops[i]
        for j in range(n):
            cj, cjd = ops[j]
            if spec.hopping[i, j] != 0.0:
                h += spec.hopping[i, j] * np.exp(ws[i] - ws[j]) * cid @ cj
            if spec.pairing[i, j] != 0.0:
                h += 0.5 * spec.pairing[i, j] * (
                    np.exp(ws[i] + ws[j]) * cid @ cjd
                    + np.exp(-(ws[i] + ws[j])) * cj @ ci
                )
    return h


def suq2_limit(n_sites: int, q: float, ws: Sequence[complex] = ()) -> SpinChainSpec:
    """Quantum-group-symmetric chain: ``Delta = cosh q`` with boundary fields.

    Unit in-plane exchange, ``C_1 = -sinh q`` and ``C_N = +sinh q`` on the
    two ends, nothing elsewhere.  ``q = 0`` gives the isotropic limit.
    """
    _check_chain(n_sites)
    if n_sites < 2:
        raise ValueError("the boundary-field preset needs at least two sites")
    if not np.isfinite(q):
        raise ValueError("q must be finite")
    fields_c = [0.0] * n_sites
    fields_c[0] = -float(np.sinh(q))
    fields_c[-1] = float(np.sinh(q))
    return SpinChainSpec(
        n_sites=n_sites,
        gamma_exchange=1.0,
        delta=float(np.cosh(q)),
        fields_c=tuple(fields_c),
        ws=tuple(ws),
    )


def spin_orbit_check(
    l: float, s: float, gamma: float, delta: float, xi: float = 0.0, chi: float = 0.0
) -> float:
    """Pseudo-hermiticity residual of a coupled orbital/spin product term.

    Builds ``L . T`` from a complex-rotated orbital triple (rotation
    ``gamma + 1j xi``) and a rotated spin triple (rotation ``delta + 1j
    chi``) and measures the defining residual against the product metric
    ``exp(-2 gamma Lz) (x) exp(-2 delta Sz)``.  Zero rotation must give an
    ordinary hermitian coupling.
    """
    orb = pseudo_spin_ops(PseudoSpinSite(j=l, beta=complex(gamma, xi)))
    spn = pseudo_spin_ops(PseudoSpinSite(j=s, beta=complex(delta, chi)))
    dim_l = orb[0].shape[0]
    dim_s = spn[0].shape[0]
    h = np.zeros((dim_l * dim_s, dim_l * dim_s), dtype=complex)
    for lo, so in zip(orb, spn):
        h += np.kron(lo, so)
    lz_diag = np.diag(spin_matrices(l)[2]).real
    sz_diag = np.diag(spin_matrices(s)[2]).real
    eta = np.diag(
        np.kron(np.exp(-2.0 * gamma * lz_diag), np.exp(-2.0 * delta * sz_diag)).astype(
            complex
        )
    )
    from .linops import is_pseudo_hermitian

    _, residual = is_pseudo_hermitian(h, eta)
    return residual
