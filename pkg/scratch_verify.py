"""Scratch verification of oracles before freezing tests. Not part of the package."""
import time

import numpy as np

import phasespace as ps

t0 = time.time()
grid = ps.make_phase_grid(256, 8.0, 1.0)
units = ps.OscillatorUnits()
Q = grid.q_mesh()
P = grid.p_mesh()

# 1. partial Fourier: Gaussian
chi = ps.ComplexField2D(grid, np.broadcast_to(np.exp(-grid.ygrid.coords**2 / 2)[None, :], (256, 256)).copy())
f = ps.partial_fourier_y_to_p(chi)
exact = np.sqrt(2*np.pi) * np.exp(-grid.pgrid.coords**2 / 2)
print("PFT gaussian err:", np.max(np.abs(f.values - exact[None, :])))
back = ps.partial_fourier_p_to_y(f)
print("PFT roundtrip err:", np.max(np.abs(back.values - chi.values)))

# 2. Wigner of phi_n vs Laguerre formula
phis = [ps.hermite_eigenstate(n, units, grid.qgrid) for n in range(6)]
H = (Q**2 + P**2) / 2
for n in [0, 1, 3, 5]:
    W = ps.wigner_from_pure(phis[n], grid)
    ref = (-1)**n / np.pi * ps.laguerre(n, 4*H) * np.exp(-2*H)
    print(f"W_{n} vs Laguerre max err:", np.max(np.abs(W.values - ref)), " norm:", W.normalization)

# 3. psi_s vs 2pi W_s (density route)
for s in [-0.5, 0.0, 0.5, 1.0]:
    rho = ps.density_from_mixture([(1.0, phis[2])])
    Ws = ps.wigner_s_from_density(rho, s, grid)
    psi = ps.psi_s_pure(phis[2], s, grid)
    print(f"s={s}: |psi_s - 2pi W_s| =", np.max(np.abs(psi.values - 2*np.pi*Ws.values)),
          " norm Ws:", Ws.normalization)

# 4. solve_s_family s=0 with conjugate g vs 2pi W_0
g0 = ps.wigner_conjugate_g(phis[0], 0.0, grid.ygrid)
psi0 = ps.solve_s_family(phis[0], g0, 0.0, grid)
ref = 2*np.exp(-(Q**2 + P**2))
print("x9@s=0+gW vs 2e^{-(q2+p2)}:", np.max(np.abs(psi0.values - ref)))

# 5. two-sided residuals of W_s
ham = ps.HamiltonianSpec.harmonic(units, grid.qgrid)
for s in [-0.5, 0.0, 0.5]:
    for n in [0, 3]:
        psn = ps.psi_s_pure(phis[n], s, grid)
        l, r = ps.eigen_residuals(ham, psn.values, n + 0.5, s, grid)
        print(f"W_s residuals s={s} n={n}: left={l:.2e} right={r:.2e}")

# 6. uniqueness: random g
for seed in range(7, 12):
    g = ps.gaussian_mixture_g(grid.ygrid, seed, target_norm=2.0/abs(1.5))
    psi = ps.solve_s_family(phis[1], g, 0.5, grid)
    l, r = ps.eigen_residuals(ham, psi.values, 1.5, 0.5, grid)
    print(f"random g seed {seed}: left={l:.2e} right={r:.3f}")

# conjugate g collapses right
gc = ps.wigner_conjugate_g(phis[1], 0.5, grid.ygrid)
psic = ps.solve_s_family(phis[1], gc, 0.5, grid)
l, r = ps.eigen_residuals(ham, psic.values, 1.5, 0.5, grid)
print(f"conjugate g s=0.5: left={l:.2e} right={r:.2e}")

# 7. KR endpoint
for n in [0, 2]:
    rho = ps.density_from_mixture([(1.0, phis[n])])
    W1 = ps.wigner_s_from_density(rho, 1.0, grid)
    KR = ps.kirkwood_rihaczek(phis[n], grid)
    print(f"KR n={n}: |W_1 - closed form| =", np.max(np.abs(W1.values - KR.values)))
    psi1 = ps.solve_s_family(phis[n], ps.wigner_conjugate_g(phis[n], 1.0, grid.ygrid), 1.0, grid)
    print(f"   x9@s=1: |psi_1 - 2pi KR| =", np.max(np.abs(psi1.values - 2*np.pi*KR.values)))

# 8. aliasing fraction of HO symbol + spectrum
hsym = ham.symbol(grid)
try:
    op = ps.symbol_to_operator(hsym, 0.0)
    mat = (op.matrix + op.matrix.conj().T) / 2 * grid.qgrid.step
    evals = np.linalg.eigvalsh(mat)[:8]
    print("HO spectrum err:", np.max(np.abs(evals[:6] - (np.arange(6) + 0.5))))
except Exception as e:
    print("symbol_to_operator(H) raised:", e)

# nyquist fraction diagnostic
from phasespace.grid import _pft_inverse
sk = _pft_inverse(hsym.values, grid.ygrid, grid.pgrid, 1.0, sign=+1, axis=1)
print("nyquist fraction H:", np.sum(np.abs(sk[:, 0])**2)/np.sum(np.abs(sk)**2))

# 9. roundtrip
for s in [-0.5, 0.0, 1.0]:
    W0f = ps.wigner_from_pure(phis[0], grid).field
    op = ps.symbol_to_operator(W0f, s)
    back = ps.operator_to_symbol(op, s, grid)
    print(f"weyl roundtrip s={s}:", np.max(np.abs(back.values - W0f.values)))

# 10. marginals
for s in [-0.5, 0.0, 0.5, 1.0]:
    for n in [0, 4]:
        rho = ps.density_from_mixture([(1.0, phis[n])])
        Ws = ps.wigner_s_from_density(rho, s, grid)
        pq, pp = ps.marginals(Ws)
        mtilde = ps.momentum_representation(phis[n])
        err_q = np.max(np.abs(pq - np.abs(phis[n].values)**2))
        err_p = np.max(np.abs(pp - np.abs(mtilde.values)**2))
        print(f"marginals s={s} n={n}: q_err={err_q:.2e} p_err={err_p:.2e}")

# 11. unitarity
cs = ps.KernelSpec.coherent_state(grid, units)
rep = ps.check_kernel_unitarity(cs)
print("CS unitarity:", rep)
gex = ps.gaussian_g(grid, lam=1.0, target=1.0)
rep = ps.check_kernel_unitarity(ps.KernelSpec.general_g(grid, gex))
print("g-ex unitarity:", rep)
g4 = ps.GFunction(grid.ygrid, 2.0*gex.values)
rep4 = ps.check_kernel_unitarity(ps.KernelSpec.general_g(grid, g4))
print("misnormalized g:", rep4)
bg = ps.KernelSpec.bargmann(grid, units)
repb = ps.check_kernel_unitarity(bg, measure="bargmann")
print("bargmann unitarity:", repb)

# 12. solve_plain closed forms
gW_plain = ps.GFunction(grid.ygrid, np.conj(np.pi**-0.25 * np.exp(-(grid.ygrid.coords/2)**2 / 2)))
psi_p = ps.solve_plain(phis[0], gW_plain, grid)
ref = np.sqrt(8/5) * np.exp(-Q**2/10 - 2*P**2/5) * np.exp(1j*3*Q*P/10)
print("solve_plain gW closed form err:", np.max(np.abs(psi_p.values - ref)))
g2 = ps.GFunction(grid.ygrid, 2*np.conj(np.pi**-0.25*np.exp(-grid.ygrid.coords**2/2)))
psi_w = ps.solve_plain(phis[0], g2, grid)
ref2 = 2*np.exp(-(Q**2 + P**2)/4)
print("solve_plain rescaled-conjugate vs 2e^{-(q2+p2)/4}:", np.max(np.abs(psi_w.values - ref2)))

# g-ex route vs gauged CS kernel
psi_gex = ps.kernel_transform(ps.KernelSpec.general_g(grid, gex), phis[0])
print("g-ex transform of phi_0 vs e^{-(q2+p2)/4}:", np.max(np.abs(psi_gex.values - np.exp(-(Q**2+P**2)/4))))
csk = ps.kernel_transform(cs, phis[0])
gauged = ps.gauge_transform(csk, -P*Q/2)
print("gauged CS vs g-ex:", np.max(np.abs(gauged.values - psi_gex.values)))

# 13. husimi
hus = ps.husimi(phis[3], units, grid)
Hfield = (Q**2 + P**2)/2
refh = Hfield**3 * np.exp(-Hfield) / 6
print("husimi n=3 err:", np.max(np.abs(hus.values.real - refh)),
      " max:", hus.values.real.max(), " vs poisson mode:", 27*np.exp(-3)/6)
print("husimi dGamma norm:", ps.integrate_phase(hus, "dGamma").real)

# 14. expectations
Hop = ps.symbol_to_operator(hsym, 0.0)
Hop = ps.OperatorMatrix(grid.qgrid, (Hop.matrix + Hop.matrix.conj().T)/2, hermitian=True)
for s in [0.0, 0.5]:
    for n in [0, 3]:
        rho = ps.density_from_mixture([(1.0, phis[n])])
        Ws = ps.wigner_s_from_density(rho, s, grid)
        val = ps.expectation(Ws, Hop)
        print(f"<H> s={s} n={n}: {val.real:.10f} (imag {val.imag:.1e}) expect {n+0.5}")

iop = ps.identity_operator(grid.qgrid)
print("<1>:", ps.expectation(Ws, iop))

# purity
W3 = ps.wigner_from_pure(phis[3], grid)
print("purity pure:", ps.purity_integral(W3))
mix = ps.density_from_mixture([(0.5, phis[0]), (0.5, phis[1])])
Wm = ps.wigner_s_from_density(mix, 0.0, grid)
print("purity mixed:", ps.purity_integral(Wm))

# 15. star_poly
q = ps.monomial(1, 0)
p = ps.monomial(0, 1)
print("q*p:", ps.star_poly(q, p, 0.0).coeffs)
print("p*q:", ps.star_poly(p, q, 0.0).coeffs)
print("q*_s p (s=0.5):", ps.star_poly(q, p, 0.5).coeffs)

print("elapsed:", time.time() - t0)
