//! Quantum side: pure two-qudit states, rank-1 projective measurements, Bell
//! operators, the see-saw optimizer and multiport-beam-splitter measurements.
//!
//! A state is stored as its `d×d` amplitude matrix `Ψ_{ij}` (row-major, Alice
//! index first). With Alice vector `a` and Bob vector `b` the joint outcome
//! probability is `|a†·Ψ·conj(b)|²`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use crate::bounds::restart_rng;
use crate::error::{Error, Result};
use crate::game::{BehaviorTable, GameParams};
use crate::linalg::{self, dot, hermitian_eigen, norm, CMatrix};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub const STATE_NORM_TOL: f64 = 1e-12;
pub const MEASUREMENT_TOL: f64 = 1e-10;
/// Published Schmidt vectors are rounded; larger norm deviations are reported.
pub const SCHMIDT_WARN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    d: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(d: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                found: amps.len(),
            });
        }
        let residual = (norm(&amps) - 1.0).abs();
        if residual > STATE_NORM_TOL {
            return Err(Error::Tolerance {
                what: "state norm",
                residual,
                tolerance: STATE_NORM_TOL,
            });
        }
        Ok(Self { d, amps })
    }

    /// Normalizes `amps`; fails on the zero vector.
    pub fn normalized(d: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                found: amps.len(),
            });
        }
        linalg::normalize(&mut amps)?;
        Ok(Self { d, amps })
    }

    /// `(1/√d) Σ_i |i⟩|i⟩`
    pub fn maximally_entangled(d: usize) -> Self {
        let c = 1.0 / libm::sqrt(d as f64);
        let mut amps = vec![ZERO; d * d];
        for i in 0..d {
            amps[i * d + i] = Complex64::new(c, 0.0);
        }
        Self { d, amps }
    }

    /// Independent standard complex Gaussian amplitudes, normalized.
    pub fn haar_random<R: Rng>(d: usize, rng: &mut R) -> Self {
        loop {
            let amps: Vec<Complex64> = (0..d * d).map(|_| complex_gaussian(rng)).collect();
            if let Ok(s) = Self::normalized(d, amps) {
                return s;
            }
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude_matrix(&self) -> CMatrix {
        CMatrix::from_row_major(self.d, self.d, self.amps.clone()).expect("d² amplitudes")
    }

    /// Schmidt coefficients, descending.
    pub fn schmidt_coefficients(&self) -> Vec<f64> {
        let m = self.amplitude_matrix();
        let gram = m.matmul(&m.adjoint());
        let eig = hermitian_eigen(&gram).expect("Gram matrix is Hermitian");
        eig.values.iter().map(|&v| libm::sqrt(v.max(0.0))).collect()
    }

    /// Largest entry modulus of the difference to `|Ψ⁺⟩`.
    pub fn distance_to_maximally_entangled(&self) -> f64 {
        let m = Self::maximally_entangled(self.d);
        self.amps.iter().zip(&m.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// State `Σ c_i |i⟩|i⟩` together with `|Σ c_i² − 1|` before renormalization.
pub fn schmidt_state(coefficients: &[f64]) -> Result<(PureState, f64)> {
    if coefficients.is_empty() {
        return Err(Error::EmptySet);
    }
    if coefficients.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
        return Err(Error::Precondition("Schmidt coefficients must be nonnegative"));
    }
    let d = coefficients.len();
    let sq: f64 = coefficients.iter().map(|c| c * c).sum();
    if sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let residual = (sq - 1.0).abs();
    if residual > SCHMIDT_WARN_TOL {
        log::warn!("Schmidt coefficients renormalized (|Σc² − 1| = {residual:.2e})");
    }
    let mut amps = vec![ZERO; d * d];
    for (i, &c) in coefficients.iter().enumerate() {
        amps[i * d + i] = Complex64::new(c, 0.0);
    }
    Ok((PureState::normalized(d, amps)?, residual))
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(TAU * u2)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Rank-1 projective measurement: outcome `o` projects onto `basis[o]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    basis: Vec<Vec<Complex64>>,
}

impl ProjectiveMeasurement {
    pub fn new(basis: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = basis.len();
        if let Some(v) = basis.iter().find(|v| v.len() != d) {
            return Err(Error::LengthMismatch {
                expected: d,
                found: v.len(),
            });
        }
        let m = Self { basis };
        let r = m.orthonormality_residual();
        if r > MEASUREMENT_TOL {
            return Err(Error::Tolerance {
                what: "orthonormality",
                residual: r,
                tolerance: MEASUREMENT_TOL,
            });
        }
        Ok(m)
    }

    pub fn computational(d: usize) -> Self {
        Self {
            basis: (0..d)
                .map(|o| (0..d).map(|i| if i == o { Complex64::new(1.0, 0.0) } else { ZERO }).collect())
                .collect(),
        }
    }

    /// Columns of a Haar-random unitary (Gram–Schmidt on complex Gaussians).
    pub fn haar_random<R: Rng>(d: usize, rng: &mut R) -> Self {
        loop {
            let raw: Vec<Vec<Complex64>> = (0..d).map(|_| (0..d).map(|_| complex_gaussian(rng)).collect()).collect();
            if let Some(basis) = gram_schmidt(raw) {
                return Self { basis };
            }
        }
    }

    pub fn d(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self, o: usize) -> &[Complex64] {
        &self.basis[o]
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    pub fn projector(&self, o: usize) -> CMatrix {
        let v = &self.basis[o];
        CMatrix::from_fn(v.len(), v.len(), |i, k| v[i] * v[k].conj())
    }

    /// `max |⟨b_j|b_k⟩ − δ_jk|`
    pub fn orthonormality_residual(&self) -> f64 {
        let mut r = 0.0f64;
        for (j, a) in self.basis.iter().enumerate() {
            for (k, b) in self.basis.iter().enumerate() {
                let target = if j == k { 1.0 } else { 0.0 };
                r = r.max((dot(a, b) - target).norm());
            }
        }
        r
    }

    /// `max |(Σ_o P_o − I)_{ik}|`
    pub fn completeness_residual(&self) -> f64 {
        let d = self.d();
        let mut sum = CMatrix::zeros(d, d);
        for o in 0..d {
            sum.add_scaled(&self.projector(o), Complex64::new(1.0, 0.0));
        }
        sum.max_abs_diff(&CMatrix::identity(d))
    }

    /// `Σ_o ω^{n·o} P_o`
    pub fn power_observable(&self, params: &GameParams, n: usize) -> CMatrix {
        let d = self.d();
        let w = params.omega_powers();
        let mut out = CMatrix::zeros(d, d);
        for o in 0..d {
            out.add_scaled(&self.projector(o), w[(n * o) % params.d()]);
        }
        out
    }
}

fn gram_schmidt(mut vs: Vec<Vec<Complex64>>) -> Option<Vec<Vec<Complex64>>> {
    for k in 0..vs.len() {
        for _ in 0..2 {
            for j in 0..k {
                let h = dot(&vs[j], &vs[k]);
                let (head, tail) = vs.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= h * y;
                }
            }
        }
        if norm(&vs[k]) < 1e-8 {
            return None;
        }
        linalg::normalize(&mut vs[k]).ok()?;
    }
    Some(vs)
}

/// One projective measurement per setting.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    settings: Vec<ProjectiveMeasurement>,
}

impl MeasurementSet {
    pub fn new(settings: Vec<ProjectiveMeasurement>) -> Result<Self> {
        let d = settings.len();
        if settings.iter().any(|m| m.d() != d) {
            return Err(Error::Precondition("one d-outcome measurement per setting"));
        }
        Ok(Self { settings })
    }

    pub fn computational(d: usize) -> Self {
        Self {
            settings: (0..d).map(|_| ProjectiveMeasurement::computational(d)).collect(),
        }
    }

    pub fn haar_random<R: Rng>(d: usize, rng: &mut R) -> Self {
        Self {
            settings: (0..d).map(|_| ProjectiveMeasurement::haar_random(d, rng)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.settings.len()
    }

    pub fn setting(&self, s: usize) -> &ProjectiveMeasurement {
        &self.settings[s]
    }

    pub fn settings(&self) -> &[ProjectiveMeasurement] {
        &self.settings
    }

    /// Largest orthonormality residual over settings.
    pub fn residual(&self) -> f64 {
        self.settings.iter().map(|m| m.orthonormality_residual()).fold(0.0, f64::max)
    }
}

/// Multiport phases in units of full turns: `phases[s][l − 1] = φ^s_l` for
/// `l = 1..d−1` (`φ^s_0 = 0`). Alice and Bob use the same phases.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiportPhases {
    d: usize,
    phases: Vec<Vec<f64>>,
}

fn wrap_turn(x: f64) -> f64 {
    let r = x - libm::floor(x);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl MultiportPhases {
    pub fn new(d: usize, phases: Vec<Vec<f64>>) -> Result<Self> {
        if phases.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                found: phases.len(),
            });
        }
        for row in &phases {
            if row.len() != d - 1 {
                return Err(Error::LengthMismatch {
                    expected: d - 1,
                    found: row.len(),
                });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::Precondition("finite phases"));
            }
        }
        let phases = phases.into_iter().map(|r| r.into_iter().map(wrap_turn).collect()).collect();
        Ok(Self { d, phases })
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            d,
            phases: vec![vec![0.0; d - 1]; d],
        }
    }

    pub fn random<R: Rng>(d: usize, rng: &mut R) -> Self {
        Self {
            d,
            phases: (0..d).map(|_| (0..d - 1).map(|_| rng.random::<f64>()).collect()).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn setting(&self, s: usize) -> &[f64] {
        &self.phases[s]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.phases
    }

    /// Sets `φ^s_l` (`1 ≤ l < d`), reduced mod 1.
    pub fn set(&mut self, s: usize, l: usize, value: f64) {
        self.phases[s][l - 1] = wrap_turn(value);
    }

    pub fn get(&self, s: usize, l: usize) -> f64 {
        if l == 0 {
            0.0
        } else {
            self.phases[s][l - 1]
        }
    }

    pub fn measurements(&self, params: &GameParams) -> Result<MeasurementSet> {
        let settings = self
            .phases
            .iter()
            .map(|phi| measurement_from_unitary(&multiport_unitary(params, phi)?))
            .collect::<Result<Vec<_>>>()?;
        MeasurementSet::new(settings)
    }
}

/// `U_{kl} = e^{i2π(kl/d + φ_l)}/√d` with `φ_0 = 0`.
pub fn multiport_unitary(params: &GameParams, phi: &[f64]) -> Result<CMatrix> {
    let d = params.d();
    if phi.len() != d - 1 {
        return Err(Error::LengthMismatch {
            expected: d - 1,
            found: phi.len(),
        });
    }
    let c = 1.0 / libm::sqrt(d as f64);
    Ok(CMatrix::from_fn(d, d, |k, l| {
        let p = if l == 0 { 0.0 } else { phi[l - 1] };
        Complex64::from_polar(c, TAU * (((k * l) % d) as f64 / d as f64 + p))
    }))
}

/// Basis vector `o` is the conjugate of row `o` of `U`, so its projector is `U†Π_oU`.
pub fn measurement_from_unitary(u: &CMatrix) -> Result<ProjectiveMeasurement> {
    let r = u.unitarity_residual();
    if r > MEASUREMENT_TOL {
        return Err(Error::Tolerance {
            what: "unitarity",
            residual: r,
            tolerance: MEASUREMENT_TOL,
        });
    }
    ProjectiveMeasurement::new((0..u.rows()).map(|o| u.row(o).iter().map(|x| x.conj()).collect()).collect())
}

fn check_dims(params: &GameParams, state: &PureState, alice: &MeasurementSet, bob: &MeasurementSet) -> Result<()> {
    let d = params.d();
    for found in [state.d(), alice.d(), bob.d()] {
        if found != d {
            return Err(Error::LengthMismatch { expected: d, found });
        }
    }
    Ok(())
}

/// `Ψ·conj(v)`
fn contract_right(psi: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..psi.rows()).map(|i| psi.row(i).iter().zip(v).map(|(x, y)| x * y.conj()).sum()).collect()
}

/// Born-rule behavior `p(o_a, o_b | s_a, s_b) = |⟨a|⊗⟨b| Ψ⟩|²`.
pub fn joint_behavior(params: &GameParams, state: &PureState, alice: &MeasurementSet, bob: &MeasurementSet) -> Result<BehaviorTable> {
    check_dims(params, state, alice, bob)?;
    let d = params.d();
    let psi = state.amplitude_matrix();
    let mut probs = vec![0.0; d * d * d * d];
    for s_b in 0..d {
        let cols: Vec<Vec<Complex64>> = bob.setting(s_b).vectors().iter().map(|b| contract_right(&psi, b)).collect();
        for s_a in 0..d {
            for (o_a, a) in alice.setting(s_a).vectors().iter().enumerate() {
                for (o_b, w) in cols.iter().enumerate() {
                    probs[BehaviorTable::index(d, s_a, s_b, o_a, o_b)] = dot(a, w).norm_sqr();
                }
            }
        }
    }
    BehaviorTable::from_raw(d, probs)
}

/// Bell operator of the probability functional on `C^d ⊗ C^d` (index `i·d + j`).
#[derive(Debug, Clone, PartialEq)]
pub struct BellOperator {
    d: usize,
    matrix: CMatrix,
}

impl BellOperator {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.matrix.hermiticity_residual()
    }

    pub fn expectation(&self, state: &PureState) -> f64 {
        self.matrix.expectation(state.amplitudes()).re
    }

    /// `tr(B)/d²`, the value on the maximally mixed state.
    pub fn mixed_expectation(&self) -> f64 {
        self.matrix.trace().re / (self.d * self.d) as f64
    }
}

/// `out += A ⊗ B`
fn add_kron(out: &mut CMatrix, a: &CMatrix, b: &CMatrix, k: Complex64) {
    let (n, m) = (a.rows(), b.rows());
    for i in 0..n {
        for kk in 0..n {
            let x = a[(i, kk)] * k;
            if x == ZERO {
                continue;
            }
            for j in 0..m {
                for l in 0..m {
                    out[(i * m + j, kk * m + l)] += x * b[(j, l)];
                }
            }
        }
    }
}

/// Bob's outcome that wins with `(s_a, s_b, o_a)`.
#[inline]
fn winning_bob(d: usize, s_a: usize, s_b: usize, o_a: usize) -> usize {
    (d - (s_a * s_b + o_a) % d) % d
}

/// `B = (1/d²) Σ_{s_a,o_a} P^A_{s_a,o_a} ⊗ Σ_{s_b} P^B_{s_b, o_b(s_a,s_b,o_a)}`.
pub fn bell_operator(params: &GameParams, alice: &MeasurementSet, bob: &MeasurementSet) -> Result<BellOperator> {
    let d = params.d();
    if alice.d() != d || bob.d() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            found: alice.d().min(bob.d()),
        });
    }
    let bob_proj: Vec<Vec<CMatrix>> = (0..d).map(|t| (0..d).map(|o| bob.setting(t).projector(o)).collect()).collect();
    let mut matrix = CMatrix::zeros(d * d, d * d);
    let weight = Complex64::new(1.0 / (d * d) as f64, 0.0);
    for s_a in 0..d {
        for o_a in 0..d {
            let mut q = CMatrix::zeros(d, d);
            for (s_b, projectors) in bob_proj.iter().enumerate() {
                q.add_scaled(&projectors[winning_bob(d, s_a, s_b, o_a)], Complex64::new(1.0, 0.0));
            }
            add_kron(&mut matrix, &alice.setting(s_a).projector(o_a), &q, weight);
        }
    }
    Ok(BellOperator { d, matrix })
}

/// `B_Ji = Σ_{n=1}^{d−1} Σ_{s_a,s_b} ω^{n·s_a·s_b} (A_{s_a})^n ⊗ (B_{s_b})^n`, with the
/// powers taken as matrix powers of `A_s = Σ_o ω^o P_o`.
pub fn correlation_operator(params: &GameParams, alice: &MeasurementSet, bob: &MeasurementSet) -> CMatrix {
    let d = params.d();
    let w = params.omega_powers();
    let powers = |m: &MeasurementSet| -> Vec<Vec<CMatrix>> {
        (0..d)
            .map(|s| {
                let base = m.setting(s).power_observable(params, 1);
                let mut out = vec![base.clone()];
                for _ in 2..d {
                    let next = out.last().expect("nonempty").matmul(&base);
                    out.push(next);
                }
                out
            })
            .collect()
    };
    let pa = powers(alice);
    let pb = powers(bob);
    let mut out = CMatrix::zeros(d * d, d * d);
    for n in 1..d {
        for s_a in 0..d {
            for s_b in 0..d {
                add_kron(&mut out, &pa[s_a][n - 1], &pb[s_b][n - 1], w[(n * s_a * s_b) % d]);
            }
        }
    }
    out
}

/// `max_n ‖(Σ_o ω^o P_o)^n − Σ_o ω^{n·o} P_o‖_max` over `n = 1..d−1`.
pub fn operator_power_residual(params: &GameParams, m: &ProjectiveMeasurement) -> f64 {
    let base = m.power_observable(params, 1);
    let mut power = base.clone();
    let mut worst = 0.0f64;
    for n in 1..params.d() {
        if n > 1 {
            power = power.matmul(&base);
        }
        worst = worst.max(power.max_abs_diff(&m.power_observable(params, n)));
    }
    worst
}

/// `|tr(ρB_Ji) − (d³·tr(ρB) − d²)|` for `ρ = |Ψ⟩⟨Ψ|`.
pub fn corr_value_relation_check(params: &GameParams, state: &PureState, alice: &MeasurementSet, bob: &MeasurementSet) -> Result<f64> {
    check_dims(params, state, alice, bob)?;
    let d = params.d() as f64;
    let b = bell_operator(params, alice, bob)?;
    let bji = correlation_operator(params, alice, bob);
    let lhs = bji.expectation(state.amplitudes());
    let rhs = d * d * d * b.expectation(state) - d * d;
    Ok((lhs - Complex64::new(rhs, 0.0)).norm())
}

/// Largest eigenvalue of `B` and a unit eigenvector (any vector of a degenerate
/// top eigenspace may be returned). `start` seeds the iteration.
pub fn max_eigenpair(b: &BellOperator, start: Option<&PureState>) -> Result<(f64, PureState)> {
    let (value, mut v) = linalg::top_eigenpair(b.matrix(), start.map(|s| s.amplitudes()))?;
    linalg::normalize(&mut v)?;
    Ok((value, PureState { d: b.d(), amps: v }))
}

/// Effective operators `G_{s,o}` of one party with the other party fixed:
/// the party's value is `Σ_{s,o} ⟨v_{s,o}|G_{s,o}|v_{s,o}⟩`.
fn effective_operators(d: usize, psi: &CMatrix, other: &MeasurementSet) -> Vec<Vec<CMatrix>> {
    let w: Vec<Vec<Vec<Complex64>>> = (0..d)
        .map(|t| other.setting(t).vectors().iter().map(|b| contract_right(psi, b)).collect())
        .collect();
    let k = 1.0 / (d * d) as f64;
    (0..d)
        .map(|s| {
            (0..d)
                .map(|o| {
                    let mut g = CMatrix::zeros(d, d);
                    for (t, wt) in w.iter().enumerate() {
                        let v = &wt[winning_bob(d, s, t, o)];
                        for i in 0..d {
                            let vi = v[i] * k;
                            for j in 0..d {
                                g[(i, j)] += vi * v[j].conj();
                            }
                        }
                    }
                    g
                })
                .collect()
        })
        .collect()
}

fn party_value(g: &[Vec<CMatrix>], m: &MeasurementSet) -> f64 {
    g.iter()
        .enumerate()
        .map(|(s, gs)| gs.iter().enumerate().map(|(o, go)| go.expectation(m.setting(s).vector(o)).re).sum::<f64>())
        .sum()
}

/// Pairwise Jacobi rotations of one basis against the operators `g[o]`; each
/// rotation solves the 2×2 problem on `span{b_j, b_k}` exactly, so the value
/// `Σ_o ⟨b_o|g_o|b_o⟩` never decreases. Returns the total gain.
fn rotate_basis(basis: &mut [Vec<Complex64>], g: &[CMatrix], max_sweeps: usize) -> f64 {
    let d = basis.len();
    let mut total = 0.0;
    for _ in 0..max_sweeps {
        let mut gain = 0.0;
        for j in 0..d {
            for k in j + 1..d {
                let gj_bj = g[j].mul_vec(&basis[j]);
                let gj_bk = g[j].mul_vec(&basis[k]);
                let gk_bj = g[k].mul_vec(&basis[j]);
                let gk_bk = g[k].mul_vec(&basis[k]);
                let h00 = (dot(&basis[j], &gj_bj) - dot(&basis[j], &gk_bj)).re;
                let h11 = (dot(&basis[k], &gj_bk) - dot(&basis[k], &gk_bk)).re;
                let h01 = dot(&basis[j], &gj_bk) - dot(&basis[j], &gk_bk);
                let half = 0.5 * (h00 - h11);
                let lambda = 0.5 * (h00 + h11) + libm::sqrt(half * half + h01.norm_sqr());
                let step = lambda - h00;
                if step <= 1e-15 * (lambda.abs() + 1e-300) || h01.norm() < 1e-300 {
                    continue;
                }
                let nrm = libm::sqrt(h01.norm_sqr() + step * step);
                let x0 = h01 / nrm;
                let x1 = Complex64::new(step / nrm, 0.0);
                let (bj, bk) = (basis[j].clone(), basis[k].clone());
                for i in 0..bj.len() {
                    basis[j][i] = x0 * bj[i] + x1 * bk[i];
                    basis[k][i] = -x1.conj() * bj[i] + x0.conj() * bk[i];
                }
                gain += step;
            }
        }
        total += gain;
        if gain < 1e-14 {
            break;
        }
    }
    total
}

/// Result of alternating measurement updates with the state fixed.
#[derive(Debug, Clone)]
pub struct MeasurementOptimization {
    pub alice: MeasurementSet,
    pub bob: MeasurementSet,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Improves both parties' measurements for a fixed state: Alice's settings with
/// Bob fixed, then Bob's with Alice fixed, until the relative change of the
/// Bell value drops below `tol` or `max_iter` rounds pass (`converged = false`).
pub fn optimize_measurements(
    params: &GameParams,
    state: &PureState,
    alice: &MeasurementSet,
    bob: &MeasurementSet,
    tol: f64,
    max_iter: usize,
) -> Result<MeasurementOptimization> {
    check_dims(params, state, alice, bob)?;
    let d = params.d();
    let psi = state.amplitude_matrix();
    let psi_t = psi.transpose();
    let mut alice = alice.clone();
    let mut bob = bob.clone();
    let mut value = party_value(&effective_operators(d, &psi, &bob), &alice);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let ga = effective_operators(d, &psi, &bob);
        for (s, gs) in ga.iter().enumerate() {
            rotate_basis(&mut alice.settings[s].basis, gs, 50);
        }
        let gb = effective_operators(d, &psi_t, &alice);
        for (s, gs) in gb.iter().enumerate() {
            rotate_basis(&mut bob.settings[s].basis, gs, 50);
        }
        let next = party_value(&gb, &bob);
        let change = (next - value) / value.abs().max(1e-300);
        value = next.max(value);
        if change < tol {
            converged = true;
            break;
        }
    }
    reorthonormalize(&mut alice);
    reorthonormalize(&mut bob);
    Ok(MeasurementOptimization {
        alice,
        bob,
        value,
        iterations,
        converged,
    })
}

/// Clears rounding drift accumulated over many rotations.
fn reorthonormalize(m: &mut MeasurementSet) {
    for setting in &mut m.settings {
        if setting.orthonormality_residual() > 1e-13 {
            if let Some(b) = gram_schmidt(setting.basis.clone()) {
                setting.basis = b;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeesawConfig {
    /// Relative change of the Bell value that ends a run.
    pub tol: f64,
    /// Cap on outer (measurement step + eigen-step) iterations.
    pub max_outer: usize,
    /// Cap on alternating measurement rounds per outer iteration.
    pub max_inner: usize,
    /// Multiport annealing runs that seed the measurements of `|Ψ⁺⟩` restarts;
    /// zero keeps Haar-random measurements.
    pub anneals: u64,
    pub anneal: AnnealConfig,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_outer: 10_000,
            max_inner: 20,
            anneals: 8,
            anneal: AnnealConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeesawRun {
    pub value: f64,
    pub state: PureState,
    pub alice: MeasurementSet,
    pub bob: MeasurementSet,
    /// Bell value after each eigen-step.
    pub history: Vec<f64>,
    pub converged: bool,
    pub restart: u64,
}

/// One see-saw run from the given state and measurements: optimize the
/// measurements for the state, replace the state by the top eigenvector of the
/// Bell operator, and repeat until the value stops improving.
pub fn seesaw_run(
    params: &GameParams,
    state: PureState,
    alice: MeasurementSet,
    bob: MeasurementSet,
    config: &SeesawConfig,
) -> Result<SeesawRun> {
    let mut state = state;
    let mut alice = alice;
    let mut bob = bob;
    let mut history = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let mut converged = false;
    for _ in 0..config.max_outer {
        let m = optimize_measurements(params, &state, &alice, &bob, config.tol, config.max_inner)?;
        alice = m.alice;
        bob = m.bob;
        let b = bell_operator(params, &alice, &bob)?;
        let current = b.expectation(&state);
        let (value, next) = max_eigenpair(&b, Some(&state))?;
        if value > current {
            state = next;
        }
        let value = value.max(current);
        let change = (value - best) / value.abs().max(1e-300);
        history.push(value);
        best = best.max(value);
        if change < config.tol {
            converged = true;
            break;
        }
    }
    Ok(SeesawRun {
        value: best,
        state,
        alice,
        bob,
        history,
        converged,
        restart: 0,
    })
}

/// Restart `index` of stream `seed`. Even indices start from `|Ψ⁺⟩` with the
/// best of `config.anneals` multiport annealing runs as measurements for both
/// parties (Haar-random bases when that is zero); odd indices start from a
/// Haar-random state and Haar-random bases.
pub fn seesaw_restart(params: &GameParams, seed: u64, index: u64, config: &SeesawConfig) -> Result<SeesawRun> {
    let d = params.d();
    let mut rng = restart_rng(seed, index);
    let (state, alice, bob) = if index.is_multiple_of(2) {
        let anneal_seed = rng.random::<u64>();
        let alice = MeasurementSet::haar_random(d, &mut rng);
        let bob = MeasurementSet::haar_random(d, &mut rng);
        if config.anneals > 0 {
            let m = multiport_search(params, anneal_seed, config.anneals, &config.anneal)?.phases.measurements(params)?;
            (PureState::maximally_entangled(d), m.clone(), m)
        } else {
            (PureState::maximally_entangled(d), alice, bob)
        }
    } else {
        let state = PureState::haar_random(d, &mut rng);
        let alice = MeasurementSet::haar_random(d, &mut rng);
        let bob = MeasurementSet::haar_random(d, &mut rng);
        (state, alice, bob)
    };
    let mut run = seesaw_run(params, state, alice, bob, config)?;
    run.restart = index;
    Ok(run)
}

/// Higher value wins; ties go to the lower restart index.
pub fn better_run(a: SeesawRun, b: SeesawRun) -> SeesawRun {
    if b.value > a.value || (b.value == a.value && b.restart < a.restart) {
        b
    } else {
        a
    }
}

/// Best of `restarts` see-saw runs, sequentially.
pub fn seesaw(params: &GameParams, seed: u64, restarts: u64, config: &SeesawConfig) -> Result<SeesawRun> {
    if restarts == 0 {
        return Err(Error::Precondition("at least one restart"));
    }
    let mut best: Option<SeesawRun> = None;
    for index in 0..restarts {
        let run = seesaw_restart(params, seed, index, config)?;
        best = Some(match best {
            None => run,
            Some(b) => better_run(b, run),
        });
    }
    Ok(best.expect("restarts >= 1"))
}

/// Bell value of multiport measurements (same phases for both parties) on a fixed state.
#[derive(Debug, Clone)]
pub struct MultiportObjective {
    params: GameParams,
    state: PureState,
    uniform: bool,
}

impl MultiportObjective {
    pub fn new(params: &GameParams, state: &PureState) -> Result<Self> {
        if state.d() != params.d() {
            return Err(Error::LengthMismatch {
                expected: params.d(),
                found: state.d(),
            });
        }
        Ok(Self {
            params: *params,
            state: state.clone(),
            uniform: state.distance_to_maximally_entangled() < 1e-14,
        })
    }

    /// For `|Ψ⁺⟩` the value has the closed form
    /// `(1/d⁴) Σ_{s,t} |Σ_l ω^{−s·t·l} e^{i2π(φ^s_l + φ^t_l)}|²`; other states go
    /// through the full behavior.
    pub fn value(&self, phases: &MultiportPhases) -> Result<f64> {
        let d = self.params.d();
        if phases.d() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                found: phases.d(),
            });
        }
        if !self.uniform {
            let m = phases.measurements(&self.params)?;
            let b = joint_behavior(&self.params, &self.state, &m, &m)?;
            return Ok(crate::game::bell_value_prob(&self.params, &b));
        }
        let w = self.params.omega_powers();
        let e: Vec<Vec<Complex64>> = (0..d).map(|s| (0..d).map(|l| Complex64::from_polar(1.0, TAU * phases.get(s, l))).collect()).collect();
        let mut total = 0.0;
        for s in 0..d {
            for t in s..d {
                let mut acc = ZERO;
                for l in 0..d {
                    acc += w[(d * d - (s * t * l) % d) % d] * e[s][l] * e[t][l];
                }
                total += if s == t { acc.norm_sqr() } else { 2.0 * acc.norm_sqr() };
            }
        }
        Ok(total / (d * d * d * d) as f64)
    }
}

#[derive(Debug, Clone)]
pub struct MultiportOptimization {
    pub phases: MultiportPhases,
    pub value: f64,
    pub sweeps: usize,
    pub converged: bool,
}

/// Samples per coordinate line search before refinement.
const LINE_SAMPLES: usize = 48;

/// Sampled periodic line search over one turn around `current`, refined by
/// golden-section search around the best sample. Returns the best point seen,
/// never worse than `(current, current_value)`.
fn periodic_line_search(f: &mut impl FnMut(f64) -> Result<f64>, current: f64, current_value: f64) -> Result<(f64, f64)> {
    let mut best_x = current;
    let mut best_v = current_value;
    for k in 1..LINE_SAMPLES {
        let x = current + k as f64 / LINE_SAMPLES as f64;
        let v = f(x)?;
        if v > best_v {
            best_v = v;
            best_x = x;
        }
    }
    let h = 1.0 / LINE_SAMPLES as f64;
    let (x, v) = golden_max(f, best_x - h, best_x + h, 40)?;
    if v > best_v {
        best_v = v;
        best_x = x;
    }
    Ok((best_x, best_v))
}

/// Cyclic coordinate ascent over the `d(d−1)` phases: each coordinate is set by
/// a sampled periodic line search refined by golden-section search, and only
/// accepted if it does not lower the value. Stops when a sweep changes the value
/// by less than `tol` (relative) or after `max_sweeps`.
///
/// For `|Ψ⁺⟩` the value as a function of one phase `φ^s_l = θ/2π` is
/// `K + Re(α·e^{iθ}) + Re(β·e^{2iθ})` (the setting pair `(s, s)` carries the
/// phase twice); `α`, `β` come from the running pair sums
/// `A_{st} = Σ_l ω^{−s·t·l} e^{i2π(φ^s_l + φ^t_l)}`, so a sweep costs `O(d³)`.
pub fn optimize_multiport_phases(
    params: &GameParams,
    state: &PureState,
    init: &MultiportPhases,
    tol: f64,
    max_sweeps: usize,
) -> Result<MultiportOptimization> {
    let objective = MultiportObjective::new(params, state)?;
    if init.d() != params.d() {
        return Err(Error::LengthMismatch {
            expected: params.d(),
            found: init.d(),
        });
    }
    if objective.uniform {
        return Ok(optimize_uniform(params, init, tol, max_sweeps));
    }
    let d = params.d();
    let mut phases = init.clone();
    let mut value = objective.value(&phases)?;
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let start = value;
        for s in 0..d {
            for l in 1..d {
                let current = phases.get(s, l);
                let mut eval = |x: f64| -> Result<f64> {
                    let mut trial = phases.clone();
                    trial.set(s, l, x);
                    objective.value(&trial)
                };
                let (x, v) = periodic_line_search(&mut eval, current, value)?;
                if v > value {
                    phases.set(s, l, x);
                    value = v;
                }
            }
        }
        if (value - start) / value.abs().max(1e-300) < tol {
            converged = true;
            break;
        }
    }
    Ok(MultiportOptimization {
        phases,
        value,
        sweeps,
        converged,
    })
}

fn optimize_uniform(params: &GameParams, init: &MultiportPhases, tol: f64, max_sweeps: usize) -> MultiportOptimization {
    let d = params.d();
    let w = params.omega_powers();
    // ω^{−k}
    let wn = |k: usize| w[(d - k % d) % d];
    let mut phases = init.clone();
    let mut x: Vec<Vec<Complex64>> = (0..d).map(|s| (0..d).map(|l| Complex64::from_polar(1.0, TAU * phases.get(s, l))).collect()).collect();
    let mut pair = vec![vec![ZERO; d]; d];
    for s in 0..d {
        for t in 0..d {
            pair[s][t] = (0..d).map(|l| wn(s * t * l) * x[s][l] * x[t][l]).sum();
        }
    }
    let scale = 1.0 / (d * d * d * d) as f64;
    let total = |pair: &[Vec<Complex64>]| pair.iter().flatten().map(|a| a.norm_sqr()).sum::<f64>() * scale;
    let mut value = total(&pair);
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let start = value;
        for s in 0..d {
            for l in 1..d {
                let z = x[s][l];
                let mut alpha = ZERO;
                let mut k0 = 0.0;
                for t in (0..d).filter(|&t| t != s) {
                    let c = wn(s * t * l) * x[t][l];
                    let rest = pair[s][t] - c * z;
                    alpha += rest.conj() * c;
                    k0 += rest.norm_sqr() + 1.0;
                }
                let cs = wn(s * s * l);
                let rest_s = pair[s][s] - cs * z * z;
                let beta = rest_s.conj() * cs;
                // value without the untouched pairs: 2Σ_t |R_t + c_t z|² + |R_s + c_s z²|²
                let local = |th: f64| -> f64 {
                    let e = Complex64::from_polar(1.0, th);
                    2.0 * (k0 + 2.0 * (alpha * e).re) + rest_s.norm_sqr() + 1.0 + 2.0 * (beta * e * e).re
                };
                let th0 = TAU * phases.get(s, l);
                let mut eval = |u: f64| -> Result<f64> { Ok(local(TAU * u)) };
                let (u, v) = periodic_line_search(&mut eval, th0 / TAU, local(th0)).expect("infallible");
                if v > local(th0) {
                    phases.set(s, l, u);
                    let z_new = Complex64::from_polar(1.0, TAU * phases.get(s, l));
                    for t in (0..d).filter(|&t| t != s) {
                        let delta = wn(s * t * l) * x[t][l] * (z_new - z);
                        pair[s][t] += delta;
                        pair[t][s] += delta;
                    }
                    pair[s][s] += cs * (z_new * z_new - z * z);
                    x[s][l] = z_new;
                }
            }
        }
        let next = total(&pair);
        value = next.max(value);
        if (next - start) / next.abs().max(1e-300) < tol {
            converged = true;
            break;
        }
    }
    // recompute from scratch to shed accumulated rounding in the pair sums
    let value = MultiportObjective {
        params: *params,
        state: PureState::maximally_entangled(d),
        uniform: true,
    }
    .value(&phases)
    .expect("dimensions match");
    MultiportOptimization {
        phases,
        value,
        sweeps,
        converged,
    }
}

fn golden_max(f: &mut impl FnMut(f64) -> Result<f64>, mut lo: f64, mut hi: f64, iters: usize) -> Result<(f64, f64)> {
    let r = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Restart `index` of stream `seed` for the multiport optimizer; restart 0
/// starts from all-zero phases, the rest from uniformly random ones.
pub fn multiport_restart(params: &GameParams, state: &PureState, seed: u64, index: u64, tol: f64, max_sweeps: usize) -> Result<MultiportOptimization> {
    let init = if index == 0 {
        MultiportPhases::zeros(params.d())
    } else {
        MultiportPhases::random(params.d(), &mut restart_rng(seed, index))
    };
    optimize_multiport_phases(params, state, &init, tol, max_sweeps)
}

/// Schedule for [`multiport_anneal`]. Temperatures are in units of the
/// unnormalized objective `Σ_{s,t} |A_{st}|²` and scale with `d` times the
/// number of phases a move changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealConfig {
    /// Proposed moves per free phase.
    pub sweeps: usize,
    pub start_temperature: f64,
    /// Ratio of start to final temperature (geometric cooling).
    pub cooling: f64,
    /// Probability of a uniform jump instead of a local step.
    pub jump_probability: f64,
    /// Width of a local step, in turns.
    pub step: f64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        Self {
            sweeps: 5000,
            start_temperature: 1.0,
            cooling: 40.0,
            jump_probability: 0.1,
            step: 0.2,
        }
    }
}

/// One generator per cyclic subgroup of the units, ordered by subgroup size,
/// starting with the trivial subgroup `⟨1⟩`.
pub fn scaling_subgroup_generators(params: &GameParams) -> Vec<usize> {
    let d = params.d();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for u in params.units() {
        let mut group = vec![1 % d];
        let mut x = u % d;
        while x != 1 % d {
            group.push(x);
            x = x * u % d;
        }
        group.sort_unstable();
        if !seen.contains(&group) {
            out.push((group.len(), u));
            seen.push(group);
        }
    }
    out.sort_unstable();
    out.into_iter().map(|(_, u)| u).collect()
}

/// Orbits of the phase coordinates `(s, l)`, `l ≥ 1`, under
/// `(s, l) ↦ (u·s, u⁻²·l)`. The map leaves the `|Ψ⁺⟩` multiport value
/// invariant, so tying the phases of each orbit together gives a smaller
/// search space that still contains symmetric optima.
pub fn phase_orbits(params: &GameParams, u: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    let d = params.d();
    let inv = crate::arith::inverse_mod(u, d).ok_or(Error::Precondition("scaling factor must be a unit"))?;
    let v = inv * inv % d;
    let mut seen = vec![false; d * d];
    let mut orbits = Vec::new();
    for s in 0..d {
        for l in 1..d {
            if seen[s * d + l] {
                continue;
            }
            let mut orbit = Vec::new();
            let (mut cs, mut cl) = (s, l);
            while !seen[cs * d + cl] {
                seen[cs * d + cl] = true;
                orbit.push((cs, cl));
                cs = u * cs % d;
                cl = v * cl % d;
            }
            orbits.push(orbit);
        }
    }
    Ok(orbits)
}

/// Running pair sums `A_{st} = Σ_l ω^{−s·t·l} x_s[l] x_t[l]` of the `|Ψ⁺⟩`
/// multiport objective with single-phase updates in `O(d)`.
struct PairSums {
    d: usize,
    conj_powers: Vec<Complex64>,
    x: Vec<Complex64>,
    pair: Vec<Complex64>,
}

impl PairSums {
    fn new(params: &GameParams, turns: &[f64]) -> Self {
        let d = params.d();
        let w = params.omega_powers();
        let conj_powers: Vec<Complex64> = (0..d).map(|k| w[(d - k) % d]).collect();
        let x: Vec<Complex64> = turns.iter().map(|&t| Complex64::from_polar(1.0, TAU * t)).collect();
        let mut pair = vec![ZERO; d * d];
        for s in 0..d {
            for t in 0..d {
                pair[s * d + t] = (0..d).map(|l| conj_powers[s * t * l % d] * x[s * d + l] * x[t * d + l]).sum();
            }
        }
        Self { d, conj_powers, x, pair }
    }

    fn total(&self) -> f64 {
        self.pair.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Sets `x_s[l] = z` and returns the change of `Σ |A_{st}|²`.
    fn set(&mut self, s: usize, l: usize, z: Complex64) -> f64 {
        let d = self.d;
        let old = self.x[s * d + l];
        let mut delta = 0.0;
        for t in (0..d).filter(|&t| t != s) {
            let step = self.conj_powers[s * t * l % d] * self.x[t * d + l] * (z - old);
            let before = self.pair[s * d + t].norm_sqr();
            self.pair[s * d + t] += step;
            self.pair[t * d + s] += step;
            delta += 2.0 * (self.pair[s * d + t].norm_sqr() - before);
        }
        let before = self.pair[s * d + s].norm_sqr();
        self.pair[s * d + s] += self.conj_powers[s * s * l % d] * (z * z - old * old);
        delta += self.pair[s * d + s].norm_sqr() - before;
        self.x[s * d + l] = z;
        delta
    }
}

/// Simulated annealing over `|Ψ⁺⟩` multiport phases, followed by coordinate
/// ascent. Even restarts anneal every phase independently; odd restarts cycle
/// through the nontrivial scaling subgroups and anneal inside the subspace of
/// phases invariant under that subgroup (see [`phase_orbits`]). The final
/// coordinate ascent is always unrestricted.
pub fn multiport_anneal(params: &GameParams, seed: u64, index: u64, config: &AnnealConfig) -> Result<MultiportOptimization> {
    let d = params.d();
    if d < 2 || config.sweeps == 0 || !(config.cooling >= 1.0) || !(config.start_temperature > 0.0) {
        return Err(Error::Precondition("annealing schedule"));
    }
    let generators = scaling_subgroup_generators(params);
    let u = if index.is_multiple_of(2) || generators.len() < 2 {
        1
    } else {
        generators[1 + (index / 2) as usize % (generators.len() - 1)]
    };
    let orbits = phase_orbits(params, u)?;
    let mut rng = restart_rng(seed, index);
    let mut turns = vec![0.0; d * d];
    for orbit in &orbits {
        let t = rng.random::<f64>();
        for &(s, l) in orbit {
            turns[s * d + l] = t;
        }
    }
    let mut sums = PairSums::new(params, &turns);
    let mut current = sums.total();
    let mut best = (current, turns.clone());
    let width = orbits.iter().map(Vec::len).max().unwrap_or(1) as f64;
    let t0 = config.start_temperature * d as f64 * width;
    let steps = config.sweeps * orbits.len();
    let mut previous = Vec::with_capacity(width as usize);
    for step in 0..steps {
        let temperature = t0 * libm::pow(config.cooling, -(step as f64) / steps as f64);
        let orbit = &orbits[rng.random_range(0..orbits.len())];
        let (s0, l0) = orbit[0];
        let proposal = if rng.random::<f64>() < config.jump_probability {
            rng.random::<f64>()
        } else {
            wrap_turn(turns[s0 * d + l0] + config.step * (rng.random::<f64>() - 0.5))
        };
        let z = Complex64::from_polar(1.0, TAU * proposal);
        previous.clear();
        let mut delta = 0.0;
        for &(s, l) in orbit {
            previous.push(sums.x[s * d + l]);
            delta += sums.set(s, l, z);
        }
        if delta >= 0.0 || rng.random::<f64>() < libm::exp(delta / temperature) {
            for &(s, l) in orbit {
                turns[s * d + l] = proposal;
            }
            current += delta;
            if current > best.0 {
                best = (current, turns.clone());
            }
        } else {
            for (&(s, l), &z) in orbit.iter().zip(&previous).rev() {
                sums.set(s, l, z);
            }
        }
    }
    let rows = (0..d).map(|s| best.1[s * d + 1..(s + 1) * d].to_vec()).collect();
    let init = MultiportPhases::new(d, rows)?;
    Ok(optimize_uniform(params, &init, 1e-12, 2000))
}

/// Best of `restarts` annealing runs; ties go to the lower restart index.
pub fn multiport_search(params: &GameParams, seed: u64, restarts: u64, config: &AnnealConfig) -> Result<MultiportOptimization> {
    if restarts == 0 {
        return Err(Error::Precondition("at least one restart"));
    }
    let mut best: Option<MultiportOptimization> = None;
    for index in 0..restarts {
        let run = multiport_anneal(params, seed, index, config)?;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    Ok(best.expect("restarts >= 1"))
}
