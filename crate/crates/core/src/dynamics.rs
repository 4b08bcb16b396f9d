//! Jaynes–Cummings dynamics of two iso-spectral modes coupled through one
//! qubit, in the bright/dark (±) mode picture where only b+ couples.
//!
//! Within each excitation block {|e, n, m⟩, |g, n+1, m⟩} the two-level
//! Hamiltonian is (Δ/2)σz + γ√(n+1)σx with Δ = ε − ω (ħ = 1), so the half
//! Rabi frequency is Ω_n = ½√(Δ² + 4γ²(n+1)). Populations and every reduced
//! density are frame-independent; amplitude phase conventions follow the
//! closed forms (detuned amplitudes carry e^{iΔt/2}, resonant ones are the
//! plain cos/−i·sin pair). The lab-frame propagator [`Propagator`] is the
//! verification oracle: phase-invariant quantities from both routes must
//! agree.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{BasisTag, FockIndex, PmTransform, TruncationPolicy, TwoModeDensity};

/// Physical parameters of the two-mode Jaynes–Cummings Hamiltonian (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCParams {
    /// Qubit–bright-mode coupling strength (frequency units).
    pub gamma: f64,
    /// Detuning Δ = ε − ω.
    pub delta: f64,
    /// Mode frequency ω (both modes iso-spectral).
    pub omega: f64,
    /// Qubit level splitting ε.
    pub epsilon: f64,
}

impl JCParams {
    /// Resonant parameters (Δ = 0) with ω = 1 as the reference frequency.
    pub fn resonant(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0, 1.0, 1.0)
    }

    /// Detuned parameters with ω = 1, ε = 1 + Δ.
    pub fn detuned(gamma: f64, delta: f64) -> Result<Self> {
        Self::new(gamma, delta, 1.0, 1.0 + delta)
    }

    pub fn new(gamma: f64, delta: f64, omega: f64, epsilon: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::InvalidParam(format!(
                "coupling gamma must be positive, got {gamma}"
            )));
        }
        let scale = epsilon.abs().max(omega.abs()).max(1.0);
        if (delta - (epsilon - omega)).abs() > 1e-9 * scale {
            return Err(Error::InvalidParam(format!(
                "delta = {delta} inconsistent with epsilon - omega = {}",
                epsilon - omega
            )));
        }
        Ok(Self {
            gamma,
            delta,
            omega,
            epsilon,
        })
    }
}

/// Half Rabi frequency Ω_n = ½√(Δ² + 4γ²(n+1)); γ√(n+1) at resonance.
pub fn rabi_frequency(n: u32, p: &JCParams) -> f64 {
    0.5 * (p.delta * p.delta + 4.0 * p.gamma * p.gamma * (n as f64 + 1.0)).sqrt()
}

/// The Rabi amplitude pair (c_n, s_n) at level `n` and time `t`.
///
/// |c|² + |s|² = 1. At Δ = 0 these are the real (cos Ω_n t, sin Ω_n t) of the
/// resonant closed form, with the −i factor on the s branch applied by the
/// caller; detuned amplitudes carry the e^{iΔt/2} phase of the off-resonant
/// closed form.
#[derive(Debug, Clone, Copy)]
pub struct Amplitudes {
    pub n: u32,
    pub t: f64,
    pub c: Complex64,
    pub s: Complex64,
}

pub fn amplitudes(n: u32, t: f64, p: &JCParams) -> Amplitudes {
    let om = rabi_frequency(n, p);
    let (sin, cos) = (om * t).sin_cos();
    if p.delta == 0.0 {
        Amplitudes {
            n,
            t,
            c: Complex64::new(cos, 0.0),
            s: Complex64::new(sin, 0.0),
        }
    } else {
        let phase = Complex64::from_polar(1.0, 0.5 * p.delta * t);
        let c = Complex64::new(cos, -0.5 * p.delta / om * sin) * phase;
        let s = Complex64::new(0.0, p.gamma * (n as f64 + 1.0).sqrt() / om * sin) * phase;
        Amplitudes { n, t, c, s }
    }
}

/// Qubit level of a [`QubitBosonState`] component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitLevel {
    Ground,
    Excited,
}

/// Pure state of qubit ⊗ two modes as amplitude vectors over the enumerated
/// Fock set, split by qubit level. Unit norm.
#[derive(Debug, Clone)]
pub struct QubitBosonState {
    policy: TruncationPolicy,
    basis: BasisTag,
    ground: DVector<Complex64>,
    excited: DVector<Complex64>,
}

impl QubitBosonState {
    pub fn new(
        policy: TruncationPolicy,
        basis: BasisTag,
        ground: DVector<Complex64>,
        excited: DVector<Complex64>,
    ) -> Result<Self> {
        let dim = policy.dimension();
        if ground.len() != dim || excited.len() != dim {
            return Err(Error::InvalidParam(
                "amplitude vectors do not match the policy dimension".into(),
            ));
        }
        Ok(Self {
            policy,
            basis,
            ground,
            excited,
        })
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn amplitude(&self, level: QubitLevel, f: FockIndex) -> Complex64 {
        match self.policy.index_of(f) {
            Some(i) => match level {
                QubitLevel::Ground => self.ground[i],
                QubitLevel::Excited => self.excited[i],
            },
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn norm(&self) -> f64 {
        (self.ground.norm_squared() + self.excited.norm_squared()).sqrt()
    }

    pub(crate) fn ground_part(&self) -> &DVector<Complex64> {
        &self.ground
    }

    pub(crate) fn excited_part(&self) -> &DVector<Complex64> {
        &self.excited
    }

    /// Trace out the qubit: ρ = ψ_g ψ_g† + ψ_e ψ_e†.
    pub fn reduced_boson_state(&self) -> TwoModeDensity {
        let rho = &self.ground * self.ground.adjoint() + &self.excited * self.excited.adjoint();
        TwoModeDensity::from_dense(self.policy, self.basis, rho)
            .expect("outer products are Hermitian by construction")
    }
}

/// Partial trace over the qubit of a pure state (spec name).
pub fn reduced_boson_state(psi: &QubitBosonState) -> TwoModeDensity {
    psi.reduced_boson_state()
}

/// Evolve |e, n1, n2⟩ (qubit excited, physical-mode occupations) for time t.
///
/// The state is expanded over the ± basis; each component evolves in its
/// bright-level block as c_{n+}|e,n+,n−⟩ − i·s_{n+}|g,n++1,n−⟩. The result is
/// tagged ModesPM and normalized by construction.
pub fn evolve_excited_basis(
    n1: u32,
    n2: u32,
    t: f64,
    p: &JCParams,
    policy: TruncationPolicy,
) -> Result<QubitBosonState> {
    let needed = n1 + n2 + 1;
    if needed > policy.max_total_quanta {
        return Err(Error::Truncation {
            needed,
            max: policy.max_total_quanta,
        });
    }
    let dim = policy.dimension();
    let mut ground = DVector::zeros(dim);
    let mut excited = DVector::zeros(dim);
    let tr = PmTransform::shared(n1 + n2);
    let total = n1 + n2;
    let minus_i = Complex64::new(0.0, -1.0);
    for n_plus in 0..=total {
        let a = tr.coefficient(n1, n2, n_plus);
        if a == 0.0 {
            continue;
        }
        let n_minus = total - n_plus;
        let amp = amplitudes(n_plus, t, p);
        let ie = policy.index_of(FockIndex::new(n_plus, n_minus)).unwrap();
        let ig = policy
            .index_of(FockIndex::new(n_plus + 1, n_minus))
            .unwrap();
        excited[ie] += a * amp.c;
        ground[ig] += a * (minus_i * amp.s);
    }
    QubitBosonState::new(policy, BasisTag::ModesPM, ground, excited)
}

/// Evolve |g, n1, n2⟩ (qubit in its ground state) for time t.
///
/// Each ± component with n+ ≥ 1 evolves in the block
/// {|g,n+,n−⟩, |e,n+−1,n−⟩} with amplitudes indexed n+−1; bright-vacuum
/// components |g,0,n−⟩ are stationary. The convention here keeps the
/// stationary sector at amplitude exactly 1 and uses the plain SU(2) block
/// propagator (no e^{iΔt/2} prefactor); squared moduli match the closed
/// forms unconditionally, and this is the frame in which the commensurate
/// gate comes out clean. The lab-frame phases it removes are reported by the
/// gate layer.
pub fn evolve_ground_basis(
    n1: u32,
    n2: u32,
    t: f64,
    p: &JCParams,
    policy: TruncationPolicy,
) -> Result<QubitBosonState> {
    let total = n1 + n2;
    if total > policy.max_total_quanta {
        return Err(Error::Truncation {
            needed: total,
            max: policy.max_total_quanta,
        });
    }
    let dim = policy.dimension();
    let mut ground = DVector::zeros(dim);
    let mut excited = DVector::zeros(dim);
    let tr = PmTransform::shared(total);
    for n_plus in 0..=total {
        let a = tr.coefficient(n1, n2, n_plus);
        if a == 0.0 {
            continue;
        }
        let n_minus = total - n_plus;
        let ig = policy.index_of(FockIndex::new(n_plus, n_minus)).unwrap();
        if n_plus == 0 {
            ground[ig] += Complex64::new(a, 0.0);
        } else {
            let level = n_plus - 1;
            let om = rabi_frequency(level, p);
            let (sin, cos) = (om * t).sin_cos();
            let g_fac = Complex64::new(cos, 0.5 * p.delta / om * sin);
            let e_fac = Complex64::new(0.0, -p.gamma * (n_plus as f64).sqrt() / om * sin);
            let ie = policy
                .index_of(FockIndex::new(n_plus - 1, n_minus))
                .unwrap();
            ground[ig] += a * g_fac;
            excited[ie] += a * e_fac;
        }
    }
    QubitBosonState::new(policy, BasisTag::ModesPM, ground, excited)
}

/// Thermal preparation of the two modes: 1/η = k_B T / ħω, the derived mean
/// occupation ⟨n⟩ and Bose–Einstein weights p_n, plus the truncation sized to
/// retain at least 1 − tail_tolerance of the two-mode thermal mass.
#[derive(Debug, Clone, Copy)]
pub struct ThermalSpec {
    eta_inv: f64,
    mean_n: f64,
    policy: TruncationPolicy,
}

impl ThermalSpec {
    /// Validates that `policy` retains enough mass for its tail tolerance;
    /// the error carries the required truncation.
    pub fn new(eta_inv: f64, policy: TruncationPolicy) -> Result<Self> {
        if eta_inv < 0.0 || !eta_inv.is_finite() {
            return Err(Error::InvalidParam(format!(
                "temperature ratio 1/eta must be finite and >= 0, got {eta_inv}"
            )));
        }
        let mean_n = mean_occupation(eta_inv);
        let required = required_max_quanta(mean_n, policy.tail_tolerance);
        if required > policy.max_total_quanta {
            return Err(Error::PolicyTooSmall {
                max: policy.max_total_quanta,
                required,
                tail_tolerance: policy.tail_tolerance,
            });
        }
        Ok(Self {
            eta_inv,
            mean_n,
            policy,
        })
    }

    /// Smallest policy retaining 1 − `tail_tolerance` of the thermal mass.
    pub fn sized_for(eta_inv: f64, tail_tolerance: f64) -> Result<Self> {
        if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
            return Err(Error::InvalidParam(format!(
                "tail tolerance must be in (0,1), got {tail_tolerance}"
            )));
        }
        if eta_inv < 0.0 || !eta_inv.is_finite() {
            return Err(Error::InvalidParam(format!(
                "temperature ratio 1/eta must be finite and >= 0, got {eta_inv}"
            )));
        }
        let mean_n = mean_occupation(eta_inv);
        let m = required_max_quanta(mean_n, tail_tolerance);
        Ok(Self {
            eta_inv,
            mean_n,
            policy: TruncationPolicy::with_tail_tolerance(m, tail_tolerance),
        })
    }

    pub fn eta_inv(&self) -> f64 {
        self.eta_inv
    }

    /// ⟨n⟩ = 1/(e^{1/eta_inv} − 1); 0 at zero temperature.
    pub fn mean_occupation(&self) -> f64 {
        self.mean_n
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    /// Bose–Einstein weight p_n = ⟨n⟩ⁿ / (1 + ⟨n⟩)^{n+1}.
    pub fn occupation_probability(&self, n: u32) -> f64 {
        let x = self.boltzmann_ratio();
        (1.0 - x) * x.powi(n as i32)
    }

    /// x = ⟨n⟩/(1+⟨n⟩) = e^{−ħω/k_BT}.
    fn boltzmann_ratio(&self) -> f64 {
        self.mean_n / (1.0 + self.mean_n)
    }

    /// Two-mode probability retained inside n1 + n2 ≤ max_total_quanta.
    pub fn retained_mass(&self) -> f64 {
        1.0 - two_mode_tail(self.boltzmann_ratio(), self.policy.max_total_quanta)
    }
}

fn mean_occupation(eta_inv: f64) -> f64 {
    if eta_inv == 0.0 {
        0.0
    } else {
        // e^{1/eta_inv} overflows to +inf for tiny eta_inv; 1/inf = 0 is the
        // right limit, so no special casing is needed.
        1.0 / ((1.0 / eta_inv).exp() - 1.0)
    }
}

/// Mass outside total quanta ≤ M for the product of two geometric
/// distributions with ratio x: tail(M) = x^{M+1}[(M+2) − (M+1)x].
fn two_mode_tail(x: f64, m: u32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mf = m as f64;
    x.powi(m as i32 + 1) * ((mf + 2.0) - (mf + 1.0) * x)
}

fn required_max_quanta(mean_n: f64, tail_tolerance: f64) -> u32 {
    let x = mean_n / (1.0 + mean_n);
    let mut m = 0u32;
    while two_mode_tail(x, m) > tail_tolerance {
        m += 1;
        assert!(m < 100_000, "thermal truncation does not converge");
    }
    m
}

/// Extended policy used for evolved thermal states: one quantum of headroom
/// for the s² population shift |n+⟩ → |n+ + 1⟩.
fn extended_policy(spec: &ThermalSpec) -> TruncationPolicy {
    TruncationPolicy::with_tail_tolerance(
        spec.policy.max_total_quanta + 1,
        spec.policy.tail_tolerance,
    )
}

/// The (truncated) two-mode thermal state, diagonal with weights p_{n1} p_{n2}.
///
/// The weight depends only on n1 + n2, so the matrix is identical in either
/// basis tag; it is returned tagged ModesPM, ready for evolution, on the
/// headroom-extended policy (ensemble support stays within the spec's own
/// truncation).
pub fn thermal_density(spec: &ThermalSpec) -> TwoModeDensity {
    let policy = extended_policy(spec);
    let x = spec.boltzmann_ratio();
    let base = (1.0 - x) * (1.0 - x);
    let weights: Vec<f64> = policy
        .states()
        .iter()
        .map(|s| {
            if s.total() <= spec.policy.max_total_quanta {
                base * x.powi(s.total() as i32)
            } else {
                0.0
            }
        })
        .collect();
    TwoModeDensity::from_diagonal(policy, BasisTag::ModesPM, weights)
        .expect("weights sized to the policy")
}

/// Evolved thermal ensemble (qubit initially excited), diagonal in the ±
/// basis: each |e, n+, n−⟩ contributes |c_{n+}|² on (n+, n−) and |s_{n+}|² on
/// (n+ + 1, n−).
pub fn evolve_thermal(spec: &ThermalSpec, t: f64, p: &JCParams) -> TwoModeDensity {
    let policy = extended_policy(spec);
    let weights = evolved_thermal_weights(spec, t, p);
    TwoModeDensity::from_diagonal(policy, BasisTag::ModesPM, weights)
        .expect("weights sized to the policy")
}

/// Diagonal ± weights of the evolved thermal ensemble on the extended policy.
pub(crate) fn evolved_thermal_weights(spec: &ThermalSpec, t: f64, p: &JCParams) -> Vec<f64> {
    let policy = extended_policy(spec);
    let m_ens = spec.policy.max_total_quanta;
    let x = spec.boltzmann_ratio();
    let base = (1.0 - x) * (1.0 - x);
    let mut d = vec![0.0; policy.dimension()];
    for n_plus in 0..=m_ens {
        let amp = amplitudes(n_plus, t, p);
        let c2 = amp.c.norm_sqr();
        let s2 = amp.s.norm_sqr();
        for n_minus in 0..=(m_ens - n_plus) {
            let w = base * x.powi((n_plus + n_minus) as i32);
            let stay = policy.index_of(FockIndex::new(n_plus, n_minus)).unwrap();
            let up = policy
                .index_of(FockIndex::new(n_plus + 1, n_minus))
                .unwrap();
            d[stay] += w * c2;
            d[up] += w * s2;
        }
    }
    d
}

/// Exact lab-frame propagator on the {g,e} ⊗ (± Fock) space, built from the
/// truncated Hamiltonian
///
///   H = (ε/2)σz + ω(n̂+ + n̂−) + γ(σ− b+† + σ+ b+)
///
/// and exponentiated through its Hermitian eigendecomposition, so it is
/// exact at any t and the decomposition is reused across times. H is block
/// diagonal over the total excitation number σ+σ− + n+ + n−; the blocks are
/// materialized separately and cross-block elements are exactly zero.
pub struct Propagator {
    policy: TruncationPolicy,
    sectors: Vec<Sector>,
}

struct Sector {
    /// (level, fock index, global index into the g-then-e layout)
    states: Vec<(QubitLevel, FockIndex, usize)>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(p: &JCParams, policy: TruncationPolicy) -> Self {
        let m = policy.max_total_quanta;
        let dim = policy.dimension();
        let mut sectors = Vec::new();
        for exc in 0..=(m + 1) {
            let mut states = Vec::new();
            if exc <= m {
                for n_plus in 0..=exc {
                    let f = FockIndex::new(n_plus, exc - n_plus);
                    states.push((QubitLevel::Ground, f, policy.index_of(f).unwrap()));
                }
            }
            if exc >= 1 && exc - 1 <= m {
                for n_plus in 0..=(exc - 1) {
                    let f = FockIndex::new(n_plus, exc - 1 - n_plus);
                    states.push((QubitLevel::Excited, f, dim + policy.index_of(f).unwrap()));
                }
            }
            if states.is_empty() {
                continue;
            }
            let n = states.len();
            let mut h = DMatrix::zeros(n, n);
            for (i, (lev, f, _)) in states.iter().enumerate() {
                h[(i, i)] = match lev {
                    QubitLevel::Ground => -0.5 * p.epsilon + p.omega * f.total() as f64,
                    QubitLevel::Excited => 0.5 * p.epsilon + p.omega * f.total() as f64,
                };
                if let QubitLevel::Excited = lev {
                    // couples to |g, n+ + 1, n−⟩ within the same sector
                    let partner = FockIndex::new(f.n1 + 1, f.n2);
                    if let Some(j) = states
                        .iter()
                        .position(|(l, g, _)| *l == QubitLevel::Ground && *g == partner)
                    {
                        let g = p.gamma * (f.n1 as f64 + 1.0).sqrt();
                        h[(i, j)] = g;
                        h[(j, i)] = g;
                    }
                }
            }
            // explicit tolerance: the default-epsilon QL can fail to
            // converge on sectors with degenerate diagonals
            let eig = h
                .try_symmetric_eigen(1e-13, 100_000)
                .expect("eigendecomposition must converge for Hermitian sectors");
            sectors.push(Sector {
                states,
                eigenvalues: eig.eigenvalues,
                eigenvectors: eig.eigenvectors,
            });
        }
        Propagator { policy, sectors }
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    /// Full unitary U(t) = e^{−iHt} over the g-then-e layout
    /// (index = fock index for g, dim + fock index for e).
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let full = 2 * self.policy.dimension();
        let mut u = DMatrix::zeros(full, full);
        for sec in &self.sectors {
            let n = sec.states.len();
            for a in 0..n {
                for b in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        let phase = Complex64::from_polar(1.0, -sec.eigenvalues[k] * t);
                        acc += sec.eigenvectors[(a, k)] * sec.eigenvectors[(b, k)] * phase;
                    }
                    u[(sec.states[a].2, sec.states[b].2)] = acc;
                }
            }
        }
        u
    }

    /// Apply U(t) to a state (must be tagged ModesPM and share the policy).
    pub fn evolve(&self, psi: &QubitBosonState, t: f64) -> Result<QubitBosonState> {
        if psi.basis() != BasisTag::ModesPM {
            return Err(Error::WrongBasis {
                expected: BasisTag::ModesPM,
                got: psi.basis(),
            });
        }
        if psi.policy() != self.policy {
            return Err(Error::InvalidParam(
                "state and propagator use different truncation policies".into(),
            ));
        }
        let dim = self.policy.dimension();
        let mut ground = DVector::zeros(dim);
        let mut excited = DVector::zeros(dim);
        for sec in &self.sectors {
            let n = sec.states.len();
            // x = Vᵀ ψ restricted to the sector
            let mut x = vec![Complex64::new(0.0, 0.0); n];
            for (i, (_, _, gi)) in sec.states.iter().enumerate() {
                let amp = if *gi < dim {
                    psi.ground_part()[*gi]
                } else {
                    psi.excited_part()[*gi - dim]
                };
                for k in 0..n {
                    x[k] += sec.eigenvectors[(i, k)] * amp;
                }
            }
            for k in 0..n {
                x[k] *= Complex64::from_polar(1.0, -sec.eigenvalues[k] * t);
            }
            for (i, (_, _, gi)) in sec.states.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += sec.eigenvectors[(i, k)] * x[k];
                }
                if *gi < dim {
                    ground[*gi] += acc;
                } else {
                    excited[*gi - dim] += acc;
                }
            }
        }
        QubitBosonState::new(self.policy, BasisTag::ModesPM, ground, excited)
    }
}

/// Build the lab-frame propagator (spec name for [`Propagator::new`]).
pub fn exact_propagator(p: &JCParams, policy: TruncationPolicy) -> Propagator {
    Propagator::new(p, policy)
}

/// Negativity oscillation frequency at large detuning: the exact 2Ω₀ and the
/// second-order estimate Δ + 2γ²/Δ.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveFrequency {
    pub exact: f64,
    pub approx: f64,
}

pub fn effective_frequency(p: &JCParams) -> Result<EffectiveFrequency> {
    if p.delta <= 0.0 {
        return Err(Error::InvalidParam(
            "the dispersive estimate needs Delta > 0".into(),
        ));
    }
    Ok(EffectiveFrequency {
        exact: (p.delta * p.delta + 4.0 * p.gamma * p.gamma).sqrt(),
        approx: p.delta + 2.0 * p.gamma * p.gamma / p.delta,
    })
}

/// Expand a (possibly superposed) set of 12-basis ground-qubit components
/// into a ±-tagged state vector.
pub(crate) fn ground_state_from_components(
    components: &[(FockIndex, Complex64)],
    policy: TruncationPolicy,
) -> Result<QubitBosonState> {
    let dim = policy.dimension();
    let mut ground: DVector<Complex64> = DVector::zeros(dim);
    let excited = DVector::zeros(dim);
    for (f, amp) in components {
        if f.total() > policy.max_total_quanta {
            return Err(Error::Truncation {
                needed: f.total(),
                max: policy.max_total_quanta,
            });
        }
        let tr = PmTransform::shared(f.total());
        for np in 0..=f.total() {
            let a = tr.coefficient(f.n1, f.n2, np);
            if a != 0.0 {
                let idx = policy
                    .index_of(FockIndex::new(np, f.total() - np))
                    .unwrap();
                ground[idx] += amp * a;
            }
        }
    }
    QubitBosonState::new(policy, BasisTag::ModesPM, ground, excited)
}

/// Whether the density is stored as a plain diagonal (tests check that the
/// evolved thermal ensemble stays in that form).
#[cfg(test)]
pub(crate) fn diagonal_weights(rho: &TwoModeDensity) -> Option<&[f64]> {
    match &rho.repr {
        crate::fock::Repr::Diagonal(w) => Some(w),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;
    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn rabi_frequency_examples() {
        let p = JCParams::resonant(1.0).unwrap();
        assert!((rabi_frequency(0, &p) - 1.0).abs() < 1e-15);

        // gate example: 4γ² = 7, Δ² = 2 gives 2Ω0 = 3, 2Ω1 = 4
        let p = JCParams::detuned(7f64.sqrt() / 2.0, SQRT2).unwrap();
        assert!((rabi_frequency(0, &p) - 1.5).abs() < 1e-14);
        assert!((rabi_frequency(1, &p) - 2.0).abs() < 1e-14);

        let p = JCParams::detuned(1.0, 2.0).unwrap();
        assert!((rabi_frequency(0, &p) - SQRT2).abs() < 1e-14);
    }

    #[test]
    fn rabi_frequency_matches_block_eigensplitting() {
        // oracle route: eigenvalues of the 2x2 block [[Δ/2, γ√(n+1)], [·, −Δ/2]]
        for (gamma, delta, n) in [(1.0, 2.0, 0u32), (0.7, 1.3, 3), (2.0, 0.5, 5)] {
            let p = JCParams::detuned(gamma, delta).unwrap();
            let g = gamma * (n as f64 + 1.0).sqrt();
            let h = DMatrix::from_row_slice(2, 2, &[delta / 2.0, g, g, -delta / 2.0]);
            let ev = h.symmetric_eigenvalues();
            let split = (ev[0] - ev[1]).abs();
            assert!((split - 2.0 * rabi_frequency(n, &p)).abs() < 1e-12);
        }
    }

    #[test]
    fn amplitudes_examples_and_normalization() {
        let p = JCParams::resonant(1.0).unwrap();
        let a = amplitudes(0, 0.0, &p);
        assert!((a.c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(a.s.norm() < 1e-15);

        let a = amplitudes(0, PI / 2.0, &p);
        assert!(a.c.norm() < 1e-12);
        assert!((a.s.norm() - 1.0).abs() < 1e-12);

        // detuned quarter period: |s|² = γ²/Ω² = 1/2 at γ=1, Δ=2
        let p = JCParams::detuned(1.0, 2.0).unwrap();
        let a = amplitudes(0, PI / (2.0 * SQRT2), &p);
        assert!((a.s.norm_sqr() - 0.5).abs() < 1e-12);
        assert!((a.c.norm_sqr() + a.s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_normalization_randomized() {
        // |c|² + |s|² = 1 for n ≤ 12 over a parameter sweep
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let gamma = 0.2 + 2.8 * next();
            let delta = 5.0 * next();
            let t = 10.0 * next();
            let p = JCParams::detuned(gamma, delta).unwrap();
            for n in 0..=12 {
                let a = amplitudes(n, t, &p);
                assert!((a.c.norm_sqr() + a.s.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn evolve_excited_vacuum_structure() {
        let p = JCParams::resonant(1.0).unwrap();
        let policy = TruncationPolicy::new(2);
        let t = 0.7;
        let psi = evolve_excited_basis(0, 0, t, &p, policy).unwrap();
        // c_0|e,0,0⟩ − i s_0|g,1,0⟩±
        let c = psi.amplitude(QubitLevel::Excited, FockIndex::new(0, 0));
        let s = psi.amplitude(QubitLevel::Ground, FockIndex::new(1, 0));
        assert!((c - Complex64::new(t.cos(), 0.0)).norm() < 1e-14);
        assert!((s - Complex64::new(0.0, -t.sin())).norm() < 1e-14);
        assert!((psi.norm() - 1.0).abs() < 1e-12);

        // t = 0 is the identity
        let psi0 = evolve_excited_basis(0, 0, 0.0, &p, policy).unwrap();
        let c0 = psi0.amplitude(QubitLevel::Excited, FockIndex::new(0, 0));
        assert!((c0 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn evolve_excited_requires_headroom() {
        let p = JCParams::resonant(1.0).unwrap();
        let policy = TruncationPolicy::new(2);
        assert!(matches!(
            evolve_excited_basis(1, 1, 0.1, &p, policy),
            Err(Error::Truncation { needed: 3, max: 2 })
        ));
    }

    #[test]
    fn evolve_ground_vacuum_is_stationary() {
        let p = JCParams::detuned(1.0, 1.5).unwrap();
        let policy = TruncationPolicy::new(2);
        for t in [0.0, 0.9, 4.3] {
            let psi = evolve_ground_basis(0, 0, t, &p, policy).unwrap();
            let g = psi.amplitude(QubitLevel::Ground, FockIndex::new(0, 0));
            assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn evolve_ground_single_photon_matches_block_form() {
        // |g,1,0⟩₁₂ → (c_0|g,1,0⟩± − i s_0|e,0,0⟩±)/√2 + |g,0,1⟩±/√2 at Δ=0
        let p = JCParams::resonant(1.0).unwrap();
        let policy = TruncationPolicy::new(2);
        let t = 1.1;
        let psi = evolve_ground_basis(1, 0, t, &p, policy).unwrap();
        let r = 0.5f64.sqrt();
        let g_bright = psi.amplitude(QubitLevel::Ground, FockIndex::new(1, 0));
        let g_dark = psi.amplitude(QubitLevel::Ground, FockIndex::new(0, 1));
        let e_vac = psi.amplitude(QubitLevel::Excited, FockIndex::new(0, 0));
        assert!((g_bright - Complex64::new(r * t.cos(), 0.0)).norm() < 1e-14);
        assert!((g_dark - Complex64::new(r, 0.0)).norm() < 1e-14);
        assert!((e_vac - Complex64::new(0.0, -r * t.sin())).norm() < 1e-14);
        // identity at t = 0
        let psi0 = evolve_ground_basis(1, 0, 0.0, &p, policy).unwrap();
        assert!((psi0.amplitude(QubitLevel::Ground, FockIndex::new(1, 0)).re - r).abs() < 1e-15);
        assert!((psi0.amplitude(QubitLevel::Ground, FockIndex::new(0, 1)).re - r).abs() < 1e-15);
    }

    #[test]
    fn reduced_state_of_product_is_projector() {
        let policy = TruncationPolicy::new(2);
        let dim = policy.dimension();
        let mut g: DVector<Complex64> = DVector::zeros(dim);
        g[policy.index_of(FockIndex::new(1, 0)).unwrap()] = Complex64::new(0.6, 0.0);
        g[policy.index_of(FockIndex::new(0, 1)).unwrap()] = Complex64::new(0.0, 0.8);
        let psi =
            QubitBosonState::new(policy, BasisTag::Modes12, g, DVector::zeros(dim)).unwrap();
        let rho = psi.reduced_boson_state();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        let a = FockIndex::new(1, 0);
        assert!((rho.entry(a, a).re - 0.36).abs() < 1e-12);
    }

    #[test]
    fn reduced_evolved_vacuum_spectrum() {
        // spectrum {0, 0, c0², s0²} and the §-form in the 1,2 basis
        let p = JCParams::resonant(1.0).unwrap();
        let policy = TruncationPolicy::new(2);
        let t = 0.8;
        let rho = evolve_excited_basis(0, 0, t, &p, policy)
            .unwrap()
            .reduced_boson_state();
        let rho12 = rho.change_basis();
        let (c2, s2) = (t.cos().powi(2), t.sin().powi(2));
        let v = FockIndex::new(0, 0);
        assert!((rho12.entry(v, v).re - c2).abs() < 1e-12);
        let a = FockIndex::new(1, 0);
        let b = FockIndex::new(0, 1);
        for (i, j) in [(a, a), (a, b), (b, a), (b, b)] {
            assert!((rho12.entry(i, j).re - 0.5 * s2).abs() < 1e-12);
        }
        let eigs = crate::eigh::hermitian_eigenvalues(&rho12.to_dense()).unwrap();
        let nonzero: Vec<f64> = eigs.iter().cloned().filter(|e| e.abs() > 1e-12).collect();
        assert_eq!(nonzero.len(), 2);
        assert!((nonzero[0] - c2.min(s2)).abs() < 1e-12);
        assert!((nonzero[1] - c2.max(s2)).abs() < 1e-12);
    }

    #[test]
    fn thermal_spec_mean_and_weights() {
        // ⟨n⟩ = 1 at 1/η = 1/ln 2, giving p_0 = 1/2, p_1 = 1/4
        let eta_inv = 1.0 / std::f64::consts::LN_2;
        let spec = ThermalSpec::sized_for(eta_inv, 1e-8).unwrap();
        assert!((spec.mean_occupation() - 1.0).abs() < 1e-12);
        assert!((spec.occupation_probability(0) - 0.5).abs() < 1e-12);
        assert!((spec.occupation_probability(1) - 0.25).abs() < 1e-12);
        assert!(spec.retained_mass() >= 1.0 - 1e-8);
    }

    #[test]
    fn thermal_tail_closed_form_matches_direct_sum() {
        for mean in [0.3, 1.0, 4.5] {
            let x: f64 = mean / (1.0 + mean);
            for m in [0u32, 3, 10] {
                let direct: f64 = (0..=m)
                    .map(|s| (s as f64 + 1.0) * (1.0 - x).powi(2) * x.powi(s as i32))
                    .sum();
                assert!((1.0 - direct - two_mode_tail(x, m)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn thermal_spec_rejects_undersized_policy() {
        let policy = TruncationPolicy::with_tail_tolerance(2, 1e-8);
        match ThermalSpec::new(5.0, policy) {
            Err(Error::PolicyTooSmall { required, .. }) => assert!(required > 2),
            other => panic!("expected PolicyTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn thermal_density_zero_temperature_is_vacuum() {
        let spec = ThermalSpec::sized_for(0.0, 1e-8).unwrap();
        let rho = thermal_density(&spec);
        assert!((rho.entry(FockIndex::new(0, 0), FockIndex::new(0, 0)).re - 1.0).abs() < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn thermal_density_basis_invariant() {
        let spec = ThermalSpec::sized_for(0.8, 1e-8).unwrap();
        let rho = thermal_density(&spec);
        let other = rho.change_basis();
        let policy = rho.policy();
        for s in policy.states() {
            for r in policy.states() {
                let d = (rho.entry(s, r) - other.entry(s, r)).norm();
                assert!(d < 1e-12, "entry ({s:?},{r:?}) differs by {d:e}");
            }
        }
    }

    #[test]
    fn evolve_thermal_t0_matches_thermal_density() {
        let p = JCParams::resonant(1.0).unwrap();
        let spec = ThermalSpec::sized_for(1.0, 1e-8).unwrap();
        let a = evolve_thermal(&spec, 0.0, &p);
        let b = thermal_density(&spec);
        for s in a.policy().states() {
            assert!((a.entry(s, s) - b.entry(s, s)).norm() < 1e-14);
        }
        assert!(a.trace() >= 1.0 - 1e-8);
    }

    #[test]
    fn evolve_thermal_is_diagonal_in_pm() {
        let p = JCParams::detuned(1.0, 1.0).unwrap();
        let spec = ThermalSpec::sized_for(0.5, 1e-8).unwrap();
        let rho = evolve_thermal(&spec, 1.3, &p);
        assert_eq!(rho.basis(), BasisTag::ModesPM);
        assert!(diagonal_weights(&rho).is_some());
    }

    #[test]
    fn propagator_is_unitary_and_identity_at_t0() {
        let p = JCParams::detuned(0.9, 0.7).unwrap();
        let policy = TruncationPolicy::new(4);
        let prop = Propagator::new(&p, policy);
        let u0 = prop.unitary(0.0);
        let full = 2 * policy.dimension();
        let id = DMatrix::<Complex64>::identity(full, full);
        assert!((&u0 - &id).norm() < 1e-12);

        let u = prop.unitary(2.31);
        let defect = (u.adjoint() * &u - id).map(|z| z.norm()).max();
        assert!(defect < 1e-10, "unitarity defect {defect:e}");
    }

    #[test]
    fn propagator_conserves_excitation_blocks() {
        let p = JCParams::detuned(1.2, 0.4).unwrap();
        let policy = TruncationPolicy::new(4);
        let prop = Propagator::new(&p, policy);
        let u = prop.unitary(1.7);
        let dim = policy.dimension();
        let states = policy.states();
        let exc = |idx: usize| -> u32 {
            if idx < dim {
                states[idx].total()
            } else {
                states[idx - dim].total() + 1
            }
        };
        for i in 0..2 * dim {
            for j in 0..2 * dim {
                if exc(i) != exc(j) {
                    assert!(u[(i, j)].norm() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn propagator_reproduces_resonant_amplitudes() {
        // the resonant vacuum column matches Eq.-(3) amplitudes up to a
        // global phase (compare squared moduli and the relative phase)
        let p = JCParams::resonant(1.0).unwrap();
        let policy = TruncationPolicy::new(3);
        let prop = Propagator::new(&p, policy);
        for t in [0.4, 1.3, 2.9] {
            let dim = policy.dimension();
            let mut e0: DVector<Complex64> = DVector::zeros(dim);
            e0[policy.index_of(FockIndex::new(0, 0)).unwrap()] = Complex64::new(1.0, 0.0);
            let psi0 =
                QubitBosonState::new(policy, BasisTag::ModesPM, DVector::zeros(dim), e0).unwrap();
            let psi = prop.evolve(&psi0, t).unwrap();
            let ce = psi.amplitude(QubitLevel::Excited, FockIndex::new(0, 0));
            let cg = psi.amplitude(QubitLevel::Ground, FockIndex::new(1, 0));
            assert!((ce.norm_sqr() - t.cos().powi(2)).abs() < 1e-10);
            assert!((cg.norm_sqr() - t.sin().powi(2)).abs() < 1e-10);
            // relative phase of the two branches is that of (cos, −i sin)
            if ce.norm() > 1e-6 && cg.norm() > 1e-6 {
                let rel = (cg / ce) / (Complex64::new(0.0, -t.sin() / t.cos()));
                assert!((rel - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn resonant_populations_have_rabi_period() {
        let p = JCParams::resonant(1.0).unwrap();
        let policy = TruncationPolicy::new(2);
        for t in [0.37, 1.1, 2.0] {
            let a = evolve_excited_basis(0, 0, t, &p, policy).unwrap();
            let b = evolve_excited_basis(0, 0, t + PI, &p, policy).unwrap();
            let pa = a
                .amplitude(QubitLevel::Excited, FockIndex::new(0, 0))
                .norm_sqr();
            let pb = b
                .amplitude(QubitLevel::Excited, FockIndex::new(0, 0))
                .norm_sqr();
            assert!((pa - pb).abs() < 1e-10);
        }
    }

    #[test]
    fn effective_frequency_values() {
        let p = JCParams::detuned(1.0, 2.0).unwrap();
        let f = effective_frequency(&p).unwrap();
        assert!((f.approx - 3.0).abs() < 1e-14);
        assert!((f.exact - 2.0 * SQRT2).abs() < 1e-14);

        // large detuning: approx/exact → 1
        let p = JCParams::detuned(1.0, 20.0).unwrap();
        let f = effective_frequency(&p).unwrap();
        assert!((f.approx / f.exact - 1.0).abs() < 0.005);

        let p = JCParams::resonant(1.0).unwrap();
        assert!(effective_frequency(&p).is_err());
    }
}
