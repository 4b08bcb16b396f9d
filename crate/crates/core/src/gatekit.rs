//! Two-qubit gate design from commensurable Rabi frequencies.
//!
//! Encoded ground-qubit states evolve per bright-mode block; a gate needs a
//! time t_g at which every populated block has completed half or full Rabi
//! cycles: Ω₀ t_g = (2N+1)π and Ω₁ t_g = 2Mπ. With q0 = 2Ω₀ and q1 = 2Ω₁
//! rational, clearing denominators turns the two congruences into exact
//! integer parity conditions, so the solver works in rational arithmetic
//! throughout (floating-point modular tests are brittle).
//!
//! The projected 4×4 matrix is computed in the frame in which bright-vacuum
//! components are exactly stationary (the frame of the evolution table the
//! encodings come from). Relative to the lab interaction picture the
//! evolving sector carries an extra phase e^{iΔt/2}; that residual is
//! physical, is not fixed by the commensurability conditions, and is
//! reported on the [`GateMatrix`] rather than silently absorbed — the ideal
//! gate is realized exactly only when Δ·t_g/2 ≡ 0 (mod 2π).

use nalgebra::{DVector, Matrix4};
use num_complex::Complex64;
use num_rational::Rational64;

use crate::dynamics::{
    ground_state_from_components, rabi_frequency, JCParams, Propagator, QubitBosonState,
    QubitLevel,
};
use crate::error::{Error, Result};
use crate::fock::{FockIndex, PmTransform, TruncationPolicy};

const PI: f64 = std::f64::consts::PI;

/// How logical qubits are laid onto the two-mode Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalEncoding {
    /// |ab⟩_L = |g, n1 = a, n2 = b⟩ with a, b ∈ {0, 1}.
    Direct12,
    /// Bell virtual bipartition: the computational basis is the Bell one,
    /// ordered so the bright-coupled (symmetric) single-photon state is
    /// |11⟩_L — the state that picks up the controlled π phase:
    /// |00⟩_L = (|g,0,0⟩+|g,1,1⟩)/√2, |01⟩_L = (|g,0,0⟩−|g,1,1⟩)/√2,
    /// |10⟩_L = (|g,0,1⟩−|g,1,0⟩)/√2, |11⟩_L = (|g,0,1⟩+|g,1,0⟩)/√2.
    BellVirtual,
}

impl LogicalEncoding {
    /// The four encoded basis vectors as 1,2-basis components.
    pub fn basis_vectors(&self) -> [Vec<(FockIndex, Complex64)>; 4] {
        let one = Complex64::new(1.0, 0.0);
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let f = FockIndex::new;
        match self {
            LogicalEncoding::Direct12 => [
                vec![(f(0, 0), one)],
                vec![(f(0, 1), one)],
                vec![(f(1, 0), one)],
                vec![(f(1, 1), one)],
            ],
            LogicalEncoding::BellVirtual => [
                vec![(f(0, 0), r), (f(1, 1), r)],
                vec![(f(0, 0), r), (f(1, 1), -r)],
                vec![(f(0, 1), r), (f(1, 0), -r)],
                vec![(f(0, 1), r), (f(1, 0), r)],
            ],
        }
    }
}

/// Parameters realizing the commensurability gate, with the congruence
/// witnesses kept in exact rational form.
#[derive(Debug, Clone)]
pub struct GateSolution {
    /// q0 = 2Ω₀.
    pub q0: Rational64,
    /// q1 = 2Ω₁.
    pub q1: Rational64,
    /// γ = ½√(q1² − q0²).
    pub gamma: f64,
    /// Δ = √(2q0² − q1²).
    pub delta: f64,
    /// Smallest positive gate time.
    pub t_gate: f64,
    /// t_gate / π as an exact rational.
    pub t_gate_over_pi: Rational64,
    /// Ω₀ t_gate = (2N+1)π.
    pub big_n: i64,
    /// Ω₁ t_gate = 2Mπ.
    pub big_m: i64,
}

impl GateSolution {
    /// The Hamiltonian parameters this solution pins down (ω = 1 reference).
    pub fn params(&self) -> JCParams {
        JCParams::detuned(self.gamma, self.delta).expect("solver produced gamma > 0")
    }
}

/// Solve Eq.-style parameter inversion: given rational q0 = 2Ω₀, q1 = 2Ω₁,
/// return γ, Δ and the smallest t_g > 0 with Ω₀t_g an odd and Ω₁t_g an even
/// multiple of π, found exactly on the congruence lattice.
///
/// Requirements: q1 > q0 (real γ), 2q0² ≥ q1² (real Δ), and the reduced
/// ratio q0/q1 = p/q must have p odd and q even — otherwise the parities can
/// never match and the error names the obstruction.
pub fn solve_gate_params(q0: Rational64, q1: Rational64) -> Result<GateSolution> {
    if q0 <= Rational64::from_integer(0) || q1 <= Rational64::from_integer(0) {
        return Err(Error::InvalidParam(format!(
            "q0 and q1 must be positive, got {q0} and {q1}"
        )));
    }
    if q1 <= q0 {
        return Err(Error::GateConstraint(format!(
            "q1 = {q1} must exceed q0 = {q0}: gamma = sqrt(q1^2 - q0^2)/2 would not be real"
        )));
    }
    let two = Rational64::from_integer(2);
    if two * q0 * q0 < q1 * q1 {
        return Err(Error::GateConstraint(format!(
            "2 q0^2 - q1^2 = {} is negative: delta would not be real",
            two * q0 * q0 - q1 * q1
        )));
    }
    let ratio = q0 / q1;
    let (p, q) = (*ratio.numer(), *ratio.denom());
    if p % 2 == 0 {
        return Err(Error::GateConstraint(format!(
            "reduced ratio q0/q1 = {p}/{q} has an even numerator: whenever \
             Omega1*t is an even multiple of pi, Omega0*t is an even multiple too"
        )));
    }
    if q % 2 == 1 {
        return Err(Error::GateConstraint(format!(
            "reduced ratio q0/q1 = {p}/{q} has both terms odd: whenever \
             Omega0*t is an odd multiple of pi, Omega1*t is odd as well"
        )));
    }

    // The congruences Ω₀t = (2N+1)π, Ω₁t = 2Mπ have solutions
    // t/π = 2pk/q0 with k odd; k = 1 is the smallest. Verify exactly.
    let t_over_pi = Rational64::from_integer(2 * p) / q0;
    let w0 = q0 / two * t_over_pi;
    let w1 = q1 / two * t_over_pi;
    assert!(w0.is_integer() && w0.numer() % 2 == 1, "odd congruence");
    assert!(w1.is_integer() && w1.numer() % 2 == 0, "even congruence");
    let big_n = (w0.to_integer() - 1) / 2;
    let big_m = w1.to_integer() / 2;

    let q0f = rational_to_f64(q0);
    let q1f = rational_to_f64(q1);
    let gamma = 0.5 * (q1f * q1f - q0f * q0f).sqrt();
    let delta = (2.0 * q0f * q0f - q1f * q1f).sqrt();
    Ok(GateSolution {
        q0,
        q1,
        gamma,
        delta,
        t_gate: rational_to_f64(t_over_pi) * PI,
        t_gate_over_pi: t_over_pi,
        big_n,
        big_m,
    })
}

fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Rabi amplitude magnitudes of the two populated blocks at a candidate gate
/// time, for checking whether the time closes both cycles
/// (|s_n| = γ√(n+1)/Ω_n · |sin Ω_n t| must vanish and the cosines must come
/// out −1 and +1).
#[derive(Debug, Clone, Copy)]
pub struct GateTimeProbe {
    pub s0_magnitude: f64,
    pub s1_magnitude: f64,
    pub cos0: f64,
    pub cos1: f64,
    pub realizes_gate: bool,
}

pub fn probe_gate_time(sol: &GateSolution, t: f64) -> GateTimeProbe {
    let p = sol.params();
    let om0 = rabi_frequency(0, &p);
    let om1 = rabi_frequency(1, &p);
    let s0 = (p.gamma / om0 * (om0 * t).sin()).abs();
    let s1 = (p.gamma * 2f64.sqrt() / om1 * (om1 * t).sin()).abs();
    let cos0 = (om0 * t).cos();
    let cos1 = (om1 * t).cos();
    GateTimeProbe {
        s0_magnitude: s0,
        s1_magnitude: s1,
        cos0,
        cos1,
        realizes_gate: s0 < 1e-9 && s1 < 1e-9 && cos0 < 0.0 && cos1 > 0.0,
    }
}

/// Projected 4×4 gate matrix (column i = evolved |i⟩_L expanded over the
/// encoded basis, no renormalization) plus leakage diagnostics.
#[derive(Debug, Clone)]
pub struct GateMatrix {
    pub matrix: Matrix4<Complex64>,
    /// max over basis states of (1 − squared norm of the projection back
    /// onto the encoded subspace).
    pub leakage: f64,
    /// Residual phase Δ·t/2 (mod 2π) carried by the evolving sector relative
    /// to the stationary one in the lab interaction picture.
    pub sector_phase: f64,
    /// Whether that residual vanishes, i.e. the gate holds with no caveat.
    pub sector_phase_trivial: bool,
}

/// Gate matrix at the solution's own gate time.
pub fn logical_gate_matrix(
    sol: &GateSolution,
    encoding: LogicalEncoding,
    policy: TruncationPolicy,
) -> Result<GateMatrix> {
    logical_gate_matrix_at(sol, encoding, policy, sol.t_gate)
}

/// Gate matrix at an arbitrary time t: each encoded basis vector is
/// propagated with the lab-frame propagator, the known diagonal free/sector
/// phase operator is removed, and the result is projected onto the encoded
/// subspace.
pub fn logical_gate_matrix_at(
    sol: &GateSolution,
    encoding: LogicalEncoding,
    policy: TruncationPolicy,
    t: f64,
) -> Result<GateMatrix> {
    if policy.max_total_quanta < 3 {
        return Err(Error::Truncation {
            needed: 3,
            max: policy.max_total_quanta,
        });
    }
    let p = sol.params();
    let prop = Propagator::new(&p, policy);
    let basis = encoding.basis_vectors();
    let tr = PmTransform::shared(policy.max_total_quanta);

    let mut matrix = Matrix4::zeros();
    let mut leakage = 0.0f64;
    for (col, components) in basis.iter().enumerate() {
        let psi0 = ground_state_from_components(components, policy)?;
        let lab = prop.evolve(&psi0, t)?;
        let clean = remove_sector_phases(&lab, &p, t);
        let ground12 = pm_ground_to_modes12(&clean, &tr);
        let mut in_code = 0.0;
        for (row, target) in basis.iter().enumerate() {
            let mut overlap = Complex64::new(0.0, 0.0);
            for (f, amp) in target {
                let idx = policy.index_of(*f).unwrap();
                overlap += amp.conj() * ground12[idx];
            }
            matrix[(row, col)] = overlap;
            in_code += overlap.norm_sqr();
        }
        leakage = leakage.max(1.0 - in_code);
    }

    let sector_phase = (0.5 * sol.delta * t).rem_euclid(2.0 * PI);
    let sector_phase_trivial =
        sector_phase.min(2.0 * PI - sector_phase) < 1e-9;
    Ok(GateMatrix {
        matrix,
        leakage,
        sector_phase,
        sector_phase_trivial,
    })
}

/// Undo the diagonal phases the lab propagator applies on top of the
/// evolution table: every state in the total-excitation sector E carries
/// e^{−iω(E−½)t}, and stationary bright-vacuum g-states carry a further
/// e^{iΔt/2}. What remains is exactly the blockwise form of
/// [`evolve_ground_basis`].
fn remove_sector_phases(psi: &QubitBosonState, p: &JCParams, t: f64) -> QubitBosonState {
    let policy = psi.policy();
    let dim = policy.dimension();
    let states = policy.states();
    let mut ground: DVector<Complex64> = DVector::zeros(dim);
    let mut excited: DVector<Complex64> = DVector::zeros(dim);
    for (i, f) in states.iter().enumerate() {
        let g_amp = psi.amplitude(QubitLevel::Ground, *f);
        if g_amp.norm_sqr() > 0.0 {
            let sector = f.total() as f64;
            let mut phase = -p.omega * (sector - 0.5) * t;
            if f.n1 == 0 {
                phase += 0.5 * p.delta * t;
            }
            ground[i] = g_amp * Complex64::from_polar(1.0, -phase);
        }
        let e_amp = psi.amplitude(QubitLevel::Excited, *f);
        if e_amp.norm_sqr() > 0.0 {
            let sector = f.total() as f64 + 1.0;
            let phase = -p.omega * (sector - 0.5) * t;
            excited[i] = e_amp * Complex64::from_polar(1.0, -phase);
        }
    }
    QubitBosonState::new(policy, psi.basis(), ground, excited).expect("same policy")
}

/// Ground-sector amplitudes rotated from the ± to the 1,2 basis, blockwise.
fn pm_ground_to_modes12(psi: &QubitBosonState, tr: &PmTransform) -> DVector<Complex64> {
    let policy = psi.policy();
    let dim = policy.dimension();
    let mut out: DVector<Complex64> = DVector::zeros(dim);
    let mut offset = 0usize;
    for n in 0..=policy.max_total_quanta {
        let size = n as usize + 1;
        let t = tr.block(n);
        for r in 0..size {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..size {
                let amp = psi.ground_part()[offset + k];
                if amp.norm_sqr() > 0.0 {
                    acc += t[(r, k)] * amp;
                }
            }
            out[offset + r] = acc;
        }
        offset += size;
    }
    out
}

/// The two target unitaries of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateTarget {
    /// Swap combined with a π phase on the exchanged pair
    /// (the direct-encoding gate U).
    SwapWithPhase,
    /// Controlled π-phase shift diag(1,1,1,−1)
    /// (the Bell-virtual-bipartition gate U′).
    ControlledPiPhase,
}

impl GateTarget {
    pub fn matrix(&self) -> Matrix4<Complex64> {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            GateTarget::SwapWithPhase => Matrix4::from_row_slice(&[
                o, z, z, z, //
                z, z, -o, z, //
                z, -o, z, z, //
                z, z, z, o,
            ]),
            GateTarget::ControlledPiPhase => Matrix4::from_diagonal(&nalgebra::Vector4::new(
                o, o, o, -o,
            )),
        }
    }
}

/// Global-phase-invariant fidelity |Tr(target† m)|/4 plus the per-state
/// phase profile of m after the best global phase is factored out, so
/// Δ-induced sector phases stay visible instead of hidden.
#[derive(Debug, Clone)]
pub struct FidelityReport {
    pub fidelity: f64,
    pub global_phase: f64,
    /// arg of each column's dominant entry minus the global phase, in
    /// (−π, π].
    pub phase_profile: [f64; 4],
    /// Set when the gate matrix came with leakage above 1e-6; the fidelity
    /// is still reported.
    pub leakage_flagged: bool,
}

pub fn gate_fidelity(m: &Matrix4<Complex64>, target: GateTarget, leakage: f64) -> FidelityReport {
    let tmat = target.matrix();
    let overlap = (tmat.adjoint() * m).trace();
    let fidelity = overlap.norm() / 4.0;
    let global_phase = if overlap.norm() > 1e-12 {
        overlap.arg()
    } else {
        0.0
    };
    let mut phase_profile = [0.0f64; 4];
    for col in 0..4 {
        let mut best = 0usize;
        for row in 1..4 {
            if m[(row, col)].norm() > m[(best, col)].norm() {
                best = row;
            }
        }
        let raw = if m[(best, col)].norm() > 1e-12 {
            m[(best, col)].arg() - global_phase
        } else {
            0.0
        };
        phase_profile[col] = wrap_angle(raw);
    }
    FidelityReport {
        fidelity,
        global_phase,
        phase_profile,
        leakage_flagged: leakage > 1e-6,
    }
}

fn wrap_angle(a: f64) -> f64 {
    let mut x = a.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

/// State of qubit ⊗ n iso-spectral modes restricted to the single-excitation
/// sector reachable from |e, 0, …, 0⟩ under symmetric coupling γ per mode.
#[derive(Debug, Clone)]
pub struct WState {
    pub n_modes: u32,
    /// Amplitude on |e, 0, …, 0⟩.
    pub excited_amplitude: Complex64,
    /// Amplitudes on |g, 1_i⟩ for each mode i.
    pub mode_amplitudes: Vec<Complex64>,
}

impl WState {
    pub fn norm(&self) -> f64 {
        (self.excited_amplitude.norm_sqr()
            + self
                .mode_amplitudes
                .iter()
                .map(|a| a.norm_sqr())
                .sum::<f64>())
        .sqrt()
    }

    /// Squared overlap with |g⟩ ⊗ (1/√n) Σ_i |0…1_i…0⟩.
    pub fn fidelity_to_w(&self) -> f64 {
        let n = self.n_modes as f64;
        self.mode_amplitudes
            .iter()
            .sum::<Complex64>()
            .scale(1.0 / n.sqrt())
            .norm_sqr()
    }
}

/// Evolve |e, 0, …, 0⟩ under the n-mode resonant Hamiltonian. Only the
/// bright mode b+ = n^{−1/2} Σ b_i couples, with effective strength γ√n, so
/// the dynamics is a single two-level block: at the full-transfer time
/// π/(2γ√n) the excitation sits entirely in the bright mode, which is the
/// n-mode W state.
pub fn w_state(n_modes: u32, t: f64, gamma: f64) -> Result<WState> {
    if n_modes < 2 {
        return Err(Error::InvalidParam(format!(
            "W-state preparation needs at least 2 modes, got {n_modes}"
        )));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidParam(format!(
            "coupling gamma must be positive, got {gamma}"
        )));
    }
    let omega_bright = gamma * (n_modes as f64).sqrt();
    let (sin, cos) = (omega_bright * t).sin_cos();
    let per_mode = Complex64::new(0.0, -sin / (n_modes as f64).sqrt());
    Ok(WState {
        n_modes,
        excited_amplitude: Complex64::new(cos, 0.0),
        mode_amplitudes: vec![per_mode; n_modes as usize],
    })
}

/// Time of complete excitation transfer into the bright mode.
pub fn w_full_transfer_time(n_modes: u32, gamma: f64) -> Result<f64> {
    if n_modes < 2 || !(gamma > 0.0) {
        return Err(Error::InvalidParam(
            "need n_modes >= 2 and gamma > 0".into(),
        ));
    }
    Ok(0.5 * PI / (gamma * (n_modes as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolve_ground_basis;
    use nalgebra::DMatrix;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn lab_route_with_phases_removed_matches_block_evolution() {
        // dual route: lab propagator followed by the documented diagonal
        // phase removal must reproduce the constructive blockwise evolution
        // component by component
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let p = sol.params();
        let policy = TruncationPolicy::new(4);
        let prop = Propagator::new(&p, policy);
        for t in [0.0, 0.4, 1.9, sol.t_gate] {
            for (n1, n2) in [(0u32, 0u32), (1, 0), (0, 1), (1, 1)] {
                let one = Complex64::new(1.0, 0.0);
                let psi0 = ground_state_from_components(
                    &[(FockIndex::new(n1, n2), one)],
                    policy,
                )
                .unwrap();
                let lab = prop.evolve(&psi0, t).unwrap();
                let clean = remove_sector_phases(&lab, &p, t);
                let direct = evolve_ground_basis(n1, n2, t, &p, policy).unwrap();
                for f in policy.states() {
                    let dg = (clean.amplitude(QubitLevel::Ground, f)
                        - direct.amplitude(QubitLevel::Ground, f))
                    .norm();
                    let de = (clean.amplitude(QubitLevel::Excited, f)
                        - direct.amplitude(QubitLevel::Excited, f))
                    .norm();
                    assert!(
                        dg < 1e-10 && de < 1e-10,
                        "({n1},{n2}) t={t} component {f:?}: dg={dg:e} de={de:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn gate_params_for_three_four() {
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        assert!((sol.gamma - 7f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((sol.delta - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sol.t_gate_over_pi, rat(2, 1));
        assert_eq!(sol.big_n, 1);
        assert_eq!(sol.big_m, 2);
        // derived parameters reproduce the requested Rabi frequencies
        let p = sol.params();
        assert!((rabi_frequency(0, &p) - 1.5).abs() < 1e-12);
        assert!((rabi_frequency(1, &p) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gate_constraint_violations() {
        assert!(matches!(
            solve_gate_params(rat(4, 1), rat(4, 1)),
            Err(Error::GateConstraint(_))
        ));
        assert!(matches!(
            solve_gate_params(rat(3, 1), rat(5, 1)),
            Err(Error::GateConstraint(_))
        ));
        // reduced ratio 2/3: even numerator
        assert!(matches!(
            solve_gate_params(rat(2, 1), rat(3, 1)),
            Err(Error::GateConstraint(_))
        ));
        // reduced ratio 5/7: both odd
        assert!(matches!(
            solve_gate_params(rat(5, 1), rat(7, 1)),
            Err(Error::GateConstraint(_))
        ));
    }

    #[test]
    fn congruence_witnesses_are_exact() {
        for (q0, q1) in [(rat(3, 1), rat(4, 1)), (rat(5, 2), rat(16, 5)), (rat(7, 3), rat(8, 3))] {
            let sol = match solve_gate_params(q0, q1) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let w0 = sol.q0 / rat(2, 1) * sol.t_gate_over_pi;
            let w1 = sol.q1 / rat(2, 1) * sol.t_gate_over_pi;
            assert!(w0.is_integer() && w0.to_integer() % 2 == 1);
            assert!(w1.is_integer() && w1.to_integer() % 2 == 0);
            assert_eq!(w0.to_integer(), 2 * sol.big_n + 1);
            assert_eq!(w1.to_integer(), 2 * sol.big_m);
        }
    }

    #[test]
    fn direct_encoding_realizes_swap_with_phase() {
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let policy = TruncationPolicy::new(4);
        let gm = logical_gate_matrix(&sol, LogicalEncoding::Direct12, policy).unwrap();
        assert!(gm.leakage <= 1e-9, "leakage {}", gm.leakage);
        let target = GateTarget::SwapWithPhase.matrix();
        for r in 0..4 {
            for c in 0..4 {
                assert!(
                    (gm.matrix[(r, c)].norm() - target[(r, c)].norm()).abs() < 1e-6,
                    "entry ({r},{c}): |{}| vs |{}|",
                    gm.matrix[(r, c)],
                    target[(r, c)]
                );
            }
        }
        let rep = gate_fidelity(&gm.matrix, GateTarget::SwapWithPhase, gm.leakage);
        assert!((rep.fidelity - 1.0).abs() < 1e-9);
        assert!(!rep.leakage_flagged);
        // Δ t_g/2 = √2 π is a genuine residual for this solution
        assert!(!gm.sector_phase_trivial);
        assert!((gm.sector_phase - (2f64.sqrt() * PI).rem_euclid(2.0 * PI)).abs() < 1e-9);
    }

    #[test]
    fn bell_encoding_realizes_controlled_pi_phase() {
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let policy = TruncationPolicy::new(4);
        let gm = logical_gate_matrix(&sol, LogicalEncoding::BellVirtual, policy).unwrap();
        assert!(gm.leakage <= 1e-9);
        // magnitudes diagonal
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { 1.0 } else { 0.0 };
                assert!(
                    (gm.matrix[(r, c)].norm() - want).abs() < 1e-6,
                    "entry ({r},{c}) = {}",
                    gm.matrix[(r, c)]
                );
            }
        }
        let rep = gate_fidelity(&gm.matrix, GateTarget::ControlledPiPhase, gm.leakage);
        assert!((rep.fidelity - 1.0).abs() < 1e-9);
        // (4,4) carries the π after factoring the global phase
        assert!(rep.phase_profile[0].abs() < 1e-9);
        assert!(rep.phase_profile[1].abs() < 1e-9);
        assert!(rep.phase_profile[2].abs() < 1e-9);
        assert!((rep.phase_profile[3].abs() - PI).abs() < 1e-9);
    }

    #[test]
    fn gate_matrix_at_time_zero_is_identity() {
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let policy = TruncationPolicy::new(4);
        for enc in [LogicalEncoding::Direct12, LogicalEncoding::BellVirtual] {
            let gm = logical_gate_matrix_at(&sol, enc, policy, 0.0).unwrap();
            assert!(gm.leakage <= 1e-12);
            let id = Matrix4::<Complex64>::identity();
            assert!((gm.matrix - id).norm() < 1e-10);
        }
    }

    #[test]
    fn direct_encoding_leaks_at_generic_times() {
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let policy = TruncationPolicy::new(4);
        let gm =
            logical_gate_matrix_at(&sol, LogicalEncoding::Direct12, policy, 0.3 * sol.t_gate)
                .unwrap();
        assert!(gm.leakage > 1e-3, "expected leakage, got {}", gm.leakage);
    }

    #[test]
    fn gate_rows_and_columns_have_single_unit_entry() {
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let policy = TruncationPolicy::new(4);
        for enc in [LogicalEncoding::Direct12, LogicalEncoding::BellVirtual] {
            let gm = logical_gate_matrix(&sol, enc, policy).unwrap();
            for k in 0..4 {
                let row_max = (0..4).map(|c| gm.matrix[(k, c)].norm()).fold(0.0, f64::max);
                let col_max = (0..4).map(|r| gm.matrix[(r, k)].norm()).fold(0.0, f64::max);
                assert!(row_max >= 1.0 - 1e-6);
                assert!(col_max >= 1.0 - 1e-6);
            }
        }
    }

    #[test]
    fn fidelity_is_global_phase_invariant() {
        let u = GateTarget::ControlledPiPhase.matrix();
        let rep = gate_fidelity(&u, GateTarget::ControlledPiPhase, 0.0);
        assert!((rep.fidelity - 1.0).abs() < 1e-12);
        let theta = 0.83;
        let rotated = u.map(|z| z * Complex64::from_polar(1.0, theta));
        let rep = gate_fidelity(&rotated, GateTarget::ControlledPiPhase, 0.0);
        assert!((rep.fidelity - 1.0).abs() < 1e-12);
        assert!((rep.global_phase - theta).abs() < 1e-9);
    }

    #[test]
    fn printed_gate_time_pi_fails_the_first_congruence() {
        // the solver's smallest time is 2π; t = π leaves the first block
        // mid-cycle (|sin Ω₀π| = 1)
        let sol = solve_gate_params(rat(3, 1), rat(4, 1)).unwrap();
        let probe = probe_gate_time(&sol, PI);
        assert!(probe.s0_magnitude > 0.5);
        assert!(!probe.realizes_gate);
        let at_tg = probe_gate_time(&sol, sol.t_gate);
        assert!(at_tg.realizes_gate);
        assert!(at_tg.s0_magnitude < 1e-12 && at_tg.s1_magnitude < 1e-12);
    }

    #[test]
    fn w_state_examples() {
        // t = 0 and full transfer for n = 2
        let w0 = w_state(2, 0.0, 1.0).unwrap();
        assert!((w0.excited_amplitude.re - 1.0).abs() < 1e-15);
        let t = w_full_transfer_time(2, 1.0).unwrap();
        let w = w_state(2, t, 1.0).unwrap();
        assert!((w.fidelity_to_w() - 1.0).abs() < 1e-12);
        assert!((w.norm() - 1.0).abs() < 1e-12);
        let r = 0.5f64.sqrt();
        for amp in &w.mode_amplitudes {
            assert!((amp.norm() - r).abs() < 1e-12);
        }
        assert!(w_state(1, 0.0, 1.0).is_err());
    }

    #[test]
    fn w_state_matches_full_hamiltonian_oracle() {
        // oracle: exponentiate the (1+n)-dim single-excitation block with
        // per-mode coupling γ directly
        for n in 2..=5u32 {
            let gamma = 0.8;
            let dim = 1 + n as usize;
            let mut h = DMatrix::<f64>::zeros(dim, dim);
            for i in 1..dim {
                h[(0, i)] = gamma;
                h[(i, 0)] = gamma;
            }
            let eig = h.try_symmetric_eigen(1e-13, 100_000).unwrap();
            for t in [0.3, 0.9, w_full_transfer_time(n, gamma).unwrap()] {
                let mut col = vec![Complex64::new(0.0, 0.0); dim];
                for a in 0..dim {
                    for k in 0..dim {
                        col[a] += eig.eigenvectors[(a, k)]
                            * eig.eigenvectors[(0, k)]
                            * Complex64::from_polar(1.0, -eig.eigenvalues[k] * t);
                    }
                }
                let w = w_state(n, t, gamma).unwrap();
                assert!((w.excited_amplitude - col[0]).norm() < 1e-12);
                for i in 0..n as usize {
                    assert!((w.mode_amplitudes[i] - col[1 + i]).norm() < 1e-12);
                }
            }
        }
    }
}
