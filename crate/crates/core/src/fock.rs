//! Truncated two-mode Fock space: basis enumeration, the 1,2 ↔ ± mode
//! transform, and partial transposition.
//!
//! The space is truncated by *total* quanta n1 + n2 ≤ M because the dynamics
//! conserves the total excitation number; this keeps matrices small and makes
//! the conserved-quanta block structure exact. States are enumerated
//! lexicographically by (total quanta, n1) so matrices are reproducible
//! bit-for-bit across runs.

use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Occupation pair of the two modes.
///
/// The same type indexes both the physical (1,2) basis and the ± basis of
/// bright/dark modes b± = (b1 ± b2)/√2; read the fields as (n+, n−) there.
/// Which basis applies is tracked by [`BasisTag`] on the enclosing object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockIndex {
    pub n1: u32,
    pub n2: u32,
}

impl FockIndex {
    pub fn new(n1: u32, n2: u32) -> Self {
        Self { n1, n2 }
    }

    /// Total quanta n1 + n2.
    pub fn total(&self) -> u32 {
        self.n1 + self.n2
    }
}

/// Which two-mode basis a state or density is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Physical modes 1 and 2.
    Modes12,
    /// Bright/dark modes b± = (b1 ± b2)/√2; only b+ couples to the qubit.
    ModesPM,
}

impl BasisTag {
    pub fn flipped(self) -> Self {
        match self {
            BasisTag::Modes12 => BasisTag::ModesPM,
            BasisTag::ModesPM => BasisTag::Modes12,
        }
    }
}

/// Truncation of the two-mode Fock space to n1 + n2 ≤ `max_total_quanta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub max_total_quanta: u32,
    /// Probability mass allowed outside the enumerated set (thermal use).
    pub tail_tolerance: f64,
}

pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-8;

impl TruncationPolicy {
    pub fn new(max_total_quanta: u32) -> Self {
        Self {
            max_total_quanta,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
        }
    }

    pub fn with_tail_tolerance(max_total_quanta: u32, tail_tolerance: f64) -> Self {
        Self {
            max_total_quanta,
            tail_tolerance,
        }
    }

    /// Dimension of the enumerated set: (M+1)(M+2)/2.
    pub fn dimension(&self) -> usize {
        let m = self.max_total_quanta as usize;
        (m + 1) * (m + 2) / 2
    }

    /// All indices with n1 + n2 ≤ M, lexicographic by (total, n1).
    pub fn states(&self) -> Vec<FockIndex> {
        let m = self.max_total_quanta;
        let mut out = Vec::with_capacity(self.dimension());
        for total in 0..=m {
            for n1 in 0..=total {
                out.push(FockIndex::new(n1, total - n1));
            }
        }
        out
    }

    /// Position of `f` in the enumeration, if it is inside the truncation.
    pub fn index_of(&self, f: FockIndex) -> Option<usize> {
        let total = f.total();
        if total > self.max_total_quanta {
            return None;
        }
        let offset = (total as usize) * (total as usize + 1) / 2;
        Some(offset + f.n1 as usize)
    }
}

/// The orthogonal 1,2 ↔ ± change of basis, stored blockwise by total quanta.
///
/// Block N is the (N+1)×(N+1) matrix T_N with
/// `T_N[n1, n+] = ⟨n+, n−|n1, n2⟩` (all entries real). T_N is symmetric and
/// orthogonal, so the transform is its own inverse and the same blocks map
/// both directions.
///
/// Blocks are built by the bosonic raising recurrence
/// `|n1,n2⟩ = b1†|n1−1,n2⟩/√n1` with `b1† = (b+† + b−†)/√2` (and the b2†
/// analogue with the sign flipped on b−†), which preserves row norms exactly
/// and avoids factorial overflow at any truncation size.
#[derive(Debug, Clone)]
pub struct PmTransform {
    blocks: Vec<DMatrix<f64>>,
}

impl PmTransform {
    pub fn build(max_total_quanta: u32) -> Self {
        let m = max_total_quanta as usize;
        let mut blocks: Vec<DMatrix<f64>> = Vec::with_capacity(m + 1);
        blocks.push(DMatrix::from_element(1, 1, 1.0));
        for n in 1..=m {
            let prev = &blocks[n - 1];
            let mut t = DMatrix::zeros(n + 1, n + 1);
            for r in 0..=n {
                let (n1, n2) = (r, n - r);
                // raise mode 1 if possible, otherwise mode 2 (sign flip on b−†)
                let (src, sign, denom) = if n1 >= 1 {
                    (r - 1, 1.0, n1 as f64)
                } else {
                    (0, -1.0, n2 as f64)
                };
                let norm = 1.0 / (2.0 * denom).sqrt();
                for k in 0..=n {
                    let mut v = 0.0;
                    if k >= 1 {
                        v += (k as f64).sqrt() * prev[(src, k - 1)];
                    }
                    if k <= n - 1 {
                        v += sign * ((n - k) as f64).sqrt() * prev[(src, k)];
                    }
                    t[(r, k)] = v * norm;
                }
            }
            blocks.push(t);
        }
        Self { blocks }
    }

    /// Process-wide shared instance covering at least `max_total_quanta`.
    /// The transform is immutable once built; callers hold an `Arc`.
    pub fn shared(max_total_quanta: u32) -> Arc<PmTransform> {
        static CACHE: OnceLock<Mutex<Arc<PmTransform>>> = OnceLock::new();
        let cell = CACHE.get_or_init(|| Mutex::new(Arc::new(PmTransform::build(0))));
        let mut guard = cell.lock().unwrap();
        if guard.max_total_quanta() < max_total_quanta {
            *guard = Arc::new(PmTransform::build(max_total_quanta));
        }
        Arc::clone(&guard)
    }

    pub fn max_total_quanta(&self) -> u32 {
        (self.blocks.len() - 1) as u32
    }

    /// The (N+1)×(N+1) block coupling the N-quanta sectors of the two bases.
    pub fn block(&self, total_quanta: u32) -> &DMatrix<f64> {
        &self.blocks[total_quanta as usize]
    }

    /// Single amplitude ⟨n+, n−|n1, n2⟩ (n− is fixed by quanta conservation).
    pub fn coefficient(&self, n1: u32, n2: u32, n_plus: u32) -> f64 {
        self.block(n1 + n2)[(n1 as usize, n_plus as usize)]
    }
}

/// Expansion of |n1, n2⟩ over the ± basis: all (n+, n−) with
/// n+ + n− = n1 + n2 and their real amplitudes, ordered by n+ ascending.
/// Amplitudes with value zero are included so the row is dense.
pub fn pm_coefficients(n1: u32, n2: u32) -> Vec<(FockIndex, f64)> {
    let total = n1 + n2;
    let tr = PmTransform::shared(total);
    (0..=total)
        .map(|np| {
            (
                FockIndex::new(np, total - np),
                tr.coefficient(n1, n2, np),
            )
        })
        .collect()
}

/// Internal storage of a [`TwoModeDensity`].
///
/// The constructive pipeline only ever produces densities that are diagonal
/// in the ± basis or block-diagonal over total quanta in the 1,2 basis, and
/// the hot paths stay in those cheap forms; `Dense` is the general case used
/// at small truncations (gates, oracle comparisons).
#[derive(Debug, Clone)]
pub(crate) enum Repr {
    /// Diagonal with real weights over the enumerated set.
    Diagonal(Vec<f64>),
    /// Real symmetric blocks, one per total-quanta sector N = 0..=M.
    /// `exchange_symmetric` records that the state is invariant under the
    /// 1 ↔ 2 mode exchange (true for everything built from ±-diagonal
    /// ensembles), which makes the ±δ partial-transpose blocks iso-spectral.
    QuantaBlocks {
        blocks: Vec<DMatrix<f64>>,
        exchange_symmetric: bool,
    },
    /// Full complex Hermitian matrix over the enumerated set.
    Dense(DMatrix<Complex64>),
}

/// Truncated two-mode bosonic density matrix with a basis tag.
///
/// Hermitian by construction; trace within the tail tolerance of 1 for
/// physical states.
#[derive(Debug, Clone)]
pub struct TwoModeDensity {
    policy: TruncationPolicy,
    basis: BasisTag,
    pub(crate) repr: Repr,
}

impl TwoModeDensity {
    /// Wrap a dense Hermitian matrix. The matrix is symmetrized exactly
    /// ((ρ + ρ†)/2) after checking that the asymmetry is at numerical-noise
    /// level.
    pub fn from_dense(
        policy: TruncationPolicy,
        basis: BasisTag,
        matrix: DMatrix<Complex64>,
    ) -> Result<Self> {
        let dim = policy.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidParam(format!(
                "density matrix is {}x{} but the policy enumerates {} states",
                matrix.nrows(),
                matrix.ncols(),
                dim
            )));
        }
        let herm_defect = (&matrix - matrix.adjoint()).norm();
        if herm_defect > 1e-10 * matrix.norm().max(1.0) {
            return Err(Error::InvalidParam(format!(
                "matrix is not Hermitian (defect {herm_defect:e})"
            )));
        }
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        Ok(Self {
            policy,
            basis,
            repr: Repr::Dense(matrix),
        })
    }

    /// Diagonal density with real weights over the enumerated set.
    pub fn from_diagonal(
        policy: TruncationPolicy,
        basis: BasisTag,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if weights.len() != policy.dimension() {
            return Err(Error::InvalidParam(format!(
                "{} weights for {} enumerated states",
                weights.len(),
                policy.dimension()
            )));
        }
        Ok(Self {
            policy,
            basis,
            repr: Repr::Diagonal(weights),
        })
    }

    pub(crate) fn from_quanta_blocks(
        policy: TruncationPolicy,
        basis: BasisTag,
        blocks: Vec<DMatrix<f64>>,
        exchange_symmetric: bool,
    ) -> Self {
        debug_assert_eq!(blocks.len(), policy.max_total_quanta as usize + 1);
        Self {
            policy,
            basis,
            repr: Repr::QuantaBlocks {
                blocks,
                exchange_symmetric,
            },
        }
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn dimension(&self) -> usize {
        self.policy.dimension()
    }

    /// Matrix element ⟨i|ρ|j⟩ in the tagged basis.
    pub fn entry(&self, i: FockIndex, j: FockIndex) -> Complex64 {
        let (ii, jj) = match (self.policy.index_of(i), self.policy.index_of(j)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Complex64::new(0.0, 0.0),
        };
        match &self.repr {
            Repr::Diagonal(w) => {
                if ii == jj {
                    Complex64::new(w[ii], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Repr::QuantaBlocks { blocks, .. } => {
                if i.total() != j.total() {
                    return Complex64::new(0.0, 0.0);
                }
                let b = &blocks[i.total() as usize];
                Complex64::new(b[(i.n1 as usize, j.n1 as usize)], 0.0)
            }
            Repr::Dense(m) => m[(ii, jj)],
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Diagonal(w) => w.iter().sum(),
            Repr::QuantaBlocks { blocks, .. } => blocks.iter().map(|b| b.trace()).sum(),
            Repr::Dense(m) => m.trace().re,
        }
    }

    /// Materialize the full complex matrix (small truncations only).
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dimension();
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Diagonal(w) => {
                DMatrix::from_fn(dim, dim, |i, j| {
                    if i == j {
                        Complex64::new(w[i], 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
            Repr::QuantaBlocks { blocks, .. } => {
                let mut out = DMatrix::zeros(dim, dim);
                let mut offset = 0usize;
                for b in blocks {
                    let n = b.nrows();
                    for r in 0..n {
                        for c in 0..n {
                            out[(offset + r, offset + c)] = Complex64::new(b[(r, c)], 0.0);
                        }
                    }
                    offset += n;
                }
                out
            }
        }
    }

    /// Diagonal of ρ in the tagged basis, in enumeration order.
    pub fn diagonal(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Diagonal(w) => w.clone(),
            Repr::QuantaBlocks { blocks, .. } => {
                let mut out = Vec::with_capacity(self.dimension());
                for b in blocks {
                    for i in 0..b.nrows() {
                        out.push(b[(i, i)]);
                    }
                }
                out
            }
            Repr::Dense(m) => (0..self.dimension()).map(|i| m[(i, i)].re).collect(),
        }
    }

    /// Conjugate by the orthogonal ± transform, flipping the basis tag.
    ///
    /// Trace and spectrum are preserved and the map is an involution (the
    /// transform blocks are symmetric orthogonal). Diagonal and quanta-block
    /// densities stay blockwise; dense input stays dense.
    pub fn change_basis(&self) -> TwoModeDensity {
        let m = self.policy.max_total_quanta;
        let tr = PmTransform::shared(m);
        let flipped = self.basis.flipped();
        match &self.repr {
            Repr::Diagonal(w) => {
                let mut blocks = Vec::with_capacity(m as usize + 1);
                let mut offset = 0usize;
                for n in 0..=m {
                    let size = n as usize + 1;
                    let t = tr.block(n);
                    // T · diag(w) · T  (T symmetric)
                    let mut scaled = t.clone();
                    for (k, mut col) in scaled.column_iter_mut().enumerate() {
                        col *= w[offset + k];
                    }
                    blocks.push(&scaled * t);
                    offset += size;
                }
                TwoModeDensity::from_quanta_blocks(self.policy, flipped, blocks, true)
            }
            Repr::QuantaBlocks {
                blocks,
                exchange_symmetric,
            } => {
                let out = blocks
                    .iter()
                    .enumerate()
                    .map(|(n, b)| {
                        let t = tr.block(n as u32);
                        t * b * t
                    })
                    .collect();
                TwoModeDensity::from_quanta_blocks(self.policy, flipped, out, *exchange_symmetric)
            }
            Repr::Dense(rho) => {
                let dim = self.dimension();
                let mut t_full: DMatrix<Complex64> = DMatrix::zeros(dim, dim);
                let mut offset = 0usize;
                for n in 0..=m {
                    let t = tr.block(n);
                    let size = n as usize + 1;
                    for r in 0..size {
                        for c in 0..size {
                            t_full[(offset + r, offset + c)] = Complex64::new(t[(r, c)], 0.0);
                        }
                    }
                    offset += size;
                }
                let out = &t_full * rho * &t_full;
                TwoModeDensity {
                    policy: self.policy,
                    basis: flipped,
                    repr: Repr::Dense(out),
                }
            }
        }
    }

    /// Partial transpose with respect to mode 1, as a dense matrix on the
    /// same enumerated set: output[(a1,a2),(b1,b2)] = ρ[(b1,a2),(a1,b2)].
    ///
    /// Requires the 1,2 basis (transposing in the ± factorization signals a
    /// caller bug). Entries whose transposed position falls outside the
    /// triangular truncation are dropped; callers size the policy so those
    /// corners carry no weight. [`crate::entanglement::negativity`] does not
    /// go through this view — it works on an extended index set and loses
    /// nothing.
    pub fn partial_transpose(&self) -> Result<DMatrix<Complex64>> {
        if self.basis != BasisTag::Modes12 {
            return Err(Error::WrongBasis {
                expected: BasisTag::Modes12,
                got: self.basis,
            });
        }
        let states = self.policy.states();
        let dim = states.len();
        let mut out = DMatrix::zeros(dim, dim);
        for (r, a) in states.iter().enumerate() {
            for (c, b) in states.iter().enumerate() {
                let src_bra = FockIndex::new(b.n1, a.n2);
                let src_ket = FockIndex::new(a.n1, b.n2);
                if src_bra.total() <= self.policy.max_total_quanta
                    && src_ket.total() <= self.policy.max_total_quanta
                {
                    out[(r, c)] = self.entry(src_bra, src_ket);
                }
            }
        }
        Ok(out)
    }
}
