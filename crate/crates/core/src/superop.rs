//! Vectorizations of `n × n` matrices, CP Toeplitz and circulant maps, their
//! block representations and brute-force oracles (full superoperator, Choi
//! matrix).

use std::sync::Arc;

use faer::MatRef;

use crate::linalg::{
    hermitian_eigenvalues, Block, BlockDiagonalRep, BlockLabel, CirculantMatrix, ToeplitzMatrix,
};
use crate::symbols::{SymbolSequence, TruncatedSymbol};
use crate::{c64, CMat, Error, Result};

/// Largest order accepted by [`full_superoperator`].
pub const FULL_SUPEROPERATOR_MAX: usize = 12;
/// Largest order accepted by [`choi_matrix`].
pub const CHOI_MAX: usize = 8;

/// Enumeration of the matrix units `|e_i⟩⟨e_k|` as coordinates of `ℂ^{n²}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// Column stacking, `(i, k) ↦ i + n·k`.
    ColumnStack,
    /// `V_0`, then `V_{-l}`, `V_{+l}` for `l = 1..n-1`.
    /// `V_{-l}` holds `|e_i⟩⟨e_{i+l}|`, `V_{+l}` holds `|e_{i+l}⟩⟨e_i|`, `i = 0..n-1-l`.
    Diagonal,
    /// `B_j` for `j = 0..n-1`, holding `|e_i⟩⟨e_{(i+j) mod n}|`, `i = 0..n-1`.
    Cyclic,
}

impl Ordering {
    /// `(row, col)` of each coordinate, in order.
    pub fn basis_pairs(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(n * n);
        match self {
            Ordering::ColumnStack => {
                for k in 0..n {
                    out.extend((0..n).map(|i| (i, k)));
                }
            }
            Ordering::Diagonal => {
                out.extend((0..n).map(|i| (i, i)));
                for l in 1..n {
                    out.extend((0..n - l).map(|i| (i, i + l)));
                    out.extend((0..n - l).map(|i| (i + l, i)));
                }
            }
            Ordering::Cyclic => {
                for j in 0..n {
                    out.extend((0..n).map(|i| (i, (i + j) % n)));
                }
            }
        }
        out
    }

    /// Block labels and segment lengths. Column stacking has a single segment.
    pub fn segments(self, n: usize) -> Vec<(BlockLabel, usize)> {
        match self {
            Ordering::ColumnStack => vec![(BlockLabel::Cyclic(0), n * n)],
            Ordering::Diagonal => {
                let mut out = vec![(BlockLabel::Diagonal(0), n)];
                for l in 1..n {
                    out.push((BlockLabel::Diagonal(-(l as i64)), n - l));
                    out.push((BlockLabel::Diagonal(l as i64), n - l));
                }
                out
            }
            Ordering::Cyclic => (0..n).map(|j| (BlockLabel::Cyclic(j), n)).collect(),
        }
    }
}

fn check_square(x: MatRef<'_, c64>) -> Result<usize> {
    if x.nrows() != x.ncols() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            found: x.ncols(),
        });
    }
    Ok(x.nrows())
}

fn check_order(x: MatRef<'_, c64>, n: usize) -> Result<()> {
    let m = check_square(x)?;
    if m != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m,
        });
    }
    Ok(())
}

pub fn vectorize(x: MatRef<'_, c64>, ordering: Ordering) -> Result<Vec<c64>> {
    let n = check_square(x)?;
    Ok(ordering.basis_pairs(n).into_iter().map(|(i, k)| x[(i, k)]).collect())
}

/// Inverse of [`vectorize`]; the order is recovered from `v.len() = n²`.
pub fn unvectorize(v: &[c64], ordering: Ordering) -> Result<CMat> {
    let n = (v.len() as f64).sqrt().round() as usize;
    if n * n != v.len() {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: v.len(),
        });
    }
    let mut x = CMat::zeros(n, n);
    for (&z, (i, k)) in v.iter().zip(ordering.basis_pairs(n)) {
        x[(i, k)] = z;
    }
    Ok(x)
}

pub fn vec_diagonal(x: MatRef<'_, c64>) -> Result<Vec<c64>> {
    vectorize(x, Ordering::Diagonal)
}

pub fn unvec_diagonal(v: &[c64]) -> Result<CMat> {
    unvectorize(v, Ordering::Diagonal)
}

pub fn vec_cyclic(x: MatRef<'_, c64>) -> Result<Vec<c64>> {
    vectorize(x, Ordering::Cyclic)
}

pub fn unvec_cyclic(v: &[c64]) -> Result<CMat> {
    unvectorize(v, Ordering::Cyclic)
}

/// `P` with `vec_cyclic(x)[q] = vec_diagonal(x)[P[q]]`.
///
/// Segment `B_j` is the `V_{-j}` segment followed by the `V_{n-j}` segment.
pub fn permutation_diag_to_cyclic(n: usize) -> Vec<usize> {
    let mut diag_pos = vec![0usize; n * n];
    for (q, (i, k)) in Ordering::Diagonal.basis_pairs(n).into_iter().enumerate() {
        diag_pos[i * n + k] = q;
    }
    Ordering::Cyclic
        .basis_pairs(n)
        .into_iter()
        .map(|(i, k)| diag_pos[i * n + k])
        .collect()
}

/// A linear map on `n × n` complex matrices.
pub trait SuperOperator {
    fn order(&self) -> usize;
    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat>;
}

/// CP Toeplitz map
/// `Φ(x) = Σ_{j≥0} t_j S^{*j} x S^j + Σ_{j≥1} t_{-j} S^j x S^{*j}`
/// with the nilpotent left shift `S e_i = e_{i-1}`, `S e_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CpToeplitzMap {
    t: TruncatedSymbol,
}

impl CpToeplitzMap {
    pub fn new(t: TruncatedSymbol) -> Result<Self> {
        t.check_nonnegative()?;
        Ok(Self { t })
    }

    pub fn from_symbol(t: &SymbolSequence, n: usize) -> Result<Self> {
        Self::new(t.truncate(n))
    }

    /// Same Kraus-form expression without the sign check. The result is not
    /// completely positive when some coefficient is negative.
    pub fn from_signed(t: TruncatedSymbol) -> Self {
        Self { t }
    }

    pub fn symbol(&self) -> &TruncatedSymbol {
        &self.t
    }

    pub fn toeplitz(&self) -> ToeplitzMatrix {
        ToeplitzMatrix::from_truncated(self.t.clone())
    }

    /// Blocks `T_{|l|}` labelled `0, -1, +1, …` (diagonal ordering);
    /// the `±l` blocks share storage.
    pub fn block_rep(&self) -> BlockDiagonalRep {
        let n = self.order();
        let t = self.toeplitz();
        let mut blocks = Vec::with_capacity(2 * n - 1);
        for l in 0..n {
            let m = Arc::new(t.principal_submatrix(l).expect("l < n").to_dense());
            if l == 0 {
                blocks.push(Block { label: BlockLabel::Diagonal(0), matrix: m });
            } else {
                blocks.push(Block { label: BlockLabel::Diagonal(-(l as i64)), matrix: m.clone() });
                blocks.push(Block { label: BlockLabel::Diagonal(l as i64), matrix: m });
            }
        }
        BlockDiagonalRep::new(blocks).expect("labels are distinct")
    }

    /// `‖Φ‖ = ‖T_0‖`: every other block is a principal submatrix of `T_0`.
    pub fn strong_norm(&self) -> Result<f64> {
        self.toeplitz().strong_norm()
    }

    /// Eigenpairs that exist for every symbol:
    /// `t_0` with eigenvector `|e_0⟩⟨e_{n-1}|`, and for `n ≥ 2`
    /// `t_0 ∓ √(t_1 t_{-1})` with eigenvector
    /// `∓√t_{-1} |e_{n-2}⟩⟨e_0| + √t_1 |e_{n-1}⟩⟨e_1|` (omitted when it vanishes).
    pub fn guaranteed_eigenpairs(&self) -> Vec<(f64, CMat)> {
        let n = self.order();
        let (t0, t1, tm1) = (self.t.get(0), self.t.get(1), self.t.get(-1));
        let mut corner = CMat::zeros(n, n);
        corner[(0, n - 1)] = c64::from(1.0);
        let mut out = vec![(t0, corner)];
        if n >= 2 && (t1 > 0.0 || tm1 > 0.0) {
            let root = (t1 * tm1).sqrt();
            for sign in [-1.0, 1.0] {
                let mut x = CMat::zeros(n, n);
                x[(n - 2, 0)] += c64::from(sign * tm1.sqrt());
                x[(n - 1, 1 % n)] += c64::from(t1.sqrt());
                out.push((t0 + sign * root, x));
            }
        }
        out
    }
}

impl SuperOperator for CpToeplitzMap {
    fn order(&self) -> usize {
        self.t.order()
    }

    /// `Φ(x)[a, b] = Σ_d t_d x[a-d, b-d]` over in-range indices.
    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat> {
        let n = self.order();
        check_order(x, n)?;
        let mut out = CMat::zeros(n, n);
        for (d, td) in self.t.iter().filter(|(_, v)| *v != 0.0) {
            let lo = d.max(0) as usize;
            let hi = (n as i64 + d.min(0)) as usize;
            for b in lo..hi {
                let bs = (b as i64 - d) as usize;
                for a in lo..hi {
                    out[(a, b)] += x[((a as i64 - d) as usize, bs)] * td;
                }
            }
        }
        Ok(out)
    }
}

/// CP circulant map `Φ̃(x) = Σ_j c_{(n-j) mod n} J^{*j} x J^j` with the cyclic
/// shift `J e_i = e_{(i-1) mod n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CpCirculantMap {
    c: CirculantMatrix,
}

impl CpCirculantMap {
    pub fn new(c: CirculantMatrix) -> Result<Self> {
        if let Some((j, &v)) = c.row().iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeCoefficient { index: j as i64, value: v });
        }
        Ok(Self { c })
    }

    pub fn from_symbol(t: &SymbolSequence, n: usize) -> Result<Self> {
        Self::new(CirculantMatrix::from_symbol(t, n))
    }

    pub fn from_truncated(t: &TruncatedSymbol) -> Result<Self> {
        Self::new(CirculantMatrix::from_truncated(t))
    }

    /// Without the sign check.
    pub fn from_signed(c: CirculantMatrix) -> Self {
        Self { c }
    }

    pub fn circulant(&self) -> &CirculantMatrix {
        &self.c
    }

    /// `n` copies of `C` labelled `B_0..B_{n-1}` (cyclic ordering).
    pub fn block_rep(&self) -> BlockDiagonalRep {
        repeated_blocks(Arc::new(self.c.to_dense()), self.order())
    }

    /// `C` is normal, so `‖Φ̃‖ = ‖C‖ = max |γ_k|`.
    pub fn strong_norm(&self) -> f64 {
        self.c.strong_norm()
    }
}

pub(crate) fn repeated_blocks(m: Arc<CMat>, n: usize) -> BlockDiagonalRep {
    BlockDiagonalRep::new(
        (0..n)
            .map(|j| Block { label: BlockLabel::Cyclic(j), matrix: m.clone() })
            .collect(),
    )
    .expect("labels are distinct")
}

impl SuperOperator for CpCirculantMap {
    fn order(&self) -> usize {
        self.c.order()
    }

    /// `Φ̃(x)[a, b] = Σ_j c_{-j} x[a-j, b-j]`, indices mod `n`.
    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat> {
        let n = self.order();
        check_order(x, n)?;
        let mut out = CMat::zeros(n, n);
        for j in 0..n {
            let cj = self.c.coeff(-(j as i64));
            if cj == 0.0 {
                continue;
            }
            for b in 0..n {
                let bs = (b + n - j) % n;
                for a in 0..n {
                    out[(a, b)] += x[((a + n - j) % n, bs)] * cj;
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityMap {
    pub n: usize,
}

impl SuperOperator for IdentityMap {
    fn order(&self) -> usize {
        self.n
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat> {
        check_order(x, self.n)?;
        Ok(x.to_owned())
    }
}

/// A map given by a closure, for oracles and ad hoc compositions.
pub struct FnMap<F> {
    n: usize,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(MatRef<'_, c64>) -> Result<CMat>,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> SuperOperator for FnMap<F>
where
    F: Fn(MatRef<'_, c64>) -> Result<CMat>,
{
    fn order(&self) -> usize {
        self.n
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat> {
        check_order(x, self.n)?;
        (self.f)(x)
    }
}

fn matrix_unit(n: usize, i: usize, k: usize) -> CMat {
    let mut e = CMat::zeros(n, n);
    e[(i, k)] = c64::from(1.0);
    e
}

/// Matrix of `map` in `ordering`, assembled column by column from the images
/// of the matrix units.
pub fn full_superoperator<M: SuperOperator + ?Sized>(map: &M, ordering: Ordering) -> Result<CMat> {
    let n = map.order();
    if n > FULL_SUPEROPERATOR_MAX {
        return Err(Error::SizeGuard { n, max: FULL_SUPEROPERATOR_MAX, what: "full superoperator" });
    }
    let pairs = ordering.basis_pairs(n);
    let mut out = CMat::zeros(n * n, n * n);
    for (col, &(i, k)) in pairs.iter().enumerate() {
        let image = map.apply(matrix_unit(n, i, k).as_ref())?;
        for (row, &(a, b)) in pairs.iter().enumerate() {
            out[(row, col)] = image[(a, b)];
        }
    }
    Ok(out)
}

/// `Σ_{i,k} |e_i⟩⟨e_k| ⊗ map(|e_i⟩⟨e_k|)`, entry `(i·n + a, k·n + b)`.
pub fn choi_matrix<M: SuperOperator + ?Sized>(map: &M) -> Result<CMat> {
    let n = map.order();
    if n > CHOI_MAX {
        return Err(Error::SizeGuard { n, max: CHOI_MAX, what: "Choi matrix" });
    }
    let mut out = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for k in 0..n {
            let image = map.apply(matrix_unit(n, i, k).as_ref())?;
            for a in 0..n {
                for b in 0..n {
                    out[(i * n + a, k * n + b)] = image[(a, b)];
                }
            }
        }
    }
    Ok(out)
}

/// Smallest eigenvalue of the Choi matrix; non-negative (up to rounding)
/// exactly when the map is completely positive.
pub fn min_choi_eigenvalue<M: SuperOperator + ?Sized>(map: &M) -> Result<f64> {
    let choi = choi_matrix(map)?;
    Ok(hermitian_eigenvalues(choi.as_ref())?
        .first()
        .copied()
        .unwrap_or(0.0))
}

/// Dense nilpotent left shift `S e_i = e_{i-1}`, `S e_0 = 0`.
pub fn shift_matrix(n: usize) -> CMat {
    CMat::from_fn(n, n, |r, c| c64::from(if c >= 1 && r == c - 1 { 1.0 } else { 0.0 }))
}

/// Dense cyclic left shift `J e_i = e_{(i-1) mod n}`.
pub fn cyclic_shift_matrix(n: usize) -> CMat {
    CMat::from_fn(n, n, |r, c| c64::from(if r == (c + n - 1) % n { 1.0 } else { 0.0 }))
}
