//! Toeplitz and circulant matrices, dense spectral helpers and the
//! block-diagonal container used to represent superoperators.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use faer::{Mat, MatRef, Side};

use crate::symbols::{SymbolSequence, TruncatedSymbol};
use crate::{c64, CMat, Error, Result};

/// `n × n` Toeplitz matrix with entry `(i, k) = t_{i-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix {
    diagonals: TruncatedSymbol,
}

impl ToeplitzMatrix {
    pub fn from_symbol(t: &SymbolSequence, n: usize) -> Self {
        Self::from_truncated(t.truncate(n))
    }

    pub fn from_truncated(diagonals: TruncatedSymbol) -> Self {
        Self { diagonals }
    }

    pub fn order(&self) -> usize {
        self.diagonals.order()
    }

    /// `t_j` for the diagonal `i - k = j`.
    pub fn coeff(&self, j: i64) -> f64 {
        self.diagonals.get(j)
    }

    pub fn entry(&self, i: usize, k: usize) -> f64 {
        self.coeff(i as i64 - k as i64)
    }

    pub fn diagonals(&self) -> &TruncatedSymbol {
        &self.diagonals
    }

    pub fn is_symmetric(&self) -> bool {
        self.diagonals.is_hermitian()
    }

    /// The leading `(n - j) × (n - j)` corner `T_j`.
    pub fn principal_submatrix(&self, j: usize) -> Result<Self> {
        let n = self.order();
        if j >= n {
            return Err(Error::IndexOutOfRange {
                index: j as i64,
                order: n,
            });
        }
        Ok(Self::from_truncated(TruncatedSymbol::from_fn(n - j, |d| {
            self.coeff(d)
        })))
    }

    pub fn to_dense(&self) -> CMat {
        let n = self.order();
        Mat::from_fn(n, n, |i, k| c64::from(self.entry(i, k)))
    }

    pub fn to_dense_real(&self) -> Mat<f64> {
        let n = self.order();
        Mat::from_fn(n, n, |i, k| self.entry(i, k))
    }

    /// Largest singular value.
    pub fn strong_norm(&self) -> Result<f64> {
        let dense = self.to_dense_real();
        if self.is_symmetric() {
            let ev = dense
                .self_adjoint_eigenvalues(Side::Lower)
                .map_err(decomp_err)?;
            Ok(ev.iter().fold(0.0, |m, v| f64::max(m, v.abs())))
        } else {
            largest_singular_value(dense.as_ref())
        }
    }
}

/// `n × n` circulant matrix with entry `(i, k) = c_{(k - i) mod n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    row: Vec<f64>,
}

impl CirculantMatrix {
    pub fn from_row(row: Vec<f64>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { row })
    }

    /// The circulant companion of the Toeplitz sequence:
    /// `c_0 = t_0`, `c_j = t_{-j} + t_{n-j}` for `j = 1..n-1`.
    pub fn from_symbol(t: &SymbolSequence, n: usize) -> Self {
        Self::from_truncated(&t.truncate(n))
    }

    pub fn from_truncated(t: &TruncatedSymbol) -> Self {
        let n = t.order() as i64;
        let row = (0..n)
            .map(|j| if j == 0 { t.get(0) } else { t.get(-j) + t.get(n - j) })
            .collect();
        Self { row }
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[f64] {
        &self.row
    }

    /// `c_{j mod n}`.
    pub fn coeff(&self, j: i64) -> f64 {
        self.row[j.rem_euclid(self.order() as i64) as usize]
    }

    pub fn entry(&self, i: usize, k: usize) -> f64 {
        self.coeff(k as i64 - i as i64)
    }

    pub fn row_sum(&self) -> f64 {
        self.row.iter().sum()
    }

    /// `C + delta·1`.
    pub fn shifted(&self, delta: f64) -> Self {
        let mut row = self.row.clone();
        row[0] += delta;
        Self { row }
    }

    pub fn to_dense(&self) -> CMat {
        let n = self.order();
        Mat::from_fn(n, n, |i, k| c64::from(self.entry(i, k)))
    }

    /// `γ_k = Σ_j c_j ω^{jk}`, `ω = e^{2πi/n}`, for `k = 0..n-1`.
    ///
    /// Eigenvector `k` is `(ω^{ik})_i`. Angles are reduced mod `n` in integer
    /// arithmetic before scaling.
    pub fn eigenvalues(&self) -> Vec<c64> {
        let n = self.order();
        (0..n)
            .map(|k| {
                self.row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0.0)
                    .map(|(j, &c)| c64::from_polar(c, TAU * ((j * k) % n) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    /// Circulant matrices are normal, so the strong norm is `max_k |γ_k|`.
    pub fn strong_norm(&self) -> f64 {
        self.eigenvalues().iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Label of a block in a superoperator representation: a diagonal index
/// `l ∈ [-(n-1), n-1]` or a cyclic index `j ∈ [0, n-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockLabel {
    Diagonal(i64),
    Cyclic(usize),
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLabel::Diagonal(0) => write!(f, "V0"),
            BlockLabel::Diagonal(l) => write!(f, "V{l:+}"),
            BlockLabel::Cyclic(j) => write!(f, "B{j}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Block {
    pub label: BlockLabel,
    pub matrix: Arc<CMat>,
}

/// An ordered direct sum of labelled square blocks.
///
/// Blocks may share storage (`T_{-l}` and `T_{+l}` are the same matrix, the
/// circulant representation repeats `C` n times); shared blocks are
/// decomposed once.
#[derive(Debug, Clone)]
pub struct BlockDiagonalRep {
    blocks: Vec<Block>,
}

impl BlockDiagonalRep {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            if b.matrix.nrows() != b.matrix.ncols() {
                return Err(Error::DimensionMismatch {
                    expected: b.matrix.nrows(),
                    found: b.matrix.ncols(),
                });
            }
            if !seen.insert(b.label) {
                return Err(Error::DuplicateLabel(b.label.to_string()));
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn get(&self, label: BlockLabel) -> Option<&CMat> {
        self.blocks
            .iter()
            .find(|b| b.label == label)
            .map(|b| b.matrix.as_ref())
    }

    /// Sum of block orders.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.matrix.nrows()).sum()
    }

    /// Blockwise product with a vector in the representation's ordering.
    pub fn apply(&self, v: &[c64]) -> Result<Vec<c64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let mut out = Vec::with_capacity(v.len());
        let mut offset = 0;
        for b in &self.blocks {
            let m = b.matrix.nrows();
            let seg = &v[offset..offset + m];
            for i in 0..m {
                out.push((0..m).map(|k| b.matrix[(i, k)] * seg[k]).sum());
            }
            offset += m;
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> CMat {
        let d = self.dim();
        let mut out = Mat::zeros(d, d);
        let mut offset = 0;
        for b in &self.blocks {
            let m = b.matrix.nrows();
            for i in 0..m {
                for k in 0..m {
                    out[(offset + i, offset + k)] = b.matrix[(i, k)];
                }
            }
            offset += m;
        }
        out
    }

    /// Applies `f` once per distinct stored block.
    fn per_distinct<T: Clone>(&self, mut f: impl FnMut(&CMat) -> Result<T>) -> Result<Vec<T>> {
        let mut cache: HashMap<*const CMat, T> = HashMap::new();
        self.blocks
            .iter()
            .map(|b| {
                let key = Arc::as_ptr(&b.matrix);
                if let Some(v) = cache.get(&key) {
                    return Ok(v.clone());
                }
                let v = f(&b.matrix)?;
                cache.insert(key, v.clone());
                Ok(v)
            })
            .collect()
    }

    /// Largest singular value over all blocks.
    pub fn strong_norm(&self) -> Result<f64> {
        Ok(self
            .per_distinct(|m| strong_norm(m.as_ref()))?
            .into_iter()
            .fold(0.0, f64::max))
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.blocks.iter().map(|b| frobenius_sq((*b.matrix).as_ref())).sum()
    }

    pub fn normalized_hs_norm(&self, m: usize) -> f64 {
        (self.frobenius_sq() / m as f64).sqrt()
    }

    /// Multiset union of the block spectra.
    pub fn eigenvalues(&self) -> Result<Vec<c64>> {
        Ok(self
            .per_distinct(|m| eigenvalues(m.as_ref()))?
            .into_iter()
            .flatten()
            .collect())
    }

    /// Per-block spectra, in block order.
    pub fn block_eigenvalues(&self) -> Result<Vec<(BlockLabel, Vec<c64>)>> {
        let spectra = self.per_distinct(|m| eigenvalues(m.as_ref()))?;
        Ok(self.blocks.iter().map(|b| b.label).zip(spectra).collect())
    }
}

pub(crate) fn decomp_err<E: fmt::Debug>(e: E) -> Error {
    Error::Decomposition(format!("{e:?}"))
}

fn largest_singular_value<T>(a: MatRef<'_, T>) -> Result<f64>
where
    T: faer::traits::ComplexField<Real = f64>,
{
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(0.0);
    }
    let sv = a.singular_values().map_err(decomp_err)?;
    Ok(sv.first().copied().unwrap_or(0.0))
}

/// Largest singular value (operator norm induced by the Euclidean norm).
pub fn strong_norm(a: MatRef<'_, c64>) -> Result<f64> {
    largest_singular_value(a)
}

/// `Σ |a_ik|²`.
pub fn frobenius_sq(a: MatRef<'_, c64>) -> f64 {
    let mut acc = 0.0;
    for k in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc += a[(i, k)].norm_sqr();
        }
    }
    acc
}

/// `(1/√m) · (Σ |a_ik|²)^{1/2}`.
pub fn normalized_hs_norm(a: MatRef<'_, c64>, m: usize) -> f64 {
    (frobenius_sq(a) / m as f64).sqrt()
}

pub fn is_hermitian(a: MatRef<'_, c64>, tol: f64) -> bool {
    a.nrows() == a.ncols()
        && (0..a.nrows()).all(|i| (0..=i).all(|k| (a[(i, k)] - a[(k, i)].conj()).norm() <= tol))
}

/// Spectrum of a square matrix. Hermitian input takes the self-adjoint path
/// (real eigenvalues, ascending); everything else goes through the general
/// Schur-based solver.
pub fn eigenvalues(a: MatRef<'_, c64>) -> Result<Vec<c64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    if is_hermitian(a, 0.0) {
        return Ok(hermitian_eigenvalues(a)?.into_iter().map(c64::from).collect());
    }
    a.eigenvalues().map_err(decomp_err)
}

/// Ascending eigenvalues of a Hermitian matrix (only the lower triangle is read).
pub fn hermitian_eigenvalues(a: MatRef<'_, c64>) -> Result<Vec<f64>> {
    a.self_adjoint_eigenvalues(Side::Lower).map_err(decomp_err)
}

/// Result of pairing two spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumMatch {
    /// Largest distance between paired eigenvalues (`∞` on a length mismatch).
    pub max_deviation: f64,
    pub matched: bool,
}

/// Multiset comparison: both lists are sorted by `(re, im)`, then each
/// element of `a` is greedily paired with the nearest unused element of `b`.
pub fn match_spectra(a: &[c64], b: &[c64], tol: f64) -> SpectrumMatch {
    if a.len() != b.len() {
        return SpectrumMatch {
            max_deviation: f64::INFINITY,
            matched: false,
        };
    }
    let sorted = |v: &[c64]| {
        let mut v = v.to_vec();
        v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        v
    };
    let (a, b) = (sorted(a), sorted(b));
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in &a {
        let (idx, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal lengths leave an unused element");
        used[idx] = true;
        worst = worst.max(dist);
    }
    SpectrumMatch {
        max_deviation: worst,
        matched: worst <= tol,
    }
}

/// Writes a dense matrix as CSV, row-major, two columns (`re`, `im`) per entry.
pub fn write_csv<W: Write>(a: MatRef<'_, c64>, mut w: W) -> io::Result<()> {
    let header: Vec<String> = (0..a.ncols())
        .flat_map(|k| [format!("c{k}_re"), format!("c{k}_im")])
        .collect();
    writeln!(w, "{}", header.join(","))?;
    for i in 0..a.nrows() {
        let row: Vec<String> = (0..a.ncols())
            .flat_map(|k| {
                let z = a[(i, k)];
                [format!("{:.16e}", z.re), format!("{:.16e}", z.im)]
            })
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
