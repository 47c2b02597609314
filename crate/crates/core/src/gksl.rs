//! GKSL generators: the WCLT generator with CP Toeplitz dissipative part and
//! the circulant generator `x ↦ Φ̃(x) − s·x`.
//!
//! The WCLT generator of order `n` is
//!
//! ```text
//! L(x) = Φ(x) + G*x + xG,
//! Φ(x) = Σ_{m=1}^{n-1} Γ⁻_m S^{*m} x S^m + Γ⁺_m S^m x S^{*m},
//! G    = −½Φ(1) − iH,   H = Σ_m ζ⁻_m S^{*m}S^m + ζ⁺_m S^m S^{*m},
//! ```
//!
//! and `G` is diagonal with entries `−(s(k)/2 + i s̃(k))`.

use std::sync::Arc;

use faer::MatRef;

use crate::linalg::{Block, BlockDiagonalRep, BlockLabel, CirculantMatrix};
use crate::superop::{repeated_blocks, CpCirculantMap, CpToeplitzMap, SuperOperator};
use crate::symbols::{TruncatedSymbol, TruncatedWclt, WcltCoefficients};
use crate::{c64, CMat, Error, Result};

/// `s = Σ_m Γ⁺_m + Γ⁻_m`, `s̃ = Σ_m ζ⁺_m + ζ⁻_m` and the partial sums
/// `s(k) = Σ_{m=1}^{n-1-k} Γ⁺_m + Σ_{m=1}^{k} Γ⁻_m` (same for `s̃(k)` with `ζ`).
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSums {
    pub s: f64,
    pub s_tilde: f64,
    pub s_k: Vec<f64>,
    pub s_tilde_k: Vec<f64>,
}

impl PartialSums {
    pub fn new(c: &TruncatedWclt) -> Self {
        let n = c.n;
        let partial = |plus: &[f64], minus: &[f64]| -> Vec<f64> {
            // prefix[m] = Σ_{i<m} v[i]
            let prefix = |v: &[f64]| {
                let mut out = vec![0.0; v.len() + 1];
                for (i, x) in v.iter().enumerate() {
                    out[i + 1] = out[i] + x;
                }
                out
            };
            let (pp, pm) = (prefix(plus), prefix(minus));
            (0..n).map(|k| pp[n - 1 - k] + pm[k]).collect()
        };
        Self {
            s: c.gamma_plus.iter().chain(&c.gamma_minus).sum(),
            s_tilde: c.zeta_plus.iter().chain(&c.zeta_minus).sum(),
            s_k: partial(&c.gamma_plus, &c.gamma_minus),
            s_tilde_k: partial(&c.zeta_plus, &c.zeta_minus),
        }
    }

    pub fn order(&self) -> usize {
        self.s_k.len()
    }

    /// Diagonal of `G`: `−(s(k)/2 + i s̃(k))`.
    pub fn g_diagonal(&self) -> Vec<c64> {
        self.s_k
            .iter()
            .zip(&self.s_tilde_k)
            .map(|(&a, &b)| -c64::new(a / 2.0, b))
            .collect()
    }

    /// Diagonal of the restriction `G_l` of `Ψ(x) = G*x + xG` to `V_l`:
    /// `G_0 = −diag(s(k))`, and for `l ≠ 0`
    /// `G_l = −diag((s(k)+s(k+|l|))/2 + i·sgn(l)·(s̃(k) − s̃(k+|l|)))`.
    pub fn g_block(&self, l: i64) -> Result<Vec<c64>> {
        let n = self.order();
        let a = l.unsigned_abs() as usize;
        if a >= n {
            return Err(Error::IndexOutOfRange { index: l, order: n });
        }
        let sign = l.signum() as f64;
        Ok((0..n - a)
            .map(|k| {
                let re = (self.s_k[k] + self.s_k[k + a]) / 2.0;
                let im = sign * (self.s_tilde_k[k] - self.s_tilde_k[k + a]);
                -c64::new(re, im)
            })
            .collect())
    }
}

/// Dense diagonal `G`.
pub fn g_operator(c: &TruncatedWclt) -> CMat {
    diag(&PartialSums::new(c).g_diagonal())
}

fn diag(d: &[c64]) -> CMat {
    let n = d.len();
    CMat::from_fn(n, n, |i, k| if i == k { d[i] } else { c64::from(0.0) })
}

#[derive(Debug, Clone)]
pub struct WcltGenerator {
    coeffs: TruncatedWclt,
    phi: CpToeplitzMap,
    sums: PartialSums,
}

impl WcltGenerator {
    pub fn new(coeffs: TruncatedWclt) -> Result<Self> {
        let phi = CpToeplitzMap::new(coeffs.dissipative_symbol())?;
        let sums = PartialSums::new(&coeffs);
        Ok(Self { coeffs, phi, sums })
    }

    pub fn from_coefficients(c: &WcltCoefficients, n: usize) -> Result<Self> {
        Self::new(c.truncate(n))
    }

    pub fn coefficients(&self) -> &TruncatedWclt {
        &self.coeffs
    }

    pub fn dissipative_part(&self) -> &CpToeplitzMap {
        &self.phi
    }

    pub fn partial_sums(&self) -> &PartialSums {
        &self.sums
    }

    pub fn g(&self) -> CMat {
        diag(&self.sums.g_diagonal())
    }

    /// Blocks `T_{|l|} + G_l` in the diagonal ordering.
    pub fn block_rep(&self) -> BlockDiagonalRep {
        let t = self.phi.toeplitz();
        let blocks = diagonal_labels(self.order())
            .map(|l| {
                let mut m = t.principal_submatrix(l.unsigned_abs() as usize).expect("|l| < n").to_dense();
                for (k, g) in self.sums.g_block(l).expect("|l| < n").into_iter().enumerate() {
                    m[(k, k)] += g;
                }
                Block { label: BlockLabel::Diagonal(l), matrix: Arc::new(m) }
            })
            .collect();
        BlockDiagonalRep::new(blocks).expect("labels are distinct")
    }

    /// Blocks `G_l` of `Ψ(x) = G*x + xG` in the diagonal ordering.
    pub fn psi_block_rep(&self) -> BlockDiagonalRep {
        let blocks = diagonal_labels(self.order())
            .map(|l| Block {
                label: BlockLabel::Diagonal(l),
                matrix: Arc::new(diag(&self.sums.g_block(l).expect("|l| < n"))),
            })
            .collect();
        BlockDiagonalRep::new(blocks).expect("labels are distinct")
    }

    /// `‖Ψ‖`; every block is diagonal, so this is the largest `|G_l(k)|`.
    pub fn psi_strong_norm(&self) -> f64 {
        diagonal_labels(self.order())
            .flat_map(|l| self.sums.g_block(l).expect("|l| < n"))
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn strong_norm(&self) -> Result<f64> {
        self.block_rep().strong_norm()
    }
}

/// `0, -1, +1, …, -(n-1), +(n-1)`.
pub(crate) fn diagonal_labels(n: usize) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..n as i64).flat_map(|l| [-l, l]))
}

impl SuperOperator for WcltGenerator {
    fn order(&self) -> usize {
        self.coeffs.n
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat> {
        let mut out = self.phi.apply(x)?;
        let g = self.sums.g_diagonal();
        for b in 0..out.ncols() {
            for a in 0..out.nrows() {
                out[(a, b)] += (g[a].conj() + g[b]) * x[(a, b)];
            }
        }
        Ok(out)
    }
}

/// `L^C(x) = Φ̃(x) − s·x` with associated matrix `Q = C − s·1`, `s = Σ_j c_j`.
#[derive(Debug, Clone)]
pub struct CirculantGenerator {
    phi: CpCirculantMap,
    s: f64,
}

impl CirculantGenerator {
    pub fn new(c: CirculantMatrix) -> Result<Self> {
        let phi = CpCirculantMap::new(c)?;
        let s = phi.circulant().row_sum();
        Ok(Self { phi, s })
    }

    pub fn from_truncated(t: &TruncatedSymbol) -> Result<Self> {
        Self::new(CirculantMatrix::from_truncated(t))
    }

    /// The comparison generator of a WCLT generator: `C` built from the
    /// dissipative symbol `t_m = Γ⁻_m`, `t_{-m} = Γ⁺_m`.
    pub fn for_wclt(c: &TruncatedWclt) -> Result<Self> {
        Self::from_truncated(&c.dissipative_symbol())
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn circulant(&self) -> &CirculantMatrix {
        self.phi.circulant()
    }

    pub fn q(&self) -> CirculantMatrix {
        self.circulant().shifted(-self.s)
    }

    /// `γ_k − s`.
    pub fn eigenvalues(&self) -> Vec<c64> {
        self.circulant()
            .eigenvalues()
            .into_iter()
            .map(|g| g - self.s)
            .collect()
    }

    /// `n` copies of `Q` (cyclic ordering).
    pub fn block_rep(&self) -> BlockDiagonalRep {
        repeated_blocks(Arc::new(self.q().to_dense()), self.order())
    }

    /// `Q` is normal: `‖L^C‖ = max_k |γ_k − s|`.
    pub fn strong_norm(&self) -> f64 {
        self.eigenvalues().iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

impl SuperOperator for CirculantGenerator {
    fn order(&self) -> usize {
        self.phi.order()
    }

    fn apply(&self, x: MatRef<'_, c64>) -> Result<CMat> {
        let mut out = self.phi.apply(x)?;
        for b in 0..out.ncols() {
            for a in 0..out.nrows() {
                out[(a, b)] -= x[(a, b)] * self.s;
            }
        }
        Ok(out)
    }
}

/// Sum identities over the partial sums `s(k)`.
///
/// With `W = Σ_m m(Γ⁺_m + Γ⁻_m)`:
/// - item 1: `min_{j,k} s − (s(k)+s(k+j))/2` (the strictness margin);
/// - item 2: `Σ_{j≥1} Σ_k [s − (s(k)+s(k+j))/2]`, compared with `(n−1)·W`
///   and with `(n−1)/2·W`;
/// - item 3: `Σ_k [Σ_{m=n-k}^{n-1} Γ⁺_m + Σ_{m=k+1}^{n-1} Γ⁻_m]`, compared with `W`.
///
/// Residuals are relative, `|lhs − rhs| / max(1, |rhs|)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AuxReport {
    pub n: usize,
    pub strict_margin: f64,
    pub weighted_sum: f64,
    pub item2_lhs: f64,
    pub item2_residual: f64,
    pub item2_half_residual: f64,
    pub item3_lhs: f64,
    pub item3_residual: f64,
}

pub fn aux_identities(c: &TruncatedWclt) -> AuxReport {
    let n = c.n;
    let ps = PartialSums::new(c);
    let w: f64 = (1..n)
        .map(|m| m as f64 * (c.gamma_plus[m - 1] + c.gamma_minus[m - 1]))
        .sum();

    let mut margin = f64::INFINITY;
    let mut item2 = 0.0;
    for j in 1..n {
        for k in 0..n - j {
            let gap = ps.s - (ps.s_k[k] + ps.s_k[k + j]) / 2.0;
            margin = margin.min(gap);
            item2 += gap;
        }
    }
    if n < 2 {
        margin = 0.0;
    }

    let mut item3 = 0.0;
    for k in 0..n {
        item3 += (n - k..n).map(|m| c.gamma_plus[m - 1]).sum::<f64>();
        item3 += (k + 1..n).map(|m| c.gamma_minus[m - 1]).sum::<f64>();
    }

    let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / rhs.abs().max(1.0);
    let nm1 = n.saturating_sub(1) as f64;
    AuxReport {
        n,
        strict_margin: margin,
        weighted_sum: w,
        item2_lhs: item2,
        item2_residual: rel(item2, nm1 * w),
        item2_half_residual: rel(item2, nm1 / 2.0 * w),
        item3_lhs: item3,
        item3_residual: rel(item3, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::match_spectra;
    use crate::rng::Rng;
    use crate::superop::{full_superoperator, Ordering};
    use approx::assert_abs_diff_eq;

    fn example() -> TruncatedWclt {
        TruncatedWclt::from_vecs(vec![1.0, 2.0], vec![3.0, 4.0], vec![0.0; 2], vec![0.0; 2]).unwrap()
    }

    fn max_diff(a: &CMat, b: &CMat) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..a.nrows() {
            for k in 0..a.ncols() {
                m = m.max((a[(i, k)] - b[(i, k)]).norm());
            }
        }
        m
    }

    #[test]
    fn partial_sum_examples() {
        let ps = PartialSums::new(&example());
        assert_eq!(ps.s, 10.0);
        assert_eq!(ps.s_k, vec![3.0, 4.0, 7.0]);

        let two = TruncatedWclt::from_vecs(vec![0.3], vec![0.9], vec![0.0], vec![0.0]).unwrap();
        let ps = PartialSums::new(&two);
        assert_abs_diff_eq!(ps.s, 1.2, epsilon = 1e-15);
        assert_eq!(ps.s_k, vec![0.3, 0.9]);

        let zero = TruncatedWclt::from_vecs(vec![0.0; 4], vec![0.0; 4], vec![0.0; 4], vec![0.0; 4]).unwrap();
        let ps = PartialSums::new(&zero);
        assert_eq!(ps.s, 0.0);
        assert!(ps.s_k.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn g_examples() {
        let g = g_operator(&example());
        for (k, v) in [-1.5, -2.0, -3.5].into_iter().enumerate() {
            assert_eq!(g[(k, k)], c64::from(v));
        }
        let ps = PartialSums::new(&example());
        let g0: Vec<f64> = ps.g_block(0).unwrap().iter().map(|z| z.re).collect();
        assert_eq!(g0, vec![-3.0, -4.0, -7.0]);
        assert_eq!(ps.g_block(1).unwrap(), ps.g_block(-1).unwrap());
        assert!(ps.g_block(3).is_err());
    }

    #[test]
    fn generator_kills_identity_and_preserves_adjoints() {
        let mut rng = Rng::new(21);
        for n in [1, 2, 5, 12] {
            let l = WcltGenerator::new(rng.wclt(n)).unwrap();
            let id = l.apply(CMat::identity(n, n).as_ref()).unwrap();
            assert!(max_diff(&id, &CMat::zeros(n, n)) <= 1e-12);
            let x = rng.matrix(n, n);
            let lhs = l.apply(x.adjoint().to_owned().as_ref()).unwrap();
            let rhs = l.apply(x.as_ref()).unwrap().adjoint().to_owned();
            assert!(max_diff(&lhs, &rhs) <= 1e-12);

            let lc = CirculantGenerator::for_wclt(l.coefficients()).unwrap();
            let id = lc.apply(CMat::identity(n, n).as_ref()).unwrap();
            assert!(max_diff(&id, &CMat::zeros(n, n)) <= 1e-12);
        }
    }

    #[test]
    fn block_rep_matches_oracle() {
        let mut rng = Rng::new(23);
        for n in 1..=6 {
            let l = WcltGenerator::new(rng.wclt(n)).unwrap();
            let full = full_superoperator(&l, Ordering::Diagonal).unwrap();
            assert!(max_diff(&full, &l.block_rep().to_dense()) <= 1e-12);
            let psi = crate::superop::FnMap::new(n, |x: MatRef<'_, c64>| {
                let g = l.g();
                Ok(g.adjoint() * x + x * &g)
            });
            let full = full_superoperator(&psi, Ordering::Diagonal).unwrap();
            assert!(max_diff(&full, &l.psi_block_rep().to_dense()) <= 1e-12);
        }
    }

    #[test]
    fn hamiltonian_only_spectrum_is_imaginary() {
        let c = TruncatedWclt::from_vecs(vec![0.0; 3], vec![0.0; 3], vec![0.4, 0.1, 0.0], vec![-0.2, 0.3, 0.05]).unwrap();
        let l = WcltGenerator::new(c).unwrap();
        for z in l.block_rep().eigenvalues().unwrap() {
            assert!(z.re.abs() <= 1e-14);
        }
    }

    #[test]
    fn circulant_generator_examples() {
        let lc = CirculantGenerator::new(CirculantMatrix::from_row(vec![1.0, 0.25, 0.0, 0.5]).unwrap()).unwrap();
        assert_eq!(lc.q().row(), &[-0.75, 0.25, 0.0, 0.5]);
        assert_eq!(lc.q().row_sum(), 0.0);
        assert!(lc.eigenvalues()[0].norm() < 1e-15);

        let trivial = CirculantGenerator::new(CirculantMatrix::from_row(vec![2.0, 0.0, 0.0]).unwrap()).unwrap();
        assert!(trivial.q().row().iter().all(|v| *v == 0.0));

        assert!(CirculantGenerator::new(CirculantMatrix::from_row(vec![1.0, -1.0]).unwrap()).is_err());
    }

    #[test]
    fn circulant_generator_spectrum() {
        let mut rng = Rng::new(29);
        for n in [2, 4, 6] {
            let lc = CirculantGenerator::for_wclt(&rng.wclt(n)).unwrap();
            let full = full_superoperator(&lc, Ordering::Cyclic).unwrap();
            assert!(max_diff(&full, &lc.block_rep().to_dense()) <= 1e-12);
            let dense = crate::linalg::eigenvalues(full.as_ref()).unwrap();
            let expect: Vec<c64> = lc.eigenvalues().into_iter().flat_map(|z| std::iter::repeat_n(z, n)).collect();
            assert!(match_spectra(&expect, &dense, 1e-8).matched);
        }
    }

    #[test]
    fn circulant_s_equals_gamma_sum() {
        let mut rng = Rng::new(31);
        for n in [1, 2, 9, 40] {
            let c = rng.wclt(n);
            let lc = CirculantGenerator::for_wclt(&c).unwrap();
            assert_abs_diff_eq!(lc.s(), PartialSums::new(&c).s, epsilon = 1e-12);
        }
    }

    #[test]
    fn aux_examples() {
        let r = aux_identities(&example());
        assert_eq!(r.item3_lhs, 16.0);
        assert_eq!(r.weighted_sum, 16.0);
        assert_eq!(r.item3_residual, 0.0);
        assert_eq!(r.item2_lhs, 16.0);
        assert_eq!(r.item2_half_residual, 0.0);
        assert!(r.strict_margin > 0.0);

        let zero = TruncatedWclt::from_vecs(vec![0.0; 3], vec![0.0; 3], vec![0.0; 3], vec![0.0; 3]).unwrap();
        let r = aux_identities(&zero);
        assert_eq!((r.strict_margin, r.item2_residual, r.item3_residual), (0.0, 0.0, 0.0));

        // Equality case for item 1: Γ⁺ = (1, 0), Γ⁻ = 0 at n = 3 (j = 2, k = 0).
        let edge = TruncatedWclt::from_vecs(vec![1.0, 0.0], vec![0.0; 2], vec![0.0; 2], vec![0.0; 2]).unwrap();
        assert_eq!(aux_identities(&edge).strict_margin, 0.0);
    }
}
