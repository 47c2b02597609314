//! Independent oracles shared by the integration tests. Everything here is
//! built from dense shift matrices and explicit sums, never from the block
//! machinery under test.
#![allow(dead_code)]

use qmsa::superop::{cyclic_shift_matrix, shift_matrix};
use qmsa::symbols::{TruncatedSymbol, TruncatedWclt};
use qmsa::{c64, CMat};

pub fn scaled(m: &CMat, k: c64) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * k)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m: f64 = 0.0;
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            m = m.max((a[(i, k)] - b[(i, k)]).norm());
        }
    }
    m
}

fn powers(m: &CMat, count: usize) -> Vec<CMat> {
    let n = m.nrows();
    let mut out = vec![CMat::identity(n, n)];
    for p in 1..count {
        out.push(&out[p - 1] * m);
    }
    out
}

/// `Σ_{j≥0} t_j S^{*j} x S^j + Σ_{j≥1} t_{-j} S^j x S^{*j}` with dense products.
pub fn cp_toeplitz_kraus(t: &TruncatedSymbol, x: &CMat) -> CMat {
    let n = t.order();
    let sp = powers(&shift_matrix(n), n);
    let mut out = CMat::zeros(n, n);
    for (j, p) in sp.iter().enumerate() {
        let pa = p.adjoint().to_owned();
        out += scaled(&(&pa * x * p), c64::from(t.get(j as i64)));
        if j > 0 {
            out += scaled(&(p * x * &pa), c64::from(t.get(-(j as i64))));
        }
    }
    out
}

/// `Σ_j c_{(n-j) mod n} J^{*j} x J^j` with dense products.
pub fn cp_circulant_kraus(row: &[f64], x: &CMat) -> CMat {
    let n = row.len();
    let jp = powers(&cyclic_shift_matrix(n), n);
    let mut out = CMat::zeros(n, n);
    for (j, p) in jp.iter().enumerate() {
        let pa = p.adjoint().to_owned();
        out += scaled(&(&pa * x * p), c64::from(row[(n - j) % n]));
    }
    out
}

/// `G = Σ_m −½(Γ⁻_m S^{*m}S^m + Γ⁺_m S^m S^{*m}) − i(ζ⁻_m S^{*m}S^m + ζ⁺_m S^m S^{*m})`.
pub fn g_shift_sum(c: &TruncatedWclt) -> CMat {
    let n = c.n;
    let sp = powers(&shift_matrix(n), n);
    let mut g = CMat::zeros(n, n);
    for (m, p) in sp.iter().enumerate().skip(1) {
        let pa = p.adjoint().to_owned();
        let lower = &pa * p; // S^{*m} S^m
        let upper = p * &pa; // S^m S^{*m}
        let coef_lower = c64::new(-0.5 * c.gamma_minus[m - 1], -c.zeta_minus[m - 1]);
        let coef_upper = c64::new(-0.5 * c.gamma_plus[m - 1], -c.zeta_plus[m - 1]);
        g += scaled(&lower, coef_lower);
        g += scaled(&upper, coef_upper);
    }
    g
}

/// `Φ(x) + G*x + xG` with the dense oracles above.
pub fn wclt_dense(c: &TruncatedWclt, x: &CMat) -> CMat {
    let g = g_shift_sum(c);
    cp_toeplitz_kraus(&c.dissipative_symbol(), x) + g.adjoint() * x + x * &g
}

/// Matrix of a linear map in column-stacking order, `(i, k) ↦ i + n·k`.
pub fn column_stack_superoperator(n: usize, f: impl Fn(&CMat) -> CMat) -> CMat {
    let mut out = CMat::zeros(n * n, n * n);
    for k in 0..n {
        for i in 0..n {
            let mut e = CMat::zeros(n, n);
            e[(i, k)] = c64::from(1.0);
            let img = f(&e);
            for b in 0..n {
                for a in 0..n {
                    out[(a + n * b, i + n * k)] = img[(a, b)];
                }
            }
        }
    }
    out
}

/// Re-expresses a column-stacked superoperator in another basis ordering,
/// given the `(row, col)` pair of each new coordinate.
pub fn reorder(m: &CMat, n: usize, pairs: &[(usize, usize)]) -> CMat {
    let idx: Vec<usize> = pairs.iter().map(|&(i, k)| i + n * k).collect();
    CMat::from_fn(n * n, n * n, |p, q| m[(idx[p], idx[q])])
}
