//! Asymptotic equivalence studies.
//!
//! Two sequences `A_n`, `B_n` are asymptotically equivalent when their strong
//! norms are uniformly bounded and the normalized Hilbert–Schmidt distance
//! `|A_n − B_n|` tends to zero. The limit cannot be checked literally; a study
//! evaluates both on an `n`-grid and reports a monotone-trend verdict and a
//! decay ratio `d_{max n} / d_{min n}`.
//!
//! All distances are computed blockwise in the cyclic ordering, where the
//! circulant side is `1 ⊗ C` and block `j` of the Toeplitz side is
//! `T_{-j} ⊕ T_{n-j}`. Squared distances are reported as contributions to
//! `d_n²`, i.e. already divided by `n²`.
//!
//! The Trench refinement (absolutely equal distribution) is not computed.

use std::io::{self, Write};

use serde::Serialize;

use crate::gksl::{CirculantGenerator, PartialSums, WcltGenerator};
use crate::linalg::{hermitian_eigenvalues, CirculantMatrix, ToeplitzMatrix};
use crate::superop::{CpCirculantMap, CpToeplitzMap};
use crate::symbols::{SymbolSequence, TruncatedSymbol, TruncatedWclt, WcltCoefficients};
use crate::{c64, Error, Result};

pub const DEFAULT_GRID: [usize; 5] = [16, 32, 64, 128, 256];
pub const DEFAULT_DECAY_RATIO: f64 = 0.5;
/// Allowed increase between consecutive grid points in the monotone check.
pub const MONOTONE_SLACK: f64 = 1e-12;
/// Slack on the uniform strong-norm bound.
pub const BOUND_SLACK: f64 = 1e-10;

/// 17 significant digits, the CSV float format.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn validate_grid(grid: &[usize]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if grid[0] == 0 {
        return Err(Error::InvalidGrid("orders must be positive".into()));
    }
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(format!(
            "grid must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn map_grid<T, F>(grid: &[usize], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        grid.par_iter().map(|&n| f(n)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        grid.iter().map(|&n| f(n)).collect()
    }
}

// ---------------------------------------------------------------------------
// CP maps

/// `|T_0 − C|²` summed entrywise.
pub fn t0_circulant_sq_direct(t: &TruncatedSymbol) -> f64 {
    let n = t.order();
    let c = CirculantMatrix::from_truncated(t);
    let mut acc = 0.0;
    for a in 0..n {
        for b in 0..n {
            let d = t.get(a as i64 - b as i64) - c.entry(a, b);
            acc += d * d;
        }
    }
    acc
}

/// `|T_0 − C|² = Σ_{d=1}^{n-1} (n−d)(t_{d-n}² + t_{n-d}²)`.
pub fn t0_circulant_sq_closed(t: &TruncatedSymbol) -> f64 {
    let n = t.order() as i64;
    (1..n)
        .map(|d| (n - d) as f64 * (t.get(d - n).powi(2) + t.get(n - d).powi(2)))
        .sum()
}

/// `|T_{-j} ⊕ T_{n-j} − C|²` for `j = 1..n-1` (entry `j - 1`), from the
/// blocks themselves.
pub fn cp_shells_direct(t: &TruncatedSymbol) -> Vec<f64> {
    let n = t.order();
    let c = CirculantMatrix::from_truncated(t);
    (1..n)
        .map(|j| {
            let split = n - j;
            let mut acc = 0.0;
            for a in 0..n {
                for b in 0..n {
                    let tb = if (a < split) == (b < split) { t.get(a as i64 - b as i64) } else { 0.0 };
                    let d = tb - c.entry(a, b);
                    acc += d * d;
                }
            }
            acc
        })
        .collect()
}

/// Closed form of `|T_{-j} ⊕ T_{n-j} − C|²`:
/// `2 Σ_{l=0}^{j-1} Σ_{k=1}^{n-j} (t_{k+l-n} + t_{k+l})²
///  + Σ_{k=j}^{n-1} (k−j)(t_k² + t_{-k}²) + Σ_{k=1}^{j-1} (j−k)(t_{n-k}² + t_{k-n}²)`.
pub fn cp_shell_closed(t: &TruncatedSymbol, j: usize) -> Result<f64> {
    let n = t.order();
    if j == 0 || j >= n {
        return Err(Error::IndexOutOfRange { index: j as i64, order: n });
    }
    let (n, j) = (n as i64, j as i64);
    let mut cross = 0.0;
    for l in 0..j {
        for k in 1..=n - j {
            cross += (t.get(k + l - n) + t.get(k + l)).powi(2);
        }
    }
    let inner: f64 = (j..n).map(|k| (k - j) as f64 * (t.get(k).powi(2) + t.get(-k).powi(2))).sum();
    let wrap: f64 = (1..j)
        .map(|k| (j - k) as f64 * (t.get(n - k).powi(2) + t.get(k - n).powi(2)))
        .sum();
    Ok(2.0 * cross + inner + wrap)
}

/// Closed form of `Σ_{j=1}^{n-1} |T_{-j} ⊕ T_{n-j} − C|²`:
/// `2 Σ_j j(n−j)(t_{-j} + t_{n-j})² + Σ_{j≥2} j(j−1)(t_j² + t_{-j}²)`.
pub fn cp_shells_total_closed(t: &TruncatedSymbol) -> f64 {
    let n = t.order() as i64;
    let first: f64 = (1..n)
        .map(|j| (j * (n - j)) as f64 * (t.get(-j) + t.get(n - j)).powi(2))
        .sum();
    let second: f64 = (2..n)
        .map(|j| (j * (j - 1)) as f64 * (t.get(j).powi(2) + t.get(-j).powi(2)))
        .sum();
    2.0 * first + second
}

/// `|Φ − Φ̃|` (normalized by `n²`), from the blocks.
pub fn hs_distance_cp_direct(t: &TruncatedSymbol) -> f64 {
    let n = t.order() as f64;
    let total = t0_circulant_sq_direct(t) + cp_shells_direct(t).iter().sum::<f64>();
    (total / (n * n)).sqrt()
}

/// `|Φ − Φ̃|` (normalized by `n²`), from the closed forms.
pub fn hs_distance_cp_closed_form(t: &TruncatedSymbol) -> f64 {
    let n = t.order() as f64;
    ((t0_circulant_sq_closed(t) + cp_shells_total_closed(t)) / (n * n)).sqrt()
}

// ---------------------------------------------------------------------------
// WCLT generators

/// Unnormalized pieces of `|L_T − L_C|²` (multiply by `1/n²` for `d_n²`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WcltDistanceParts {
    /// `|T_0 − C|²`.
    pub t0: f64,
    /// `Σ_j |T_{-j} ⊕ T_{n-j} − C|²`.
    pub shells: f64,
    /// `|G_0 + s·1|² = Σ_k (s − s(k))²`.
    pub g0: f64,
    /// `Σ_j |G_{-j} ⊕ G_{n-j} + s·1|²`.
    pub g_shells: f64,
    /// Imaginary contribution to `g_shells`, `Σ_j Σ_k ℐ(k, k+j)²` over both segments.
    pub g_shells_imag: f64,
    /// The full blockwise distance, computed without the decomposition.
    pub direct: f64,
}

impl WcltDistanceParts {
    pub fn reassembled(&self) -> f64 {
        self.t0 + self.shells + self.g0 + self.g_shells
    }
}

/// Distance between the WCLT generator of `c` and its circulant generator.
pub fn wclt_distance_parts(c: &TruncatedWclt) -> WcltDistanceParts {
    let n = c.n;
    let t = c.dissipative_symbol();
    let q = CirculantGenerator::for_wclt(c).expect("rates are non-negative");
    let s = q.s();
    let qm = q.q();
    let ps = PartialSums::new(c);

    // ℛ(k, k+j) − s and ℐ(k, k+j)
    let r_minus_s = |k: usize, j: usize| (ps.s_k[k] + ps.s_k[k + j]) / 2.0 - s;
    let im = |k: usize, j: usize| ps.s_tilde_k[k] - ps.s_tilde_k[k + j];

    let g0: f64 = ps.s_k.iter().map(|sk| (s - sk).powi(2)).sum();
    let (mut g_re, mut g_im) = (0.0, 0.0);
    for j in 1..n {
        for k in 0..n - j {
            g_re += r_minus_s(k, j).powi(2);
            g_im += im(k, j).powi(2);
        }
        for k in 0..j {
            g_re += r_minus_s(k, n - j).powi(2);
            g_im += im(k, n - j).powi(2);
        }
    }

    // Direct: block j of L_T is (T_j + G_{-j}) ⊕ (T_{n-j} + G_{n-j}), compared with Q.
    let mut direct = 0.0;
    for j in 0..n {
        let split = n - j;
        let first = ps.g_block(-(j as i64)).expect("j < n");
        let second = if j == 0 { Vec::new() } else { ps.g_block(split as i64).expect("j < n") };
        for a in 0..n {
            for b in 0..n {
                let same = (a < split) == (b < split);
                let mut z = c64::from(if same { t.get(a as i64 - b as i64) } else { 0.0 });
                if a == b {
                    z += if a < split { first[a] } else { second[a - split] };
                }
                z -= qm.entry(a, b);
                direct += z.norm_sqr();
            }
        }
    }

    WcltDistanceParts {
        t0: t0_circulant_sq_direct(&t),
        shells: cp_shells_direct(&t).iter().sum(),
        g0,
        g_shells: g_re + g_im,
        g_shells_imag: g_im,
        direct,
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyKind {
    Cp,
    Wclt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceRecord {
    pub n: usize,
    /// Strong norm of the Toeplitz-side member.
    pub norm_a: f64,
    /// Strong norm of the circulant-side member.
    pub norm_b: f64,
    pub d_n: f64,
    /// The same distance from the closed forms (CP) or the four-term
    /// decomposition (WCLT).
    pub d_n_closed: f64,
    pub t0_part: f64,
    pub shell_part: f64,
    pub g0_part: Option<f64>,
    pub g_shell_part: Option<f64>,
    pub g_shell_imag_part: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdicts {
    pub bound: f64,
    pub max_norm: f64,
    pub uniform_bound: bool,
    pub monotone: bool,
    pub decay_ratio: f64,
    pub ratio_threshold: f64,
    pub decay: bool,
    pub pass: bool,
}

impl Verdicts {
    fn evaluate(records: &[EquivalenceRecord], bound: f64, ratio_threshold: f64) -> Self {
        let max_norm = records
            .iter()
            .fold(0.0f64, |m, r| m.max(r.norm_a).max(r.norm_b));
        let uniform_bound = max_norm <= bound + BOUND_SLACK;
        let monotone = records
            .windows(2)
            .all(|w| w[1].d_n <= w[0].d_n + MONOTONE_SLACK);
        let first = records.first().map_or(0.0, |r| r.d_n);
        let last = records.last().map_or(0.0, |r| r.d_n);
        let decay_ratio = if first > 0.0 {
            last / first
        } else if last == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        let decay = decay_ratio <= ratio_threshold;
        Self {
            bound,
            max_norm,
            uniform_bound,
            monotone,
            decay_ratio,
            ratio_threshold,
            decay,
            pass: uniform_bound && monotone && decay,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub kind: StudyKind,
    pub grid: Vec<usize>,
    pub records: Vec<EquivalenceRecord>,
    pub verdicts: Verdicts,
}

impl EquivalenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    /// One row per `n`; optional columns are empty for CP studies.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "n,norm_a,norm_b,d_n,d_n_closed,t0_part,shell_part,g0_part,g_shell_part,g_shell_imag_part"
        )?;
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                fmt_f64(r.norm_a),
                fmt_f64(r.norm_b),
                fmt_f64(r.d_n),
                fmt_f64(r.d_n_closed),
                fmt_f64(r.t0_part),
                fmt_f64(r.shell_part),
                opt(r.g0_part),
                opt(r.g_shell_part),
                opt(r.g_shell_imag_part),
            )?;
        }
        Ok(())
    }
}

/// CP Toeplitz maps against CP circulant maps of the same symbol.
///
/// Strong norms: `‖Φ‖ = ‖T_0‖`, `‖Φ̃‖ = ‖C‖`. Uniform bound `Σ_j |t_j|`.
pub fn cp_equivalence_study(
    t: &SymbolSequence,
    grid: &[usize],
    ratio_threshold: f64,
) -> Result<EquivalenceReport> {
    validate_grid(grid)?;
    if !t.is_nonnegative() {
        return Err(Error::InvalidSymbol("CP maps need t_j ≥ 0 for all j".into()));
    }
    let records = map_grid(grid, |n| {
        let phi = CpToeplitzMap::from_symbol(t, n)?;
        let circ = CpCirculantMap::from_truncated(phi.symbol())?;
        let tn = phi.symbol();
        let nn = (n * n) as f64;
        let t0 = t0_circulant_sq_direct(tn);
        let shells: f64 = cp_shells_direct(tn).iter().sum();
        log::debug!("cp study n={n} done");
        Ok(EquivalenceRecord {
            n,
            norm_a: phi.strong_norm()?,
            norm_b: circ.strong_norm(),
            d_n: ((t0 + shells) / nn).sqrt(),
            d_n_closed: hs_distance_cp_closed_form(tn),
            t0_part: t0 / nn,
            shell_part: shells / nn,
            g0_part: None,
            g_shell_part: None,
            g_shell_imag_part: None,
        })
    })?;
    let verdicts = Verdicts::evaluate(&records, t.l1_norm(), ratio_threshold);
    Ok(EquivalenceReport { kind: StudyKind::Cp, grid: grid.to_vec(), records, verdicts })
}

/// WCLT generators against the circulant generators `Φ̃ − s·id`.
///
/// Uniform bound `2‖Γ‖₁ + ‖ζ‖₁`: the dissipative part is bounded by `‖Γ‖₁`,
/// and `|G_l(k)| ≤ s + Σ|ζ|`.
pub fn wclt_equivalence_study(
    c: &WcltCoefficients,
    grid: &[usize],
    ratio_threshold: f64,
) -> Result<EquivalenceReport> {
    validate_grid(grid)?;
    let records = map_grid(grid, |n| {
        let coeffs = c.truncate(n);
        let lt = WcltGenerator::new(coeffs.clone())?;
        let lc = CirculantGenerator::for_wclt(&coeffs)?;
        let parts = wclt_distance_parts(&coeffs);
        let nn = (n * n) as f64;
        log::debug!("wclt study n={n} done");
        Ok(EquivalenceRecord {
            n,
            norm_a: lt.strong_norm()?,
            norm_b: lc.strong_norm(),
            d_n: (parts.direct / nn).sqrt(),
            d_n_closed: (parts.reassembled() / nn).sqrt(),
            t0_part: parts.t0 / nn,
            shell_part: parts.shells / nn,
            g0_part: Some(parts.g0 / nn),
            g_shell_part: Some(parts.g_shells / nn),
            g_shell_imag_part: Some(parts.g_shells_imag / nn),
        })
    })?;
    let bound = 2.0 * c.gamma_l1() + c.zeta_l1();
    let verdicts = Verdicts::evaluate(&records, bound, ratio_threshold);
    Ok(EquivalenceReport { kind: StudyKind::Wclt, grid: grid.to_vec(), records, verdicts })
}

// ---------------------------------------------------------------------------
// Moments

/// `(1/n) tr(T^s)` for `s = 1..=s_max`.
///
/// Hermitian symbols go through the eigenvalues of `T_0`. Otherwise the
/// traces of powers are used directly: eigenvalues of non-normal Toeplitz
/// matrices are too ill-conditioned for their powers to be meaningful.
pub fn toeplitz_moments(t: &TruncatedSymbol, s_max: u32) -> Result<Vec<c64>> {
    let n = t.order();
    let tm = ToeplitzMatrix::from_truncated(t.clone());
    if t.is_hermitian() {
        let ev = hermitian_eigenvalues(tm.to_dense().as_ref())?;
        return Ok((1..=s_max)
            .map(|s| c64::from(ev.iter().map(|l| l.powi(s as i32)).sum::<f64>() / n as f64))
            .collect());
    }
    let a = tm.to_dense_real();
    let mut p = a.clone();
    let mut out = Vec::with_capacity(s_max as usize);
    for s in 1..=s_max {
        if s > 1 {
            p = &p * &a;
        }
        let tr: f64 = (0..n).map(|i| p[(i, i)]).sum();
        out.push(c64::from(tr / n as f64));
    }
    Ok(out)
}

/// `(1/n) Σ_k γ_k^s` for `s = 1..=s_max`.
pub fn circulant_moments(c: &CirculantMatrix, s_max: u32) -> Vec<c64> {
    let ev = c.eigenvalues();
    let n = ev.len() as f64;
    (1..=s_max)
        .map(|s| ev.iter().map(|z| z.powu(s)).sum::<c64>() / n)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRecord {
    pub n: usize,
    pub s: u32,
    pub toeplitz: [f64; 2],
    pub circulant: [f64; 2],
    pub limit: [f64; 2],
    /// `|toeplitz − circulant|`.
    pub gap: f64,
    /// `|toeplitz − limit|`.
    pub gap_limit: f64,
}

/// `gap(n) ≤ K/n` with `K` fitted on the two smallest grid points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentFit {
    pub s: u32,
    pub k: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub hermitian: bool,
    pub s_max: u32,
    pub grid: Vec<usize>,
    pub records: Vec<MomentRecord>,
    pub fits: Vec<MomentFit>,
}

impl MomentReport {
    pub fn get(&self, n: usize, s: u32) -> Option<&MomentRecord> {
        self.records.iter().find(|r| r.n == n && r.s == s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "n,s,toeplitz_re,toeplitz_im,circulant_re,circulant_im,limit_re,limit_im,gap,gap_limit"
        )?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.s,
                fmt_f64(r.toeplitz[0]),
                fmt_f64(r.toeplitz[1]),
                fmt_f64(r.circulant[0]),
                fmt_f64(r.circulant[1]),
                fmt_f64(r.limit[0]),
                fmt_f64(r.limit[1]),
                fmt_f64(r.gap),
                fmt_f64(r.gap_limit),
            )?;
        }
        Ok(())
    }
}

/// Relative slack on the `K/n` check beyond the fitted points.
const FIT_SLACK: f64 = 1e-9;

/// Eigenvalue moments of `T_0^{(n)}` and `C^{(n)}` against the symbol moment
/// `(1/2π) ∫ f^s` of the full symbol.
pub fn moment_compare(t: &SymbolSequence, s_max: u32, grid: &[usize]) -> Result<MomentReport> {
    validate_grid(grid)?;
    if s_max == 0 {
        return Err(Error::InvalidGrid("s_max must be at least 1".into()));
    }
    let window = t.converged_order(1e-17);
    let limits: Vec<c64> = (1..=s_max).map(|s| t.moment_complex(s, window)).collect();
    let per_n = map_grid(grid, |n| {
        let tn = t.truncate(n);
        Ok((
            n,
            toeplitz_moments(&tn, s_max)?,
            circulant_moments(&CirculantMatrix::from_truncated(&tn), s_max),
        ))
    })?;
    let pair = |z: c64| [z.re, z.im];
    let mut records = Vec::new();
    for (n, tm, cm) in &per_n {
        for s in 1..=s_max {
            let i = (s - 1) as usize;
            records.push(MomentRecord {
                n: *n,
                s,
                toeplitz: pair(tm[i]),
                circulant: pair(cm[i]),
                limit: pair(limits[i]),
                gap: (tm[i] - cm[i]).norm(),
                gap_limit: (tm[i] - limits[i]).norm(),
            });
        }
    }
    let fits = (1..=s_max)
        .map(|s| {
            let scaled: Vec<f64> = records
                .iter()
                .filter(|r| r.s == s)
                .map(|r| r.gap * r.n as f64)
                .collect();
            let k = scaled.iter().take(2).fold(0.0f64, |m, v| m.max(*v));
            let holds = scaled.iter().skip(2).all(|v| *v <= k * (1.0 + FIT_SLACK) + 1e-10);
            MomentFit { s, k, holds }
        })
        .collect();
    Ok(MomentReport {
        hermitian: t.is_hermitian(),
        s_max,
        grid: grid.to_vec(),
        records,
        fits,
    })
}

// ---------------------------------------------------------------------------
// Histograms

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Histogram {
    Real { edges: Vec<f64>, counts: Vec<usize> },
    Complex { re_edges: Vec<f64>, im_edges: Vec<f64>, counts: Vec<Vec<usize>> },
}

impl Histogram {
    pub fn total(&self) -> usize {
        match self {
            Histogram::Real { counts, .. } => counts.iter().sum(),
            Histogram::Complex { counts, .. } => counts.iter().flatten().sum(),
        }
    }

    /// `bin_left,bin_right,count`, or for complex spectra
    /// `re_left,re_right,im_left,im_right,count`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        match self {
            Histogram::Real { edges, counts } => {
                writeln!(w, "bin_left,bin_right,count")?;
                for (i, c) in counts.iter().enumerate() {
                    writeln!(w, "{},{},{}", fmt_f64(edges[i]), fmt_f64(edges[i + 1]), c)?;
                }
            }
            Histogram::Complex { re_edges, im_edges, counts } => {
                writeln!(w, "re_left,re_right,im_left,im_right,count")?;
                for (i, row) in counts.iter().enumerate() {
                    for (k, c) in row.iter().enumerate() {
                        writeln!(
                            w,
                            "{},{},{},{},{}",
                            fmt_f64(re_edges[i]),
                            fmt_f64(re_edges[i + 1]),
                            fmt_f64(im_edges[k]),
                            fmt_f64(im_edges[k + 1]),
                            c
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
    (0..=bins)
        .map(|i| if i == bins { hi } else { lo + (hi - lo) * i as f64 / bins as f64 })
        .collect()
}

fn bin_of(x: f64, e: &[f64]) -> usize {
    let bins = e.len() - 1;
    let (lo, hi) = (e[0], e[bins]);
    (((x - lo) / (hi - lo) * bins as f64).floor().max(0.0) as usize).min(bins - 1)
}

/// Counts over `[min, max]` of the values. Spectra with a non-negligible
/// imaginary part get a `bins × bins` grid over the bounding box.
pub fn eigenvalue_histogram(values: &[c64], bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::InvalidGrid("at least one bin is needed".into()));
    }
    if values.is_empty() {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let scale = values.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let range = |f: fn(&c64) -> f64| {
        values.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (re_lo, re_hi) = range(|z| z.re);
    let (im_lo, im_hi) = range(|z| z.im);
    let re_edges = edges(re_lo, re_hi, bins);
    if im_lo.abs().max(im_hi.abs()) <= 1e-12 * scale {
        let mut counts = vec![0; bins];
        for z in values {
            counts[bin_of(z.re, &re_edges)] += 1;
        }
        return Ok(Histogram::Real { edges: re_edges, counts });
    }
    let im_edges = edges(im_lo, im_hi, bins);
    let mut counts = vec![vec![0; bins]; bins];
    for z in values {
        counts[bin_of(z.re, &re_edges)][bin_of(z.im, &im_edges)] += 1;
    }
    Ok(Histogram::Complex { re_edges, im_edges, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use approx::assert_abs_diff_eq;

    fn sym(pairs: &[(i64, f64)]) -> SymbolSequence {
        SymbolSequence::explicit(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn two_by_two_distance() {
        let t = sym(&[(0, 1.0), (1, 0.5), (-1, 0.25)]).truncate(2);
        assert_abs_diff_eq!(t0_circulant_sq_direct(&t), 0.3125, epsilon = 1e-15);
        assert_abs_diff_eq!(cp_shells_direct(&t)[0], 1.125, epsilon = 1e-15);
        assert_abs_diff_eq!(cp_shells_total_closed(&t), 1.125, epsilon = 1e-15);
        assert_abs_diff_eq!(hs_distance_cp_direct(&t).powi(2), 0.359375, epsilon = 1e-15);
        assert_abs_diff_eq!(hs_distance_cp_closed_form(&t).powi(2), 0.359375, epsilon = 1e-15);
    }

    #[test]
    fn delta_symbol_has_zero_distance() {
        let t = SymbolSequence::delta(1.7);
        for n in [1, 2, 9] {
            let tn = t.truncate(n);
            assert_eq!(hs_distance_cp_direct(&tn), 0.0);
            assert_eq!(hs_distance_cp_closed_form(&tn), 0.0);
        }
    }

    #[test]
    fn closed_forms_match_blocks() {
        let mut rng = Rng::new(37);
        for n in [2, 3, 7, 16, 31] {
            let t = rng.symbol(n, 5, true);
            let direct = cp_shells_direct(&t);
            for (j, d) in direct.iter().enumerate() {
                let c = cp_shell_closed(&t, j + 1).unwrap();
                assert!((c - d).abs() <= 1e-10 * d.max(1.0), "n={n} j={}: {c} vs {d}", j + 1);
            }
            let total: f64 = direct.iter().sum();
            assert!((cp_shells_total_closed(&t) - total).abs() <= 1e-10 * total.max(1.0));
            let t0 = t0_circulant_sq_direct(&t);
            assert!((t0_circulant_sq_closed(&t) - t0).abs() <= 1e-10 * t0.max(1.0));
        }
        assert!(cp_shell_closed(&Rng::new(1).symbol(4, 2, true), 4).is_err());
    }

    #[test]
    fn wclt_parts_reassemble() {
        let mut rng = Rng::new(41);
        for n in [1, 2, 5, 17] {
            let p = wclt_distance_parts(&rng.wclt(n));
            assert!((p.reassembled() - p.direct).abs() <= 1e-10 * p.direct.max(1.0));
        }
    }

    #[test]
    fn verdict_edge_cases() {
        let rep = cp_equivalence_study(&SymbolSequence::delta(1.0), &[2, 4, 8], 0.5).unwrap();
        assert!(rep.records.iter().all(|r| r.d_n == 0.0));
        assert!(rep.verdicts.pass);
        assert!(cp_equivalence_study(&SymbolSequence::delta(1.0), &[4, 4], 0.5).is_err());
        assert!(cp_equivalence_study(&SymbolSequence::delta(1.0), &[], 0.5).is_err());
        assert!(cp_equivalence_study(&sym(&[(1, -1.0)]), &[4], 0.5).is_err());
    }

    #[test]
    fn moment_examples() {
        let t = sym(&[(-1, 1.0), (0, 2.0), (1, 1.0)]);
        let rep = moment_compare(&t, 2, &[4, 8, 16]).unwrap();
        for n in [4, 8, 16] {
            let r1 = rep.get(n, 1).unwrap();
            assert_abs_diff_eq!(r1.toeplitz[0], 2.0, epsilon = 1e-12);
            let r2 = rep.get(n, 2).unwrap();
            assert_abs_diff_eq!(r2.toeplitz[0], 6.0 - 2.0 / n as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(r2.circulant[0], 6.0, epsilon = 1e-12);
            assert_abs_diff_eq!(r2.limit[0], 6.0, epsilon = 1e-12);
        }
        let c = SymbolSequence::delta(1.5);
        let rep = moment_compare(&c, 3, &[3, 5]).unwrap();
        for r in &rep.records {
            let expect = 1.5f64.powi(r.s as i32);
            assert_abs_diff_eq!(r.toeplitz[0], expect, epsilon = 1e-12);
            assert_abs_diff_eq!(r.circulant[0], expect, epsilon = 1e-12);
            assert_abs_diff_eq!(r.limit[0], expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn non_hermitian_moments_use_traces() {
        let t = sym(&[(0, 1.0), (1, 0.5), (-1, 0.25)]).truncate(3);
        let m = toeplitz_moments(&t, 2).unwrap();
        // tr(T²) = 3·1 + 2·2·(0.5·0.25) = 3.5
        assert_abs_diff_eq!(m[1].re, 3.5 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn histogram_examples() {
        let vals = vec![c64::from(2.0); 4];
        match eigenvalue_histogram(&vals, 1).unwrap() {
            Histogram::Real { counts, .. } => assert_eq!(counts, vec![4]),
            other => panic!("{other:?}"),
        }
        let mixed = [c64::new(0.0, 1.0), c64::new(1.0, -1.0), c64::new(0.5, 0.0)];
        let h = eigenvalue_histogram(&mixed, 3).unwrap();
        assert!(matches!(h, Histogram::Complex { .. }));
        assert_eq!(h.total(), 3);
        assert!(eigenvalue_histogram(&mixed, 0).is_err());
    }

    #[test]
    fn csv_has_one_row_per_n() {
        let rep = cp_equivalence_study(&SymbolSequence::geometric(1.0, 0.5).unwrap(), &[4, 8], 0.9).unwrap();
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(1).unwrap().ends_with(",,,"));
    }
}
