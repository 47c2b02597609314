use clap::{Args, ValueEnum};
use serde::Serialize;

use qmsa::gksl::{aux_identities, g_operator, CirculantGenerator, WcltGenerator};
use qmsa::linalg::{eigenvalues, match_spectra, CirculantMatrix};
use qmsa::rng::{Rng, DEFAULT_SEED};
use qmsa::superop::{
    cyclic_shift_matrix, full_superoperator, min_choi_eigenvalue, shift_matrix, CpCirculantMap,
    CpToeplitzMap, Ordering, SuperOperator, CHOI_MAX, FULL_SUPEROPERATOR_MAX,
};
use qmsa::symbols::{TruncatedSymbol, TruncatedWclt};
use qmsa::{c64, CMat};

use crate::checks::{max_abs, max_abs_diff, CheckList};
use crate::{parse_coeffs, parse_symbol, positive, to_json, Failure, OutArgs, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Toeplitz,
    Circulant,
    Wclt,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Matrix order (at most 12; Choi checks need at most 8).
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, value_enum, default_value_t = OracleKind::Toeplitz)]
    kind: OracleKind,
    /// Symbol to use instead of a random one (toeplitz/circulant kinds).
    #[arg(long)]
    symbol: Option<String>,
    /// Coefficients to use instead of random ones (wclt kind).
    #[arg(long)]
    coeffs: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Flip the sign of t_1 before building the map.
    #[arg(long)]
    negate_t1: bool,
    /// Require a non-negative Choi spectrum.
    #[arg(long)]
    expect_cp: bool,
    /// Absolute tolerance on residuals, scaled by the instance norm.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct OracleReport<'a> {
    kind: OracleKind,
    n: usize,
    seed: u64,
    #[serde(flatten)]
    checks: &'a CheckList,
    pass: bool,
}

pub fn run(a: &OracleArgs) -> Outcome {
    let n = a.n;
    if n == 0 || n > FULL_SUPEROPERATOR_MAX {
        return Err(Failure::new(format!(
            "--n {n}: dense oracle checks need 1 <= n <= {FULL_SUPEROPERATOR_MAX}"
        )));
    }
    if a.expect_cp && n > CHOI_MAX {
        return Err(Failure::new(format!("--expect-cp: Choi checks need n <= {CHOI_MAX}")));
    }
    let tol = positive("--tol", a.tol)?;
    let mut rng = Rng::new(a.seed);
    let mut checks = CheckList::default();
    match a.kind {
        OracleKind::Toeplitz | OracleKind::Circulant => {
            if a.coeffs.is_some() {
                return Err(Failure::new("--coeffs applies to --kind wclt only"));
            }
            let mut t = match &a.symbol {
                Some(spec) => parse_symbol(spec)?.truncate(n),
                None => rng.symbol(n, n, true),
            };
            if a.negate_t1 {
                let t1 = t.get(1);
                t = TruncatedSymbol::from_fn(n, |j| if j == 1 { -t1 } else { t.get(j) });
            }
            let x = rng.matrix(n, n);
            let scale = 1.0 + t.l1_norm();
            if a.kind == OracleKind::Toeplitz {
                toeplitz_checks(&t, &x, tol * scale, a.expect_cp, &mut checks)?;
            } else {
                circulant_checks(&t, &x, tol * scale, a.expect_cp, &mut checks)?;
            }
        }
        OracleKind::Wclt => {
            if a.symbol.is_some() || a.negate_t1 {
                return Err(Failure::new("--symbol and --negate-t1 apply to toeplitz/circulant kinds"));
            }
            let c = match &a.coeffs {
                Some(spec) => parse_coeffs(spec)?.truncate(n),
                None => rng.wclt(n),
            };
            let x = rng.matrix(n, n);
            let scale = 1.0 + 2.0 * c.gamma_sum() + c.zeta_abs_sum();
            wclt_checks(&c, &x, tol * scale, a.expect_cp, &mut checks)?;
        }
    }

    let pass = checks.all_pass();
    println!("oracle {}", if pass { "PASS" } else { "FAIL" });
    let report = OracleReport { kind: a.kind, n, seed: a.seed, checks: &checks, pass };
    a.out.write("oracle.json", &to_json(&report))?;
    Ok(pass)
}

fn choi(map: &dyn SuperOperator, name: &str, tol: f64, expect_cp: bool, checks: &mut CheckList) -> Result<(), Failure> {
    if map.order() > CHOI_MAX {
        log::info!("{name}: skipped above n = {CHOI_MAX}");
        return Ok(());
    }
    let min = min_choi_eigenvalue(map)?;
    if expect_cp {
        checks.push_min(name, min, tol);
    } else {
        checks.info(name, min);
    }
    Ok(())
}

fn toeplitz_checks(
    t: &TruncatedSymbol,
    x: &CMat,
    tol: f64,
    expect_cp: bool,
    checks: &mut CheckList,
) -> Result<(), Failure> {
    let n = t.order();
    let phi = CpToeplitzMap::from_signed(t.clone());
    let full = full_superoperator(&phi, Ordering::Diagonal)?;
    checks.push("block_vs_full", max_abs_diff(&full, &phi.block_rep().to_dense()), tol);
    checks.push("kraus_sum", max_abs_diff(&phi.apply(x.as_ref())?, &toeplitz_kraus(t, x)), tol);
    choi(&phi, "choi_min_eigenvalue", tol, expect_cp, checks)?;
    if t.check_nonnegative().is_ok() {
        let mut worst: f64 = 0.0;
        for (lambda, v) in phi.guaranteed_eigenpairs() {
            let image = phi.apply(v.as_ref())?;
            let lv = CMat::from_fn(n, n, |i, k| v[(i, k)] * lambda);
            worst = worst.max(max_abs_diff(&image, &lv));
        }
        checks.push("guaranteed_eigenpairs", worst, tol);
    }
    Ok(())
}

fn circulant_checks(
    t: &TruncatedSymbol,
    x: &CMat,
    tol: f64,
    expect_cp: bool,
    checks: &mut CheckList,
) -> Result<(), Failure> {
    let c = CirculantMatrix::from_truncated(t);
    let phi = CpCirculantMap::from_signed(c.clone());
    let full = full_superoperator(&phi, Ordering::Cyclic)?;
    checks.push("block_vs_full", max_abs_diff(&full, &phi.block_rep().to_dense()), tol);
    checks.push("kraus_sum", max_abs_diff(&phi.apply(x.as_ref())?, &circulant_kraus(c.row(), x)), tol);
    choi(&phi, "choi_min_eigenvalue", tol, expect_cp, checks)?;
    let dense = eigenvalues(c.to_dense().as_ref())?;
    checks.push("dft_eigenvalues", match_spectra(&c.eigenvalues(), &dense, f64::INFINITY).max_deviation, tol.max(1e-9));
    Ok(())
}

fn wclt_checks(
    c: &TruncatedWclt,
    x: &CMat,
    tol: f64,
    expect_cp: bool,
    checks: &mut CheckList,
) -> Result<(), Failure> {
    let n = c.n;
    let l = WcltGenerator::new(c.clone())?;
    let full = full_superoperator(&l, Ordering::Diagonal)?;
    checks.push("block_vs_full", max_abs_diff(&full, &l.block_rep().to_dense()), tol);
    let g = shift_sum_g(c);
    checks.push("g_operator", max_abs_diff(&g_operator(c), &g), tol);

    let phi = l.dissipative_part();
    let ga = g.adjoint().to_owned();
    let mut dense = toeplitz_kraus(phi.symbol(), x);
    dense += &ga * x;
    dense += x * &g;
    let image = l.apply(x.as_ref())?;
    checks.push("generator_apply", max_abs_diff(&image, &dense), tol);
    let id = CMat::identity(n, n);
    checks.push("unital", max_abs(&l.apply(id.as_ref())?), tol);
    choi(phi, "dissipative_choi_min", tol, expect_cp, checks)?;

    let lc = CirculantGenerator::for_wclt(c)?;
    let full_c = full_superoperator(&lc, Ordering::Cyclic)?;
    checks.push("circulant_block_vs_full", max_abs_diff(&full_c, &lc.block_rep().to_dense()), tol);
    checks.push("circulant_unital", max_abs(&lc.apply(id.as_ref())?), tol);

    let aux = aux_identities(c);
    checks.push_min("aux_margin", aux.strict_margin, tol);
    checks.push("aux_half_weighted_sum", aux.item2_half_residual, tol);
    checks.push("aux_row_sums", aux.item3_residual, tol);
    checks.info("aux_stated_weighted_sum", aux.item2_residual);
    Ok(())
}

fn powers(m: &CMat, count: usize) -> Vec<CMat> {
    let mut out = vec![CMat::identity(m.nrows(), m.ncols())];
    for p in 1..count {
        let next = &out[p - 1] * m;
        out.push(next);
    }
    out
}

fn scaled(m: &CMat, k: f64) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * k)
}

/// `Σ_{j≥0} t_j S^{*j} x S^j + Σ_{j≥1} t_{-j} S^j x S^{*j}`.
fn toeplitz_kraus(t: &TruncatedSymbol, x: &CMat) -> CMat {
    let n = t.order();
    let mut out = CMat::zeros(n, n);
    for (j, p) in powers(&shift_matrix(n), n).iter().enumerate() {
        let pa = p.adjoint().to_owned();
        out += scaled(&(&pa * x * p), t.get(j as i64));
        if j > 0 {
            out += scaled(&(p * x * &pa), t.get(-(j as i64)));
        }
    }
    out
}

/// `Σ_j c_{(n-j) mod n} J^{*j} x J^j`.
fn circulant_kraus(row: &[f64], x: &CMat) -> CMat {
    let n = row.len();
    let mut out = CMat::zeros(n, n);
    for (j, p) in powers(&cyclic_shift_matrix(n), n).iter().enumerate() {
        let pa = p.adjoint().to_owned();
        out += scaled(&(&pa * x * p), row[(n - j) % n]);
    }
    out
}

/// `Σ_m −(½Γ⁻_m + iζ⁻_m) S^{*m}S^m − (½Γ⁺_m + iζ⁺_m) S^m S^{*m}`.
fn shift_sum_g(c: &TruncatedWclt) -> CMat {
    let n = c.n;
    let mut g = CMat::zeros(n, n);
    for (m, p) in powers(&shift_matrix(n), n).iter().enumerate().skip(1) {
        let pa = p.adjoint().to_owned();
        let lower = c64::new(-0.5 * c.gamma_minus[m - 1], -c.zeta_minus[m - 1]);
        let upper = c64::new(-0.5 * c.gamma_plus[m - 1], -c.zeta_plus[m - 1]);
        let a = &pa * p;
        let b = p * &pa;
        g += CMat::from_fn(n, n, |i, k| a[(i, k)] * lower + b[(i, k)] * upper);
    }
    g
}
