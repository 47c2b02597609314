use std::fmt::Write as _;

use clap::Args;
use serde::Serialize;

use qmsa::asymptotics::{eigenvalue_histogram, fmt_f64};
use qmsa::linalg::{eigenvalues, match_spectra, BlockDiagonalRep, BlockLabel, CirculantMatrix};
use qmsa::superop::{full_superoperator, CpCirculantMap, CpToeplitzMap, Ordering, FULL_SUPEROPERATOR_MAX};
use qmsa::c64;

use crate::checks::CheckList;
use crate::{parse_symbol, positive, to_json, Failure, MatrixKind, OutArgs, Outcome};

/// Spectra beyond this order would need more than 2^24 eigenvalues.
const MAX_ORDER: usize = 4096;

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Symbol: JSON, `geo:<r>`, `delta:<c>`, or a file holding one of those.
    #[arg(long)]
    symbol: String,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, value_enum, default_value_t = MatrixKind::Toeplitz)]
    kind: MatrixKind,
    /// Histogram bins per axis.
    #[arg(long, default_value_t = 16)]
    bins: usize,
    /// Eigenvalue tolerance, scaled by 1 + Σ|t_j|.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    kind: &'static str,
    n: usize,
    guaranteed: Vec<f64>,
    #[serde(flatten)]
    checks: &'a CheckList,
    pass: bool,
}

pub fn run(a: &SpectrumArgs) -> Outcome {
    let n = a.n;
    if n == 0 || n > MAX_ORDER {
        return Err(Failure::new(format!("--n {n}: need 1 <= n <= {MAX_ORDER}")));
    }
    if a.bins == 0 {
        return Err(Failure::new("--bins must be positive"));
    }
    let t = parse_symbol(&a.symbol)?.truncate(n);
    let tol = positive("--tol", a.tol)? * (1.0 + t.l1_norm());
    let mut checks = CheckList::default();
    let mut guaranteed = Vec::new();

    let (rep, full, kind) = match a.kind {
        MatrixKind::Toeplitz => {
            let phi = CpToeplitzMap::from_signed(t.clone());
            if t.check_nonnegative().is_ok() {
                guaranteed = phi.guaranteed_eigenpairs().into_iter().map(|(l, _)| l).collect();
            }
            let full = if n <= FULL_SUPEROPERATOR_MAX {
                Some(full_superoperator(&phi, Ordering::Diagonal)?)
            } else {
                None
            };
            (phi.block_rep(), full, "toeplitz")
        }
        MatrixKind::Circulant => {
            let phi = CpCirculantMap::from_signed(CirculantMatrix::from_truncated(&t));
            let full = if n <= FULL_SUPEROPERATOR_MAX {
                Some(full_superoperator(&phi, Ordering::Cyclic)?)
            } else {
                None
            };
            (phi.block_rep(), full, "circulant")
        }
    };

    let per_block = sorted_block_eigenvalues(&rep)?;
    let union: Vec<c64> = per_block.iter().flat_map(|(_, v)| v.iter().copied()).collect();
    checks.flag("eigenvalue_count", union.len() == n * n);
    if let Some(full) = full {
        let dense = eigenvalues(full.as_ref())?;
        checks.push("union_vs_full", match_spectra(&union, &dense, f64::INFINITY).max_deviation, tol);
    }
    if !guaranteed.is_empty() {
        let worst = guaranteed
            .iter()
            .map(|&g| union.iter().map(|z| (z - c64::from(g)).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max);
        checks.push("guaranteed_present", worst, tol);
        let list: Vec<String> = guaranteed.iter().map(|&g| fmt_f64(g)).collect();
        println!("guaranteed eigenvalues: {}", list.join(", "));
    }
    if a.kind == MatrixKind::Circulant {
        let dft = CirculantMatrix::from_truncated(&t).eigenvalues();
        let worst = per_block
            .iter()
            .map(|(_, v)| match_spectra(v, &dft, f64::INFINITY).max_deviation)
            .fold(0.0, f64::max);
        checks.push("blocks_vs_dft", worst, tol);
    }

    let pass = checks.all_pass();
    println!("spectrum {}", if pass { "PASS" } else { "FAIL" });

    let mut csv = String::from("block,index,re,im\n");
    for (label, vals) in &per_block {
        for (i, z) in vals.iter().enumerate() {
            writeln!(csv, "{label},{i},{},{}", fmt_f64(z.re), fmt_f64(z.im)).expect("string write");
        }
    }
    a.out.write("spectrum.csv", csv.as_bytes())?;
    let mut hist = Vec::new();
    eigenvalue_histogram(&union, a.bins)?
        .write_csv(&mut hist)
        .expect("writing to memory");
    a.out.write("histogram.csv", &hist)?;
    let report = SpectrumReport { kind, n, guaranteed, checks: &checks, pass };
    a.out.write("spectrum.json", &to_json(&report))?;
    Ok(pass)
}

/// Block eigenvalues, each block sorted by real then imaginary part.
fn sorted_block_eigenvalues(rep: &BlockDiagonalRep) -> Result<Vec<(BlockLabel, Vec<c64>)>, Failure> {
    let mut out = rep.block_eigenvalues()?;
    for (_, v) in &mut out {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    }
    Ok(out)
}
