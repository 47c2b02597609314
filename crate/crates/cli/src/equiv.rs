use clap::{Args, ValueEnum};

use qmsa::asymptotics::{
    cp_equivalence_study, fmt_f64, wclt_equivalence_study, EquivalenceReport, DEFAULT_DECAY_RATIO,
};

use crate::{parse_coeffs, parse_grid, parse_symbol, positive, to_json, Failure, OutArgs, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    /// CP Toeplitz map against the CP circulant map of the same symbol.
    Cp,
    /// WCLT generator against its circulant generator.
    Wclt,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    #[arg(value_enum)]
    study: Study,
    /// Symbol: JSON, `geo:<r>`, `delta:<c>`, or a file holding one of those.
    #[arg(long)]
    symbol: Option<String>,
    /// WCLT coefficients: JSON, `geo:<r>[,<r>]`, or a file.
    #[arg(long)]
    coeffs: Option<String>,
    /// Comma-separated orders.
    #[arg(long)]
    grid: Option<String>,
    /// Largest allowed d_n(last) / d_n(first).
    #[arg(long, default_value_t = DEFAULT_DECAY_RATIO)]
    ratio: f64,
    /// Relative tolerance between the direct and closed-form distances.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

pub fn run(a: &EquivArgs) -> Outcome {
    let grid = parse_grid(a.grid.as_deref())?;
    let ratio = positive("--ratio", a.ratio)?;
    let tol = positive("--tol", a.tol)?;
    let (report, stem) = match a.study {
        Study::Cp => {
            let spec = a.symbol.as_deref().ok_or_else(|| Failure::new("equiv cp needs --symbol"))?;
            if a.coeffs.is_some() {
                return Err(Failure::new("--coeffs applies to `equiv wclt` only"));
            }
            (cp_equivalence_study(&parse_symbol(spec)?, &grid, ratio)?, "equiv_cp")
        }
        Study::Wclt => {
            let spec = a.coeffs.as_deref().ok_or_else(|| Failure::new("equiv wclt needs --coeffs"))?;
            if a.symbol.is_some() {
                return Err(Failure::new("--symbol applies to `equiv cp` only"));
            }
            (wclt_equivalence_study(&parse_coeffs(spec)?, &grid, ratio)?, "equiv_wclt")
        }
    };

    let closed_ok = print_records(&report, tol);
    let v = &report.verdicts;
    println!(
        "uniform bound {}: max norm {} <= {}",
        verdict(v.uniform_bound),
        fmt_f64(v.max_norm),
        fmt_f64(v.bound)
    );
    println!(
        "decay {}: d_n ratio {} <= {}",
        verdict(v.decay),
        fmt_f64(v.decay_ratio),
        fmt_f64(v.ratio_threshold)
    );
    println!("monotone {}", if v.monotone { "yes" } else { "no" });
    println!("closed form {}", verdict(closed_ok));

    a.out.write(&format!("{stem}.json"), &to_json(&report))?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv).expect("writing to memory");
    a.out.write(&format!("{stem}.csv"), &csv)?;

    Ok(v.uniform_bound && v.decay && closed_ok)
}

fn print_records(report: &EquivalenceReport, tol: f64) -> bool {
    let mut ok = true;
    for r in &report.records {
        let rel = (r.d_n - r.d_n_closed).abs() / r.d_n.max(1.0);
        ok &= rel <= tol;
        println!(
            "n={:<6} d_n={} closed={} norm_a={} norm_b={}",
            r.n,
            fmt_f64(r.d_n),
            fmt_f64(r.d_n_closed),
            fmt_f64(r.norm_a),
            fmt_f64(r.norm_b)
        );
    }
    ok
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
