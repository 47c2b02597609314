use clap::Args;

use qmsa::asymptotics::{fmt_f64, moment_compare};

use crate::{parse_grid, parse_symbol, positive, to_json, Failure, OutArgs, Outcome};

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Symbol: JSON, `geo:<r>`, `delta:<c>`, or a file holding one of those.
    #[arg(long)]
    symbol: String,
    /// Highest moment, between 1 and 8.
    #[arg(long, default_value_t = 4)]
    s_max: u32,
    /// Comma-separated orders.
    #[arg(long)]
    grid: Option<String>,
    /// Also require |toeplitz − circulant| ≤ tol at the largest order.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

pub fn run(a: &MomentsArgs) -> Outcome {
    if !(1..=8).contains(&a.s_max) {
        return Err(Failure::new(format!("--s-max {}: must lie in 1..=8", a.s_max)));
    }
    let grid = parse_grid(a.grid.as_deref())?;
    let tol = a.tol.map(|t| positive("--tol", t)).transpose()?;
    let t = parse_symbol(&a.symbol)?;
    let report = moment_compare(&t, a.s_max, &grid)?;
    let last = *grid.last().expect("grid is non-empty");

    let mut pass = true;
    for fit in &report.fits {
        let r = report.get(last, fit.s).expect("record for every (n, s)");
        let within = tol.map_or(true, |tol| r.gap <= tol);
        pass &= fit.holds && within;
        println!(
            "s={} K={} K/n {} gap(n={last})={} limit gap={}{}",
            fit.s,
            fmt_f64(fit.k),
            if fit.holds { "PASS" } else { "FAIL" },
            fmt_f64(r.gap),
            fmt_f64(r.gap_limit),
            match tol {
                Some(_) if !within => " (above --tol)",
                _ => "",
            }
        );
    }
    println!("moments {}", if pass { "PASS" } else { "FAIL" });

    a.out.write("moments.json", &to_json(&report))?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv).expect("writing to memory");
    a.out.write("moments.csv", &csv)?;
    Ok(pass)
}
