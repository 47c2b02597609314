use serde::Serialize;

use qmsa::asymptotics::fmt_f64;
use qmsa::CMat;

/// One named comparison. `residual ≤ tol` passes; `tol = None` is
/// informational only.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.add(Check {
            name: name.into(),
            residual,
            tol: Some(tol),
            pass: residual <= tol,
        });
    }

    /// Lower bound check: `value ≥ −tol`.
    pub fn push_min(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.add(Check {
            name: name.into(),
            residual: value,
            tol: Some(tol),
            pass: value >= -tol,
        });
    }

    pub fn info(&mut self, name: impl Into<String>, value: f64) {
        self.add(Check { name: name.into(), residual: value, tol: None, pass: true });
    }

    pub fn flag(&mut self, name: impl Into<String>, pass: bool) {
        self.add(Check {
            name: name.into(),
            residual: if pass { 0.0 } else { 1.0 },
            tol: Some(0.0),
            pass,
        });
    }

    fn add(&mut self, c: Check) {
        let status = match (c.tol, c.pass) {
            (None, _) => "info",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        };
        let tol = c.tol.map_or_else(|| "-".to_owned(), fmt_f64);
        println!("{status:<4} {:<28} {} (tol {tol})", c.name, fmt_f64(c.residual));
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m: f64 = 0.0;
    for k in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, k)] - b[(i, k)]).norm());
        }
    }
    m
}

pub fn max_abs(a: &CMat) -> f64 {
    max_abs_diff(a, &CMat::zeros(a.nrows(), a.ncols()))
}
