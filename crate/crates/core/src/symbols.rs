//! Generating sequences.
//!
//! A [`SymbolSequence`] is a two-sided real sequence `{t_j}` in the Wiener
//! class (absolutely summable). It generates the Toeplitz matrices
//! `T_n = (t_{i-k})`, the circulant matrices built from them, and the CP maps
//! of [`crate::superop`]. The associated symbol function is
//! `f(η) = Σ_k t_k e^{ikη}`.
//!
//! [`WcltCoefficients`] holds the four one-sided sequences `Γ⁺_m, Γ⁻_m, ζ⁺_m,
//! ζ⁻_m` (m ≥ 1) of a WCLT generator. Rates must be non-negative; the
//! Hamiltonian weights `ζ` may have any sign.
//!
//! Sequences are evaluated per matrix order `n` through a truncation window
//! `|j| ≤ n - 1` ([`TruncatedSymbol`], [`TruncatedWclt`]).

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::{c64, Error, Result};

/// Two-sided generating sequence `{t_j}`.
///
/// JSON form: `{"kind":"explicit","coeffs":{"-1":0.25,"0":1.0,"1":0.5}}` or
/// `{"kind":"geometric","scale":1.0,"ratio":0.5}` (`t_j = scale·ratio^|j|`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawSymbol")]
pub enum SymbolSequence {
    /// Finite support, keyed by signed index.
    Explicit { coeffs: BTreeMap<i64, f64> },
    /// `t_j = scale · ratio^{|j|}` with `scale > 0`, `0 < ratio < 1`.
    Geometric { scale: f64, ratio: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawSymbol {
    Explicit { coeffs: BTreeMap<String, f64> },
    Geometric { scale: f64, ratio: f64 },
}

impl TryFrom<RawSymbol> for SymbolSequence {
    type Error = Error;

    fn try_from(raw: RawSymbol) -> Result<Self> {
        match raw {
            RawSymbol::Explicit { coeffs } => Self::explicit(parse_keys(coeffs)?),
            RawSymbol::Geometric { scale, ratio } => Self::geometric(scale, ratio),
        }
    }
}

/// Map keys arrive as JSON strings; buffered (tagged/untagged) deserialization
/// does not convert them to integers, so it is done here.
fn parse_keys<K: std::str::FromStr>(raw: BTreeMap<String, f64>) -> Result<Vec<(K, f64)>> {
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<K>()
                .map(|k| (k, v))
                .map_err(|_| Error::InvalidSymbol(format!("index key '{k}' is not an integer")))
        })
        .collect()
}

impl SymbolSequence {
    pub fn explicit(coeffs: impl IntoIterator<Item = (i64, f64)>) -> Result<Self> {
        let coeffs: BTreeMap<i64, f64> = coeffs.into_iter().collect();
        if let Some((j, v)) = coeffs.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidSymbol(format!("t_{j} = {v} is not finite")));
        }
        Ok(Self::Explicit { coeffs })
    }

    pub fn geometric(scale: f64, ratio: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidSymbol(format!(
                "geometric scale must be > 0, got {scale}"
            )));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidSymbol(format!(
                "geometric ratio must lie in (0, 1), got {ratio}"
            )));
        }
        Ok(Self::Geometric { scale, ratio })
    }

    /// The constant symbol `t_0 = c`, all other coefficients zero.
    pub fn delta(c: f64) -> Self {
        Self::Explicit {
            coeffs: BTreeMap::from([(0, c)]),
        }
    }

    /// Parses either the JSON form or a shorthand: `geo:<ratio>` (scale 1)
    /// or `delta:<c>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            return Ok(serde_json::from_str(spec)?);
        }
        let number = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidSymbol(format!("'{spec}': {e}")))
        };
        match spec.split_once(':') {
            Some(("geo", r)) => Self::geometric(1.0, number(r)?),
            Some(("delta", c)) => Self::explicit([(0, number(c)?)]),
            _ => Err(Error::InvalidSymbol(format!(
                "'{spec}' is neither JSON nor a geo:<r> / delta:<c> shorthand"
            ))),
        }
    }

    pub fn coeff(&self, j: i64) -> f64 {
        match self {
            Self::Explicit { coeffs } => coeffs.get(&j).copied().unwrap_or(0.0),
            Self::Geometric { scale, ratio } => scale * ratio.powi(j.unsigned_abs() as i32),
        }
    }

    /// Coefficients inside the window `|j| ≤ n - 1`.
    pub fn truncate(&self, n: usize) -> TruncatedSymbol {
        TruncatedSymbol::from_fn(n, |j| self.coeff(j))
    }

    /// `Σ_j |t_j|` over the whole (untruncated) sequence.
    pub fn l1_norm(&self) -> f64 {
        match self {
            Self::Explicit { coeffs } => coeffs.values().map(|v| v.abs()).sum(),
            Self::Geometric { scale, ratio } => scale * (1.0 + ratio) / (1.0 - ratio),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Self::Explicit { coeffs } => coeffs.values().all(|&v| v >= 0.0),
            Self::Geometric { .. } => true,
        }
    }

    /// `t_{-j} = t_j` for all j (the symbol function is then real).
    pub fn is_hermitian(&self) -> bool {
        match self {
            Self::Explicit { coeffs } => coeffs.keys().all(|&j| self.coeff(-j) == self.coeff(j)),
            Self::Geometric { .. } => true,
        }
    }

    /// Largest `|j|` with a stored coefficient; `None` for infinite support.
    pub fn support_radius(&self) -> Option<usize> {
        match self {
            Self::Explicit { coeffs } => Some(
                coeffs
                    .iter()
                    .filter(|(_, v)| **v != 0.0)
                    .map(|(j, _)| j.unsigned_abs() as usize)
                    .max()
                    .unwrap_or(0),
            ),
            Self::Geometric { .. } => None,
        }
    }

    /// A window order beyond which the neglected tail is below `rel_tol`
    /// relative to `Σ|t_j|`. Used to evaluate limits of the full symbol.
    pub fn converged_order(&self, rel_tol: f64) -> usize {
        match self {
            Self::Explicit { .. } => self.support_radius().unwrap_or(0) + 1,
            Self::Geometric { ratio, .. } => {
                // tail Σ_{|j|≥m} r^|j| / Σ r^|j| = 2 r^m / (1 + r)
                let m = (rel_tol * (1.0 + ratio) / 2.0).ln() / ratio.ln();
                m.ceil().max(1.0) as usize + 1
            }
        }
    }

    /// `Σ_{|k| ≤ n-1} t_k e^{ikη}`.
    pub fn eval(&self, eta: f64, n: usize) -> c64 {
        self.truncate(n).eval(eta)
    }

    /// `(1/2π) ∫ f(η)^s dη` of the window-`n` symbol. Real only for Hermitian
    /// symbols; use [`Self::moment_complex`] otherwise.
    pub fn moment(&self, s: u32, n: usize) -> Result<f64> {
        self.truncate(n).moment(s)
    }

    pub fn moment_complex(&self, s: u32, n: usize) -> c64 {
        self.truncate(n).moment_complex(s)
    }
}

/// The coefficients `t_j`, `|j| ≤ n - 1`, of a symbol at matrix order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSymbol {
    n: usize,
    // index j + n - 1
    coeffs: Vec<f64>,
}

impl TruncatedSymbol {
    pub fn from_fn(n: usize, mut f: impl FnMut(i64) -> f64) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        let r = n as i64 - 1;
        Self {
            n,
            coeffs: (-r..=r).map(&mut f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `t_j`, zero outside the window.
    pub fn get(&self, j: i64) -> f64 {
        let r = self.n as i64 - 1;
        if j.abs() > r {
            0.0
        } else {
            self.coeffs[(j + r) as usize]
        }
    }

    /// `(j, t_j)` for `j = -(n-1)..=n-1`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let r = self.n as i64 - 1;
        self.coeffs.iter().enumerate().map(move |(i, &v)| (i as i64 - r, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v.abs()).sum()
    }

    pub fn is_hermitian(&self) -> bool {
        (1..self.n as i64).all(|j| self.get(j) == self.get(-j))
    }

    /// Fails with the first negative coefficient, if any.
    pub fn check_nonnegative(&self) -> Result<()> {
        match self.iter().find(|(_, v)| *v < 0.0 || v.is_nan()) {
            Some((index, value)) => Err(Error::NegativeCoefficient { index, value }),
            None => Ok(()),
        }
    }

    pub fn eval(&self, eta: f64) -> c64 {
        self.iter()
            .filter(|(_, t)| *t != 0.0)
            .map(|(k, t)| c64::from_polar(t, k as f64 * eta))
            .sum()
    }

    /// Trapezoid rule with `nodes` equispaced points on `[0, 2π)`; exact for
    /// `f^s` whenever `nodes > s (n - 1)`.
    pub fn moment_with_nodes(&self, s: u32, nodes: usize) -> c64 {
        let total: c64 = (0..nodes)
            .map(|k| self.eval(TAU * k as f64 / nodes as f64).powu(s))
            .sum();
        total / nodes as f64
    }

    pub fn moment_complex(&self, s: u32) -> c64 {
        self.moment_with_nodes(s, 2 * s as usize * self.n + 1)
    }

    pub fn moment(&self, s: u32) -> Result<f64> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        Ok(self.moment_complex(s).re)
    }
}

/// A one-sided sequence `a_m`, `m ≥ 1`.
///
/// JSON: either a map `{"1":0.5,"2":0.25}` or a rule
/// `{"kind":"geometric","scale":1.0,"ratio":0.6}` meaning `a_m = scale·ratio^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, try_from = "RawOneSided")]
pub enum OneSidedSequence {
    Rule(GeometricRule),
    Explicit(BTreeMap<u32, f64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawOneSided {
    Rule(GeometricRule),
    Explicit(BTreeMap<String, f64>),
}

impl TryFrom<RawOneSided> for OneSidedSequence {
    type Error = Error;

    fn try_from(raw: RawOneSided) -> Result<Self> {
        Ok(match raw {
            RawOneSided::Rule(r) => Self::Rule(r),
            RawOneSided::Explicit(map) => Self::explicit(parse_keys::<u32>(map)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricRule {
    kind: RuleKind,
    pub scale: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RuleKind {
    Geometric,
}

impl Default for OneSidedSequence {
    fn default() -> Self {
        Self::Explicit(BTreeMap::new())
    }
}

impl OneSidedSequence {
    pub fn geometric(scale: f64, ratio: f64) -> Self {
        Self::Rule(GeometricRule {
            kind: RuleKind::Geometric,
            scale,
            ratio,
        })
    }

    pub fn explicit(values: impl IntoIterator<Item = (u32, f64)>) -> Self {
        Self::Explicit(values.into_iter().collect())
    }

    pub fn get(&self, m: usize) -> f64 {
        if m == 0 {
            return 0.0;
        }
        match self {
            Self::Rule(r) => r.scale * r.ratio.powi(m as i32),
            Self::Explicit(map) => u32::try_from(m)
                .ok()
                .and_then(|m| map.get(&m))
                .copied()
                .unwrap_or(0.0),
        }
    }

    pub fn l1_norm(&self) -> f64 {
        match self {
            Self::Rule(r) => r.scale.abs() * r.ratio / (1.0 - r.ratio),
            Self::Explicit(map) => map.values().map(|v| v.abs()).sum(),
        }
    }

    fn validate(&self, name: &str, nonnegative: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCoefficients(format!("{name}: {msg}")));
        match self {
            Self::Rule(r) => {
                if !(r.ratio > 0.0 && r.ratio < 1.0) {
                    return bad(format!("ratio must lie in (0, 1), got {}", r.ratio));
                }
                if !r.scale.is_finite() || (nonnegative && r.scale < 0.0) {
                    return bad(format!("invalid scale {}", r.scale));
                }
            }
            Self::Explicit(map) => {
                if map.contains_key(&0) {
                    return bad("indices start at m = 1".into());
                }
                for (&m, &v) in map {
                    if !v.is_finite() {
                        return bad(format!("value at m = {m} is not finite"));
                    }
                    if nonnegative && v < 0.0 {
                        return Err(Error::NegativeCoefficient {
                            index: i64::from(m),
                            value: v,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rates `Γ±_m ≥ 0` and Hamiltonian weights `ζ±_m ∈ ℝ` of a WCLT generator.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWclt")]
pub struct WcltCoefficients {
    pub gamma_plus: OneSidedSequence,
    pub gamma_minus: OneSidedSequence,
    pub zeta_plus: OneSidedSequence,
    pub zeta_minus: OneSidedSequence,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWclt {
    #[serde(default)]
    gamma_plus: OneSidedSequence,
    #[serde(default)]
    gamma_minus: OneSidedSequence,
    #[serde(default)]
    zeta_plus: OneSidedSequence,
    #[serde(default)]
    zeta_minus: OneSidedSequence,
}

impl TryFrom<RawWclt> for WcltCoefficients {
    type Error = Error;

    fn try_from(raw: RawWclt) -> Result<Self> {
        Self::new(raw.gamma_plus, raw.gamma_minus, raw.zeta_plus, raw.zeta_minus)
    }
}

impl WcltCoefficients {
    pub fn new(
        gamma_plus: OneSidedSequence,
        gamma_minus: OneSidedSequence,
        zeta_plus: OneSidedSequence,
        zeta_minus: OneSidedSequence,
    ) -> Result<Self> {
        gamma_plus.validate("gamma_plus", true)?;
        gamma_minus.validate("gamma_minus", true)?;
        zeta_plus.validate("zeta_plus", false)?;
        zeta_minus.validate("zeta_minus", false)?;
        Ok(Self {
            gamma_plus,
            gamma_minus,
            zeta_plus,
            zeta_minus,
        })
    }

    /// `Γ±_m = gamma_ratio^m`, `ζ±_m = zeta_ratio^m` (or zero when `None`).
    pub fn geometric(gamma_ratio: f64, zeta_ratio: Option<f64>) -> Result<Self> {
        let zeta = zeta_ratio
            .map(|r| OneSidedSequence::geometric(1.0, r))
            .unwrap_or_default();
        Self::new(
            OneSidedSequence::geometric(1.0, gamma_ratio),
            OneSidedSequence::geometric(1.0, gamma_ratio),
            zeta.clone(),
            zeta,
        )
    }

    /// Parses the JSON form or the shorthand `geo:<Γ ratio>[,<ζ ratio>]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            return Ok(serde_json::from_str(spec)?);
        }
        let number = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidCoefficients(format!("'{spec}': {e}")))
        };
        match spec.split_once(':') {
            Some(("geo", rest)) => match rest.split_once(',') {
                Some((g, z)) => Self::geometric(number(g)?, Some(number(z)?)),
                None => Self::geometric(number(rest)?, None),
            },
            _ => Err(Error::InvalidCoefficients(format!(
                "'{spec}' is neither JSON nor a geo:<r>[,<r>] shorthand"
            ))),
        }
    }

    /// `Σ_m Γ⁺_m + Γ⁻_m` over all m.
    pub fn gamma_l1(&self) -> f64 {
        self.gamma_plus.l1_norm() + self.gamma_minus.l1_norm()
    }

    /// `Σ_m |ζ⁺_m| + |ζ⁻_m|` over all m.
    pub fn zeta_l1(&self) -> f64 {
        self.zeta_plus.l1_norm() + self.zeta_minus.l1_norm()
    }

    /// Coefficients for `m = 1..=n-1`.
    pub fn truncate(&self, n: usize) -> TruncatedWclt {
        assert!(n >= 1, "matrix order must be positive");
        let take = |seq: &OneSidedSequence| (1..n).map(|m| seq.get(m)).collect::<Vec<_>>();
        TruncatedWclt {
            n,
            gamma_plus: take(&self.gamma_plus),
            gamma_minus: take(&self.gamma_minus),
            zeta_plus: take(&self.zeta_plus),
            zeta_minus: take(&self.zeta_minus),
        }
    }
}

/// WCLT coefficients at order `n`: vectors indexed by `m - 1`, `m = 1..n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedWclt {
    pub n: usize,
    pub gamma_plus: Vec<f64>,
    pub gamma_minus: Vec<f64>,
    pub zeta_plus: Vec<f64>,
    pub zeta_minus: Vec<f64>,
}

impl TruncatedWclt {
    /// Builds from explicit vectors (index `m - 1`); all four must have length `n - 1`.
    pub fn from_vecs(
        gamma_plus: Vec<f64>,
        gamma_minus: Vec<f64>,
        zeta_plus: Vec<f64>,
        zeta_minus: Vec<f64>,
    ) -> Result<Self> {
        let len = gamma_plus.len();
        for v in [&gamma_minus, &zeta_plus, &zeta_minus] {
            if v.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: v.len(),
                });
            }
        }
        for (m, &g) in gamma_plus.iter().chain(&gamma_minus).enumerate() {
            if g < 0.0 || g.is_nan() {
                return Err(Error::NegativeCoefficient {
                    index: (m % len.max(1)) as i64 + 1,
                    value: g,
                });
            }
        }
        Ok(Self {
            n: len + 1,
            gamma_plus,
            gamma_minus,
            zeta_plus,
            zeta_minus,
        })
    }

    /// The symbol of the dissipative part: `t_m = Γ⁻_m`, `t_{-m} = Γ⁺_m`, `t_0 = 0`.
    pub fn dissipative_symbol(&self) -> TruncatedSymbol {
        TruncatedSymbol::from_fn(self.n, |j| match j {
            0 => 0.0,
            j if j > 0 => self.gamma_minus[j as usize - 1],
            j => self.gamma_plus[j.unsigned_abs() as usize - 1],
        })
    }

    pub fn gamma_sum(&self) -> f64 {
        self.gamma_plus.iter().chain(&self.gamma_minus).sum()
    }

    pub fn zeta_abs_sum(&self) -> f64 {
        self.zeta_plus.iter().chain(&self.zeta_minus).map(|z| z.abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn tri(t_minus: f64, t0: f64, t_plus: f64) -> SymbolSequence {
        SymbolSequence::explicit([(-1, t_minus), (0, t0), (1, t_plus)]).unwrap()
    }

    #[test]
    fn truncate_pads_with_zeros() {
        let t = SymbolSequence::explicit([(0, 1.0), (1, 0.5)]).unwrap();
        let w = t.truncate(2);
        assert_eq!(w.len(), 3);
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![(-1, 0.0), (0, 1.0), (1, 0.5)]);
        assert_eq!(w.get(5), 0.0);
    }

    #[test]
    fn truncate_geometric_rule() {
        let t = SymbolSequence::geometric(1.0, 0.5).unwrap();
        let w: Vec<f64> = t.truncate(3).iter().map(|(_, v)| v).collect();
        assert_eq!(w, vec![0.25, 0.5, 1.0, 0.5, 0.25]);
    }

    #[test]
    fn truncate_drops_support_outside_window() {
        let t = SymbolSequence::explicit([(-3, 1.0)]).unwrap();
        assert!(t.truncate(2).iter().all(|(_, v)| v == 0.0));
    }

    #[test]
    fn eval_examples() {
        let t = tri(1.0, 2.0, 1.0);
        assert_abs_diff_eq!(t.eval(0.0, 5).re, 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.eval(PI, 5).norm(), 0.0, epsilon = 1e-15);
        let c = SymbolSequence::delta(3.5);
        assert_abs_diff_eq!(c.eval(1.234, 4).re, 3.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.eval(1.234, 4).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn moment_examples() {
        let t = tri(1.0, 2.0, 1.0);
        assert_abs_diff_eq!(t.moment(1, 8).unwrap(), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(t.moment(2, 8).unwrap(), 6.0, epsilon = 1e-13);
        let c = SymbolSequence::delta(1.5);
        assert_abs_diff_eq!(c.moment(3, 4).unwrap(), 1.5f64.powi(3), epsilon = 1e-13);
    }

    #[test]
    fn moment_rejects_non_hermitian() {
        let t = tri(0.25, 1.0, 0.5);
        assert!(matches!(t.moment(2, 4), Err(Error::NotHermitian)));
        // complex moment still available: mean of f^1 is t_0
        assert_abs_diff_eq!(t.moment_complex(1, 4).re, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn window_sum_equals_symbol_at_zero() {
        let t = SymbolSequence::geometric(2.0, 0.3).unwrap();
        for n in [1, 2, 7, 30] {
            let w = t.truncate(n);
            assert_abs_diff_eq!(w.sum(), t.eval(0.0, n).re, epsilon = 1e-12);
        }
    }

    #[test]
    fn geometric_l1_norm() {
        let t = SymbolSequence::geometric(1.0, 0.5).unwrap();
        assert_abs_diff_eq!(t.l1_norm(), 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.truncate(60).l1_norm(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn json_round_trip_and_key_convention() {
        let src = r#"{"kind":"explicit","coeffs":{"-1":0.25,"0":1.0,"1":0.5}}"#;
        let t: SymbolSequence = serde_json::from_str(src).unwrap();
        assert_eq!(t.coeff(-1), 0.25);
        assert_eq!(t.coeff(1), 0.5);
        let back: SymbolSequence = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);

        let g = SymbolSequence::parse(r#"{"kind":"geometric","scale":1.0,"ratio":0.5}"#).unwrap();
        assert_eq!(g, SymbolSequence::geometric(1.0, 0.5).unwrap());
    }

    #[test]
    fn shorthands() {
        assert_eq!(
            SymbolSequence::parse("geo:0.5").unwrap(),
            SymbolSequence::geometric(1.0, 0.5).unwrap()
        );
        assert_eq!(SymbolSequence::parse("delta:2").unwrap(), SymbolSequence::delta(2.0));
        assert!(SymbolSequence::parse("geo:1.5").is_err());
        assert!(SymbolSequence::parse("nope").is_err());
        assert!(SymbolSequence::parse("{\"kind\":\"explicit\"").is_err());
    }

    #[test]
    fn wclt_json_forms() {
        let src = r#"{"gamma_plus":{"1":1.0,"2":2.0},"gamma_minus":{"kind":"geometric","scale":1.0,"ratio":0.6},
                      "zeta_minus":{"1":-0.5}}"#;
        let c = WcltCoefficients::parse(src).unwrap();
        assert_eq!(c.gamma_plus.get(2), 2.0);
        assert_abs_diff_eq!(c.gamma_minus.get(2), 0.36, epsilon = 1e-15);
        assert_eq!(c.zeta_plus.get(1), 0.0);
        assert_eq!(c.zeta_minus.get(1), -0.5);

        let neg = r#"{"gamma_plus":{"1":-1.0}}"#;
        assert!(matches!(
            WcltCoefficients::parse(neg),
            Err(Error::Json(_))
        ));
        assert!(WcltCoefficients::parse(r#"{"gamma_plus":{"0":1.0}}"#).is_err());
        assert!(WcltCoefficients::parse("geo:0.6,0.4").is_ok());
    }

    #[test]
    fn dissipative_symbol_identification() {
        let c = TruncatedWclt::from_vecs(vec![1.0, 2.0], vec![3.0, 4.0], vec![0.0; 2], vec![0.0; 2])
            .unwrap();
        let t = c.dissipative_symbol();
        assert_eq!(t.get(0), 0.0);
        assert_eq!(t.get(1), 3.0);
        assert_eq!(t.get(2), 4.0);
        assert_eq!(t.get(-1), 1.0);
        assert_eq!(t.get(-2), 2.0);
    }
}
