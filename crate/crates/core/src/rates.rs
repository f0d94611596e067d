//! Closed-form contraction and averagedness factors for DYS.
//!
//! Every formula is transcribed in its displayed form rather than simplified,
//! so each one can be checked against the source term by term.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which closed form produced a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Strongly monotone + Lipschitz A (or B), cocoercive C.
    Thm31,
    /// Lipschitz on one of A/B, strongly monotone on the other, cocoercive C.
    Thm32,
    /// Lipschitz A (or B), cocoercive and strongly monotone C.
    Thm33,
    /// Averagedness with Lipschitz (not necessarily cocoercive) C, λ = 1.
    Thm41,
    D61,
    D62,
    D63,
    D64,
    D65,
    D66,
}

impl Theorem {
    pub fn label(self) -> &'static str {
        match self {
            Theorem::Thm31 => "3.1",
            Theorem::Thm32 => "3.2",
            Theorem::Thm33 => "3.3",
            Theorem::Thm41 => "4.1",
            Theorem::D61 => "D.6.1",
            Theorem::D62 => "D.6.2",
            Theorem::D63 => "D.6.3",
            Theorem::D64 => "D.6.4",
            Theorem::D65 => "D.6.5",
            Theorem::D66 => "D.6.6",
        }
    }
}

/// Which of A and B carries the distinguished parameter.
///
/// Thm 3.1: the operator that is strongly monotone and Lipschitz.
/// Thm 3.2 and 3.3: the Lipschitz operator. Thm 4.1: the strongly monotone one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    #[default]
    A,
    B,
}

impl Role {
    fn letter(self) -> &'static str {
        match self {
            Role::A => "A",
            Role::B => "B",
        }
    }

    fn other(self) -> Role {
        match self {
            Role::A => Role::B,
            Role::B => Role::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub theorem: Theorem,
    pub role: Role,
    pub rho: f64,
    pub parameters: BTreeMap<String, f64>,
    pub assumptions_verified: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AveragednessReport {
    pub theorem: Theorem,
    pub role: Role,
    pub theta: f64,
    pub parameters: BTreeMap<String, f64>,
    pub assumptions_verified: Vec<String>,
}

/// Collects checked inequalities; the first failure becomes the error.
#[derive(Default)]
struct Assumptions(Vec<String>);

impl Assumptions {
    fn require(&mut self, ok: bool, inequality: &str) -> Result<()> {
        if ok {
            self.0.push(inequality.to_string());
            Ok(())
        } else {
            Err(Error::Precondition(inequality.to_string()))
        }
    }

    fn finite(&mut self, values: &[(&str, f64)]) -> Result<()> {
        for (name, v) in values {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// `0 < α < 4β_C` and `0 < λ < 2 − α/(2β_C)`.
    fn cocoercive_window(&mut self, alpha: f64, lambda: f64, beta_c: f64) -> Result<()> {
        self.finite(&[("alpha", alpha), ("lambda", lambda), ("beta_C", beta_c)])?;
        self.require(beta_c > 0.0, "beta_C > 0")?;
        self.require(alpha > 0.0 && alpha < 4.0 * beta_c, "0 < alpha < 4 beta_C")?;
        self.require(lambda > 0.0, "lambda > 0")?;
        self.require(lambda < 2.0 - alpha / (2.0 * beta_c), "lambda < 2 - alpha/(2 beta_C)")
    }
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn rate(theorem: Theorem, role: Role, rho: f64, parameters: BTreeMap<String, f64>, a: Assumptions) -> RateReport {
    RateReport { theorem, role, rho, parameters, assumptions_verified: a.0 }
}

/// `ρ = 1 − 2λ/(4 − α/β_C) + λ√((2/(4−α/β_C))(2/(4−α/β_C) − 2αμ/(α²L² + 2αμ + 1)))`.
pub fn contraction_thm31(alpha: f64, lambda: f64, beta_c: f64, mu: f64, lip: f64, role: Role) -> Result<RateReport> {
    let mut a = Assumptions::default();
    a.cocoercive_window(alpha, lambda, beta_c)?;
    a.finite(&[("mu", mu), ("L", lip)])?;
    a.require(mu > 0.0 && mu <= lip, &format!("0 < mu_{0} <= L_{0}", role.letter()))?;
    let q = 2.0 / (4.0 - alpha / beta_c);
    let rho = 1.0 - 2.0 * lambda / (4.0 - alpha / beta_c)
        + lambda * (q * (q - 2.0 * alpha * mu / (alpha * alpha * lip * lip + 2.0 * alpha * mu + 1.0))).sqrt();
    let r = role.letter();
    Ok(rate(
        Theorem::Thm31,
        role,
        rho,
        params(&[
            ("alpha", alpha),
            ("lambda", lambda),
            ("beta_C", beta_c),
            (&format!("mu_{r}"), mu),
            (&format!("L_{r}"), lip),
        ]),
        a,
    ))
}

/// First min-argument of the Thm 3.2 factor; `lip` belongs to the Lipschitz operator, `mu` to the other.
pub fn thm32_first(alpha: f64, lambda: f64, lip: f64, mu: f64) -> f64 {
    2.0 * alpha * mu * lambda * (2.0 - lambda) / ((1.0 + alpha * alpha * lip * lip) * (2.0 - lambda + 2.0 * alpha * mu))
}

/// Second min-argument as displayed in the theorem statement.
pub fn thm32_second(alpha: f64, lambda: f64, lip: f64, mu: f64) -> f64 {
    2.0 * alpha * lambda * ((2.0 - lambda) * (mu + lip) + 2.0 * alpha * mu * lip)
        / ((1.0 + alpha * lip).powi(2) * (2.0 - lambda + 2.0 * alpha * mu))
}

/// Second min-argument as regrouped in the comparison chains.
pub fn thm32_second_regrouped(alpha: f64, lambda: f64, lip: f64, mu: f64) -> f64 {
    2.0 * alpha * lambda * (mu * (2.0 - lambda) + lip * (2.0 - lambda + 2.0 * alpha * mu))
        / ((1.0 + alpha * lip).powi(2) * (2.0 - lambda + 2.0 * alpha * mu))
}

/// `ρ = √(1 − min{2αμλ(2−λ)/((1+α²L²)(2−λ+2αμ)), 2αλ((2−λ)(μ+L)+2αμL)/((1+αL)²(2−λ+2αμ))})`.
///
/// `role` names the Lipschitz operator; the other one is strongly monotone.
pub fn contraction_thm32(alpha: f64, lambda: f64, beta_c: f64, lip: f64, mu: f64, role: Role) -> Result<RateReport> {
    let mut a = Assumptions::default();
    a.cocoercive_window(alpha, lambda, beta_c)?;
    a.finite(&[("L", lip), ("mu", mu)])?;
    let (l, m) = (role.letter(), role.other().letter());
    a.require(lip > 0.0, &format!("L_{l} > 0"))?;
    a.require(mu > 0.0, &format!("mu_{m} > 0"))?;
    let rho = (1.0 - thm32_first(alpha, lambda, lip, mu).min(thm32_second(alpha, lambda, lip, mu))).sqrt();
    Ok(rate(
        Theorem::Thm32,
        role,
        rho,
        params(&[
            ("alpha", alpha),
            ("lambda", lambda),
            ("beta_C", beta_c),
            (&format!("L_{l}"), lip),
            (&format!("mu_{m}"), mu),
        ]),
        a,
    ))
}

/// `ρ = √(1 − 2λα·min{(L + μ_C(1−η))/(1+αL)², μ_C(1−η)/(1+α²L²)})` with `η = α/(2β_C(2−λ))`.
///
/// `role` names the Lipschitz operator.
pub fn contraction_thm33(alpha: f64, lambda: f64, beta_c: f64, lip: f64, mu_c: f64, role: Role) -> Result<RateReport> {
    let mut a = Assumptions::default();
    a.cocoercive_window(alpha, lambda, beta_c)?;
    a.finite(&[("L", lip), ("mu_C", mu_c)])?;
    let l = role.letter();
    a.require(lip > 0.0, &format!("L_{l} > 0"))?;
    a.require(mu_c > 0.0 && mu_c <= 1.0 / beta_c, "0 < mu_C <= 1/beta_C")?;
    let kept = mu_c * (1.0 - alpha / (2.0 * beta_c * (2.0 - lambda)));
    let m = ((lip + kept) / (1.0 + alpha * lip).powi(2)).min(kept / (1.0 + alpha * alpha * lip * lip));
    let rho = (1.0 - 2.0 * lambda * alpha * m).sqrt();
    Ok(rate(
        Theorem::Thm33,
        role,
        rho,
        params(&[("alpha", alpha), ("lambda", lambda), ("beta_C", beta_c), (&format!("L_{l}"), lip), ("mu_C", mu_c)]),
        a,
    ))
}

/// `θ = 2/(4 − αL_C²/μ)`; `role` names the strongly monotone operator.
pub fn averagedness_thm41(alpha: f64, mu: f64, lip_c: f64, role: Role) -> Result<AveragednessReport> {
    let mut a = Assumptions::default();
    a.finite(&[("alpha", alpha), ("mu", mu), ("L_C", lip_c)])?;
    let r = role.letter();
    a.require(mu > 0.0, &format!("mu_{r} > 0"))?;
    a.require(lip_c > 0.0, "L_C > 0")?;
    a.require(alpha > 0.0 && alpha < 2.0 * mu / (lip_c * lip_c), &format!("0 < alpha < 2 mu_{r} / L_C^2"))?;
    let theta = 2.0 / (4.0 - alpha * lip_c * lip_c / mu);
    Ok(AveragednessReport {
        theorem: Theorem::Thm41,
        role,
        theta,
        parameters: params(&[("alpha", alpha), ("lambda", 1.0), (&format!("mu_{r}"), mu), ("L_C", lip_c)]),
        assumptions_verified: a.0,
    })
}

/// The free constants `ε ∈ (α/(2β_C), 1)` and `η ∈ (α/(2β_Cε), 1)` of the prior factors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriorConstants {
    pub eps: f64,
    pub eta: f64,
}

impl PriorConstants {
    /// Midpoints of the admissible intervals.
    pub fn midpoints(alpha: f64, beta_c: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta_c > 0.0 && alpha < 2.0 * beta_c) {
            return Err(Error::Precondition("alpha < 2 beta_C".into()));
        }
        let eps = (alpha / (2.0 * beta_c) + 1.0) / 2.0;
        let eta = (alpha / (2.0 * beta_c * eps) + 1.0) / 2.0;
        Ok(PriorConstants { eps, eta })
    }

    fn check(&self, alpha: f64, lambda: f64, beta_c: f64, a: &mut Assumptions) -> Result<()> {
        a.finite(&[("eps", self.eps), ("eta", self.eta)])?;
        a.require(self.eps > alpha / (2.0 * beta_c) && self.eps < 1.0, "alpha/(2 beta_C) < eps < 1")?;
        a.require(self.eta > alpha / (2.0 * beta_c * self.eps) && self.eta < 1.0, "alpha/(2 beta_C eps) < eta < 1")?;
        a.require(lambda < 2.0 - self.eps, "lambda < 2 - eps")
    }
}

/// Class parameters consumed by the six prior factors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriorClassParameters {
    pub mu_a: f64,
    pub lip_a: f64,
    pub mu_b: f64,
    pub lip_b: f64,
    pub mu_c: f64,
}

struct PriorSetup {
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    k: PriorConstants,
}

impl PriorSetup {
    fn new(alpha: f64, lambda: f64, beta_c: f64, k: Option<PriorConstants>) -> Result<(Self, Assumptions)> {
        let mut a = Assumptions::default();
        a.cocoercive_window(alpha, lambda, beta_c)?;
        let k = match k {
            Some(k) => k,
            None => PriorConstants::midpoints(alpha, beta_c)?,
        };
        k.check(alpha, lambda, beta_c, &mut a)?;
        Ok((PriorSetup { alpha, lambda, beta_c, k }, a))
    }

    fn report(&self, theorem: Theorem, role: Role, rho: f64, extra: &[(&str, f64)], a: Assumptions) -> RateReport {
        let mut p = params(&[
            ("alpha", self.alpha),
            ("lambda", self.lambda),
            ("beta_C", self.beta_c),
            ("eps", self.k.eps),
            ("eta", self.k.eta),
        ]);
        p.extend(params(extra));
        rate(theorem, role, rho, p, a)
    }

    /// `(2β_C − α/ε)/α`
    fn coco_term(&self) -> f64 {
        (2.0 * self.beta_c - self.alpha / self.k.eps) / self.alpha
    }

    /// `(2 − ε)/λ − 1`
    fn eps_term(&self) -> f64 {
        (2.0 - self.k.eps) / self.lambda - 1.0
    }
}

fn positive(a: &mut Assumptions, name: &str, v: f64) -> Result<()> {
    a.finite(&[(name, v)])?;
    a.require(v > 0.0, &format!("{name} > 0"))
}

/// `ρ = √(1 − 2μ_Bαλ/(1 + αL_B)²)`.
pub fn updated_d61(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    mu_b: f64,
    lip_b: f64,
    k: Option<PriorConstants>,
) -> Result<RateReport> {
    let (s, mut a) = PriorSetup::new(alpha, lambda, beta_c, k)?;
    positive(&mut a, "mu_B", mu_b)?;
    a.require(mu_b <= lip_b, "mu_B <= L_B")?;
    let rho = (1.0 - 2.0 * mu_b * alpha * lambda / (1.0 + alpha * lip_b).powi(2)).sqrt();
    Ok(s.report(Theorem::D61, Role::B, rho, &[("mu_B", mu_b), ("L_B", lip_b)], a))
}

/// `ρ = √(1 − (λ/3)·min{2αμ_A/(1+αL_A)², (2β_C − α/ε)/α, (λ/4)((2−ε)/λ − 1)})`.
pub fn updated_d62(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    mu_a: f64,
    lip_a: f64,
    k: Option<PriorConstants>,
) -> Result<RateReport> {
    let (s, mut a) = PriorSetup::new(alpha, lambda, beta_c, k)?;
    positive(&mut a, "mu_A", mu_a)?;
    a.require(mu_a <= lip_a, "mu_A <= L_A")?;
    let m = (2.0 * alpha * mu_a / (1.0 + alpha * lip_a).powi(2)).min(s.coco_term()).min(lambda / 4.0 * s.eps_term());
    let rho = (1.0 - lambda / 3.0 * m).sqrt();
    Ok(s.report(Theorem::D62, Role::A, rho, &[("mu_A", mu_a), ("L_A", lip_a)], a))
}

/// `ρ = √(1 − (λ/3)·min{2αμ_A/(1+αL_B)², λ/(1+2α²L_B²)·((2−ε)/λ − 1)})`.
pub fn updated_d63(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    mu_a: f64,
    lip_b: f64,
    k: Option<PriorConstants>,
) -> Result<RateReport> {
    let (s, mut a) = PriorSetup::new(alpha, lambda, beta_c, k)?;
    positive(&mut a, "mu_A", mu_a)?;
    positive(&mut a, "L_B", lip_b)?;
    let m = (2.0 * alpha * mu_a / (1.0 + alpha * lip_b).powi(2))
        .min(lambda / (1.0 + 2.0 * alpha * alpha * lip_b * lip_b) * s.eps_term());
    let rho = (1.0 - lambda / 3.0 * m).sqrt();
    Ok(s.report(Theorem::D63, Role::B, rho, &[("mu_A", mu_a), ("L_B", lip_b)], a))
}

/// `ρ′ = √(1 − (λ/4)·min{2αμ_B/(1+2α²L_A²), (2β_C − α/ε)/α, λ/(1+2α²L_A²)·((2−ε)/λ − 1)})`.
pub fn updated_d64(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    mu_b: f64,
    lip_a: f64,
    k: Option<PriorConstants>,
) -> Result<RateReport> {
    let (s, mut a) = PriorSetup::new(alpha, lambda, beta_c, k)?;
    positive(&mut a, "mu_B", mu_b)?;
    positive(&mut a, "L_A", lip_a)?;
    let d = 1.0 + 2.0 * alpha * alpha * lip_a * lip_a;
    let m = (2.0 * alpha * mu_b / d).min(s.coco_term()).min(lambda / d * s.eps_term());
    let rho = (1.0 - lambda / 4.0 * m).sqrt();
    Ok(s.report(Theorem::D64, Role::A, rho, &[("mu_B", mu_b), ("L_A", lip_a)], a))
}

/// `ρ = √(1 − (λ/4)·min{2αμ_C(1−η)/(1+2α²L_A²), (2ηβ_C − α/ε)/α, λ/(1+2α²L_A²)·((2−ε)/λ − 1)})`.
pub fn updated_d65(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    mu_c: f64,
    lip_a: f64,
    k: Option<PriorConstants>,
) -> Result<RateReport> {
    let (s, mut a) = PriorSetup::new(alpha, lambda, beta_c, k)?;
    positive(&mut a, "mu_C", mu_c)?;
    positive(&mut a, "L_A", lip_a)?;
    a.require(mu_c <= 1.0 / beta_c, "mu_C <= 1/beta_C")?;
    let eta = s.k.eta;
    let d = 1.0 + 2.0 * alpha * alpha * lip_a * lip_a;
    let m = (2.0 * alpha * mu_c * (1.0 - eta) / d)
        .min((2.0 * eta * beta_c - alpha / s.k.eps) / alpha)
        .min(lambda / d * s.eps_term());
    let rho = (1.0 - lambda / 4.0 * m).sqrt();
    Ok(s.report(Theorem::D65, Role::A, rho, &[("mu_C", mu_c), ("L_A", lip_a)], a))
}

/// `ρ′ = √(1 − 2αλμ_C(1−η)/(1 + αL_B)²)`.
pub fn updated_d66(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    mu_c: f64,
    lip_b: f64,
    k: Option<PriorConstants>,
) -> Result<RateReport> {
    let (s, mut a) = PriorSetup::new(alpha, lambda, beta_c, k)?;
    positive(&mut a, "mu_C", mu_c)?;
    positive(&mut a, "L_B", lip_b)?;
    a.require(mu_c <= 1.0 / beta_c, "mu_C <= 1/beta_C")?;
    let rho = (1.0 - 2.0 * alpha * lambda * mu_c * (1.0 - s.k.eta) / (1.0 + alpha * lip_b).powi(2)).sqrt();
    Ok(s.report(Theorem::D66, Role::B, rho, &[("mu_C", mu_c), ("L_B", lip_b)], a))
}

/// All six updated prior factors, in order D.6.1 … D.6.6.
pub fn updated_prior_factors(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    cp: &PriorClassParameters,
    k: Option<PriorConstants>,
) -> Result<Vec<RateReport>> {
    Ok(vec![
        updated_d61(alpha, lambda, beta_c, cp.mu_b, cp.lip_b, k)?,
        updated_d62(alpha, lambda, beta_c, cp.mu_a, cp.lip_a, k)?,
        updated_d63(alpha, lambda, beta_c, cp.mu_a, cp.lip_b, k)?,
        updated_d64(alpha, lambda, beta_c, cp.mu_b, cp.lip_a, k)?,
        updated_d65(alpha, lambda, beta_c, cp.mu_c, cp.lip_a, k)?,
        updated_d66(alpha, lambda, beta_c, cp.mu_c, cp.lip_b, k)?,
    ])
}

/// A new factor and the prior factor it should beat.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub new: RateReport,
    pub prior: RateReport,
    /// `prior.rho − new.rho`; positive means the new factor is strictly better.
    pub margin: f64,
}

/// Pair every new factor with its prior counterpart on one parameter tuple.
pub fn compare_all(
    alpha: f64,
    lambda: f64,
    beta_c: f64,
    cp: &PriorClassParameters,
    k: Option<PriorConstants>,
) -> Result<Vec<Comparison>> {
    let pair = |new: RateReport, prior: RateReport| Comparison { margin: prior.rho - new.rho, new, prior };
    let (a, l, b) = (alpha, lambda, beta_c);
    Ok(vec![
        pair(contraction_thm31(a, l, b, cp.mu_b, cp.lip_b, Role::B)?, updated_d61(a, l, b, cp.mu_b, cp.lip_b, k)?),
        pair(contraction_thm31(a, l, b, cp.mu_a, cp.lip_a, Role::A)?, updated_d62(a, l, b, cp.mu_a, cp.lip_a, k)?),
        pair(contraction_thm32(a, l, b, cp.lip_b, cp.mu_a, Role::B)?, updated_d63(a, l, b, cp.mu_a, cp.lip_b, k)?),
        pair(contraction_thm32(a, l, b, cp.lip_a, cp.mu_b, Role::A)?, updated_d64(a, l, b, cp.mu_b, cp.lip_a, k)?),
        pair(contraction_thm33(a, l, b, cp.lip_a, cp.mu_c, Role::A)?, updated_d65(a, l, b, cp.mu_c, cp.lip_a, k)?),
        pair(contraction_thm33(a, l, b, cp.lip_b, cp.mu_c, Role::B)?, updated_d66(a, l, b, cp.mu_c, cp.lip_b, k)?),
    ])
}

/// Sampling box for [`dominance_check`]. `α`, `ε`, `λ`, `η` and the strong
/// monotonicity parameters are drawn as interior fractions of their windows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceRanges {
    pub beta_c: (f64, f64),
    pub lipschitz: (f64, f64),
    /// Interior fraction of every open window, e.g. `(0.02, 0.98)`.
    pub fraction: (f64, f64),
}

impl Default for DominanceRanges {
    fn default() -> Self {
        DominanceRanges { beta_c: (0.2, 5.0), lipschitz: (0.05, 5.0), fraction: (0.02, 0.98) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceSummary {
    pub new: Theorem,
    pub new_role: Role,
    pub prior: Theorem,
    pub samples: usize,
    pub min_margin: f64,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub seed: u64,
    pub summaries: Vec<DominanceSummary>,
    /// Up to a handful of violating comparisons, for diagnosis.
    pub counterexamples: Vec<Comparison>,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.violations == 0 && s.min_margin > 0.0)
    }
}

/// One random admissible tuple; sample `index` uses its own ChaCha stream.
pub fn sample_dominance_tuple(
    ranges: &DominanceRanges,
    seed: u64,
    index: u64,
) -> (f64, f64, f64, PriorClassParameters, PriorConstants) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let (flo, fhi) = ranges.fraction;
    let mut frac = || rng.random_range(flo..fhi);
    let within = |lo: f64, hi: f64, f: f64| lo + (hi - lo) * f;
    let beta_c = within(ranges.beta_c.0, ranges.beta_c.1, frac());
    let alpha = within(0.0, 2.0 * beta_c, frac());
    let eps = within(alpha / (2.0 * beta_c), 1.0, frac());
    let eta = within(alpha / (2.0 * beta_c * eps), 1.0, frac());
    let lambda = within(0.0, (2.0 - alpha / (2.0 * beta_c)).min(2.0 - eps), frac());
    let (llo, lhi) = ranges.lipschitz;
    let lip_a = within(llo, lhi, frac());
    let lip_b = within(llo, lhi, frac());
    let mu_a = lip_a * frac();
    let mu_b = lip_b * frac();
    let mu_c = frac() / beta_c;
    (alpha, lambda, beta_c, PriorClassParameters { mu_a, lip_a, mu_b, lip_b, mu_c }, PriorConstants { eps, eta })
}

/// Check `new ρ < updated prior ρ` on `sample_count` seeded random tuples.
pub fn dominance_check(sample_count: usize, ranges: &DominanceRanges, seed: u64) -> Result<DominanceReport> {
    let rows: Vec<Vec<Comparison>> = (0..sample_count as u64)
        .into_par_iter()
        .map(|i| {
            let (alpha, lambda, beta_c, cp, k) = sample_dominance_tuple(ranges, seed, i);
            compare_all(alpha, lambda, beta_c, &cp, Some(k))
        })
        .collect::<Result<_>>()?;
    let mut summaries = Vec::new();
    let mut counterexamples = Vec::new();
    for j in 0..6 {
        let column = rows.iter().map(|r| &r[j]);
        let violating: Vec<&Comparison> = column.clone().filter(|c| !(c.margin > 0.0)).collect();
        let first = rows.first().map(|r| &r[j]);
        let (new, new_role, prior) = match first {
            Some(c) => (c.new.theorem, c.new.role, c.prior.theorem),
            None => continue,
        };
        summaries.push(DominanceSummary {
            new,
            new_role,
            prior,
            samples: rows.len(),
            min_margin: column.map(|c| c.margin).fold(f64::INFINITY, f64::min),
            violations: violating.len(),
        });
        counterexamples.extend(violating.into_iter().take(3).cloned());
    }
    Ok(DominanceReport { seed, summaries, counterexamples })
}
