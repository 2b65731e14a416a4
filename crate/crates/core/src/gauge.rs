//! Static harmonic gauge terms `∇h` used to parameterize solution freedom.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One monomial `coef * x1^a x2^b x3^c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub coef: f64,
    pub powers: [u32; 3],
}

/// Polynomial `h(x)` whose Laplacian vanishes identically.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HarmonicPolynomial {
    terms: Vec<Monomial>,
}

impl HarmonicPolynomial {
    /// Validates `Δh = 0` on the coefficients.
    pub fn new(terms: Vec<Monomial>) -> Result<Self> {
        let scale = terms.iter().map(|t| t.coef.abs()).fold(0.0, f64::max);
        let lap = laplacian_coefficients(&terms);
        if let Some((powers, coef)) = lap.iter().find(|(_, c)| c.abs() > 1e-12 * scale.max(f64::MIN_POSITIVE)) {
            return Err(Error::Config(format!(
                "gauge polynomial is not harmonic: Laplacian has coefficient {coef} on x^{powers:?}"
            )));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * powi(x[0], t.powers[0]) * powi(x[1], t.powers[1]) * powi(x[2], t.powers[2]))
            .sum()
    }

    pub fn gradient(&self, x: [f64; 3]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for t in &self.terms {
            for (axis, gi) in g.iter_mut().enumerate() {
                let p = t.powers[axis];
                if p == 0 {
                    continue;
                }
                let mut term = t.coef * p as f64;
                #[allow(clippy::needless_range_loop)]
                for other in 0..3 {
                    let q = if other == axis { p - 1 } else { t.powers[other] };
                    term *= powi(x[other], q);
                }
                *gi += term;
            }
        }
        g
    }
}

fn powi(x: f64, p: u32) -> f64 {
    x.powi(p as i32)
}

/// Coefficients of `Δ` applied to a sum of monomials, merged by exponent.
fn laplacian_coefficients(terms: &[Monomial]) -> BTreeMap<[u32; 3], f64> {
    let mut out = BTreeMap::new();
    for t in terms {
        for axis in 0..3 {
            let p = t.powers[axis];
            if p < 2 {
                continue;
            }
            let mut powers = t.powers;
            powers[axis] -= 2;
            *out.entry(powers).or_insert(0.0) += t.coef * (p * (p - 1)) as f64;
        }
    }
    out
}

/// Gauge choice for a harmonic, time-independent potential.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum GaugeSpec {
    #[default]
    Zero,
    Polynomial(HarmonicPolynomial),
}

impl GaugeSpec {
    pub fn polynomial(terms: Vec<Monomial>) -> Result<Self> {
        if terms.is_empty() {
            return Ok(Self::Zero);
        }
        HarmonicPolynomial::new(terms).map(Self::Polynomial)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero)
    }

    /// `∇h(x)`; zero for the trivial gauge.
    pub fn gradient(&self, x: [f64; 3]) -> [f64; 3] {
        match self {
            Self::Zero => [0.0; 3],
            Self::Polynomial(p) => p.gradient(x),
        }
    }
}
