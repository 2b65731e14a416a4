//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use bqmaxwell::{BiquatField, Biquaternion, Quaternion, SpatialGrid};
use num_complex::Complex64;

/// `e_a e_b = sign * e_c` for the basis `{1, e1, e2, e3}`, written out by hand.
const TABLE: [[(f64, usize); 4]; 4] = [
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
    [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
    [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
];

/// Product by expanding all sixteen basis pairs through the table.
pub fn table_product(a: &Biquaternion, b: &Biquaternion) -> Biquaternion {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (p, row) in TABLE.iter().enumerate() {
        for (q, &(sign, c)) in row.iter().enumerate() {
            out[c] += a.0[p] * b.0[q] * sign;
        }
    }
    Biquaternion(out)
}

pub fn table_product_real(a: &Quaternion, b: &Quaternion) -> Quaternion {
    table_product(&Biquaternion::from(*a), &Biquaternion::from(*b)).re()
}

/// Double-double number `hi + lo`.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = Self::two_sum(self.hi, o.hi);
        Self::renorm(s, e + self.lo + o.lo)
    }

    pub fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub fn div_f64(self, d: f64) -> Self {
        let q = self.hi / d;
        let r = self.add(Self::from(q).mul(Self::from(d)).neg());
        Self::renorm(q, r.hi / d)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `(cos θ, sin θ / θ)` from their Taylor series with `terms` terms each,
/// evaluated in double-double from `θ² = |v|²`.
pub fn exp_series_dd(v: [f64; 3], terms: usize) -> Quaternion {
    let t2 = v
        .iter()
        .fold(Dd::from(0.0), |acc, &c| acc.add(Dd::from(c).mul(Dd::from(c))));
    let mut cos = Dd::from(0.0);
    let mut sinc = Dd::from(0.0);
    let mut term_c = Dd::from(1.0); // (-θ²)^n / (2n)!
    let mut term_s = Dd::from(1.0); // (-θ²)^n / (2n+1)!
    for n in 0..terms {
        cos = cos.add(term_c);
        sinc = sinc.add(term_s);
        let m = 2.0 * n as f64;
        term_c = term_c.mul(t2).neg().div_f64((m + 1.0) * (m + 2.0));
        term_s = term_s.mul(t2).neg().div_f64((m + 2.0) * (m + 3.0));
    }
    let s = sinc.to_f64();
    Quaternion([cos.to_f64(), s * v[0], s * v[1], s * v[2]])
}

/// Forward transform by direct summation, `Σ_x h³ f(x) e^{-2πi⟨x,k⟩}`.
pub fn direct_dft(f: &BiquatField, k_idx: usize) -> Biquaternion {
    let grid = *f.grid();
    let k = grid.k_vec(k_idx);
    let h3 = grid.cell_volume();
    let mut acc = Biquaternion::ZERO;
    for (idx, v) in f.values().iter().enumerate() {
        let x = grid.point(idx);
        let ph = Complex64::from_polar(h3, -2.0 * PI * (x[0] * k[0] + x[1] * k[1] + x[2] * k[2]));
        acc += *v * ph;
    }
    acc
}

pub fn random_field(grid: SpatialGrid, seed: u64) -> BiquatField {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len())
        .map(|_| {
            Biquaternion(std::array::from_fn(|_| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }))
        })
        .collect();
    BiquatField::from_values(grid, values, bqmaxwell::Domain::Physical).unwrap()
}

/// Least-squares slope of `log e` against `log h`.
pub fn observed_order(h: &[f64], e: &[f64]) -> f64 {
    let n = h.len() as f64;
    let lx: Vec<f64> = h.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = e.iter().map(|x| x.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
