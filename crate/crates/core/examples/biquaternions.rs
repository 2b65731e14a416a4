//! Products, conjugations and the exponential of pure vectors.

use bqmaxwell::biquat::exp_vector;
use bqmaxwell::{Biquaternion, Conjugation, Quaternion};
use num_complex::Complex64;

fn main() {
    let a = Biquaternion::new(
        Complex64::new(1.0, 0.5),
        Complex64::new(0.0, 2.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.25, -0.25),
    );
    let b = Biquaternion::from_parts(Quaternion::new(0.0, 1.0, 0.0, 0.0), Quaternion::new(2.0, 0.0, 1.0, 0.0));

    println!("a        = {a:?}");
    println!("a b      = {:?}", a * b);
    println!("b a      = {:?}", b * a);
    println!("a bar    = {:?}", a.conjugate(Conjugation::Quaternionic));
    println!("a*       = {:?}", a.conjugate(Conjugation::Complex));

    let d = a.decompose();
    println!("Sc a = {}  Vec a = {:?}", d.scalar, d.vector.vector());

    // e1 e2 = e3, and pure vectors square to minus their norm
    let e1 = Quaternion::pure([1.0, 0.0, 0.0]);
    let e2 = Quaternion::pure([0.0, 1.0, 0.0]);
    println!("e1 e2 = {:?}", e1 * e2);
    let v = [0.3, -1.2, 2.0];
    println!("v² = {:?}", Quaternion::pure(v) * Quaternion::pure(v));

    let q = exp_vector(v);
    println!("exp(v) = {q:?}  |exp(v)| = {}", q.norm());
    println!("exp(v) exp(-v) = {:?}", q * exp_vector(v.map(|c| -c)));
}
