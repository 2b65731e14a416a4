//! Unnormalized 3-D complex FFTs on cubic grids, with cached plans.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

struct Plan {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plan(n: usize) -> Arc<Plan> {
    static PLANS: OnceLock<Mutex<HashMap<usize, Arc<Plan>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = plans.lock().expect("fft plan cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plan {
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

/// In-place transform of `data`, laid out row-major as `[i0][i1][i2]`.
///
/// Forward uses `exp(-2πi qj/n)`, inverse `exp(+2πi qj/n)`; neither scales.
pub(crate) fn fft3(n: usize, data: &mut [Complex64], dir: Direction) {
    assert_eq!(data.len(), n * n * n, "fft3 buffer length");
    let p = plan(n);
    let fft = match dir {
        Direction::Forward => &p.forward,
        Direction::Inverse => &p.inverse,
    };
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

    // contiguous axis
    fft.process_with_scratch(data, &mut scratch);

    let mut work = vec![Complex64::default(); data.len()];
    // middle axis: lines indexed by (i0, i2)
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                work[(i0 * n + i2) * n + i1] = data[(i0 * n + i1) * n + i2];
            }
        }
    }
    fft.process_with_scratch(&mut work, &mut scratch);
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                data[(i0 * n + i1) * n + i2] = work[(i0 * n + i2) * n + i1];
            }
        }
    }

    // outer axis: lines indexed by (i1, i2)
    for i0 in 0..n {
        for i12 in 0..n * n {
            work[i12 * n + i0] = data[i0 * n * n + i12];
        }
    }
    fft.process_with_scratch(&mut work, &mut scratch);
    for i0 in 0..n {
        for i12 in 0..n * n {
            data[i0 * n * n + i12] = work[i12 * n + i0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matches_direct_sum() {
        let n = 4;
        let data: Vec<Complex64> = (0..n * n * n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut fast = data.clone();
        fft3(n, &mut fast, Direction::Forward);
        for q in [(0, 0, 0), (1, 2, 3), (3, 0, 1)] {
            let mut acc = Complex64::default();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let phase = -2.0 * PI * ((q.0 * a + q.1 * b + q.2 * c) as f64) / n as f64;
                        acc += data[(a * n + b) * n + c] * Complex64::from_polar(1.0, phase);
                    }
                }
            }
            let got = fast[(q.0 * n + q.1) * n + q.2];
            assert!((got - acc).norm() < 1e-12, "{q:?}: {got} vs {acc}");
        }
        fft3(n, &mut fast, Direction::Inverse);
        for (a, b) in fast.iter().zip(&data) {
            assert!((a / (n * n * n) as f64 - b).norm() < 1e-14);
        }
    }
}
