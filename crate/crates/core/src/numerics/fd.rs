use crate::forms::{SymMat5, Vec5};

fn check_step(h: f64) {
    assert!(
        (1e-7..=1e-3).contains(&h),
        "finite-difference step {h} outside [1e-7, 1e-3]"
    );
}

fn shifted(x: &Vec5, moves: &[(usize, f64)]) -> Vec5 {
    let mut y = *x;
    for &(i, d) in moves {
        y.0[i] += d;
    }
    y
}

/// Central-difference gradient with step `h`.
///
/// # Panics
/// If `h` lies outside `[1e-7, 1e-3]`.
pub fn fd_gradient<F: Fn(&Vec5) -> f64>(f: F, x: &Vec5, h: f64) -> Vec5 {
    check_step(h);
    Vec5(std::array::from_fn(|i| {
        (f(&shifted(x, &[(i, h)])) - f(&shifted(x, &[(i, -h)]))) / (2.0 * h)
    }))
}

/// Central-difference Hessian with step `h`; the accuracy degrades when `h`
/// is not small against the distance to a singularity of `f`.
///
/// # Panics
/// If `h` lies outside `[1e-7, 1e-3]`.
pub fn fd_hessian<F: Fn(&Vec5) -> f64>(f: F, x: &Vec5, h: f64) -> SymMat5 {
    check_step(h);
    let f0 = f(x);
    SymMat5::from_fn(|i, j| {
        if i == j {
            (f(&shifted(x, &[(i, h)])) - 2.0 * f0 + f(&shifted(x, &[(i, -h)]))) / (h * h)
        } else {
            (f(&shifted(x, &[(i, h), (j, h)])) - f(&shifted(x, &[(i, h), (j, -h)]))
                - f(&shifted(x, &[(i, -h), (j, h)]))
                + f(&shifted(x, &[(i, -h), (j, -h)])))
                / (4.0 * h * h)
        }
    })
}

/// Fourth-order central weights of the first derivative at offsets
/// `-2h, -h, h, 2h` (times `12 h`).
const D1_WEIGHTS: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];

/// Fourth-order central-difference Hessian with step `h`. Its truncation
/// error is `O(h^4)`, so a step large enough to keep rounding in check can
/// be used on fields carrying a large constant.
///
/// # Panics
/// If `h` lies outside `[1e-7, 1e-3]`.
pub fn fd_hessian4<F: Fn(&Vec5) -> f64>(f: F, x: &Vec5, h: f64) -> SymMat5 {
    check_step(h);
    let f0 = f(x);
    SymMat5::from_fn(|i, j| {
        if i == j {
            let at = |k: f64| f(&shifted(x, &[(i, k * h)]));
            (-at(2.0) + 16.0 * at(1.0) - 30.0 * f0 + 16.0 * at(-1.0) - at(-2.0)) / (12.0 * h * h)
        } else {
            let mut acc = 0.0;
            for (a, wa) in D1_WEIGHTS {
                for (b, wb) in D1_WEIGHTS {
                    acc += wa * wb * f(&shifted(x, &[(i, a * h), (j, b * h)]));
                }
            }
            acc / (144.0 * h * h)
        }
    })
}
