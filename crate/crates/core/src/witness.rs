//! Double-precision cross-checks: explicit `SL(2,ℂ)` matrices for the trace
//! engine, the even/even construction, and the `|τ| ≤ 2` bound.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::ops::Mul;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::Verdict;
use crate::trace::{trace_poly_exact, ExactTrace};
use crate::word::Word;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Mat2C(pub [[Complex64; 2]; 2]);

impl Mat2C {
    pub fn identity() -> Self {
        Mat2C::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2C([[a, b], [c, d]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2C::new(a, Complex64::default(), Complex64::default(), d)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Mat2C::identity(), |acc, _| acc * *self)
    }

    /// `‖M·M* − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let a = &self.0;
        let adj = Mat2C::new(a[0][0].conj(), a[1][0].conj(), a[0][1].conj(), a[1][1].conj());
        let p = *self * adj;
        let id = Mat2C::identity();
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (p.0[i][j] - id.0[i][j]).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;

    fn mul(self, o: Mat2C) -> Mat2C {
        let (a, b) = (self.0, o.0);
        Mat2C([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}

/// `X = [[0,1],[−1,0]]` and `Y = [[√2/2,(r−λ)/2],[(λ+r)/2,√2/2]]` with `r` the
/// principal square root of `λ² − 2`: `Tr X = 0`, `Tr Y = √2`, `Tr XY = λ`.
pub fn numeric_matrices(lambda: Complex64) -> (Mat2C, Mat2C) {
    let one = Complex64::new(1.0, 0.0);
    let x = Mat2C::new(Complex64::default(), one, -one, Complex64::default());
    let r = (lambda * lambda - 2.0).sqrt();
    let h = Complex64::new(SQRT_2 / 2.0, 0.0);
    let y = Mat2C::new(h, (r - lambda) / 2.0, (lambda + r) / 2.0, h);
    (x, y)
}

/// `W(X, Y)` for the matrices of [`numeric_matrices`].
pub fn word_matrix(w: &Word, lambda: Complex64) -> Mat2C {
    let (x, y) = numeric_matrices(lambda);
    let syllables = [x * y, x * y.pow(2), x * y.pow(3)];
    w.digits().iter().fold(Mat2C::identity(), |acc, &d| acc * syllables[d as usize - 1])
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceCheck {
    pub numeric: [f64; 2],
    pub symbolic: [f64; 2],
    pub residual: f64,
    pub verdict: Verdict,
}

/// Compares the matrix trace of `W` with the exact polynomial evaluated at `λ`.
pub fn verify_trace_numeric(w: &Word, lambda: Complex64, tol: f64) -> Result<TraceCheck> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive (got {tol})")));
    }
    let numeric = word_matrix(w, lambda).trace();
    let symbolic = match trace_poly_exact(w) {
        ExactTrace::Small(p) => p.eval_complex(lambda),
        ExactTrace::Big(p) => p.eval_complex(lambda),
    };
    let residual = (numeric - symbolic).norm();
    Ok(TraceCheck {
        numeric: [numeric.re, numeric.im],
        symbolic: [symbolic.re, symbolic.im],
        residual,
        verdict: Verdict::from_bool(residual < tol),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenEvenReport {
    pub k: u32,
    pub s: u32,
    /// `|Tr|` of U, V, Z, UZ, VZ, `(UV)^{k/2} Z^s` and `(VU)^{k/2} Z^{k−s}`.
    pub residuals: Vec<(String, f64)>,
    pub abs_tr_uv: f64,
    pub abs_tr_uvz: f64,
    pub verdict: Verdict,
}

/// Checks the seven vanishing traces and two non-vanishing ones for
/// `U = [[0,1],[−1,0]]`, `V = [[0,ω],[−ω̄,0]]`, `Z = diag(i, −i)` with
/// `ω = e^{2πi/k}` for odd `s` and `e^{πi/k}` for even `s`.
pub fn verify_eveneven(k: u32, s: u32) -> Result<EvenEvenReport> {
    if k < 4 || k % 2 == 1 || s > k {
        return Err(Error::InvalidArgument(format!("need even k ≥ 4 and 0 ≤ s ≤ k (got k={k}, s={s})")));
    }
    let angle = if s % 2 == 1 { 2.0 * PI / k as f64 } else { PI / k as f64 };
    let omega = Complex64::from_polar(1.0, angle);
    let zero = Complex64::default();
    let one = Complex64::new(1.0, 0.0);
    let u = Mat2C::new(zero, one, -one, zero);
    let v = Mat2C::new(zero, omega, -omega.conj(), zero);
    let z = Mat2C::diag(I, -I);
    let half = k / 2;
    let checks = [
        ("U", u),
        ("V", v),
        ("Z", z),
        ("UZ", u * z),
        ("VZ", v * z),
        ("(UV)^(k/2) Z^s", (u * v).pow(half) * z.pow(s)),
        ("(VU)^(k/2) Z^(k-s)", (v * u).pow(half) * z.pow(k - s)),
    ];
    let residuals: Vec<(String, f64)> = checks.iter().map(|(name, m)| (name.to_string(), m.trace().norm())).collect();
    let abs_tr_uv = (u * v).trace().norm();
    let abs_tr_uvz = (u * v * z).trace().norm();
    let ok = residuals.iter().all(|(_, r)| *r < 1e-9) && abs_tr_uv > 1e-6 && abs_tr_uvz > 1e-6;
    Ok(EvenEvenReport { k, s, residuals, abs_tr_uv, abs_tr_uvz, verdict: Verdict::from_bool(ok) })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub max_abs: f64,
    pub at: f64,
    pub verdict: Verdict,
}

/// Largest `|τ_W(λ)|` on a uniform grid over `[−√2, √2]`, endpoints included.
pub fn bound_check(w: &Word, grid_points: usize) -> Result<BoundReport> {
    if grid_points < 2 {
        return Err(Error::InvalidArgument("grid needs at least 2 points".into()));
    }
    let eval: Box<dyn Fn(f64) -> f64> = match trace_poly_exact(w) {
        ExactTrace::Small(p) => Box::new(move |x| p.eval_f64(x)),
        ExactTrace::Big(p) => Box::new(move |x| p.eval_f64(x)),
    };
    let step = 2.0 * SQRT_2 / (grid_points - 1) as f64;
    let (max_abs, at) = (0..grid_points)
        .map(|i| if i + 1 == grid_points { SQRT_2 } else { -SQRT_2 + step * i as f64 })
        .map(|x| (eval(x).abs(), x))
        .fold((0.0, -SQRT_2), |best, cur| if cur.0 > best.0 { cur } else { best });
    Ok(BoundReport { max_abs, at, verdict: Verdict::from_bool(max_abs <= 2.0 + 1e-9) })
}

/// `Tr(Y^n)` for the `Y` of [`numeric_matrices`].
pub fn y_power_trace(lambda: Complex64, n: u32) -> Complex64 {
    numeric_matrices(lambda).1.pow(n).trace()
}

/// `2cos(nπ/4)`, the value `Tr(Y^n)` must take for `Y` of order 8 in `SL(2,ℂ)`.
pub fn y_power_expected(n: u32) -> f64 {
    2.0 * (n as f64 * FRAC_PI_4).cos()
}
