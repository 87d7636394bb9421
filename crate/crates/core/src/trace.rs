//! Fricke trace polynomials `τ_W(λ) = Tr W(X, Y)` for `X, Y ∈ SL(2,ℂ)` with
//! `Tr X = 0`, `Tr Y = √2`, `Tr XY = λ`.
//!
//! Products are tracked in the basis `{I, X, Y, XY}` of the trace algebra,
//! where `X² = −I`, `Y² = √2·Y − I` and `YX = −XY + √2·X + λ·I`. All
//! coordinates stay in ℤ[√2][λ], so no division ever occurs.

use num_bigint::BigInt;

use crate::error::Result;
use crate::poly::{search_target, Poly, TracePoly};
use crate::ring::{Coeff, RootTwo};
use crate::word::Word;

/// Coordinates of an algebra element in the basis `{I, X, Y, XY}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisVector<C> {
    pub c_i: Poly<C>,
    pub c_x: Poly<C>,
    pub c_y: Poly<C>,
    pub c_xy: Poly<C>,
}

impl<C: Coeff> BasisVector<C> {
    pub fn identity() -> Self {
        BasisVector { c_i: Poly::constant(RootTwo::one()), c_x: Poly::zero(), c_y: Poly::zero(), c_xy: Poly::zero() }
    }

    /// Right multiplication by `X`.
    pub fn mul_x(&self) -> Result<Self> {
        let c_i = self.c_y.shift().checked_sub(&self.c_x)?.checked_sub(&self.c_xy.mul_sqrt2()?)?;
        let c_x = self.c_i.checked_add(&self.c_y.mul_sqrt2()?)?.checked_add(&self.c_xy.shift())?;
        Ok(BasisVector { c_i, c_x, c_y: self.c_xy.clone(), c_xy: self.c_y.checked_neg()? })
    }

    /// Right multiplication by `Y`.
    pub fn mul_y(&self) -> Result<Self> {
        Ok(BasisVector {
            c_i: self.c_y.checked_neg()?,
            c_x: self.c_xy.checked_neg()?,
            c_y: self.c_i.checked_add(&self.c_y.mul_sqrt2()?)?,
            c_xy: self.c_x.checked_add(&self.c_xy.mul_sqrt2()?)?,
        })
    }

    /// The trace functional `2·c_I + √2·c_Y + λ·c_XY`.
    pub fn trace(&self) -> Result<Poly<C>> {
        self.c_i.checked_add(&self.c_i)?.checked_add(&self.c_y.mul_sqrt2()?)?.checked_add(&self.c_xy.shift())
    }
}

/// Trace polynomial over any coefficient backend.
pub fn trace_poly_in<C: Coeff>(w: &Word) -> Result<Poly<C>> {
    let mut v = BasisVector::<C>::identity();
    for &d in w.digits() {
        v = v.mul_x()?;
        for _ in 0..d {
            v = v.mul_y()?;
        }
    }
    v.trace()
}

/// Trace polynomial on the checked 64-bit backend; fails with
/// [`crate::Error::Overflow`] rather than wrapping.
pub fn trace_poly(w: &Word) -> Result<TracePoly> {
    trace_poly_in(w)
}

/// Trace polynomial in arbitrary precision.
pub fn trace_poly_big(w: &Word) -> Poly<BigInt> {
    trace_poly_in(w).expect("arbitrary-precision arithmetic cannot overflow")
}

/// Either a 64-bit result or, after an overflow, the arbitrary-precision one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactTrace {
    Small(TracePoly),
    Big(Poly<BigInt>),
}

impl ExactTrace {
    pub fn to_big(&self) -> Poly<BigInt> {
        match self {
            ExactTrace::Small(p) => p.to_big(),
            ExactTrace::Big(p) => p.clone(),
        }
    }
}

impl std::fmt::Display for ExactTrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactTrace::Small(p) => p.fmt(f),
            ExactTrace::Big(p) => p.fmt(f),
        }
    }
}

/// Fast path first, falling back to arbitrary precision on overflow.
pub fn trace_poly_exact(w: &Word) -> ExactTrace {
    match trace_poly(w) {
        Ok(p) => ExactTrace::Small(p),
        Err(_) => ExactTrace::Big(trace_poly_big(w)),
    }
}

/// Exact test `τ_W = √2(λ² − 1)^m`.
pub fn matches_search_target(w: &Word, m: u32) -> bool {
    if w.k() != 2 * m as usize {
        return false;
    }
    if let (Ok(t), Ok(target)) = (trace_poly(w), search_target::<i64>(m)) {
        return t == target;
    }
    trace_poly_big(w) == search_target::<BigInt>(m).expect("big target")
}

/// `T_n` with `T_0 = 2`, `T_1 = λ`, `T_{n+1} = λT_n − T_{n−1}`: the trace of `(XY)^n`.
pub fn chebyshev(n: u32) -> Result<TracePoly> {
    let mut prev = Poly::constant(RootTwo::from_int(2));
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = Poly::lambda();
    for _ in 1..n {
        let next = cur.shift().checked_sub(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Element of `(ℤ/2)[ε]/(ε²)`, the image of ℤ[√2] modulo 2 (`ε` = √2).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
struct Mod2 {
    unit: u8,
    eps: u8,
}

#[derive(Clone, Default)]
struct Mod2Poly(Vec<Mod2>);

impl Mod2Poly {
    fn get(&self, i: usize) -> Mod2 {
        self.0.get(i).copied().unwrap_or_default()
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Mod2Poly(
            (0..n)
                .map(|i| {
                    let (a, b) = (self.get(i), o.get(i));
                    Mod2 { unit: a.unit ^ b.unit, eps: a.eps ^ b.eps }
                })
                .collect(),
        )
    }

    /// Multiplication by ε: `(u + vε)ε = uε`.
    fn eps(&self) -> Self {
        Mod2Poly(self.0.iter().map(|c| Mod2 { unit: 0, eps: c.unit }).collect())
    }

    fn shift(&self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(Mod2::default());
        v.extend_from_slice(&self.0);
        Mod2Poly(v)
    }
}

/// Mod-2 reduction of the trace polynomial, computed directly in
/// `(ℤ/2)[ε]/(ε²)[λ]` (signs vanish modulo 2).
pub fn trace_poly_mod2(w: &Word) -> TracePoly {
    let one = Mod2Poly(vec![Mod2 { unit: 1, eps: 0 }]);
    let (mut ci, mut cx, mut cy, mut cxy) = (one, Mod2Poly::default(), Mod2Poly::default(), Mod2Poly::default());
    for &d in w.digits() {
        let ni = cx.add(&cy.shift()).add(&cxy.eps());
        let nx = ci.add(&cy.eps()).add(&cxy.shift());
        (ci, cx, cy, cxy) = (ni, nx, cxy, cy);
        for _ in 0..d {
            let ny = ci.add(&cy.eps());
            let nxy = cx.add(&cxy.eps());
            (ci, cx, cy, cxy) = (cy, cxy, ny, nxy);
        }
    }
    // 2·c_I vanishes.
    let tr = cy.eps().add(&cxy.shift());
    Poly::new(tr.0.iter().map(|c| RootTwo::new(c.unit as i64, c.eps as i64)).collect())
}

/// Evaluation of trace polynomials at fixed points of `F_p`, `p = 2⁶¹ − 1`,
/// through explicit 2×2 matrices. Since `p ≡ 7 (mod 8)`, 2 has a square root
/// `s` and `√2 ↦ s` is a ring map ℤ[√2] → F_p, so equal trace polynomials
/// always evaluate equally. Used as a prefilter before the exact comparison.
pub mod modp {
    use crate::word::Word;

    pub const P: u64 = (1 << 61) - 1;

    #[inline]
    pub fn mul(a: u64, b: u64) -> u64 {
        let prod = a as u128 * b as u128;
        let lo = (prod as u64) & P;
        let hi = (prod >> 61) as u64;
        let s = lo + hi;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    #[inline]
    pub fn add(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + P - b
        }
    }

    pub fn pow(mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Square root for `p ≡ 3 (mod 4)`, if one exists.
    pub fn sqrt(a: u64) -> Option<u64> {
        let r = pow(a, (P + 1) / 4);
        (mul(r, r) == a % P).then_some(r)
    }

    pub fn from_i64(v: i64) -> u64 {
        v.rem_euclid(P as i64) as u64
    }

    type Mat = [u64; 4];

    fn mat_mul(a: &Mat, b: &Mat) -> Mat {
        [
            add(mul(a[0], b[0]), mul(a[1], b[2])),
            add(mul(a[0], b[1]), mul(a[1], b[3])),
            add(mul(a[2], b[0]), mul(a[3], b[2])),
            add(mul(a[2], b[1]), mul(a[3], b[3])),
        ]
    }

    /// `X·Y^d` matrices at one evaluation point, plus the target value there.
    #[derive(Clone, Debug)]
    pub struct Evaluator {
        pub lambda: u64,
        pub sqrt2: u64,
        syllables: [Mat; 3],
    }

    impl Evaluator {
        /// Builds `X = [[0,1],[−1,0]]`, `Y = [[s/2,(r−λ)/2],[(λ+r)/2,s/2]]`
        /// with `r² = λ² − 2`; `None` if `λ² − 2` is a non-residue.
        pub fn new(lambda: u64) -> Option<Self> {
            let s = sqrt(2)?;
            let r = sqrt(sub(mul(lambda, lambda), 2))?;
            let inv2 = pow(2, P - 2);
            let x: Mat = [0, 1, P - 1, 0];
            let y: Mat = [mul(s, inv2), mul(sub(r, lambda), inv2), mul(add(lambda, r), inv2), mul(s, inv2)];
            let xy = mat_mul(&x, &y);
            let xy2 = mat_mul(&xy, &y);
            let xy3 = mat_mul(&xy2, &y);
            Some(Evaluator { lambda, sqrt2: s, syllables: [xy, xy2, xy3] })
        }

        pub fn trace_digits(&self, digits: &[u8]) -> u64 {
            let mut acc: Mat = [1, 0, 0, 1];
            for &d in digits {
                acc = mat_mul(&acc, &self.syllables[d as usize - 1]);
            }
            add(acc[0], acc[3])
        }

        pub fn trace(&self, w: &Word) -> u64 {
            self.trace_digits(w.digits())
        }

        /// `√2(λ² − 1)^m` at this point.
        pub fn target(&self, m: u32) -> u64 {
            mul(self.sqrt2, pow(sub(mul(self.lambda, self.lambda), 1), m as u64))
        }
    }

    /// Two evaluation points; a word whose trace polynomial differs from the
    /// target survives both with probability at most `(2k/p)²`.
    #[derive(Clone, Debug)]
    pub struct TargetScreen {
        points: Vec<(Evaluator, u64)>,
    }

    impl TargetScreen {
        pub fn new(m: u32) -> Self {
            let points = (3u64..)
                .filter_map(Evaluator::new)
                .take(2)
                .map(|e| {
                    let t = e.target(m);
                    (e, t)
                })
                .collect();
            TargetScreen { points }
        }

        pub fn may_match(&self, digits: &[u8]) -> bool {
            self.points.iter().all(|(e, t)| e.trace_digits(digits) == *t)
        }
    }
}
