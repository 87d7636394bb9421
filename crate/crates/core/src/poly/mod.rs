//! Dense polynomials in λ over ℤ[√2], the two target families, and form
//! classification.

mod gf2;

pub use gf2::{trinomial_jset, Gf2Laurent, JSet};

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Coeff, RootTwo};

/// Polynomial `Σ coeffs[i]·λ^i` with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    coeffs: Vec<RootTwo<C>>,
}

/// Trace polynomial over the checked 64-bit backend.
pub type TracePoly = Poly<i64>;
/// Trace polynomial over arbitrary-precision integers.
pub type TracePolyBig = Poly<BigInt>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<RootTwo<C>>) -> Self {
        while coeffs.last().is_some_and(RootTwo::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: RootTwo<C>) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `λ`.
    pub fn lambda() -> Self {
        Poly::new(vec![RootTwo::zero(), RootTwo::one()])
    }

    /// Builds from `(unit, root)` pairs in ascending degree.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Poly::new(pairs.iter().map(|&(u, r)| RootTwo::new(C::from_i64(u), C::from_i64(r))).collect())
    }

    pub fn coeffs(&self) -> &[RootTwo<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RootTwo<C> {
        self.coeffs.get(i).cloned().unwrap_or_else(RootTwo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&RootTwo<C>> {
        self.coeffs.last()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).checked_add(&other.coeff(i))?);
        }
        Ok(Poly::new(out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).checked_sub(&other.coeff(i))?);
        }
        Ok(Poly::new(out))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(RootTwo::checked_neg).collect::<Result<_>>()?;
        Ok(Poly { coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let mut out = vec![RootTwo::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(Poly::new(out))
    }

    pub fn scale(&self, c: &RootTwo<C>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.checked_mul(c)).collect::<Result<_>>()?;
        Ok(Poly::new(coeffs))
    }

    pub fn mul_sqrt2(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(RootTwo::mul_sqrt2).collect::<Result<_>>()?;
        Ok(Poly { coeffs })
    }

    /// Multiplication by λ.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(RootTwo::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self> {
        let mut acc = Poly::constant(RootTwo::one());
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Horner evaluation at a point of ℤ[√2].
    pub fn eval(&self, at: &RootTwo<C>) -> Result<RootTwo<C>> {
        let mut acc = RootTwo::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(at)?.checked_add(c)?;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * at + c.to_f64())
    }

    pub fn eval_complex(&self, at: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs.iter().rev().fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| acc * at + c.to_f64())
    }

    /// Componentwise reduction of every coefficient modulo 2 or 4.
    pub fn reduce_mod(&self, n: u32) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.reduce_mod(n)).collect::<Result<_>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Substitutes `λ ↦ −λ`.
    pub fn reflect(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { c.checked_neg() } else { Ok(c.clone()) })
            .collect::<Result<_>>()?;
        Ok(Poly { coeffs })
    }

    /// Exact division by `λ² − d`; `None` if the remainder is nonzero.
    fn div_quadratic(&self, d: i64) -> Option<Self> {
        let n = self.coeffs.len();
        if n < 3 {
            return None;
        }
        // p = q·(λ² − d); walk down from the top: q[i−2] = r[i], r[i−2] += d·q[i−2].
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RootTwo::zero(); n - 2];
        let d = RootTwo::from_int(d);
        for i in (2..n).rev() {
            let q = rem[i].clone();
            rem[i - 2] = rem[i - 2].checked_add(&q.checked_mul(&d).ok()?).ok()?;
            quot[i - 2] = q;
        }
        (rem[0].is_zero() && rem[1].is_zero()).then(|| Poly::new(quot))
    }

    pub fn to_big(&self) -> Poly<BigInt> {
        Poly { coeffs: self.coeffs.iter().map(RootTwo::to_big).collect() }
    }

    /// Machine form: `[unit, root]` pairs by ascending degree.
    pub fn to_json_pairs(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs.iter().map(|c| serde_json::json!([json_int(&c.unit), json_int(&c.root)])).collect(),
        )
    }
}

fn json_int<C: Coeff>(c: &C) -> serde_json::Value {
    let big = c.to_big();
    match i64::try_from(&big) {
        Ok(v) => serde_json::Value::from(v),
        // Out-of-range integers are emitted as strings rather than lossy floats.
        Err(_) => serde_json::Value::from(big.to_string()),
    }
}

impl Poly<BigInt> {
    pub fn to_i64(&self) -> Option<TracePoly> {
        let coeffs = self.coeffs.iter().map(|c| c.to_i64()).collect::<Option<_>>()?;
        Some(Poly { coeffs })
    }
}

impl TracePoly {
    /// Parses the machine form `[[unit, root], ...]`.
    pub fn from_json_pairs(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::InvalidArgument("expected a JSON array of [unit, root] integer pairs".into());
        let arr = value.as_array().ok_or_else(bad)?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let u = pair[0].as_i64().ok_or_else(bad)?;
            let r = pair[1].as_i64().ok_or_else(bad)?;
            coeffs.push(RootTwo::new(u, r));
        }
        Ok(Poly::new(coeffs))
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Human form, e.g. `√2*l^6 - 3√2*l^4 + 3√2*l^2 - √2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, body) = coeff_body(c);
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = match deg {
                0 => String::new(),
                1 => "l".to_string(),
                d => format!("l^{d}"),
            };
            let term = match (body.as_str(), mono.is_empty()) {
                ("1", true) => "1".to_string(),
                ("1", false) => mono,
                (b, true) => b.to_string(),
                (b, false) => format!("{b}*{mono}"),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

/// Splits a nonzero coefficient into a sign and an unsigned textual body.
fn coeff_body<C: Coeff>(c: &RootTwo<C>) -> (bool, String) {
    let abs = |x: &C| if x.is_negative() { x.try_neg().expect("negation").to_string() } else { x.to_string() };
    if c.root.is_zero() {
        (c.unit.is_negative(), abs(&c.unit))
    } else if c.unit.is_zero() {
        let b = abs(&c.root);
        let body = if b == "1" { "√2".to_string() } else { format!("{b}√2") };
        (c.root.is_negative(), body)
    } else {
        (false, format!("({c})"))
    }
}

/// Which quadratic factor a target polynomial is built from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `(λ² − 1)^c`, the odd y-exponent-sum case.
    Odd,
    /// `(λ² − 2)^c`, the even y-exponent-sum case.
    Even,
    /// `c = 0`, where both families coincide.
    Either,
}

impl Family {
    fn offset(self) -> i64 {
        match self {
            Family::Odd | Family::Either => 1,
            Family::Even => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Odd => "odd",
            Family::Even => "even",
            Family::Either => "either",
        })
    }
}

/// Parameters `(a, b, c, family)` of `√2^a λ^b (λ² − 1)^c` or `√2^a λ^b (λ² − 2)^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Form {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub family: Family,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.family)
    }
}

/// Expands `√2^a λ^b (λ² − 1)^c` (odd) or `√2^a λ^b (λ² − 2)^c` (even).
pub fn target_poly_in<C: Coeff>(a: u32, b: u32, c: u32, family: Family) -> Result<Poly<C>> {
    let quad = Poly::new(vec![RootTwo::from_int(-family.offset()), RootTwo::zero(), RootTwo::one()]);
    let mut p = quad.checked_pow(c)?.scale(&RootTwo::sqrt2_pow(a)?)?;
    for _ in 0..b {
        p = p.shift();
    }
    Ok(p)
}

pub fn target_poly(a: u32, b: u32, c: u32, family: Family) -> Result<TracePoly> {
    target_poly_in(a, b, c, family)
}

/// The search target `√2(λ² − 1)^m`.
pub fn search_target<C: Coeff>(m: u32) -> Result<Poly<C>> {
    target_poly_in(1, 0, m, Family::Odd)
}

/// Recovers `(a, b, c, family)` with `target_poly(a,b,c,family) = p`, or
/// `None` if `p` has neither form.
pub fn classify_form<C: Coeff>(p: &Poly<C>) -> Option<Form> {
    let lead = p.leading()?.clone();
    // Leading coefficient must be exactly √2^a.
    let mut a = 0u32;
    let mut lc = lead;
    let mut q = p.clone();
    while lc != RootTwo::one() {
        lc = lc.div_sqrt2()?;
        q = Poly::new(q.coeffs.iter().map(RootTwo::div_sqrt2).collect::<Option<_>>()?);
        a += 1;
        if a > 4 * 64 + 1 {
            return None;
        }
    }
    let b = q.coeffs.iter().take_while(|c| c.is_zero()).count();
    q = Poly::new(q.coeffs[b..].to_vec());
    let deg = q.degree()?;
    if deg == 0 {
        return Some(Form { a, b: b as u32, c: 0, family: Family::Either });
    }
    if deg % 2 == 1 {
        return None;
    }
    for family in [Family::Odd, Family::Even] {
        let mut r = q.clone();
        let mut c = 0u32;
        while let Some(next) = r.div_quadratic(family.offset()) {
            r = next;
            c += 1;
        }
        if c > 0 {
            return (r == Poly::constant(RootTwo::one())).then_some(Form { a, b: b as u32, c, family });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(i64, i64)]) -> TracePoly {
        TracePoly::from_pairs(pairs)
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[(1, 0), (0, 0), (0, 0)]).coeffs().len(), 1);
        assert!(p(&[(0, 0)]).is_zero());
    }

    #[test]
    fn products() {
        let q1 = p(&[(-1, 0), (0, 0), (1, 0)]);
        assert_eq!(q1.checked_mul(&q1).unwrap(), p(&[(1, 0), (0, 0), (-2, 0), (0, 0), (1, 0)]));
        let s = TracePoly::constant(RootTwo::sqrt2());
        assert_eq!(s.checked_mul(&q1).unwrap(), p(&[(0, -1), (0, 0), (0, 1)]));
        let q2 = p(&[(-2, 0), (0, 0), (1, 0)]);
        assert_eq!(q2.checked_mul(&q2).unwrap(), p(&[(4, 0), (0, 0), (-4, 0), (0, 0), (1, 0)]));
    }

    #[test]
    fn evaluation() {
        let w1 = target_poly(1, 0, 3, Family::Odd).unwrap();
        assert_eq!(w1.eval(&RootTwo::from_int(0)).unwrap(), RootTwo::new(0, -1));
        assert_eq!(w1.eval(&RootTwo::from_int(1)).unwrap(), RootTwo::zero());
        assert_eq!(w1.eval(&RootTwo::sqrt2()).unwrap(), RootTwo::new(0, 1));
    }

    #[test]
    fn targets() {
        assert_eq!(
            target_poly(1, 0, 3, Family::Odd).unwrap(),
            p(&[(0, -1), (0, 0), (0, 3), (0, 0), (0, -3), (0, 0), (0, 1)])
        );
        assert_eq!(target_poly(0, 1, 0, Family::Odd).unwrap(), p(&[(0, 0), (1, 0)]));
        assert_eq!(target_poly(2, 0, 1, Family::Even).unwrap(), p(&[(-4, 0), (0, 0), (2, 0)]));
    }

    #[test]
    fn classification() {
        let w2 = target_poly(1, 0, 4, Family::Odd).unwrap();
        assert_eq!(classify_form(&w2), Some(Form { a: 1, b: 0, c: 4, family: Family::Odd }));
        // λ³ − 3λ (the third Chebyshev trace) has neither form.
        assert_eq!(classify_form(&p(&[(0, 0), (-3, 0), (0, 0), (1, 0)])), None);
        assert_eq!(classify_form(&p(&[(2, 0)])), Some(Form { a: 2, b: 0, c: 0, family: Family::Either }));
        assert_eq!(classify_form(&TracePoly::zero()), None);
        assert_eq!(classify_form(&p(&[(-1, 0)])), None);
        // Mixed factors are rejected.
        let mixed = target_poly(0, 0, 1, Family::Odd)
            .unwrap()
            .checked_mul(&target_poly(0, 0, 1, Family::Even).unwrap())
            .unwrap();
        assert_eq!(classify_form(&mixed), None);
    }

    #[test]
    fn rendering() {
        let w1 = target_poly(1, 0, 3, Family::Odd).unwrap();
        assert_eq!(w1.to_string(), "√2*l^6 - 3√2*l^4 + 3√2*l^2 - √2");
        assert_eq!(p(&[(0, 0), (1, 0)]).to_string(), "l");
        assert_eq!(p(&[(-2, 0), (0, 0), (1, 0)]).to_string(), "l^2 - 2");
        assert_eq!(p(&[(1, 1)]).to_string(), "(1+1√2)");
        assert_eq!(TracePoly::zero().to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let w1 = target_poly(1, 0, 3, Family::Odd).unwrap();
        let v = w1.to_json_pairs();
        assert_eq!(v[0], serde_json::json!([0, -1]));
        assert_eq!(TracePoly::from_json_pairs(&v).unwrap(), w1);
        assert!(TracePoly::from_json_pairs(&serde_json::json!([[1]])).is_err());
    }

    fn any_form() -> impl Strategy<Value = Form> {
        (0u32..5, 0u32..5, 0u32..8, prop::bool::ANY).prop_map(|(a, b, c, odd)| Form {
            a,
            b,
            c,
            family: match (c, odd) {
                (0, _) => Family::Either,
                (_, true) => Family::Odd,
                (_, false) => Family::Even,
            },
        })
    }

    proptest! {
        #[test]
        fn classify_inverts_target(f in any_form()) {
            let poly = target_poly(f.a, f.b, f.c, f.family).unwrap();
            prop_assert_eq!(classify_form(&poly), Some(f));
        }

        #[test]
        fn horner_matches_naive(coeffs in prop::collection::vec((-50i64..50, -50i64..50), 0..10),
                                at in (-4i64..4, -4i64..4)) {
            let poly = p(&coeffs);
            let x = RootTwo::new(at.0, at.1);
            let mut naive = RootTwo::zero();
            let mut power = RootTwo::one();
            for c in poly.coeffs() {
                naive = naive + c.clone() * power.clone();
                power = power * x.clone();
            }
            prop_assert_eq!(poly.eval(&x).unwrap(), naive);
        }
    }
}
