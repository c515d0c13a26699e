use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rational_to_string, Rational};
use crate::error::{Error, Result};

/// Monic integer polynomial defining `Q[x]/(f)`, coefficients low-to-high.
///
/// Irreducibility is a caller contract. A reducible modulus is only detected
/// when an inversion runs into a zero divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    coeffs: Vec<BigInt>,
}

impl Modulus {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Domain("modulus must have degree >= 1".into()));
        }
        if !coeffs.last().is_some_and(One::is_one) {
            return Err(Error::Domain("modulus must be monic (leading coefficient 1)".into()));
        }
        Ok(Modulus { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    /// `x`, whose quotient ring is `Q` itself.
    pub fn rationals() -> Self {
        Modulus {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    /// `Phi_q(x) = 1 + x + ... + x^{q-1}` for a prime `q`.
    pub fn cyclotomic_prime(q: u64) -> Result<Self> {
        if q < 2 || (2..q).take_while(|d| d * d <= q).any(|d| q.is_multiple_of(d)) {
            return Err(Error::Domain(format!(
                "cyclotomic modulus supported only for prime order, got {q}"
            )));
        }
        Ok(Modulus {
            coeffs: vec![BigInt::one(); q as usize],
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

/// Element of `Q[x]/(f)`, stored as the residue polynomial of degree
/// `< deg f`.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    modulus: Arc<Modulus>,
    coeffs: Vec<Rational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for NumberFieldElement {}

impl NumberFieldElement {
    /// Reduces an arbitrary-length polynomial modulo `f`.
    pub fn new(modulus: Arc<Modulus>, poly: Vec<Rational>) -> Self {
        let coeffs = reduce(poly, &modulus);
        NumberFieldElement { modulus, coeffs }
    }

    pub fn from_integers(modulus: Arc<Modulus>, poly: &[i64]) -> Self {
        Self::new(
            modulus,
            poly.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        )
    }

    pub fn from_rational(modulus: Arc<Modulus>, value: Rational) -> Self {
        Self::new(modulus, vec![value])
    }

    /// A rational number viewed in `Q = Q[x]/(x)`.
    pub fn rational(value: Rational) -> Self {
        Self::from_rational(Arc::new(Modulus::rationals()), value)
    }

    pub fn zero(modulus: Arc<Modulus>) -> Self {
        Self::new(modulus, Vec::new())
    }

    pub fn one(modulus: Arc<Modulus>) -> Self {
        Self::from_rational(modulus, Rational::one())
    }

    /// The class of `x`.
    pub fn generator(modulus: Arc<Modulus>) -> Self {
        Self::new(modulus, vec![Rational::zero(), Rational::one()])
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Rational>) -> Self {
        NumberFieldElement {
            modulus: Arc::clone(&self.modulus),
            coeffs,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(self.with_coeffs(reduce(prod, &self.modulus)))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add_rational(&self, value: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += value;
        self.with_coeffs(coeffs)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over `Q[x]`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f: Vec<Rational> = self
            .modulus
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (f, trimmed(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; s0 * self == r0 (mod f)
        if r0.len() != 1 {
            return Err(Error::ZeroDivisor);
        }
        let lead = r0[0].clone();
        let scaled = s0.into_iter().map(|c| c / &lead).collect();
        Ok(Self::new(Arc::clone(&self.modulus), scaled))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Binary exponentiation, `a^0 = 1`.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::one(Arc::clone(&self.modulus));
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn reduce(mut poly: Vec<Rational>, modulus: &Modulus) -> Vec<Rational> {
    let d = modulus.degree();
    for i in (d..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for (j, fj) in modulus.coeffs[..d].iter().enumerate() {
            if !fj.is_zero() {
                poly[i - d + j] -= &c * Rational::from_integer(fj.clone());
            }
        }
    }
    poly.resize(d, Rational::zero());
    poly
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

/// Polynomial long division; `divisor` must be trimmed and nonzero.
fn div_rem(dividend: &[Rational], divisor: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(dividend.to_vec());
    let dd = divisor.len() - 1;
    let lead = divisor[dd].clone();
    if rem.len() < divisor.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() >= divisor.len() {
        let shift = rem.len() - divisor.len();
        let c = rem.last().unwrap() / &lead;
        for (j, dj) in divisor.iter().enumerate() {
            rem[shift + j] -= &c * dj;
        }
        quot[shift] = c;
        rem = trimmed(rem);
    }
    (trimmed(quot), rem)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands live in different fields; use the `try_`
        /// method for a checked variant.
        impl $trait<&NumberFieldElement> for &NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: &NumberFieldElement) -> NumberFieldElement {
                self.$checked(rhs).expect("number field operands must share a modulus")
            }
        }

        impl $trait<NumberFieldElement> for NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: NumberFieldElement) -> NumberFieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        self.with_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        -&self
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    modulus: Vec<String>,
    coeffs: Vec<String>,
}

impl Serialize for NumberFieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            modulus: self.modulus.coeffs.iter().map(ToString::to_string).collect(),
            coeffs: self.coeffs.iter().map(rational_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumberFieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(deserializer)?;
        let modulus = repr
            .modulus
            .iter()
            .map(|c| c.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let modulus = Modulus::new(modulus).map_err(D::Error::custom)?;
        if repr.coeffs.len() != modulus.degree() {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, got {}",
                modulus.degree(),
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(NumberFieldElement::new(Arc::new(modulus), coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(coeffs: &[i64]) -> Arc<Modulus> {
        Arc::new(Modulus::from_i64s(coeffs).unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn ring_identities_in_small_fields() {
        let gauss = field(&[1, 0, 1]);
        let i = NumberFieldElement::generator(gauss.clone());
        assert_eq!(&i * &i, NumberFieldElement::from_integers(gauss, &[-1]));

        let phi5 = Arc::new(Modulus::cyclotomic_prime(5).unwrap());
        let z = NumberFieldElement::generator(phi5.clone());
        assert!((&z.pow(4) * &z).is_one());
        assert!(z.pow(5).is_one());
        assert!(!z.pow(3).is_one());

        let cbrt = field(&[-2, 0, 0, 1]);
        let x = NumberFieldElement::generator(cbrt.clone());
        assert_eq!(&x * &x.pow(2), NumberFieldElement::from_integers(cbrt, &[2]));
    }

    #[test]
    fn inverses() {
        let gauss = field(&[1, 0, 1]);
        let i = NumberFieldElement::generator(gauss.clone());
        assert_eq!(i.inverse().unwrap(), -&i);

        let a = NumberFieldElement::from_integers(gauss.clone(), &[4, 3]);
        let expected = NumberFieldElement::new(gauss, vec![q(4, 25), q(-3, 25)]);
        assert_eq!(a.inverse().unwrap(), expected);

        let seven = NumberFieldElement::rational(q(7, 1));
        assert_eq!(seven.inverse().unwrap(), NumberFieldElement::rational(q(1, 7)));
    }

    #[test]
    fn error_paths() {
        let gauss = field(&[1, 0, 1]);
        let zero = NumberFieldElement::zero(gauss.clone());
        assert_eq!(zero.inverse(), Err(Error::DivisionByZero));

        // x^2 - 1 = (x - 1)(x + 1)
        let reducible = field(&[-1, 0, 1]);
        let x_minus_1 = NumberFieldElement::from_integers(reducible, &[-1, 1]);
        assert_eq!(x_minus_1.inverse(), Err(Error::ZeroDivisor));

        let other = NumberFieldElement::one(field(&[-2, 0, 0, 1]));
        assert_eq!(NumberFieldElement::one(gauss).try_add(&other), Err(Error::ModulusMismatch));

        assert!(Modulus::from_i64s(&[1, 2]).is_err());
        assert!(Modulus::from_i64s(&[1]).is_err());
        assert!(Modulus::cyclotomic_prime(6).is_err());
    }

    #[test]
    fn powers() {
        let two = NumberFieldElement::rational(q(2, 1));
        assert_eq!(two.pow(10), NumberFieldElement::rational(q(1024, 1)));
        let gauss = field(&[1, 0, 1]);
        let a = NumberFieldElement::from_integers(gauss.clone(), &[4, 3]);
        assert!(a.pow(0).is_one());
        let mut slow = NumberFieldElement::one(gauss);
        for _ in 0..37 {
            slow = &slow * &a;
        }
        assert_eq!(a.pow(37), slow);
    }

    #[test]
    fn serde_shape() {
        let gauss = field(&[1, 0, 1]);
        let a = NumberFieldElement::new(gauss, vec![q(4, 25), q(-3, 1)]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"modulus":["1","0","1"],"coeffs":["4/25","-3/1"]}"#);
        let back: NumberFieldElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<NumberFieldElement>(
            r#"{"modulus":["1","0","1"],"coeffs":["1/1"]}"#
        )
        .is_err());
    }

    fn moduli() -> Vec<Arc<Modulus>> {
        vec![
            field(&[1, 0, 1]),
            field(&[-2, 0, 0, 1]),
            Arc::new(Modulus::cyclotomic_prime(5).unwrap()),
        ]
    }

    fn element(which: usize, raw: &[(i64, i64)]) -> NumberFieldElement {
        let m = moduli()[which].clone();
        let coeffs = raw.iter().map(|&(n, d)| q(n, d)).collect();
        NumberFieldElement::new(m, coeffs)
    }

    fn small_coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-9i64..=9, 1i64..=5), 1..=4)
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(
            which in 0usize..3,
            a in small_coeffs(),
            b in small_coeffs(),
            c in small_coeffs(),
        ) {
            let (a, b, c) = (element(which, &a), element(which, &b), element(which, &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn inverse_is_two_sided(which in 0usize..3, a in small_coeffs(), b in small_coeffs()) {
            let (a, b) = (element(which, &a), element(which, &b));
            prop_assume!(!a.is_zero());
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert_eq!(&(&a * &b) * &inv, b);
        }
    }
}
