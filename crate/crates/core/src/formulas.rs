//! Closed forms over the p-Apéry set: power sums, `g_p`, `n_p`, `s_p`, the
//! two-generator formulas, and weighted sums with a number-field weight.
//!
//! Every evaluation is exact. Each public entry point has a `_from_apery`
//! variant taking a precomputed [`PAperySet`], so callers evaluating several
//! quantities for the same `(generators, p)` scan only once.
//!
//! The complement counted here is `{ n >= 1 : d(n) <= p }`. For `p >= 1` the
//! integer 0 also has `d(0) = 1 <= p`; it never changes a sum with `mu >= 1`
//! but is excluded from the count returned by [`genus`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    bernoulli, binomial, eulerian::eulerian_or_zero, expect_integer, pow_int, rational_from_int,
    NumberFieldElement, Rational,
};
use crate::exec::{self, Strategy};
use crate::semigroup::{apery_set, Generators, PAperySet};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn power_sum_of(m: &[u64], exp: u64) -> BigInt {
    m.iter().map(|&x| pow_int(&big(x), exp)).sum()
}

/// The Bernoulli closed form for `sum n^mu`, as an unchecked rational.
///
/// At `mu = 0` this evaluates to the count of the complement including 0
/// whenever `m_0 > 0`; [`genus`] corrects for that.
pub(crate) fn power_sum_closed_form(a: u64, m: &[u64], mu: u64) -> Rational {
    let a_q = rational_from_int(a);
    let mut total = Rational::zero();
    for kappa in 0..=mu {
        let b = bernoulli(kappa as usize);
        if b.is_zero() {
            continue;
        }
        // a^(kappa-1) with kappa = 0 giving 1/a
        let a_pow = if kappa == 0 {
            a_q.recip()
        } else {
            rational_from_int(pow_int(&big(a), kappa - 1))
        };
        let inner = rational_from_int(power_sum_of(m, mu + 1 - kappa));
        total += rational_from_int(binomial(mu + 1, kappa)) * b * a_pow * inner;
    }
    total /= rational_from_int(mu + 1);
    let b_last = bernoulli(mu as usize + 1);
    total + b_last / rational_from_int(mu + 1) * rational_from_int(pow_int(&big(a), mu + 1) - 1)
}

/// `sum_{n >= 1, d(n) <= p} n^mu`. `mu = 0` is routed to [`genus`].
pub fn power_sum(gens: &Generators, p: u64, mu: u64) -> Result<BigInt> {
    power_sum_from_apery(&apery_set(gens, p), mu)
}

pub fn power_sum_from_apery(ap: &PAperySet, mu: u64) -> Result<BigInt> {
    if mu == 0 {
        return genus_from_apery(ap);
    }
    expect_integer(
        power_sum_closed_form(ap.modulus(), ap.elements(), mu),
        "power sum",
    )
}

/// The p-Frobenius number `max_i m_i - a_1`; `-1` when nothing is left out.
pub fn frobenius(gens: &Generators, p: u64) -> i128 {
    frobenius_from_apery(&apery_set(gens, p))
}

pub fn frobenius_from_apery(ap: &PAperySet) -> i128 {
    i128::from(ap.max()) - i128::from(ap.modulus())
}

/// Number of positive integers with at most `p` representations.
pub fn genus(gens: &Generators, p: u64) -> Result<BigInt> {
    genus_from_apery(&apery_set(gens, p))
}

pub fn genus_from_apery(ap: &PAperySet) -> Result<BigInt> {
    let a = ap.modulus();
    let m = ap.elements();
    let sum: BigInt = m.iter().map(|&x| big(x)).sum();
    let mut value =
        Rational::new(sum, big(a)) - Rational::new(big(a) - 1, BigInt::from(2));
    // residue 0 below m_0 includes n = 0 itself whenever m_0 > 0
    if m[0] > 0 {
        value -= Rational::one();
    }
    expect_integer(value, "genus")
}

/// Sum of the positive integers with at most `p` representations.
pub fn sylvester_sum(gens: &Generators, p: u64) -> Result<BigInt> {
    sylvester_sum_from_apery(&apery_set(gens, p))
}

pub fn sylvester_sum_from_apery(ap: &PAperySet) -> Result<BigInt> {
    let a = big(ap.modulus());
    let m = ap.elements();
    let value = Rational::new(power_sum_of(m, 2), BigInt::from(2) * &a)
        - Rational::new(power_sum_of(m, 1), BigInt::from(2))
        + Rational::new(&a * &a - 1, BigInt::from(12));
    expect_integer(value, "Sylvester sum")
}

/// `g_p`, `n_p`, `s_p` for two coprime generators, straight from `a`, `b`, `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenClosed {
    pub g: BigInt,
    pub n: BigInt,
    pub s: BigInt,
}

pub fn two_gen_closed(a: u64, b: u64, p: u64) -> Result<TwoGenClosed> {
    if a < 2 || b < 2 {
        return Err(Error::Domain(format!("two-generator forms need a, b >= 2, got ({a}, {b})")));
    }
    let gcd = a.gcd(&b);
    if gcd != 1 {
        return Err(Error::Coprimality { gcd });
    }
    let (a, b, p) = (big(a), big(b), big(p));
    let ab = &a * &b;
    let one = BigInt::one();
    let g = (&p + 1) * &ab - &a - &b;
    let two_p1 = BigInt::from(2) * &p + 1;
    let mut n = expect_integer(
        Rational::new(&two_p1 * &ab - &a - &b + 1, BigInt::from(2)),
        "two-generator genus",
    )?;
    if !p.is_zero() {
        // the textbook expression counts n = 0 as well
        n -= &one;
    }
    let s_num = BigInt::from(2) * (BigInt::from(3) * &p * &p + BigInt::from(3) * &p + 1) * &ab * &ab
        - BigInt::from(3) * &two_p1 * &ab * (&a + &b)
        + &a * &a
        + &b * &b
        + BigInt::from(3) * &ab
        - one;
    let s = expect_integer(Rational::new(s_num, BigInt::from(12)), "two-generator Sylvester sum")?;
    Ok(TwoGenClosed { g, n, s })
}

fn check_weight(lambda: &NumberFieldElement) -> Result<()> {
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::Domain("weight must differ from 0 and 1".into()));
    }
    Ok(())
}

fn scalar(lambda: &NumberFieldElement, value: Rational) -> NumberFieldElement {
    NumberFieldElement::from_rational(Arc::clone(lambda.modulus()), value)
}

fn zero_like(lambda: &NumberFieldElement) -> NumberFieldElement {
    NumberFieldElement::zero(Arc::clone(lambda.modulus()))
}

/// `lambda / (lambda - 1)^2`
fn tail_term(lambda: &NumberFieldElement) -> Result<NumberFieldElement> {
    let lm1 = lambda.add_rational(&-Rational::one());
    lambda.try_div(&(&lm1 * &lm1))
}

/// `sum_{j=0}^{n} <n over n-j> base^j`
fn eulerian_poly(n: u64, base: &NumberFieldElement) -> NumberFieldElement {
    let mut acc = zero_like(base);
    let mut power = NumberFieldElement::one(Arc::clone(base.modulus()));
    for j in 0..=n {
        let e = eulerian_or_zero(n as usize, (n - j) as usize);
        if !e.is_zero() {
            acc = &acc + &power.scale(&rational_from_int(e));
        }
        if j < n {
            power = &power * base;
        }
    }
    acc
}

/// Weighted power sum over residues `m` modulo `a`, in the split form that
/// never evaluates `0^0`. Requires `lambda^a != 1`.
fn weighted_closed_form(
    a: u64,
    m: &[u64],
    mu: u64,
    lambda: &NumberFieldElement,
    strategy: Strategy,
) -> Result<NumberFieldElement> {
    let la = lambda.pow(a);
    if la.is_one() {
        return Err(Error::Precondition(
            "weight^a1 = 1; use the root-of-unity formula (weighted_sum_lambda_root)".into(),
        ));
    }
    let inv = la.add_rational(&-Rational::one()).inverse()?;
    let lam_m = exec::map(strategy, m, |&x| lambda.pow(x));

    let neg_a = -big(a);
    let mut total = zero_like(lambda);
    let mut inv_pow = inv.clone();
    for n in 0..mu {
        let residue_sum = m.iter().zip(&lam_m).fold(zero_like(lambda), |acc, (&x, w)| {
            if x == 0 {
                acc
            } else {
                &acc + &w.scale(&rational_from_int(pow_int(&big(x), mu - n)))
            }
        });
        let coef = rational_from_int(pow_int(&neg_a, n) * binomial(mu, n));
        let term = &(&inv_pow * &eulerian_poly(n, &la)) * &residue_sum;
        total = &total + &term.scale(&coef);
        inv_pow = &inv_pow * &inv;
    }
    let plain_sum = lam_m.iter().fold(zero_like(lambda), |acc, w| &acc + w);
    let last_block = &(&inv_pow * &eulerian_poly(mu, &la)) * &plain_sum;
    total = &total + &last_block.scale(&rational_from_int(pow_int(&neg_a, mu)));

    let lm1_inv = lambda.add_rational(&-Rational::one()).inverse()?;
    let tail = &lm1_inv.pow(mu + 1) * &eulerian_poly(mu, lambda);
    let tail = if mu.is_multiple_of(2) { -tail } else { tail };
    Ok(&total + &tail)
}

/// `sum_{n >= 1, d(n) <= p} lambda^n n^mu` for `mu >= 1` and `lambda^{a_1} != 1`.
pub fn weighted_power_sum(
    gens: &Generators,
    p: u64,
    mu: u64,
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    weighted_power_sum_with(gens, p, mu, lambda, Strategy::default())
}

pub fn weighted_power_sum_with(
    gens: &Generators,
    p: u64,
    mu: u64,
    lambda: &NumberFieldElement,
    strategy: Strategy,
) -> Result<NumberFieldElement> {
    check_weight(lambda)?;
    if mu == 0 {
        return Err(Error::Domain("weighted sums need mu >= 1".into()));
    }
    weighted_power_sum_from_apery(&apery_set(gens, p), mu, lambda, strategy)
}

pub fn weighted_power_sum_from_apery(
    ap: &PAperySet,
    mu: u64,
    lambda: &NumberFieldElement,
    strategy: Strategy,
) -> Result<NumberFieldElement> {
    check_weight(lambda)?;
    if mu == 0 {
        return Err(Error::Domain("weighted sums need mu >= 1".into()));
    }
    weighted_closed_form(ap.modulus(), ap.elements(), mu, lambda, strategy)
}

fn weighted_mu1_closed_form(
    a: u64,
    m: &[u64],
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    let la = lambda.pow(a);
    if la.is_one() {
        return Err(Error::Precondition(
            "weight^a1 = 1; use the root-of-unity formula (weighted_sum_lambda_root)".into(),
        ));
    }
    let d = la.add_rational(&-Rational::one());
    let d_inv = d.inverse()?;
    let mut weighted = zero_like(lambda);
    let mut plain = zero_like(lambda);
    for &x in m {
        let w = lambda.pow(x);
        weighted = &weighted + &w.scale(&rational_from_int(x));
        plain = &plain + &w;
    }
    let first = &d_inv * &weighted;
    let second = (&(&la * &d_inv) * &(&d_inv * &plain)).scale(&rational_from_int(a));
    Ok(&(&first - &second) + &tail_term(lambda)?)
}

/// The `mu = 1` weighted sum, `lambda^{a_1} != 1`.
pub fn weighted_sum_mu1(
    gens: &Generators,
    p: u64,
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    weighted_sum_mu1_from_apery(&apery_set(gens, p), lambda)
}

pub fn weighted_sum_mu1_from_apery(
    ap: &PAperySet,
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    check_weight(lambda)?;
    weighted_mu1_closed_form(ap.modulus(), ap.elements(), lambda)
}

fn root_closed_form(a: u64, m: &[u64], lambda: &NumberFieldElement) -> Result<NumberFieldElement> {
    if !lambda.pow(a).is_one() {
        return Err(Error::Precondition(
            "weight^a1 != 1; use weighted_sum_mu1 instead".into(),
        ));
    }
    let mut squares = zero_like(lambda);
    let mut linear = zero_like(lambda);
    let mut power = NumberFieldElement::one(Arc::clone(lambda.modulus()));
    for &x in m {
        squares = &squares + &power.scale(&rational_from_int(big(x) * big(x)));
        linear = &linear + &power.scale(&rational_from_int(x));
        power = &power * lambda;
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let value = &squares.scale(&Rational::new(BigInt::one(), BigInt::from(2) * big(a)))
        - &linear.scale(&half);
    Ok(&value + &tail_term(lambda)?)
}

/// The `mu = 1` weighted sum when `lambda^{a_1} = 1`, `lambda != 1`.
pub fn weighted_sum_lambda_root(
    gens: &Generators,
    p: u64,
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    weighted_sum_lambda_root_from_apery(&apery_set(gens, p), lambda)
}

pub fn weighted_sum_lambda_root_from_apery(
    ap: &PAperySet,
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    check_weight(lambda)?;
    root_closed_form(ap.modulus(), ap.elements(), lambda)
}

/// `sum (-1)^n n` over the complement; needs odd `a_1`.
pub fn alternating_sum(gens: &Generators, p: u64) -> Result<Rational> {
    alternating_sum_from_apery(&apery_set(gens, p))
}

pub fn alternating_sum_from_apery(ap: &PAperySet) -> Result<Rational> {
    let a = ap.modulus();
    if a.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "alternating sum formula needs odd a1, got {a}"
        )));
    }
    let (mut signed_m, mut signs) = (BigInt::zero(), BigInt::zero());
    for &x in ap.elements() {
        if x % 2 == 0 {
            signed_m += x;
            signs += 1;
        } else {
            signed_m -= x;
            signs -= 1;
        }
    }
    let four = BigInt::from(4);
    // the constant is lambda/(lambda-1)^2 at lambda = -1, with i running over 0..a1
    Ok(-Rational::new(signed_m, BigInt::from(2))
        + Rational::new(big(a) * signs, four.clone())
        - Rational::new(BigInt::one(), four))
}

/// Weighted `mu = 1` sum for two coprime generators `(a, b)`, using only
/// `a`, `b`, `p`. The argument order matters: `a` plays the Apéry modulus.
pub fn weighted_two_gen(
    a: u64,
    b: u64,
    p: u64,
    lambda: &NumberFieldElement,
) -> Result<NumberFieldElement> {
    if a == 0 || b == 0 || a == b {
        return Err(Error::Domain(format!("need distinct positive generators, got ({a}, {b})")));
    }
    let gcd = a.gcd(&b);
    if gcd != 1 {
        return Err(Error::Coprimality { gcd });
    }
    check_weight(lambda)?;
    let la = lambda.pow(a);
    let lb = lambda.pow(b);
    match (la.is_one(), lb.is_one()) {
        (false, false) => {
            let one = Rational::one();
            let (da, db) = (la.add_rational(&-one.clone()), lb.add_rational(&-one));
            let lab = lambda.pow(a * b);
            let lpab = lambda.pow(p * a * b);
            let ab = rational_from_int(a * b);

            let num1 = (&lpab * &(&lab.scale(&rational_from_int(p + 1)) - &scalar(lambda, rational_from_int(p)))).scale(&ab);
            let first = num1.try_div(&(&da * &db))?;

            let inner = &(&lambda.pow(a + b).scale(&rational_from_int(a + b)) - &la.scale(&rational_from_int(a)))
                - &lb.scale(&rational_from_int(b));
            let num2 = &(&lpab * &lab.add_rational(&-Rational::one())) * &inner;
            let den2 = &(&da * &da) * &(&db * &db);
            let second = num2.try_div(&den2)?;
            Ok(&(&tail_term(lambda)? + &first) - &second)
        }
        (false, true) => {
            let da = la.add_rational(&-Rational::one());
            let c = Rational::new(
                big(a) * big(b) * (BigInt::from(2 * p + 1) * big(a) - 1),
                BigInt::from(2),
            );
            let first = scalar(lambda, c).try_div(&da)?;
            let second = la.scale(&rational_from_int(a * a)).try_div(&(&da * &da))?;
            Ok(&(&first - &second) + &tail_term(lambda)?)
        }
        (true, false) => {
            let mut m = vec![0u64; a as usize];
            for i in 0..a {
                let v = b * (p * a + i);
                m[(v % a) as usize] = v;
            }
            root_closed_form(a, &m, lambda)
        }
        (true, true) => Err(Error::Consistency(
            "weight^a = weight^b = 1 with coprime a, b forces weight = 1".into(),
        )),
    }
}
