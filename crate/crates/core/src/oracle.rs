//! Brute-force ground truth: enumerate `{ n >= 1 : d(n) <= p }` and sum over
//! it directly, then compare every applicable closed form against it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::exactmath::{pow_int, rational_to_string, NumberFieldElement, Rational};
use crate::exec::{self, Strategy};
use crate::formulas;
use crate::semigroup::{apery_set, DenumerantTable, Generators};

/// The positive integers with at most `p` representations, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementSet {
    gens: Generators,
    p: u64,
    elements: Vec<u64>,
}

impl ComplementSet {
    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Largest element, or `-1` for an empty complement.
    pub fn max(&self) -> i128 {
        self.elements.last().map_or(-1, |&n| i128::from(n))
    }
}

/// Scans `n = 1, 2, ...` and stops after `a_1` consecutive values with
/// `d(n) > p`; from there on every residue class stays above `p`.
pub fn complement_set(gens: &Generators, p: u64) -> ComplementSet {
    let a = gens.min();
    let threshold = u128::from(p);
    let mut bound = 4 * gens.values()[0] * gens.values()[1];
    let mut table = DenumerantTable::new(gens, bound);
    let mut elements = Vec::new();
    let mut run = 0u64;
    let mut n = 1u64;
    while run < a {
        if n > bound {
            bound *= 2;
            table = DenumerantTable::new(gens, bound);
        }
        if table.counts()[n as usize] > threshold {
            run += 1;
        } else {
            run = 0;
            elements.push(n);
        }
        n += 1;
    }
    ComplementSet {
        gens: gens.clone(),
        p,
        elements,
    }
}

/// `sum n^mu` over the complement; `mu = 0` gives its size.
pub fn brute_power_sum(cs: &ComplementSet, mu: u64) -> BigInt {
    cs.elements
        .iter()
        .map(|&n| pow_int(&BigInt::from(n), mu))
        .sum()
}

/// `sum lambda^n n^mu` over the complement.
pub fn brute_weighted_sum(
    cs: &ComplementSet,
    mu: u64,
    lambda: &NumberFieldElement,
) -> NumberFieldElement {
    let mut total = NumberFieldElement::zero(Arc::clone(lambda.modulus()));
    let mut power = NumberFieldElement::one(Arc::clone(lambda.modulus()));
    let mut at = 0u64;
    for &n in &cs.elements {
        power = &power * &lambda.pow(n - at);
        at = n;
        let weight = Rational::from_integer(pow_int(&BigInt::from(n), mu));
        total = &total + &power.scale(&weight);
    }
    total
}

/// One formula-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub case: String,
    pub formula: String,
    pub oracle: String,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.matched)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.matched)
    }

    fn push<T: ToString, E: ToString>(
        &mut self,
        check: &str,
        case: String,
        formula: Result<T, E>,
        oracle: T,
    ) {
        let oracle = oracle.to_string();
        let (formula, matched) = match formula {
            Ok(v) => {
                let v = v.to_string();
                let matched = v == oracle;
                (v, matched)
            }
            Err(e) => (format!("error: {}", e.to_string()), false),
        };
        self.checks.push(Check {
            check: check.into(),
            case,
            formula,
            oracle,
            matched,
        });
    }
}

fn field_text(value: &NumberFieldElement) -> String {
    value
        .coeffs()
        .iter()
        .map(rational_to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs every closed form that applies to `(gens, p)` against the brute
/// sums. Mismatches and formula errors are recorded, never raised.
///
/// Weights equal to 0 or 1 are skipped. A weight with `lambda^{a_1} = 1` is
/// checked through the root-of-unity formula at `mu = 1` only.
pub fn verify(
    gens: &Generators,
    p: u64,
    mus: &[u64],
    lambdas: &[NumberFieldElement],
) -> VerificationReport {
    let ap = apery_set(gens, p);
    let cs = complement_set(gens, p);
    let a = gens.min();
    let mut report = VerificationReport::default();
    let base = format!("gens={:?} p={p}", gens.values());

    report.push(
        "frobenius",
        base.clone(),
        Ok::<_, String>(BigInt::from(formulas::frobenius_from_apery(&ap))),
        BigInt::from(cs.max()),
    );
    report.push("genus", base.clone(), formulas::genus_from_apery(&ap), brute_power_sum(&cs, 0));
    report.push(
        "sylvester_sum",
        base.clone(),
        formulas::sylvester_sum_from_apery(&ap),
        brute_power_sum(&cs, 1),
    );
    for &mu in mus {
        report.push(
            "power_sum",
            format!("{base} mu={mu}"),
            formulas::power_sum_from_apery(&ap, mu),
            brute_power_sum(&cs, mu),
        );
    }
    if let [x, y] = *gens.values() {
        if x >= 2 {
            match formulas::two_gen_closed(x, y, p) {
                Ok(t) => {
                    report.push("two_gen_g", base.clone(), Ok::<_, String>(t.g), BigInt::from(cs.max()));
                    report.push("two_gen_n", base.clone(), Ok::<_, String>(t.n), brute_power_sum(&cs, 0));
                    report.push("two_gen_s", base.clone(), Ok::<_, String>(t.s), brute_power_sum(&cs, 1));
                }
                Err(e) => report.push("two_gen", base.clone(), Err(e), String::new()),
            }
        }
    }
    if a % 2 == 1 {
        let minus_one = NumberFieldElement::rational(-Rational::one());
        let direct = brute_weighted_sum(&cs, 1, &minus_one)
            .as_rational()
            .expect("rational weight");
        report.push(
            "alternating_sum",
            base.clone(),
            formulas::alternating_sum_from_apery(&ap).map(|r| rational_to_string(&r)),
            rational_to_string(&direct),
        );
    }

    for lambda in lambdas {
        if lambda.is_zero() || lambda.is_one() {
            continue;
        }
        let lcase = format!("{base} lambda=[{}]", field_text(lambda));
        let direct1 = brute_weighted_sum(&cs, 1, lambda);
        if lambda.pow(a).is_one() {
            report.push(
                "weighted_sum_lambda_root",
                lcase.clone(),
                formulas::weighted_sum_lambda_root_from_apery(&ap, lambda).map(|v| field_text(&v)),
                field_text(&direct1),
            );
        } else {
            report.push(
                "weighted_sum_mu1",
                lcase.clone(),
                formulas::weighted_sum_mu1_from_apery(&ap, lambda).map(|v| field_text(&v)),
                field_text(&direct1),
            );
            for &mu in mus.iter().filter(|&&mu| mu >= 1) {
                let direct = brute_weighted_sum(&cs, mu, lambda);
                report.push(
                    "weighted_power_sum",
                    format!("{lcase} mu={mu}"),
                    formulas::weighted_power_sum_from_apery(&ap, mu, lambda, Strategy::Sequential)
                        .map(|v| field_text(&v)),
                    field_text(&direct),
                );
            }
        }
        if let [x, y] = *gens.values() {
            report.push(
                "weighted_two_gen",
                lcase.clone(),
                formulas::weighted_two_gen(x, y, p, lambda).map(|v| field_text(&v)),
                field_text(&direct1),
            );
        }
    }
    report
}

/// Inputs for one [`verify`] run.
#[derive(Clone, Debug)]
pub struct VerifyCase {
    pub gens: Generators,
    pub p: u64,
    pub mus: Vec<u64>,
    pub lambdas: Vec<NumberFieldElement>,
}

/// Runs independent cases, in parallel under [`Strategy::Parallel`]. Each
/// enumeration itself stays sequential.
pub fn verify_batch(cases: &[VerifyCase], strategy: Strategy) -> Vec<VerificationReport> {
    exec::map(strategy, cases, |c| verify(&c.gens, c.p, &c.mus, &c.lambdas))
}
