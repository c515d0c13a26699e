//! Weight specifications accepted by `--lambda`.
//!
//! ```text
//! INT | NUM/DEN                       rational weight
//! zeta:M                              primitive M-th root of unity, M prime
//! gauss:RE,IM                         RE + IM*i in Q(i)
//! nf:modulus=c0,...,1;elem=e0,...     general element of Q[x]/(f)
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use pfrobenius::exactmath::parse_rational;
use pfrobenius::{Modulus, NumberFieldElement};

#[derive(Clone, Debug)]
pub struct LambdaSpec {
    pub value: NumberFieldElement,
    /// Set for `zeta:M`, where the value is the class of `x` mod `Phi_M`.
    pub cyclotomic_order: Option<u64>,
}

fn rationals(list: &str) -> Result<Vec<pfrobenius::Rational>, String> {
    list.split(',')
        .map(|c| parse_rational(c).map_err(|e| e.to_string()))
        .collect()
}

pub fn parse_lambda(text: &str) -> Result<LambdaSpec, String> {
    let text = text.trim();
    let plain = |value| LambdaSpec {
        value,
        cyclotomic_order: None,
    };
    if let Some(order) = text.strip_prefix("zeta:") {
        let order: u64 = order
            .trim()
            .parse()
            .map_err(|_| format!("bad root-of-unity order '{order}'"))?;
        let modulus = Modulus::cyclotomic_prime(order).map_err(|e| e.to_string())?;
        return Ok(LambdaSpec {
            value: NumberFieldElement::generator(Arc::new(modulus)),
            cyclotomic_order: Some(order),
        });
    }
    if let Some(parts) = text.strip_prefix("gauss:") {
        let coeffs = rationals(parts)?;
        if coeffs.len() != 2 {
            return Err(format!("gauss: expects RE,IM, got '{parts}'"));
        }
        let modulus = Arc::new(Modulus::from_i64s(&[1, 0, 1]).expect("x^2 + 1 is monic"));
        return Ok(plain(NumberFieldElement::new(modulus, coeffs)));
    }
    if let Some(body) = text.strip_prefix("nf:") {
        let mut modulus = None;
        let mut elem = None;
        for field in body.split(';') {
            match field.split_once('=') {
                Some(("modulus", list)) => {
                    let coeffs = list
                        .split(',')
                        .map(|c| c.trim().parse::<BigInt>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| format!("bad modulus coefficients '{list}'"))?;
                    modulus = Some(Modulus::new(coeffs).map_err(|e| e.to_string())?);
                }
                Some(("elem", list)) => elem = Some(rationals(list)?),
                _ => return Err(format!("unrecognized nf: field '{field}'")),
            }
        }
        let modulus = modulus.ok_or("nf: needs modulus=...")?;
        let elem = elem.ok_or("nf: needs elem=...")?;
        if elem.len() > modulus.degree() {
            return Err(format!(
                "element has {} coefficients but the modulus has degree {}",
                elem.len(),
                modulus.degree()
            ));
        }
        return Ok(plain(NumberFieldElement::new(Arc::new(modulus), elem)));
    }
    let value = parse_rational(text).map_err(|_| format!("unrecognized weight '{text}'"))?;
    Ok(plain(NumberFieldElement::rational(value)))
}
