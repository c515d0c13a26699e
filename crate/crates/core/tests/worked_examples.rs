//! Worked examples for (5, 7, 11) and (14, 17, 20, 23, 26, 29).

use std::sync::Arc;

use num_bigint::BigInt;
use pfrobenius::exactmath::parse_rational;
use pfrobenius::formulas::*;
use pfrobenius::oracle::{brute_power_sum, brute_weighted_sum, complement_set};
use pfrobenius::{apery_set, Generators, Modulus, NumberFieldElement};

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

fn six() -> Generators {
    Generators::new(&[14, 17, 20, 23, 26, 29]).unwrap()
}

#[test]
fn five_seven_eleven_at_p4() {
    let g = Generators::new(&[5, 7, 11]).unwrap();
    let ap = apery_set(&g, 4);
    assert_eq!(ap.elements(), &[50, 51, 47, 53, 49]);
    assert_eq!(frobenius_from_apery(&ap), 48);
    assert_eq!(genus_from_apery(&ap).unwrap(), BigInt::from(47));
    assert_eq!(sylvester_sum_from_apery(&ap).unwrap(), BigInt::from(1129));
    assert_eq!(power_sum_from_apery(&ap, 1).unwrap(), BigInt::from(1129));
    assert_eq!(power_sum_from_apery(&ap, 6).unwrap(), BigInt::from(79330369495u64));
    let cs = complement_set(&g, 4);
    assert_eq!(brute_power_sum(&cs, 6), BigInt::from(79330369495u64));
}

#[test]
fn weighted_over_cube_root_of_two() {
    let m = Arc::new(Modulus::from_i64s(&[-2, 0, 0, 1]).unwrap());
    let cbrt = NumberFieldElement::generator(m.clone());
    let got = weighted_power_sum(&six(), 0, 2, &cbrt).unwrap();
    let want = NumberFieldElement::from_integers(m, &[21528522, 31320173525, 659369214]);
    assert_eq!(got, want);
    assert_eq!(brute_weighted_sum(&complement_set(&six(), 0), 2, &cbrt), want);
}

#[test]
fn weighted_rational_weights() {
    let seven = NumberFieldElement::rational(parse_rational("7").unwrap());
    let got = weighted_power_sum(&six(), 0, 3, &seven).unwrap();
    assert_eq!(
        got.as_rational().unwrap().to_integer(),
        big("126153136547718860397749189364814847897329040723302499959511892")
    );

    let minus_half = NumberFieldElement::rational(parse_rational("-1/2").unwrap());
    let got = weighted_power_sum(&six(), 0, 4, &minus_half).unwrap();
    assert_eq!(
        got.as_rational().unwrap(),
        parse_rational("-252455039549405466513/147573952589676412928").unwrap()
    );
}

#[test]
fn weighted_gaussian() {
    let m = Arc::new(Modulus::from_i64s(&[1, 0, 1]).unwrap());
    let lambda = NumberFieldElement::from_integers(m.clone(), &[4, 3]);
    let got = weighted_power_sum(&six(), 0, 5, &lambda).unwrap();
    let want = NumberFieldElement::new(
        m,
        vec![
            parse_rational("58604955584641578954030966530484875253297329000101560480").unwrap(),
            parse_rational("-69984733631939902694215153740002368436325991046609895240").unwrap(),
        ],
    );
    assert_eq!(got, want);
}

/// Residue-class sums of `n` over the complement of <5, 7>, i.e. the
/// coefficients of `1, z, ..., z^4` before reducing mod Phi_5.
const ZETA5_TWO_GEN: [[i64; 5]; 6] = [
    [0, 34, 2, 65, 13],
    [105, 286, 156, 366, 216],
    // z coefficient is 783: enumeration and the total 3369 both require it
    [455, 783, 555, 912, 664],
    [1050, 1525, 1199, 1703, 1357],
    [1890, 2512, 2088, 2739, 2295],
    [2975, 3744, 3222, 4020, 3478],
];

#[test]
fn zeta5_two_generator_table() {
    let phi5 = Arc::new(Modulus::cyclotomic_prime(5).unwrap());
    let z = NumberFieldElement::generator(phi5.clone());
    let g = Generators::new(&[5, 7]).unwrap();
    for (p, row) in ZETA5_TWO_GEN.iter().enumerate() {
        let p = p as u64;
        let want = NumberFieldElement::from_integers(phi5.clone(), row);
        assert_eq!(weighted_two_gen(7, 5, p, &z).unwrap(), want, "p = {p}");
        assert_eq!(weighted_sum_lambda_root(&g, p, &z).unwrap(), want, "p = {p}");
        assert_eq!(brute_weighted_sum(&complement_set(&g, p), 1, &z), want, "p = {p}");
        let total: i64 = row.iter().sum();
        assert_eq!(sylvester_sum(&g, p).unwrap(), BigInt::from(total));
    }
}
