//! Generators, denumerants, `S_p` membership and p-Apéry sets.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};

/// Validated generators: at least two distinct positive integers with
/// gcd 1, sorted ascending so that `values()[0]` is the minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generators(Vec<u64>);

impl Generators {
    pub fn new(raw: &[u64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::Domain(format!(
                "need at least two generators, got {}",
                raw.len()
            )));
        }
        if raw.contains(&0) {
            return Err(Error::Domain("generators must be positive".into()));
        }
        let mut values = raw.to_vec();
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("duplicate generator {}", w[0])));
        }
        let gcd = values.iter().fold(0u64, |g, &a| g.gcd(&a));
        if gcd != 1 {
            return Err(Error::Coprimality { gcd });
        }
        Ok(Generators(values))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// The smallest generator `a_1`, used as the Apéry modulus.
    pub fn min(&self) -> u64 {
        self.0[0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Alias for [`Generators::new`].
pub fn validate_generators(raw: &[u64]) -> Result<Generators> {
    Generators::new(raw)
}

/// Representation counts `d(n)` for `0 <= n <= bound`.
///
/// Counts are `u128` with saturating addition; they are exact for every
/// table this crate builds in practice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenumerantTable {
    gens: Generators,
    counts: Vec<u128>,
}

impl DenumerantTable {
    /// Coin-counting DP: one pass per generator, `O(k * bound)` additions.
    pub fn new(gens: &Generators, bound: u64) -> Self {
        let len = usize::try_from(bound).expect("table bound exceeds address space") + 1;
        let mut counts = vec![0u128; len];
        counts[0] = 1;
        for &a in gens.values() {
            let a = a as usize;
            for n in a..len {
                counts[n] = counts[n].saturating_add(counts[n - a]);
            }
        }
        DenumerantTable {
            gens: gens.clone(),
            counts,
        }
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn bound(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    /// `d(n)`, with `d(n) = 0` for negative `n`; `None` past the bound.
    pub fn get(&self, n: i64) -> Option<u128> {
        if n < 0 {
            return Some(0);
        }
        self.counts.get(n as usize).copied()
    }
}

/// Alias for [`DenumerantTable::new`].
pub fn denumerant_table(gens: &Generators, bound: u64) -> DenumerantTable {
    DenumerantTable::new(gens, bound)
}

/// Number of ways to write `n` as a non-negative combination of the
/// generators; zero for negative `n`.
pub fn denumerant(n: i64, gens: &Generators) -> u128 {
    if n < 0 {
        return 0;
    }
    DenumerantTable::new(gens, n as u64).counts[n as usize]
}

/// Membership in `S_p = { n >= 0 : d(n) > p }`.
pub fn is_in_sp(n: i64, gens: &Generators, p: u64) -> bool {
    n >= 0 && denumerant(n, gens) > u128::from(p)
}

/// The p-Apéry set with respect to `a_1`: `m[i]` is the least `n ≡ i
/// (mod a_1)` with `d(n) > p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAperySet {
    gens: Generators,
    p: u64,
    m: Vec<u64>,
}

impl PAperySet {
    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Elements indexed by residue class modulo `a_1`.
    pub fn elements(&self) -> &[u64] {
        &self.m
    }

    pub fn modulus(&self) -> u64 {
        self.gens.min()
    }

    pub fn max(&self) -> u64 {
        *self.m.iter().max().expect("Apéry set is never empty")
    }
}

fn initial_bound(gens: &Generators, p: u64) -> u64 {
    let v = gens.values();
    let ab = v[0].saturating_mul(v[1]);
    p.saturating_add(2).saturating_mul(ab).max(v[0])
}

/// Computes the p-Apéry set, scanning residue classes with the default
/// [`Strategy`].
pub fn apery_set(gens: &Generators, p: u64) -> PAperySet {
    apery_set_with(gens, p, Strategy::default())
}

/// [`apery_set`] with an explicit execution strategy for the per-residue
/// scans. The table bound starts at `(p+2) a_1 a_2` and doubles on demand.
pub fn apery_set_with(gens: &Generators, p: u64, strategy: Strategy) -> PAperySet {
    let a = gens.min();
    let threshold = u128::from(p);
    let mut bound = initial_bound(gens, p);
    loop {
        let table = DenumerantTable::new(gens, bound);
        let counts = table.counts();
        let found: Vec<Option<u64>> = exec::map_range(strategy, a as usize, |i| {
            (i..counts.len())
                .step_by(a as usize)
                .find(|&n| counts[n] > threshold)
                .map(|n| n as u64)
        });
        if let Some(m) = found.into_iter().collect::<Option<Vec<u64>>>() {
            return PAperySet {
                gens: gens.clone(),
                p,
                m,
            };
        }
        bound = bound.checked_mul(2).expect("Apéry scan bound overflow");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn gens(v: &[u64]) -> Generators {
        Generators::new(v).unwrap()
    }

    /// Exhaustive recursion over multiplicities of each generator.
    fn denumerant_naive(n: i64, gens: &[u64]) -> u128 {
        if n < 0 {
            return 0;
        }
        match gens.split_first() {
            None => u128::from(n == 0),
            Some((&a, rest)) => (0..=n / a as i64)
                .map(|x| denumerant_naive(n - x * a as i64, rest))
                .sum(),
        }
    }

    /// Coefficients of prod 1/(1 - z^a) via repeated series multiplication.
    fn generating_function(gens: &[u64], bound: usize) -> Vec<u128> {
        let mut series = vec![0u128; bound + 1];
        series[0] = 1;
        for &a in gens {
            let geometric: Vec<u128> = (0..=bound).map(|n| u128::from(n % a as usize == 0)).collect();
            let mut next = vec![0u128; bound + 1];
            for (i, &s) in series.iter().enumerate() {
                for j in 0..=bound - i {
                    next[i + j] += s * geometric[j];
                }
            }
            series = next;
        }
        series
    }

    #[test]
    fn generator_validation() {
        assert_eq!(gens(&[7, 5, 11]).values(), &[5, 7, 11]);
        assert_eq!(gens(&[5, 7, 11]).values(), &[5, 7, 11]);
        assert_eq!(Generators::new(&[4, 6]), Err(Error::Coprimality { gcd: 2 }));
        assert!(matches!(Generators::new(&[5]), Err(Error::Domain(_))));
        assert!(matches!(Generators::new(&[5, 5, 7]), Err(Error::Domain(_))));
        assert!(matches!(Generators::new(&[0, 5, 7]), Err(Error::Domain(_))));
        assert_eq!(gens(&[1, 4]).min(), 1);
    }

    #[test]
    fn denumerant_values() {
        let g = gens(&[5, 7, 11]);
        assert_eq!(denumerant(10, &g), 1);
        assert_eq!(denumerant(0, &g), 1);
        assert_eq!(denumerant(100, &g), 16);
        assert_eq!(denumerant(35, &g), 3);
        assert_eq!(denumerant(-4, &g), 0);
    }

    #[test]
    fn tables() {
        assert_eq!(denumerant_table(&gens(&[2, 3]), 5).counts(), &[1, 0, 1, 1, 1, 1]);
        assert_eq!(denumerant_table(&gens(&[5, 7, 11]), 0).counts(), &[1]);
        let t = denumerant_table(&gens(&[5, 7, 11]), 20);
        assert_eq!(
            &t.counts()[1..],
            &[0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1]
        );
        assert_eq!(t.get(-1), Some(0));
        assert_eq!(t.get(21), None);
    }

    #[test]
    fn sp_membership() {
        let g = gens(&[5, 7, 11]);
        assert!(is_in_sp(40, &g, 3));
        assert!(!is_in_sp(40, &g, 4));
        assert!(!is_in_sp(-3, &g, 0));
        assert!(is_in_sp(0, &g, 0));
        assert!(!is_in_sp(0, &g, 1));
    }

    #[test]
    fn apery_examples() {
        let g = gens(&[5, 7, 11]);
        assert_eq!(apery_set(&g, 4).elements(), &[50, 51, 47, 53, 49]);
        assert_eq!(apery_set(&g, 0).elements(), &[0, 11, 7, 18, 14]);
        assert_eq!(apery_set(&gens(&[1, 3]), 0).elements(), &[0]);
        assert_eq!(apery_set(&gens(&[1, 3]), 2).elements(), &[6]);
        // (6, 10, 15): a_2 shares a factor with a_1, so the scan has to grow.
        let ap = apery_set_with(&gens(&[6, 10, 15]), 3, crate::exec::Strategy::Sequential);
        assert_eq!(ap, apery_set_with(&gens(&[6, 10, 15]), 3, crate::exec::Strategy::Parallel));
        check_conditions(&ap);
    }

    fn check_conditions(ap: &PAperySet) {
        let a = ap.modulus();
        let g = ap.generators();
        let p = u128::from(ap.p());
        let mut residues: Vec<u64> = ap.elements().iter().map(|m| m % a).collect();
        residues.sort_unstable();
        assert_eq!(residues, (0..a).collect::<Vec<_>>());
        for (i, &m) in ap.elements().iter().enumerate() {
            assert_eq!(m % a, i as u64);
            assert!(denumerant(m as i64, g) > p);
            assert!(denumerant(m as i64 - a as i64, g) <= p);
        }
        if ap.p() == 0 {
            assert_eq!(ap.elements()[0], 0);
        }
    }

    fn coprime_gens() -> impl Strategy<Value = Generators> {
        prop::collection::btree_set(1u64..=20, 2..=4)
            .prop_filter_map("coprime", |s| Generators::new(&s.into_iter().collect::<Vec<_>>()).ok())
    }

    proptest! {
        #[test]
        fn dp_matches_naive(g in coprime_gens(), n in 0i64..=200) {
            prop_assert_eq!(denumerant(n, &g), denumerant_naive(n, g.values()));
        }

        #[test]
        fn dp_matches_generating_function(g in coprime_gens()) {
            let table = denumerant_table(&g, 150);
            let expected = generating_function(g.values(), 150);
            prop_assert_eq!(table.counts(), expected.as_slice());
        }

        #[test]
        fn monotone_under_each_generator(g in coprime_gens()) {
            let t = denumerant_table(&g, 300);
            let c = t.counts();
            for &a in g.values() {
                for n in 0..c.len() - a as usize {
                    prop_assert!(c[n] <= c[n + a as usize]);
                }
            }
        }

        #[test]
        fn apery_conditions_hold(g in coprime_gens(), p in 0u64..=6) {
            check_conditions(&apery_set(&g, p));
        }

        #[test]
        fn two_generator_closed_form(a in 1u64..=25, b in 1u64..=25, p in 0u64..=5) {
            prop_assume!(a != b && a.gcd(&b) == 1);
            let g = gens(&[a, b]);
            let (a, b) = (g.values()[0], g.values()[1]);
            let mut got = apery_set(&g, p).elements().to_vec();
            let mut want: Vec<u64> = (0..a).map(|i| b * (p * a + i)).collect();
            got.sort_unstable();
            want.sort_unstable();
            prop_assert_eq!(got, want);
        }
    }
}
