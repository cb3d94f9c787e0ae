//! Brute-force structure of (O/mO)* for O = Z[θ], θ² = θ − C, m ∈ {8, 9}.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// The element α + βθ of O/mO.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitGroupElement {
    pub alpha: i64,
    pub beta: i64,
    pub modulus: i64,
    pub c: i64,
}

impl UnitGroupElement {
    pub fn new(alpha: i64, beta: i64, modulus: u32, c: i64) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        Ok(UnitGroupElement {
            alpha: alpha.rem_euclid(m),
            beta: beta.rem_euclid(m),
            modulus: m,
            c: c.rem_euclid(m),
        })
    }

    pub fn one(modulus: u32, c: i64) -> Result<Self> {
        Self::new(1, 0, modulus, c)
    }

    /// (α+βθ)(α'+β'θ) = (αα' − Cββ') + (αβ' + βα' + ββ')θ
    pub fn mul(&self, o: &Self) -> Self {
        let m = self.modulus;
        UnitGroupElement {
            alpha: (self.alpha * o.alpha - self.c * self.beta * o.beta).rem_euclid(m),
            beta: (self.alpha * o.beta + self.beta * o.alpha + self.beta * o.beta).rem_euclid(m),
            modulus: m,
            c: self.c,
        }
    }

    pub fn is_one(&self) -> bool {
        self.alpha == 1 && self.beta == 0
    }

    /// The norm α² + αβ + Cβ²; a unit iff the norm is a unit mod m.
    pub fn norm(&self) -> i64 {
        let (a, b) = (self.alpha, self.beta);
        (a * a + a * b + self.c * b * b).rem_euclid(self.modulus)
    }

    pub fn is_unit(&self) -> bool {
        let n = self.norm();
        if self.modulus == 8 {
            n % 2 != 0
        } else {
            n % 3 != 0
        }
    }

    pub fn order(&self) -> u64 {
        let mut x = *self;
        let mut k = 1;
        while !x.is_one() {
            x = x.mul(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for UnitGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.alpha, self.beta) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "θ"),
            (0, b) => write!(f, "{b}θ"),
            (a, 1) => write!(f, "θ+{a}"),
            (a, b) => write!(f, "{b}θ+{a}"),
        }
    }
}

fn check_modulus(m: u32) -> Result<()> {
    if m == 8 || m == 9 {
        Ok(())
    } else {
        Err(Error::UnsupportedModulus(m))
    }
}

#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub modulus: u32,
    pub c: i64,
    pub elements: Vec<UnitGroupElement>,
    /// element order → how many elements have it
    pub order_counts: BTreeMap<u64, usize>,
    /// Invariant factors, largest first, each dividing the previous one.
    pub invariant_factors: Vec<u64>,
}

impl UnitGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of a finite abelian group, given the order of every
/// element. For each prime p, #{x : x^{pʲ} = 1} = p^{Σᵢ min(j, eᵢ)}, from
/// which the p-primary exponents eᵢ are recovered.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut factors: Vec<u64> = Vec::new();
    for p in prime_factors(n) {
        let mut exps: Vec<u32> = Vec::new(); // exps[j−1] = #{i : eᵢ ≥ j}
        let mut prev = 1u64;
        let mut pj = p;
        loop {
            let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            if count == prev {
                break;
            }
            let mut ratio = count / prev;
            let mut k = 0;
            while ratio > 1 {
                ratio /= p;
                k += 1;
            }
            exps.push(k);
            prev = count;
            pj *= p;
        }
        // the i-th largest cyclic p-factor has exponent #{j : exps[j] > i}
        let width = exps.first().copied().unwrap_or(0) as usize;
        for i in 0..width {
            let e = exps.iter().filter(|&&c| c as usize > i).count() as u32;
            if factors.len() <= i {
                factors.push(1);
            }
            factors[i] *= p.pow(e);
        }
    }
    factors
}

pub fn unit_group(modulus: u32, c: i64) -> Result<UnitGroup> {
    check_modulus(modulus)?;
    let m = modulus as i64;
    let mut elements = Vec::new();
    for beta in 0..m {
        for alpha in 0..m {
            let x = UnitGroupElement::new(alpha, beta, modulus, c)?;
            if x.is_unit() {
                elements.push(x);
            }
        }
    }
    let orders: Vec<u64> = elements.iter().map(|x| x.order()).collect();
    let mut order_counts = BTreeMap::new();
    for &o in &orders {
        *order_counts.entry(o).or_insert(0) += 1;
    }
    Ok(UnitGroup {
        modulus,
        c: c.rem_euclid(m),
        elements,
        order_counts,
        invariant_factors: invariant_factors(&orders),
    })
}

fn closure(gens: &[UnitGroupElement], one: UnitGroupElement) -> HashSet<UnitGroupElement> {
    let mut seen = HashSet::from([one]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// True iff `gens` generate all of (O/mO)*.
pub fn verify_generators(modulus: u32, c: i64, gens: &[UnitGroupElement]) -> Result<bool> {
    let group = unit_group(modulus, c)?;
    for g in gens {
        if !g.is_unit() {
            return Err(Error::NotUnit(g.to_string()));
        }
    }
    let one = UnitGroupElement::one(modulus, c)?;
    Ok(closure(gens, one).len() == group.order())
}

/// A small generating set found by greedy search; used to cross-check
/// class invariance beyond the standard generator tables.
pub fn find_generators(modulus: u32, c: i64) -> Result<Vec<UnitGroupElement>> {
    let group = unit_group(modulus, c)?;
    let one = UnitGroupElement::one(modulus, c)?;
    let mut gens: Vec<UnitGroupElement> = Vec::new();
    let mut span = closure(&gens, one);
    // elements of large order first
    let mut candidates = group.elements.clone();
    candidates.sort_by_key(|x| std::cmp::Reverse(x.order()));
    for x in candidates {
        if span.len() == group.order() {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = closure(&gens, one);
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: i64, b: i64, m: u32, c: i64) -> UnitGroupElement {
        UnitGroupElement::new(a, b, m, c).unwrap()
    }

    #[test]
    fn mod9_structure() {
        for c in [3, 9, 15] {
            let g = unit_group(9, c).unwrap();
            assert_eq!(g.order(), 36);
            assert_eq!(g.invariant_factors, vec![6, 6]);
        }
    }

    #[test]
    fn mod8_structure() {
        for c in [3, 9, 15] {
            let g = unit_group(8, c).unwrap();
            assert_eq!(g.order(), 48);
            assert_eq!(g.invariant_factors, vec![12, 2, 2]);
        }
    }

    #[test]
    fn c_zero_mod_9() {
        // C = 9 ≡ 0: θ² = θ, so O/9O ≅ Z/9 × Z/9 and the unit group is (Z/9)*²
        let g = unit_group(9, 0).unwrap();
        assert_eq!(g.order(), 36);
        assert_eq!(g.order_counts.values().sum::<usize>(), 36);
    }

    #[test]
    fn invariant_factor_oracle() {
        // Z/4 × Z/2: orders 1,2,2,2,4,4,4,4
        assert_eq!(invariant_factors(&[1, 2, 2, 2, 4, 4, 4, 4]), vec![4, 2]);
        // Z/6
        assert_eq!(invariant_factors(&[1, 2, 3, 3, 6, 6]), vec![6]);
        assert_eq!(invariant_factors(&[1]), Vec::<u64>::new());
    }

    #[test]
    fn standard_generators() {
        for c in [3, 9, 15] {
            assert!(verify_generators(9, c, &[el(4, 7, 9, c), el(5, 0, 9, c)]).unwrap());
        }
        let rows = [
            (3, [(0, 1), (7, 0), (7, 4)]),
            (9, [(6, 5), (7, 0), (7, 4)]),
            (15, [(0, 1), (7, 0), (7, 4)]),
        ];
        for (c, gens) in rows {
            let gens: Vec<_> = gens.iter().map(|&(a, b)| el(a, b, 8, c)).collect();
            assert!(verify_generators(8, c, &gens).unwrap(), "C = {c}");
        }
    }

    #[test]
    fn trivial_subgroup_is_not_everything() {
        assert!(!verify_generators(9, 3, &[el(1, 0, 9, 3)]).unwrap());
        assert!(verify_generators(9, 3, &[el(3, 0, 9, 3)]).is_err());
        assert!(unit_group(7, 3).is_err());
    }

    #[test]
    fn greedy_generators_generate() {
        for m in [8, 9] {
            for c in 0..m as i64 {
                let gens = find_generators(m, c).unwrap();
                assert!(verify_generators(m, c, &gens).unwrap());
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(el(4, 7, 9, 3).to_string(), "7θ+4");
        assert_eq!(el(0, 1, 8, 3).to_string(), "θ");
        assert_eq!(el(5, 0, 9, 3).to_string(), "5");
    }
}
