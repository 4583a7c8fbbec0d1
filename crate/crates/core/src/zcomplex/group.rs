use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::ComplexError;
use crate::arith::factorize;

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` in
/// invariant-factor form: every `t_i > 1` and `t_i | t_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z` and units give the zero group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic(0, [n.into()])
    }

    /// Canonicalizes `Z^free_rank ⊕ ⊕ Z/orders[i]`. Orders are taken up to
    /// sign; a zero order contributes a free summand.
    pub fn from_cyclic(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut by_prime: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for n in orders {
            if n.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&n) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        FgAbGroup { free_rank, torsion: invariant_factors(by_prime) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors of the torsion subgroup.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_cyclic(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// Primes dividing the torsion order, ascending.
    pub fn torsion_primes(&self) -> Vec<BigInt> {
        // the largest invariant factor is divisible by every torsion prime
        self.torsion.last().map_or_else(Vec::new, |t| factorize(t).into_iter().map(|(p, _)| p).collect())
    }

    /// Exponents of `p` across the elementary divisors, descending.
    pub fn primary_exponents(&self, p: u64) -> Vec<u32> {
        let mut exps: Vec<u32> = self
            .torsion
            .iter()
            .map(|t| crate::arith::valuation(t, p))
            .filter(|&e| e > 0)
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps
    }

    /// Composition length of the `p`-primary part: `Z/p^a` has length `a`.
    pub fn p_length(&self, p: u64) -> u64 {
        self.primary_exponents(p).iter().map(|&e| e as u64).sum()
    }

    /// The `p`-primary torsion summands for `p` in `primes`; free part dropped.
    pub fn restrict_to_primes(&self, primes: &BTreeSet<u64>) -> FgAbGroup {
        let orders = primes.iter().flat_map(|&p| {
            self.primary_exponents(p).into_iter().map(move |e| BigInt::from(p).pow(e))
        });
        FgAbGroup::from_cyclic(0, orders)
    }

    pub fn torsion_part(&self) -> FgAbGroup {
        FgAbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Torsion primes as closed points of Spec ℤ.
    pub(crate) fn torsion_primes_u64(&self) -> Result<Vec<u64>, ComplexError> {
        self.torsion_primes()
            .into_iter()
            .map(|p| p.to_u64().ok_or(ComplexError::PrimeOutOfRange(p)))
            .collect()
    }
}

fn invariant_factors(by_prime: BTreeMap<BigInt, Vec<u32>>) -> Vec<BigInt> {
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![BigInt::one(); len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable();
        // the largest exponents go to the last invariant factors
        let offset = len - exps.len();
        for (k, e) in exps.into_iter().enumerate() {
            factors[offset + k] *= p.pow(e);
        }
    }
    factors
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Hom(g, h)` for finitely generated abelian groups.
pub fn hom_group(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    // Hom(Z, Z) = Z, Hom(Z, Z/n) = Z/n, Hom(Z/m, Z) = 0, Hom(Z/m, Z/n) = Z/gcd
    let mut orders = Vec::new();
    for _ in 0..g.free_rank {
        orders.extend(h.torsion.iter().cloned());
    }
    for m in &g.torsion {
        for n in &h.torsion {
            orders.push(m.gcd(n));
        }
    }
    FgAbGroup::from_cyclic(g.free_rank * h.free_rank, orders)
}

/// `Ext^1(g, h)` for finitely generated abelian groups.
pub fn ext_group(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    // Ext(Z, -) = 0, Ext(Z/m, Z) = Z/m, Ext(Z/m, Z/n) = Z/gcd
    let mut orders = Vec::new();
    for m in &g.torsion {
        for _ in 0..h.free_rank {
            orders.push(m.clone());
        }
        for n in &h.torsion {
            orders.push(m.gcd(n));
        }
    }
    FgAbGroup::from_cyclic(0, orders)
}

/// Homology of a complex, degree by degree. Only nonzero groups are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyProfile {
    groups: BTreeMap<i64, FgAbGroup>,
}

impl HomologyProfile {
    pub fn new() -> Self {
        HomologyProfile::default()
    }

    pub fn from_groups(groups: impl IntoIterator<Item = (i64, FgAbGroup)>) -> Self {
        let mut profile = HomologyProfile::new();
        for (n, g) in groups {
            profile.add(n, &g);
        }
        profile
    }

    /// Adds `g` as a direct summand in degree `n`.
    pub fn add(&mut self, n: i64, g: &FgAbGroup) {
        if g.is_zero() {
            return;
        }
        let merged = match self.groups.get(&n) {
            Some(existing) => existing.direct_sum(g),
            None => g.clone(),
        };
        self.groups.insert(n, merged);
    }

    pub fn get(&self, n: i64) -> FgAbGroup {
        self.groups.get(&n).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &FgAbGroup)> {
        self.groups.iter().map(|(&n, g)| (n, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn has_free_part(&self) -> bool {
        self.groups.values().any(|g| g.free_rank() > 0)
    }

    pub fn direct_sum(&self, other: &HomologyProfile) -> HomologyProfile {
        let mut out = self.clone();
        for (n, g) in other.iter() {
            out.add(n, g);
        }
        out
    }

    /// Degree-wise [`FgAbGroup::restrict_to_primes`].
    pub fn restrict_to_primes(&self, primes: &BTreeSet<u64>) -> HomologyProfile {
        HomologyProfile::from_groups(self.iter().map(|(n, g)| (n, g.restrict_to_primes(primes))))
    }

    /// Homology of the `k`-fold suspension: degree `n` moves to `n + k`.
    pub fn shift(&self, k: i64) -> HomologyProfile {
        HomologyProfile::from_groups(self.iter().map(|(n, g)| (n + k, g.clone())))
    }

    /// Every torsion prime appearing in some degree, ascending.
    pub fn torsion_primes(&self) -> Result<BTreeSet<u64>, ComplexError> {
        let mut out = BTreeSet::new();
        for g in self.groups.values() {
            out.extend(g.torsion_primes_u64()?);
        }
        Ok(out)
    }

    /// Euler characteristic of the free ranks, `Σ (-1)^n rank H_n`.
    pub fn euler_rank(&self) -> i64 {
        self.iter().map(|(n, g)| sign(n) * g.free_rank() as i64).sum()
    }

    /// `Σ (-1)^n length_p(H_n)`.
    pub fn euler_p_length(&self, p: u64) -> i64 {
        self.iter().map(|(n, g)| sign(n) * g.p_length(p) as i64).sum()
    }
}

fn sign(n: i64) -> i64 {
    if n.is_even() {
        1
    } else {
        -1
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(n, g)| format!("H{n} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, orders: &[i64]) -> FgAbGroup {
        FgAbGroup::from_cyclic(free, orders.iter().map(|&n| BigInt::from(n)))
    }

    fn tors(group: &FgAbGroup) -> Vec<i64> {
        group.torsion().iter().map(|t| t.to_i64().unwrap()).collect()
    }

    #[test]
    fn canonical_form_merges_coprime_parts() {
        assert_eq!(tors(&g(0, &[2, 3])), [6]);
        assert_eq!(tors(&g(0, &[4, 6, 1, -1])), [2, 12]);
        assert_eq!(tors(&g(0, &[2, 2, 4, 3])), [2, 2, 12]);
        assert_eq!(g(0, &[0, 5]).free_rank(), 1);
        assert!(g(0, &[1]).is_zero());
    }

    #[test]
    fn sums_and_restrictions() {
        let sum = FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::cyclic(3));
        assert_eq!(sum, FgAbGroup::cyclic(6));
        let x = g(1, &[4, 60]);
        let primes: BTreeSet<u64> = [2].into_iter().collect();
        assert_eq!(tors(&x.restrict_to_primes(&primes)), [4, 4]);
        assert_eq!(x.p_length(2), 4);
        assert_eq!(x.p_length(5), 1);
        assert_eq!(x.p_length(7), 0);
        assert_eq!(x.torsion_primes(), [2, 3, 5].map(BigInt::from));
    }

    #[test]
    fn hom_and_ext_table() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let z3 = FgAbGroup::cyclic(3);
        let z6 = FgAbGroup::cyclic(6);
        assert_eq!(hom_group(&z, &z), z);
        assert_eq!(hom_group(&z, &z6), z6);
        assert!(hom_group(&z6, &z).is_zero());
        assert!(hom_group(&z2, &z3).is_zero());
        assert_eq!(hom_group(&z6, &FgAbGroup::cyclic(4)), z2);
        assert!(ext_group(&z, &z6).is_zero());
        assert_eq!(ext_group(&z6, &z), z6);
        assert_eq!(ext_group(&z6, &z3), z3);
        assert!(ext_group(&z2, &z3).is_zero());
    }

    #[test]
    fn profile_euler_characteristics() {
        let p = HomologyProfile::from_groups([(0, g(1, &[4])), (1, g(2, &[2, 3]))]);
        assert_eq!(p.euler_rank(), -1);
        assert_eq!(p.euler_p_length(2), 1);
        assert_eq!(p.euler_p_length(3), -1);
        assert_eq!(p.shift(1).euler_rank(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(g(2, &[2, 3]).to_string(), "Z^2 + Z/6");
        assert_eq!(FgAbGroup::zero().to_string(), "0");
    }
}
