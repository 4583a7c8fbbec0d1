use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::group::{ext_group, hom_group, FgAbGroup, HomologyProfile};
use super::ComplexError;
use crate::intlin::cokernel_invariants;
use crate::specmodel::ZSupport;
use crate::IntMatrix;

/// A bounded complex of finite-rank free ℤ-modules,
/// `d_n : C_n -> C_{n-1}` stored as a `rank(n-1) x rank(n)` matrix.
///
/// Degrees with rank zero and differentials that are empty matrices are not
/// stored; an absent differential is the zero map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PerfectComplexZ {
    ranks: BTreeMap<i64, usize>,
    differentials: BTreeMap<i64, IntMatrix>,
}

impl PerfectComplexZ {
    pub fn zero() -> Self {
        PerfectComplexZ::default()
    }

    pub fn new(
        ranks: BTreeMap<i64, usize>,
        differentials: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, ComplexError> {
        let ranks: BTreeMap<i64, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, d) in differentials {
            let expected = (rank(n - 1), rank(n));
            if d.is_empty() && expected.0 * expected.1 == 0 {
                continue;
            }
            if d.shape() != expected {
                return Err(ComplexError::DimensionMismatch { degree: n, expected, found: d.shape() });
            }
            kept.insert(n, d);
        }
        let c = PerfectComplexZ { ranks, differentials: kept };
        c.check_square_zero()?;
        Ok(c)
    }

    /// Builds from `(degree, rank)` and `(degree, rows)` lists of machine integers.
    pub fn from_i64(ranks: &[(i64, usize)], differentials: &[(i64, &[&[i64]])]) -> Result<Self, ComplexError> {
        let mut ds = BTreeMap::new();
        for &(n, rows) in differentials {
            ds.insert(n, IntMatrix::from_i64_rows(rows)?);
        }
        Self::new(ranks.iter().copied().collect(), ds)
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (&n, d) in &self.differentials {
            let expected = (self.rank(n - 1), self.rank(n));
            if d.shape() != expected {
                return Err(ComplexError::DimensionMismatch { degree: n, expected, found: d.shape() });
            }
        }
        self.check_square_zero()
    }

    fn check_square_zero(&self) -> Result<(), ComplexError> {
        for (&n, d) in &self.differentials {
            if let Some(below) = self.differentials.get(&(n - 1)) {
                if !below.mul(d)?.is_zero() {
                    return Err(ComplexError::NotAComplex { degree: n });
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    pub fn differentials(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.differentials
    }

    /// `d_n` as a matrix, zero if not stored.
    pub fn differential(&self, n: i64) -> IntMatrix {
        self.differentials
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(n - 1), self.rank(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Inclusive range of degrees carrying a nonzero module.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }

    /// `H_n = ker d_n / im d_{n+1}`.
    ///
    /// `ker d_n` is a pure subgroup of `C_n`, so the torsion of `H_n` is the
    /// torsion of `coker d_{n+1}` and its free rank is
    /// `rank C_n - rank d_n - rank d_{n+1}`.
    pub fn homology(&self) -> HomologyProfile {
        let mut rank_of_d: BTreeMap<i64, usize> = BTreeMap::new();
        let mut torsion_of_coker: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
        for (&n, d) in &self.differentials {
            let coker = cokernel_invariants(d);
            rank_of_d.insert(n, d.rows() - coker.free_rank);
            torsion_of_coker.insert(n - 1, coker.torsion);
        }
        let mut profile = HomologyProfile::new();
        for (&n, &r) in &self.ranks {
            let out_rank = rank_of_d.get(&n).copied().unwrap_or(0);
            let in_rank = rank_of_d.get(&(n + 1)).copied().unwrap_or(0);
            let torsion = torsion_of_coker.remove(&n).unwrap_or_default();
            profile.add(n, &FgAbGroup::from_cyclic(r - out_rank - in_rank, torsion));
        }
        profile
    }

    /// Primes `p` with `C ⊗ ℤ_(p)` not acyclic. Free homology puts the
    /// generic point in the support, which makes it all of Spec ℤ.
    pub fn support(&self) -> Result<ZSupport, ComplexError> {
        support_of(&self.homology())
    }

    pub fn direct_sum(&self, other: &PerfectComplexZ) -> PerfectComplexZ {
        let mut ranks = self.ranks.clone();
        for (&n, &r) in &other.ranks {
            *ranks.entry(n).or_insert(0) += r;
        }
        let degrees: Vec<i64> =
            self.differentials.keys().chain(other.differentials.keys()).copied().collect();
        let mut differentials = BTreeMap::new();
        for n in degrees {
            let d = IntMatrix::block_diag(&self.differential(n), &other.differential(n));
            if !d.is_empty() {
                differentials.insert(n, d);
            }
        }
        PerfectComplexZ { ranks, differentials }
    }

    /// The `k`-fold suspension: `(Σ^k C)_n = C_{n-k}` with differential `(-1)^k d_{n-k}`.
    pub fn shift(&self, k: i64) -> PerfectComplexZ {
        let flip = k.rem_euclid(2) == 1;
        PerfectComplexZ {
            ranks: self.ranks.iter().map(|(&n, &r)| (n + k, r)).collect(),
            differentials: self
                .differentials
                .iter()
                .map(|(&n, d)| (n + k, if flip { d.neg() } else { d.clone() }))
                .collect(),
        }
    }

    /// `Hom(C, ℤ)` regraded homologically: degree `n` has rank `rank C_{-n}`
    /// and differential `(-1)^n · d_{1-n}^T`.
    pub fn dual(&self) -> PerfectComplexZ {
        PerfectComplexZ {
            ranks: self.ranks.iter().map(|(&n, &r)| (-n, r)).collect(),
            differentials: self
                .differentials
                .iter()
                .map(|(&m, d)| {
                    let n = 1 - m;
                    let t = d.transpose();
                    (n, if n.rem_euclid(2) == 1 { t.neg() } else { t })
                })
                .collect(),
        }
    }

    /// Whether `[self, other]_* = 0` in the derived category.
    ///
    /// Over ℤ every complex is quasi-isomorphic to the sum of its shifted
    /// homology, so this holds exactly when `Hom(H_i(self), H_j(other))` and
    /// `Ext^1(H_i(self), H_j(other))` vanish for all `i`, `j`.
    pub fn derived_hom_vanishes(&self, other: &PerfectComplexZ) -> bool {
        hom_ext_witness(&self.homology(), &other.homology()).is_none()
    }
}

pub(crate) fn support_of(h: &HomologyProfile) -> Result<ZSupport, ComplexError> {
    if h.has_free_part() {
        return Ok(ZSupport::Whole);
    }
    Ok(ZSupport::Closed(h.torsion_primes()?))
}

/// The two-term complex `ℤ --n--> ℤ` in degrees 1 and 0.
pub fn moore_complex(n: impl Into<BigInt>) -> Result<PerfectComplexZ, ComplexError> {
    let n = n.into();
    if n < BigInt::from(2) {
        return Err(ComplexError::InvalidMooreOrder(n));
    }
    let d = IntMatrix::from_rows(vec![vec![n]])?;
    Ok(PerfectComplexZ { ranks: [(0, 1), (1, 1)].into(), differentials: [(1, d)].into() })
}

/// The minimal complex with the given homology: free summands with zero
/// differential and one `ℤ --t--> ℤ` block per invariant factor `t`, placed
/// so that it contributes `ℤ/t` in its degree.
pub fn realize(profile: &HomologyProfile) -> PerfectComplexZ {
    // C_n = [free_n | bottoms for torsion of H_n | tops for torsion of H_{n-1}]
    let layout = |n: i64| {
        let h = profile.get(n);
        let below = profile.get(n - 1);
        (h.free_rank(), h.torsion().len(), below.torsion().len())
    };
    let mut degrees: Vec<i64> = profile.iter().flat_map(|(n, _)| [n, n + 1]).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut ranks = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for &n in &degrees {
        let (free, bottoms, tops) = layout(n);
        let rank = free + bottoms + tops;
        if rank == 0 {
            continue;
        }
        ranks.insert(n, rank);
        if tops == 0 {
            continue;
        }
        let (free_below, bottoms_below, tops_below) = layout(n - 1);
        let mut d = IntMatrix::zeros(free_below + bottoms_below + tops_below, rank);
        for (k, t) in profile.get(n - 1).torsion().iter().enumerate() {
            d.set(free_below + k, free + bottoms + k, t.clone());
        }
        differentials.insert(n, d);
    }
    PerfectComplexZ { ranks, differentials }
}

/// A degree-wise map `f_n : A_n -> B_n` commuting with the differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: PerfectComplexZ,
    target: PerfectComplexZ,
    components: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    /// Checks component shapes and `d^B_n f_n = f_{n-1} d^A_n` in every degree.
    pub fn new(
        source: PerfectComplexZ,
        target: PerfectComplexZ,
        components: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self, ComplexError> {
        let mut kept = BTreeMap::new();
        for (n, f) in components {
            let expected = (target.rank(n), source.rank(n));
            if f.is_empty() && expected.0 * expected.1 == 0 {
                continue;
            }
            if f.shape() != expected {
                return Err(ComplexError::ChainMapShape { degree: n, expected, found: f.shape() });
            }
            kept.insert(n, f);
        }
        let map = ChainMap { source, target, components: kept };
        let mut degrees: Vec<i64> = map
            .source
            .ranks
            .keys()
            .chain(map.target.ranks.keys())
            .flat_map(|&n| [n, n + 1])
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let lhs = map.target.differential(n).mul(&map.component(n))?;
            let rhs = map.component(n - 1).mul(&map.source.differential(n))?;
            if lhs != rhs {
                return Err(ComplexError::NotChainMap { degree: n });
            }
        }
        Ok(map)
    }

    pub fn identity(c: &PerfectComplexZ) -> Self {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components: c.ranks.iter().map(|(&n, &r)| (n, IntMatrix::identity(r))).collect(),
        }
    }

    pub fn zero(source: &PerfectComplexZ, target: &PerfectComplexZ) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    /// Multiplication by `k` on every module of `c`.
    pub fn scalar(c: &PerfectComplexZ, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components: c
                .ranks
                .iter()
                .map(|(&n, &r)| (n, IntMatrix::identity(r).scale(&k)))
                .collect(),
        }
    }

    pub fn source(&self) -> &PerfectComplexZ {
        &self.source
    }

    pub fn target(&self) -> &PerfectComplexZ {
        &self.target
    }

    pub fn component(&self, n: i64) -> IntMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    /// `Cone(f)_n = A_{n-1} ⊕ B_n` with `d = [[-d^A_{n-1}, 0], [f_{n-1}, d^B_n]]`.
    pub fn cone(&self) -> PerfectComplexZ {
        let (a, b) = (&self.source, &self.target);
        let mut ranks = BTreeMap::new();
        for (&n, &r) in &a.ranks {
            *ranks.entry(n + 1).or_insert(0) += r;
        }
        for (&n, &r) in &b.ranks {
            *ranks.entry(n).or_insert(0) += r;
        }
        let mut differentials = BTreeMap::new();
        for &n in ranks.keys() {
            let d = IntMatrix::blocks(
                &a.differential(n - 1).neg(),
                &IntMatrix::zeros(a.rank(n - 2), b.rank(n)),
                &self.component(n - 1),
                &b.differential(n),
            )
            .expect("cone blocks have consistent shapes");
            if !d.is_empty() {
                differentials.insert(n, d);
            }
        }
        PerfectComplexZ { ranks, differentials }
    }
}

pub fn mapping_cone(f: &ChainMap) -> PerfectComplexZ {
    f.cone()
}

/// Which of `Hom` or `Ext^1` witnessed a nonvanishing `[a, b]_*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomExtKind {
    Hom,
    Ext,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomExtWitness {
    pub kind: HomExtKind,
    pub source_degree: i64,
    pub target_degree: i64,
    pub group: FgAbGroup,
}

/// First nonzero `Hom(H_i(a), H_j(b))` or `Ext^1(H_i(a), H_j(b))`, scanning
/// `i` then `j` ascending, `Hom` before `Ext`.
pub fn hom_ext_witness(a: &HomologyProfile, b: &HomologyProfile) -> Option<HomExtWitness> {
    for (i, g) in a.iter() {
        for (j, h) in b.iter() {
            let hom = hom_group(g, h);
            if !hom.is_zero() {
                return Some(HomExtWitness {
                    kind: HomExtKind::Hom,
                    source_degree: i,
                    target_degree: j,
                    group: hom,
                });
            }
            let ext = ext_group(g, h);
            if !ext.is_zero() {
                return Some(HomExtWitness {
                    kind: HomExtKind::Ext,
                    source_degree: i,
                    target_degree: j,
                    group: ext,
                });
            }
        }
    }
    None
}

pub fn derived_hom_vanishes(a: &PerfectComplexZ, b: &PerfectComplexZ) -> bool {
    a.derived_hom_vanishes(b)
}
