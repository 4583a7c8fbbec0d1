use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{FinitePrimePoset, SpecError};
use crate::arith::is_prime;

/// Which prime spectrum a support lives in.
#[derive(Debug, Clone)]
pub enum SpecModel {
    /// Spec ℤ: the generic point (0) below one closed point per prime.
    Integers,
    Poset(Arc<FinitePrimePoset>),
}

impl SpecModel {
    pub fn same_as(&self, other: &SpecModel) -> bool {
        match (self, other) {
            (SpecModel::Integers, SpecModel::Integers) => true,
            (SpecModel::Poset(a), SpecModel::Poset(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

/// A point of a prime spectrum model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    /// The generic point (0) of Spec ℤ.
    Generic,
    /// The closed point (p) of Spec ℤ.
    Closed(u64),
    Element { index: usize, name: String },
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Generic => write!(f, "(0)"),
            Point::Closed(p) => write!(f, "({p})"),
            Point::Element { name, .. } => write!(f, "{name}"),
        }
    }
}

/// A specialization-closed subset of Spec ℤ. Anything containing (0) is the
/// whole space; everything else is a finite set of closed points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZSupport {
    Whole,
    Closed(BTreeSet<u64>),
}

impl ZSupport {
    pub fn empty() -> Self {
        ZSupport::Closed(BTreeSet::new())
    }

    pub fn closed<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, SpecError> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&p| !is_prime(p)) {
            return Err(SpecError::NotPrime(bad));
        }
        Ok(ZSupport::Closed(set))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ZSupport::Closed(s) if s.is_empty())
    }

    pub fn is_whole(&self) -> bool {
        matches!(self, ZSupport::Whole)
    }

    /// Closed points, or `None` for the whole space.
    pub fn primes(&self) -> Option<&BTreeSet<u64>> {
        match self {
            ZSupport::Whole => None,
            ZSupport::Closed(s) => Some(s),
        }
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        match self {
            ZSupport::Whole => true,
            ZSupport::Closed(s) => s.contains(&p),
        }
    }

    pub fn intersect(&self, other: &ZSupport) -> ZSupport {
        match (self, other) {
            (ZSupport::Whole, x) | (x, ZSupport::Whole) => x.clone(),
            (ZSupport::Closed(a), ZSupport::Closed(b)) => {
                ZSupport::Closed(a.intersection(b).copied().collect())
            }
        }
    }

    pub fn union(&self, other: &ZSupport) -> ZSupport {
        match (self, other) {
            (ZSupport::Whole, _) | (_, ZSupport::Whole) => ZSupport::Whole,
            (ZSupport::Closed(a), ZSupport::Closed(b)) => {
                ZSupport::Closed(a.union(b).copied().collect())
            }
        }
    }

    pub fn is_subset(&self, other: &ZSupport) -> bool {
        match (self, other) {
            (_, ZSupport::Whole) => true,
            (ZSupport::Whole, ZSupport::Closed(_)) => false,
            (ZSupport::Closed(a), ZSupport::Closed(b)) => a.is_subset(b),
        }
    }
}

impl fmt::Display for ZSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZSupport::Whole => write!(f, "Spec Z"),
            ZSupport::Closed(s) => {
                let parts: Vec<String> = s.iter().map(|p| format!("({p})")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

/// An up-closed subset of a finite prime poset.
#[derive(Debug, Clone)]
pub struct PosetSupport {
    poset: Arc<FinitePrimePoset>,
    members: BTreeSet<usize>,
}

impl PosetSupport {
    /// Wraps `members` after checking it is up-closed.
    pub fn new(poset: Arc<FinitePrimePoset>, members: BTreeSet<usize>) -> Result<Self, SpecError> {
        if let Some(&bad) = members.iter().find(|&&i| i >= poset.len()) {
            return Err(SpecError::UnknownElement(format!("#{bad}")));
        }
        for &p in &members {
            if let Some(q) = poset.up_set(p).find(|q| !members.contains(q)) {
                return Err(SpecError::NotUpClosed {
                    member: poset.name(p).to_owned(),
                    missing: poset.name(q).to_owned(),
                });
            }
        }
        Ok(PosetSupport { poset, members })
    }

    pub fn poset(&self) -> &Arc<FinitePrimePoset> {
        &self.poset
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    /// Member names sorted lexicographically.
    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.members.iter().map(|&i| self.poset.name(i)).collect();
        names.sort_unstable();
        names
    }
}

impl PartialEq for PosetSupport {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
            && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset)
    }
}

impl Eq for PosetSupport {}

/// A thick support: a specialization-closed subset of a prime spectrum model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThickSupport {
    Integers(ZSupport),
    Poset(PosetSupport),
}

impl From<ZSupport> for ThickSupport {
    fn from(z: ZSupport) -> Self {
        ThickSupport::Integers(z)
    }
}

impl From<PosetSupport> for ThickSupport {
    fn from(p: PosetSupport) -> Self {
        ThickSupport::Poset(p)
    }
}

impl ThickSupport {
    pub fn empty(model: &SpecModel) -> Self {
        match model {
            SpecModel::Integers => ThickSupport::Integers(ZSupport::empty()),
            SpecModel::Poset(p) => {
                ThickSupport::Poset(PosetSupport { poset: p.clone(), members: BTreeSet::new() })
            }
        }
    }

    /// The whole spectrum of `model`.
    pub fn whole(model: &SpecModel) -> Self {
        match model {
            SpecModel::Integers => ThickSupport::Integers(ZSupport::Whole),
            SpecModel::Poset(p) => ThickSupport::Poset(PosetSupport {
                poset: p.clone(),
                members: (0..p.len()).collect(),
            }),
        }
    }

    pub fn model(&self) -> SpecModel {
        match self {
            ThickSupport::Integers(_) => SpecModel::Integers,
            ThickSupport::Poset(s) => SpecModel::Poset(s.poset.clone()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            ThickSupport::Integers(z) => z.is_empty(),
            ThickSupport::Poset(s) => s.members.is_empty(),
        }
    }

    pub fn as_integers(&self) -> Option<&ZSupport> {
        match self {
            ThickSupport::Integers(z) => Some(z),
            ThickSupport::Poset(_) => None,
        }
    }

    pub fn as_poset(&self) -> Option<&PosetSupport> {
        match self {
            ThickSupport::Poset(s) => Some(s),
            ThickSupport::Integers(_) => None,
        }
    }

    pub fn contains(&self, point: &Point) -> bool {
        match (self, point) {
            (ThickSupport::Integers(z), Point::Generic) => z.is_whole(),
            (ThickSupport::Integers(z), Point::Closed(p)) => z.contains_prime(*p),
            (ThickSupport::Poset(s), Point::Element { index, .. }) => s.members.contains(index),
            _ => false,
        }
    }

    pub fn intersect(&self, other: &ThickSupport) -> Result<ThickSupport, SpecError> {
        match (self, other) {
            (ThickSupport::Integers(a), ThickSupport::Integers(b)) => {
                Ok(ThickSupport::Integers(a.intersect(b)))
            }
            (ThickSupport::Poset(a), ThickSupport::Poset(b)) if a.poset == b.poset => {
                Ok(ThickSupport::Poset(PosetSupport {
                    poset: a.poset.clone(),
                    members: a.members.intersection(&b.members).copied().collect(),
                }))
            }
            _ => Err(SpecError::ModelMismatch),
        }
    }

    pub fn union(&self, other: &ThickSupport) -> Result<ThickSupport, SpecError> {
        match (self, other) {
            (ThickSupport::Integers(a), ThickSupport::Integers(b)) => {
                Ok(ThickSupport::Integers(a.union(b)))
            }
            (ThickSupport::Poset(a), ThickSupport::Poset(b)) if a.poset == b.poset => {
                Ok(ThickSupport::Poset(PosetSupport {
                    poset: a.poset.clone(),
                    members: a.members.union(&b.members).copied().collect(),
                }))
            }
            _ => Err(SpecError::ModelMismatch),
        }
    }

    pub fn is_subset(&self, other: &ThickSupport) -> Result<bool, SpecError> {
        match (self, other) {
            (ThickSupport::Integers(a), ThickSupport::Integers(b)) => Ok(a.is_subset(b)),
            (ThickSupport::Poset(a), ThickSupport::Poset(b)) if a.poset == b.poset => {
                Ok(a.members.is_subset(&b.members))
            }
            _ => Err(SpecError::ModelMismatch),
        }
    }
}

impl fmt::Display for ThickSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThickSupport::Integers(z) => z.fmt(f),
            ThickSupport::Poset(s) => write!(f, "{{{}}}", s.names().join(", ")),
        }
    }
}

/// Smallest up-closed subset of `poset` containing the named seeds.
pub fn up_closure<S: AsRef<str>>(
    poset: &Arc<FinitePrimePoset>,
    seeds: &[S],
) -> Result<ThickSupport, SpecError> {
    let mut members = BTreeSet::new();
    for seed in seeds {
        let p = poset.index_of(seed.as_ref())?;
        members.extend(poset.up_set(p));
    }
    Ok(ThickSupport::Poset(PosetSupport { poset: poset.clone(), members }))
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// All thick supports of `poset`, ordered by size and then by member indices.
pub fn enumerate_thick_supports(
    poset: &Arc<FinitePrimePoset>,
    nonempty_only: bool,
) -> Result<Vec<ThickSupport>, SpecError> {
    enumerate_thick_supports_bounded(poset, nonempty_only, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_thick_supports_bounded(
    poset: &Arc<FinitePrimePoset>,
    nonempty_only: bool,
    bound: usize,
) -> Result<Vec<ThickSupport>, SpecError> {
    let n = poset.len();
    if n > bound {
        return Err(SpecError::PosetTooLarge { size: n, bound });
    }
    // Larger elements have smaller up-sets, so this order lists every element
    // after everything strictly above it.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (poset.up_set(p).count(), p));

    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut chosen = vec![false; n];
    collect_up_sets(poset, &order, 0, &mut chosen, &mut found);

    found.retain(|s| !(nonempty_only && s.is_empty()));
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found
        .into_iter()
        .map(|members| {
            ThickSupport::Poset(PosetSupport {
                poset: poset.clone(),
                members: members.into_iter().collect(),
            })
        })
        .collect())
}

fn collect_up_sets(
    poset: &FinitePrimePoset,
    order: &[usize],
    k: usize,
    chosen: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let Some(&p) = order.get(k) else {
        out.push((0..chosen.len()).filter(|&i| chosen[i]).collect());
        return;
    };
    collect_up_sets(poset, order, k + 1, chosen, out);
    if poset.up_set(p).all(|q| q == p || chosen[q]) {
        chosen[p] = true;
        collect_up_sets(poset, order, k + 1, chosen, out);
        chosen[p] = false;
    }
}

pub fn intersect_supports(a: &ThickSupport, b: &ThickSupport) -> Result<ThickSupport, SpecError> {
    a.intersect(b)
}
