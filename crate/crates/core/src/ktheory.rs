//! Grothendieck group classes of perfect complexes over ℤ with support in a
//! fixed ambient.
//!
//! With ambient all of Spec ℤ a class is the Euler characteristic of the
//! ranks. With ambient a finite set of closed points it is the vector of
//! Euler characteristics of the `p`-primary lengths, one entry per prime.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use crate::ksengine::KSDecomposition;
use crate::specmodel::json::support_to_value;
use crate::specmodel::ZSupport;
use crate::zcomplex::{ChainMap, ComplexError, PerfectComplexZ};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum K0Error {
    #[error("support {support} is not contained in {ambient}")]
    SupportNotContained { support: ZSupport, ambient: ZSupport },
    #[error("classes live over different ambients: {0} and {1}")]
    AmbientMismatch(ZSupport, ZSupport),
    #[error("Euler relation fails: [{codomain}] - [{domain}] != [{cone}]")]
    EulerViolation { domain: K0Class, codomain: K0Class, cone: K0Class },
    #[error("class of the sum restricted to component {component} is {found}, expected {expected}")]
    XiRestriction { component: usize, expected: K0Class, found: K0Class },
    #[error("class of the sum {found} is not the sum of component classes {expected}")]
    XiAdditivity { expected: K0Class, found: K0Class },
    #[error("components {first} and {second} have maps between them")]
    HomNotVanishing { first: usize, second: usize },
    #[error("{samples} sample lists for {components} components")]
    SampleCount { samples: usize, components: usize },
    #[error("decomposition is not over Spec Z")]
    NotIntegers,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl K0Error {
    pub fn name(&self) -> &'static str {
        match self {
            K0Error::SupportNotContained { .. } => "SupportNotContained",
            K0Error::AmbientMismatch(..) => "AmbientMismatch",
            K0Error::EulerViolation { .. } => "EulerViolation",
            K0Error::XiRestriction { .. } => "XiRestriction",
            K0Error::XiAdditivity { .. } => "XiAdditivity",
            K0Error::HomNotVanishing { .. } => "HomNotVanishing",
            K0Error::SampleCount { .. } => "SampleCount",
            K0Error::NotIntegers => "NotIntegers",
            K0Error::Complex(e) => e.name(),
        }
    }
}

/// A class in `K_0` of the complexes supported in `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Class {
    ambient: ZSupport,
    generic_rank: Option<i64>,
    torsion_lengths: BTreeMap<u64, i64>,
}

impl K0Class {
    pub fn zero(ambient: &ZSupport) -> Self {
        match ambient {
            ZSupport::Whole => K0Class {
                ambient: ZSupport::Whole,
                generic_rank: Some(0),
                torsion_lengths: BTreeMap::new(),
            },
            ZSupport::Closed(ps) => K0Class {
                ambient: ambient.clone(),
                generic_rank: None,
                torsion_lengths: ps.iter().map(|&p| (p, 0)).collect(),
            },
        }
    }

    pub fn ambient(&self) -> &ZSupport {
        &self.ambient
    }

    /// Present exactly when the ambient is all of Spec ℤ.
    pub fn generic_rank(&self) -> Option<i64> {
        self.generic_rank
    }

    pub fn torsion_lengths(&self) -> &BTreeMap<u64, i64> {
        &self.torsion_lengths
    }

    pub fn is_zero(&self) -> bool {
        self.generic_rank.unwrap_or(0) == 0 && self.torsion_lengths.values().all(|&v| v == 0)
    }

    fn check_ambient(&self, other: &K0Class) -> Result<(), K0Error> {
        if self.ambient != other.ambient {
            return Err(K0Error::AmbientMismatch(self.ambient.clone(), other.ambient.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &K0Class) -> Result<K0Class, K0Error> {
        self.check_ambient(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &K0Class) -> Result<K0Class, K0Error> {
        self.check_ambient(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn neg(&self) -> K0Class {
        self.zip(&K0Class::zero(&self.ambient), |a, _| -a)
    }

    fn zip(&self, other: &K0Class, op: impl Fn(i64, i64) -> i64) -> K0Class {
        K0Class {
            ambient: self.ambient.clone(),
            generic_rank: self.generic_rank.map(|a| op(a, other.generic_rank.unwrap_or(0))),
            torsion_lengths: self
                .torsion_lengths
                .iter()
                .map(|(&p, &a)| (p, op(a, other.torsion_lengths.get(&p).copied().unwrap_or(0))))
                .collect(),
        }
    }

    /// Coordinates at the primes of a smaller closed ambient.
    pub fn restrict(&self, sub: &ZSupport) -> Result<K0Class, K0Error> {
        if sub == &self.ambient {
            return Ok(self.clone());
        }
        let (ZSupport::Closed(ps), ZSupport::Closed(_)) = (sub, &self.ambient) else {
            return Err(K0Error::AmbientMismatch(self.ambient.clone(), sub.clone()));
        };
        if !sub.is_subset(&self.ambient) {
            return Err(K0Error::AmbientMismatch(self.ambient.clone(), sub.clone()));
        }
        Ok(K0Class {
            ambient: sub.clone(),
            generic_rank: None,
            torsion_lengths: ps.iter().map(|&p| (p, self.torsion_lengths[&p])).collect(),
        })
    }

    /// The same coordinates, padded with zeros, over a larger closed ambient.
    pub fn extend(&self, ambient: &ZSupport) -> Result<K0Class, K0Error> {
        if ambient == &self.ambient {
            return Ok(self.clone());
        }
        if !self.ambient.is_subset(ambient) || ambient.is_whole() {
            return Err(K0Error::AmbientMismatch(self.ambient.clone(), ambient.clone()));
        }
        let mut out = K0Class::zero(ambient);
        out.torsion_lengths.extend(self.torsion_lengths.iter().map(|(&p, &v)| (p, v)));
        Ok(out)
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("ambient".into(), support_to_value(&self.ambient.clone().into()));
        if let Some(r) = self.generic_rank {
            out.insert("generic_rank".into(), Value::from(r));
        }
        out.insert(
            "torsion_lengths".into(),
            Value::Object(
                self.torsion_lengths.iter().map(|(p, v)| (p.to_string(), Value::from(*v))).collect(),
            ),
        );
        Value::Object(out)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.generic_rank {
            return write!(f, "rank {r}");
        }
        let parts: Vec<String> =
            self.torsion_lengths.iter().map(|(p, v)| format!("{p}: {v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn k0_class(c: &PerfectComplexZ, ambient: &ZSupport) -> Result<K0Class, K0Error> {
    let support = c.support()?;
    if !support.is_subset(ambient) {
        return Err(K0Error::SupportNotContained { support, ambient: ambient.clone() });
    }
    let h = c.homology();
    let mut class = K0Class::zero(ambient);
    match ambient {
        ZSupport::Whole => class.generic_rank = Some(h.euler_rank()),
        ZSupport::Closed(_) => {
            for (&p, v) in class.torsion_lengths.iter_mut() {
                *v = h.euler_p_length(p);
            }
        }
    }
    Ok(class)
}

pub fn class_add(a: &K0Class, b: &K0Class) -> Result<K0Class, K0Error> {
    a.add(b)
}

/// Checks `[Cone f] = [B] - [A]` for `f : A -> B`.
pub fn check_euler_on_cone(f: &ChainMap, ambient: &ZSupport) -> Result<(), K0Error> {
    let domain = k0_class(f.source(), ambient)?;
    let codomain = k0_class(f.target(), ambient)?;
    let cone = k0_class(&f.cone(), ambient)?;
    if codomain.sub(&domain)? != cone {
        return Err(K0Error::EulerViolation { domain, codomain, cone });
    }
    Ok(())
}

/// Outcome of a successful direct-sum check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiReport {
    pub component_classes: Vec<K0Class>,
    pub total: K0Class,
}

/// Checks that `K_0` of the decomposed support is the direct sum of the
/// pieces on the given samples, and that the pieces admit no maps between
/// each other.
///
/// `samples[k]` lists complexes supported in component `k`; components
/// beyond the end of `samples` get no samples.
pub fn xi_direct_sum_check(
    decomposition: &KSDecomposition,
    samples: &[Vec<PerfectComplexZ>],
) -> Result<XiReport, K0Error> {
    let ambient = decomposition.support().as_integers().ok_or(K0Error::NotIntegers)?;
    let components: Vec<&ZSupport> = decomposition
        .components()
        .iter()
        .map(|c| c.as_integers().ok_or(K0Error::NotIntegers))
        .collect::<Result<_, _>>()?;
    if samples.len() > components.len() {
        return Err(K0Error::SampleCount { samples: samples.len(), components: components.len() });
    }

    let mut sums = Vec::with_capacity(components.len());
    let mut component_classes = Vec::with_capacity(components.len());
    for (k, &component) in components.iter().enumerate() {
        let sum = samples
            .get(k)
            .into_iter()
            .flatten()
            .try_fold(PerfectComplexZ::zero(), |acc, c| {
                k0_class(c, component).map(|_| acc.direct_sum(c))
            })?;
        component_classes.push(k0_class(&sum, component)?);
        sums.push(sum);
    }

    let total_complex = sums.iter().fold(PerfectComplexZ::zero(), |acc, c| acc.direct_sum(c));
    let total = k0_class(&total_complex, ambient)?;
    let mut injected = K0Class::zero(ambient);
    for (k, (&component, class)) in components.iter().zip(&component_classes).enumerate() {
        let found = total.restrict(component)?;
        if &found != class {
            return Err(K0Error::XiRestriction { component: k, expected: class.clone(), found });
        }
        injected = injected.add(&class.extend(ambient)?)?;
    }
    if injected != total {
        return Err(K0Error::XiAdditivity { expected: injected, found: total });
    }

    for (i, a) in sums.iter().enumerate() {
        for (j, b) in sums.iter().enumerate() {
            if i != j && !a.derived_hom_vanishes(b) {
                return Err(K0Error::HomNotVanishing { first: i, second: j });
            }
        }
    }
    Ok(XiReport { component_classes, total })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::ksengine::{ks_decompose, DecompositionMode};
    use crate::zcomplex::moore_complex;

    fn closed(ps: &[u64]) -> ZSupport {
        ZSupport::closed(ps.iter().copied()).unwrap()
    }

    fn moore(n: u64) -> PerfectComplexZ {
        moore_complex(n).unwrap()
    }

    fn free() -> PerfectComplexZ {
        PerfectComplexZ::from_i64(&[(0, 1)], &[]).unwrap()
    }

    #[test]
    fn classes() {
        let c = k0_class(&moore(5), &closed(&[5])).unwrap();
        assert_eq!(c.torsion_lengths(), &BTreeMap::from([(5, 1)]));
        let w = k0_class(&moore(12), &ZSupport::Whole).unwrap();
        assert_eq!(w.generic_rank(), Some(0));
        assert!(w.torsion_lengths().is_empty());
        let m = moore(12);
        for amb in [ZSupport::Whole, closed(&[2, 3, 7])] {
            assert!(k0_class(&m.direct_sum(&m.shift(1)), &amb).unwrap().is_zero());
        }
        assert_eq!(k0_class(&free(), &ZSupport::Whole).unwrap().generic_rank(), Some(1));
        assert_eq!(k0_class(&free().shift(1), &ZSupport::Whole).unwrap().generic_rank(), Some(-1));
        let err = k0_class(&moore(6), &closed(&[2])).unwrap_err();
        assert_eq!(err.name(), "SupportNotContained");
        assert_eq!(k0_class(&free(), &closed(&[2])).unwrap_err().name(), "SupportNotContained");
    }

    #[test]
    fn addition() {
        let a = closed(&[2]);
        let m2 = k0_class(&moore(2), &a).unwrap();
        assert_eq!(class_add(&m2, &m2).unwrap(), k0_class(&moore(4), &a).unwrap());
        assert_eq!(class_add(&m2, &K0Class::zero(&a)).unwrap(), m2);
        let s = k0_class(&moore(2).shift(1), &a).unwrap();
        assert!(class_add(&m2, &s).unwrap().is_zero());
        assert_eq!(s, m2.neg());
        let other = K0Class::zero(&closed(&[3]));
        assert_eq!(class_add(&m2, &other).unwrap_err().name(), "AmbientMismatch");
    }

    #[test]
    fn euler_on_cones() {
        let amb = closed(&[2, 3]);
        check_euler_on_cone(&ChainMap::identity(&moore(6)), &amb).unwrap();
        let zero = ChainMap::zero(&moore(2), &moore(3));
        check_euler_on_cone(&zero, &amb).unwrap();
        let cone = k0_class(&zero.cone(), &amb).unwrap();
        let expected = k0_class(&moore(3), &amb).unwrap().add(&k0_class(&moore(2).shift(1), &amb).unwrap());
        assert_eq!(cone, expected.unwrap());

        let times_p = ChainMap::scalar(&free(), 7);
        check_euler_on_cone(&times_p, &ZSupport::Whole).unwrap();
        let cone = k0_class(&times_p.cone(), &closed(&[7])).unwrap();
        assert_eq!(cone.torsion_lengths()[&7], 1);
    }

    #[test]
    fn xi_examples() {
        let d = ks_decompose(&closed(&[2, 3]).into(), &DecompositionMode::Plain).unwrap();
        let r = xi_direct_sum_check(&d, &[vec![moore(4)], vec![moore(3)]]).unwrap();
        assert_eq!(r.total.torsion_lengths(), &BTreeMap::from([(2, 2), (3, 1)]));

        let r = xi_direct_sum_check(&d, &[]).unwrap();
        assert!(r.total.is_zero());

        let err = xi_direct_sum_check(&d, &[vec![moore(6)]]).unwrap_err();
        assert_eq!(err.name(), "SupportNotContained");
    }

    #[test]
    fn json_shape() {
        let c = k0_class(&moore(12), &closed(&[2, 3])).unwrap();
        assert_eq!(
            c.to_value().to_string(),
            r#"{"ambient":[2,3],"torsion_lengths":{"2":2,"3":1}}"#
        );
    }
}
