use super::{Elem, FiniteRing};
use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// A unital ring homomorphism given by its full value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    source_id: u64,
    target_id: u64,
    map: Vec<Elem>,
}

impl RingHom {
    /// Checks that `map` is a unital ring homomorphism before wrapping it.
    pub fn new(source: &FiniteRing, target: &FiniteRing, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&b| b >= target.size()) {
            return Err(Error::InvalidHom(
                "map is not a total function into the target".into(),
            ));
        }
        let hom = Self::new_unchecked(source, target, map);
        if let Err(msg) = hom.check(source, target) {
            return Err(Error::InvalidHom(msg));
        }
        Ok(hom)
    }

    pub fn from_fn(
        source: &FiniteRing,
        target: &FiniteRing,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<Self> {
        Self::new(source, target, source.elements().map(f).collect())
    }

    pub(crate) fn new_unchecked(source: &FiniteRing, target: &FiniteRing, map: Vec<Elem>) -> Self {
        RingHom {
            source_id: source.id(),
            target_id: target.id(),
            map,
        }
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Self::new_unchecked(ring, ring, ring.elements().collect())
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn image(&self, set: &ElemSet) -> ElemSet {
        set.iter().map(|a| self.map[a]).collect()
    }

    pub fn preimage(&self, set: &ElemSet) -> ElemSet {
        (0..self.map.len())
            .filter(|&a| set.contains(self.map[a]))
            .collect()
    }

    pub fn kernel(&self, target: &FiniteRing) -> ElemSet {
        self.preimage(&ElemSet::singleton(target.zero()))
    }

    pub fn is_surjective(&self, target: &FiniteRing) -> bool {
        self.image(&ElemSet::full(self.map.len())) == target.carrier()
    }

    pub fn connects(&self, source: &FiniteRing, target: &FiniteRing) -> bool {
        self.source_id == source.id() && self.target_id == target.id()
    }

    pub fn is_valid(&self, source: &FiniteRing, target: &FiniteRing) -> bool {
        self.check(source, target).is_ok()
    }

    fn check(&self, source: &FiniteRing, target: &FiniteRing) -> std::result::Result<(), String> {
        if !self.connects(source, target) {
            return Err("homomorphism is attached to different rings".into());
        }
        let f = &self.map;
        if f[source.zero()] != target.zero() || f[source.one()] != target.one() {
            return Err("zero or one is not preserved".into());
        }
        for a in source.elements() {
            for b in source.elements() {
                if f[source.add(a, b)] != target.add(f[a], f[b]) {
                    return Err(format!(
                        "f({} + {}) differs from f(a) + f(b)",
                        source.name(a),
                        source.name(b)
                    ));
                }
                if f[source.mul(a, b)] != target.mul(f[a], f[b]) {
                    return Err(format!(
                        "f({} * {}) differs from f(a) * f(b)",
                        source.name(a),
                        source.name(b)
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, zn};

    #[test]
    fn diagonal_embedding_is_a_hom() {
        let z2 = zn(2).unwrap();
        let b = direct_product(&[z2.clone(), z2.clone()]).unwrap();
        let diag = RingHom::from_fn(&z2, &b, |a| a * 3).unwrap();
        assert!(!diag.is_surjective(&b));
        assert!(RingHom::from_fn(&z2, &b, |a| a * 2).is_err());
    }

    #[test]
    fn reduction_mod_three() {
        let z6 = zn(6).unwrap();
        let z3 = zn(3).unwrap();
        let f = RingHom::from_fn(&z6, &z3, |a| a % 3).unwrap();
        assert!(f.is_surjective(&z3));
        assert_eq!(f.kernel(&z3), [0, 3].into_iter().collect());
        // Z6 -> Z4 by a mod 4 is not additive
        assert!(RingHom::from_fn(&z6, &zn(4).unwrap(), |a| a % 4).is_err());
    }
}
