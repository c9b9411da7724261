//! Ring constructors: `Z/n`, direct products, truncated polynomial rings,
//! quotients and trivial extensions by an ideal.

use super::{Elem, FiniteRing, Ideal, RingHom};
use crate::bits::{ElemSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// The integers modulo `n`.
pub fn zn(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidSize("Z0 is not a finite ring".into()));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge {
            size: n,
            cap: MAX_ELEMENTS,
        });
    }
    FiniteRing::from_fns(
        n,
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
        0,
        1 % n,
        (0..n).map(|i| i.to_string()).collect(),
        format!("Z{n}"),
    )
}

/// A direct product that remembers its factors, so components and
/// projections stay available.
#[derive(Debug, Clone)]
pub struct ProductRing {
    ring: FiniteRing,
    factors: Vec<FiniteRing>,
    strides: Vec<usize>,
}

impl ProductRing {
    pub fn new(factors: Vec<FiniteRing>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArity(
                "a direct product needs at least one factor".into(),
            ));
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| {
                acc.checked_mul(f.size()).filter(|&s| s <= MAX_ELEMENTS)
            })
            .ok_or_else(|| Error::TooLarge {
                size: factors
                    .iter()
                    .map(|f| f.size())
                    .fold(1usize, usize::saturating_mul),
                cap: MAX_ELEMENTS,
            })?;
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].size();
        }
        let comp = |a: Elem, i: usize| (a / strides[i]) % factors[i].size();
        let combine = |op: &dyn Fn(&FiniteRing, Elem, Elem) -> Elem, a: Elem, b: Elem| {
            factors
                .iter()
                .enumerate()
                .map(|(i, f)| op(f, comp(a, i), comp(b, i)) * strides[i])
                .sum::<usize>()
        };
        let zero = factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.zero() * strides[i])
            .sum();
        let one = factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.one() * strides[i])
            .sum();
        let names = (0..size)
            .map(|a| {
                let parts: Vec<&str> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.name(comp(a, i)))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let label = factors
            .iter()
            .map(|f| f.label())
            .collect::<Vec<_>>()
            .join(" x ");
        let ring = FiniteRing::from_fns(
            size,
            |a, b| combine(&|f, x, y| f.add(x, y), a, b),
            |a, b| combine(&|f, x, y| f.mul(x, y), a, b),
            zero,
            one,
            names,
            label,
        )?;
        Ok(ProductRing {
            ring,
            factors,
            strides,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn factors(&self) -> &[FiniteRing] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn component(&self, a: Elem, i: usize) -> Elem {
        (a / self.strides[i]) % self.factors[i].size()
    }

    pub fn components(&self, a: Elem) -> Vec<Elem> {
        (0..self.arity()).map(|i| self.component(a, i)).collect()
    }

    pub fn compose(&self, comps: &[Elem]) -> Elem {
        comps.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// The canonical projection onto factor `i`.
    pub fn projection(&self, i: usize) -> RingHom {
        let map = self.ring.elements().map(|a| self.component(a, i)).collect();
        RingHom::new_unchecked(&self.ring, &self.factors[i], map)
    }

    /// `π_i(set)`.
    pub fn project_set(&self, i: usize, set: &ElemSet) -> ElemSet {
        set.iter().map(|a| self.component(a, i)).collect()
    }

    /// The cartesian product `∏ sets[i]` as a subset of the product ring.
    pub fn product_set(&self, sets: &[ElemSet]) -> ElemSet {
        self.ring
            .elements()
            .filter(|&a| (0..self.arity()).all(|i| sets[i].contains(self.component(a, i))))
            .collect()
    }
}

/// The direct product of `factors`; element names are tuples of factor names.
pub fn direct_product(factors: &[FiniteRing]) -> Result<FiniteRing> {
    Ok(ProductRing::new(factors.to_vec())?.ring)
}

/// `base[x]/(x^k)`; the coefficient of `x^0` is the least significant digit
/// of an element index, so constants keep their index from `base`.
pub fn truncated_poly(base: &FiniteRing, k: usize) -> Result<FiniteRing> {
    if k == 0 {
        return Err(Error::InvalidSize(
            "truncation degree must be at least 1".into(),
        ));
    }
    let n = base.size();
    let size = (0..k)
        .try_fold(1usize, |acc, _| {
            acc.checked_mul(n).filter(|&s| s <= MAX_ELEMENTS)
        })
        .ok_or(Error::TooLarge {
            size: n.saturating_pow(k as u32),
            cap: MAX_ELEMENTS,
        })?;
    let coeffs = |a: Elem| -> Vec<Elem> {
        let mut v = Vec::with_capacity(k);
        let mut x = a;
        for _ in 0..k {
            v.push(x % n);
            x /= n;
        }
        v
    };
    let index = |c: &[Elem]| c.iter().rev().fold(0, |acc, &d| acc * n + d);
    let add = |a, b| {
        let (ca, cb) = (coeffs(a), coeffs(b));
        let c: Vec<Elem> = ca.iter().zip(&cb).map(|(&x, &y)| base.add(x, y)).collect();
        index(&c)
    };
    let mul = |a, b| {
        let (ca, cb) = (coeffs(a), coeffs(b));
        let mut c = vec![base.zero(); k];
        for i in 0..k {
            for j in 0..k - i {
                c[i + j] = base.add(c[i + j], base.mul(ca[i], cb[j]));
            }
        }
        index(&c)
    };
    let names = (0..size).map(|a| poly_name(base, &coeffs(a))).collect();
    let mut zero = vec![base.zero(); k];
    let zero_idx = index(&zero);
    zero[0] = base.one();
    let one_idx = index(&zero);
    FiniteRing::from_fns(
        size,
        add,
        mul,
        zero_idx,
        one_idx,
        names,
        format!("poly({},{k})", base.label()),
    )
}

fn poly_name(base: &FiniteRing, coeffs: &[Elem]) -> String {
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate() {
        if c == base.zero() && !(d == 0 && coeffs.iter().all(|&x| x == base.zero())) {
            continue;
        }
        let cname = base.name(c);
        let cname = if cname.contains(' ') {
            format!("[{cname}]")
        } else {
            cname.to_string()
        };
        let var = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        terms.push(match (d, c == base.one()) {
            (0, _) => cname,
            (_, true) => var,
            _ => format!("{cname}*{var}"),
        });
    }
    terms.join(" + ")
}

/// The smallest ideal containing `gens`: the sum of the principal ideals.
pub fn ideal_span<I: IntoIterator<Item = Elem>>(ring: &FiniteRing, gens: I) -> Ideal {
    let mut members = ElemSet::singleton(ring.zero());
    for g in gens {
        if !members.contains(g) {
            members = ring.sum_set(&members, &ring.multiples(g));
        }
    }
    Ideal::new_unchecked(ring, members)
}

/// A short generating list for `ideal`: greedily keep each member (in index
/// order) that is not already in the span of those kept so far.
pub(crate) fn generators(ring: &FiniteRing, ideal: &ElemSet) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = ElemSet::singleton(ring.zero());
    for a in ideal.iter() {
        if !span.contains(a) {
            gens.push(a);
            span = ring.sum_set(&span, &ring.multiples(a));
        }
    }
    gens
}

fn gen_list(ring: &FiniteRing, ideal: &ElemSet) -> String {
    generators(ring, ideal)
        .iter()
        .map(|&g| ring.name(g))
        .collect::<Vec<_>>()
        .join(",")
}

/// The quotient ring, with each coset represented by its least index, and the
/// canonical surjection onto it.
pub fn quotient(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingHom)> {
    if !ideal.belongs_to(ring) {
        return Err(Error::Ownership("ideal"));
    }
    let members = ideal.members();
    let mut class = vec![usize::MAX; ring.size()];
    let mut reps = Vec::new();
    for a in ring.elements() {
        if class[a] == usize::MAX {
            for m in members.iter() {
                class[ring.add(a, m)] = reps.len();
            }
            reps.push(a);
        }
    }
    let names = reps.iter().map(|&r| ring.name(r).to_string()).collect();
    let label = format!("quot({},[{}])", ring.label(), gen_list(ring, &members));
    let q = FiniteRing::from_fns(
        reps.len(),
        |i, j| class[ring.add(reps[i], reps[j])],
        |i, j| class[ring.mul(reps[i], reps[j])],
        class[ring.zero()],
        class[ring.one()],
        names,
        label,
    )?;
    let hom = RingHom::new_unchecked(ring, &q, class);
    Ok((q, hom))
}

/// `R ⋉ M` for an ideal `M` of `R`, on pairs `(r, m)` with
/// `(r, m)(r', m') = (rr', rm' + r'm)`.
pub fn trivial_extension(ring: &FiniteRing, module: &Ideal) -> Result<FiniteRing> {
    if !module.belongs_to(ring) {
        return Err(Error::Ownership("ideal"));
    }
    let ms: Vec<Elem> = module.members().iter().collect();
    let size = ring.size() * ms.len();
    if size > MAX_ELEMENTS {
        return Err(Error::TooLarge {
            size,
            cap: MAX_ELEMENTS,
        });
    }
    let mut pos = vec![usize::MAX; ring.size()];
    for (i, &m) in ms.iter().enumerate() {
        pos[m] = i;
    }
    let w = ms.len();
    let split = |a: Elem| (a / w, ms[a % w]);
    let join = |r: Elem, m: Elem| r * w + pos[m];
    let names = (0..size)
        .map(|a| {
            let (r, m) = split(a);
            format!("({},{})", ring.name(r), ring.name(m))
        })
        .collect();
    let label = format!(
        "triv({},[{}])",
        ring.label(),
        gen_list(ring, &module.members())
    );
    FiniteRing::from_fns(
        size,
        |a, b| {
            let ((r, m), (s, n)) = (split(a), split(b));
            join(ring.add(r, s), ring.add(m, n))
        },
        |a, b| {
            let ((r, m), (s, n)) = (split(a), split(b));
            join(ring.mul(r, s), ring.add(ring.mul(r, n), ring.mul(s, m)))
        },
        join(ring.zero(), ring.zero()),
        join(ring.one(), ring.zero()),
        names,
        label,
    )
}
